"""Per-image record carried through the analysis pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .beta_model import FitResult, Opinion
from .distributions import RatingDistribution, normalize_counts
from .modality import ModalityResult
from .subjectivity import SubjectivityReport

__all__ = ["ImageRecord", "SyntheticSpec"]


@dataclass(frozen=True)
class ImageRecord:
    """One image's identity, raw votes, and whatever analyses ran so far.

    ``distribution`` always equals normalize_counts(counts) when counts are
    present; analysis fields stay None until the corresponding pipeline
    stage fills them (via dataclasses.replace). ``meta`` holds opaque
    source metadata such as AVA tag ids or synthetic ground truth.
    """

    image_id: str
    distribution: RatingDistribution
    counts: tuple[int, ...] | None = None
    fit: FitResult | None = None
    opinion: Opinion | None = None
    report: SubjectivityReport | None = None
    modality: ModalityResult | None = None
    predicted_mean: float | None = None
    ternary_class: str | None = None
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.counts is not None:
            counts = tuple(int(c) for c in self.counts)
            object.__setattr__(self, "counts", counts)
            expected = normalize_counts(counts)
            if any(
                abs(a - b) > 1e-12 for a, b in zip(expected.probs, self.distribution.probs)
            ):
                raise ValueError(
                    f"distribution of {self.image_id!r} disagrees with its counts"
                )
        # plain dict (not a proxy) so records pickle cleanly into worker pools
        object.__setattr__(self, "meta", dict(self.meta))

    @classmethod
    def from_counts(cls, image_id: str, counts, **kwargs) -> "ImageRecord":
        return cls(
            image_id=str(image_id),
            distribution=normalize_counts(counts),
            counts=tuple(int(c) for c in counts),
            **kwargs,
        )


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for a seeded synthetic corpus.

    Shapes are drawn log-uniformly from the given ranges, votes are beta
    samples binned to scores, and each vote is independently replaced by a
    uniform random score with probability ``vote_noise``.
    """

    n_images: int
    raters_per_image: int
    alpha_range: tuple[float, float] = (1.2, 30.0)
    beta_range: tuple[float, float] = (1.2, 30.0)
    vote_noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n_images < 1 or self.raters_per_image < 1:
            raise ValueError("n_images and raters_per_image must be >= 1")
        for lo, hi in (self.alpha_range, self.beta_range):
            if not (1.0 <= lo <= hi <= 500.0):
                raise ValueError(f"shape range ({lo}, {hi}) outside [1, 500]")
        if not 0.0 <= self.vote_noise <= 1.0:
            raise ValueError("vote_noise must be in [0, 1]")
