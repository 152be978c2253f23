"""Ternary pleasing/unpleasing/uncertain classification and the
recommendation simulation built on it.

An opinion is placed in one of three regions of the (b, d, u) simplex by
comparing each component against a corpus-specific center point: the class
is the component with the largest surplus over its center coordinate.
With the center at the centroid (1/3, 1/3, 1/3) this reduces to a plain
argmax; an off-center point (e.g. corpus medians) tilts the boundaries to
balance the class sizes while the three regions still partition the
simplex.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .beta_model import Opinion
from .errors import EmptyCorpus, NoRecommendations
from .records import ImageRecord

__all__ = [
    "TernaryCenter",
    "TernaryClass",
    "RecommendationRule",
    "RuleResult",
    "SimulationSummary",
    "compute_center",
    "classify",
    "satisfaction_ratio",
    "simulate_recommendation",
    "DEFAULT_THRESHOLD_SCORE",
]

#: Binary pleasing/unpleasing threshold on the 1..10 score scale.
DEFAULT_THRESHOLD_SCORE = 5


@dataclass(frozen=True)
class TernaryCenter:
    """Meeting point of the three class boundaries on the opinion simplex."""

    b_c: float
    d_c: float
    u_c: float

    def __post_init__(self):
        for name in ("b_c", "d_c", "u_c"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v!r} outside [0, 1]")


class TernaryClass(str, enum.Enum):
    PLEASING = "pleasing"
    UNPLEASING = "unpleasing"
    UNCERTAIN = "uncertain"


class RecommendationRule(str, enum.Enum):
    #: recommend when the predicted mean score exceeds the threshold
    BINARY_MEAN = "binary"
    #: recommend when the ternary classification says pleasing
    TERNARY_PLEASING = "ternary"


def compute_center(opinions: Sequence[Opinion]) -> TernaryCenter:
    """Component-wise median of a corpus of opinions (lower median when even).

    No renormalization: the medians need not lie on the simplex exactly,
    which is fine because classification only uses per-component offsets.
    """
    if len(opinions) == 0:
        raise EmptyCorpus("cannot compute a center from zero opinions")

    def lower_median(values: list[float]) -> float:
        ordered = sorted(values)
        return ordered[(len(ordered) - 1) // 2]

    return TernaryCenter(
        b_c=lower_median([o.belief for o in opinions]),
        d_c=lower_median([o.disbelief for o in opinions]),
        u_c=lower_median([o.uncertainty for o in opinions]),
    )


def classify(o: Opinion, c: TernaryCenter) -> TernaryClass:
    """Class of the component with the largest surplus over the center.

    Ties resolve conservatively: uncertain beats unpleasing beats pleasing,
    so a borderline image is never recommended on a tie.
    """
    candidates = (
        (o.uncertainty - c.u_c, TernaryClass.UNCERTAIN),
        (o.disbelief - c.d_c, TernaryClass.UNPLEASING),
        (o.belief - c.b_c, TernaryClass.PLEASING),
    )
    best_diff, best_class = candidates[0]
    for diff, cls in candidates[1:]:
        if diff > best_diff:
            best_diff, best_class = diff, cls
    return best_class


def satisfaction_ratio(
    corpus: Iterable[ImageRecord],
    recommended: Callable[[ImageRecord], bool],
    threshold_score: int = DEFAULT_THRESHOLD_SCORE,
) -> float:
    """Average fraction of satisfied raters over the recommended images.

    A rater is satisfied when their score strictly exceeds the threshold.
    Needs raw counts on every recommended record.
    """
    ratios = []
    for rec in corpus:
        if not recommended(rec):
            continue
        if rec.counts is None:
            raise ValueError(f"record {rec.image_id!r} has no raw vote counts")
        total = sum(rec.counts)
        above = sum(rec.counts[s - 1] for s in range(threshold_score + 1, 11))
        ratios.append(above / total)
    if not ratios:
        raise NoRecommendations("no image satisfied the recommendation rule")
    return sum(ratios) / len(ratios)


@dataclass(frozen=True)
class RuleResult:
    rule: RecommendationRule
    n_recommended: int
    satisfaction: float


@dataclass(frozen=True)
class SimulationSummary:
    threshold_score: int
    center: TernaryCenter
    results: tuple[RuleResult, ...]

    def by_rule(self, rule: RecommendationRule) -> RuleResult:
        for r in self.results:
            if r.rule == rule:
                return r
        raise KeyError(rule)


def simulate_recommendation(
    corpus: Sequence[ImageRecord],
    center: TernaryCenter,
    rules: Sequence[RecommendationRule] = (
        RecommendationRule.BINARY_MEAN,
        RecommendationRule.TERNARY_PLEASING,
    ),
    threshold_score: int = DEFAULT_THRESHOLD_SCORE,
) -> SimulationSummary:
    """Run the recommendation rules over an analyzed corpus.

    The baseline rule recommends every image whose predicted mean clears
    the binary threshold; the ternary rule recommends only the images
    classified pleasing, filtering out high-uncertainty borderline cases.
    Records must carry predicted_mean (binary rule) and opinion (ternary
    rule); NoRecommendations propagates from any rule that selects nothing.
    """
    predicates: dict[RecommendationRule, Callable[[ImageRecord], bool]] = {}
    for rule in rules:
        if rule == RecommendationRule.BINARY_MEAN:
            for rec in corpus:
                if rec.predicted_mean is None:
                    raise ValueError(f"record {rec.image_id!r} lacks predicted_mean")
            predicates[rule] = lambda rec: rec.predicted_mean > threshold_score
        elif rule == RecommendationRule.TERNARY_PLEASING:
            for rec in corpus:
                if rec.opinion is None:
                    raise ValueError(f"record {rec.image_id!r} lacks an opinion")
            predicates[rule] = (
                lambda rec: classify(rec.opinion, center) is TernaryClass.PLEASING
            )
        else:
            raise ValueError(f"unknown rule {rule!r}")

    results = []
    for rule, pred in predicates.items():
        n_rec = sum(1 for rec in corpus if pred(rec))
        if n_rec == 0:
            raise NoRecommendations(f"rule {rule.value!r} recommended no images")
        results.append(
            RuleResult(
                rule=rule,
                n_recommended=n_rec,
                satisfaction=satisfaction_ratio(corpus, pred, threshold_score),
            )
        )
    return SimulationSummary(
        threshold_score=threshold_score, center=center, results=tuple(results)
    )
