"""Rating-distribution representation, distances, and elementary statistics.

A rating distribution is a normalized histogram over the ten aesthetic
score bins (scores 1..10). Score s occupies the interval
[(s-1)/10, s/10) of the normalized [0, 1] axis, so bin masses line up
with beta-distribution CDF differences and every statistic here can be
compared against the beta-based machinery without rescaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AllZeroCounts, DegenerateInput, InvalidOrder

__all__ = [
    "NUM_BINS",
    "BIN_CENTERS",
    "RatingDistribution",
    "CdfVector",
    "normalize_counts",
    "uniform_distribution",
    "delta_distribution",
    "cdf",
    "emd",
    "kld",
    "mean_score",
    "std_normalized",
    "mad_median",
    "to_score_scale",
    "plcc",
    "srocc",
    "mae",
]

#: Number of score bins on the AVA-style 1..10 scale. Carried as a single
#: constant so another scale only needs this one change.
NUM_BINS = 10

#: Center of bin s-1 on the normalized axis: (2s - 1) / (2 * NUM_BINS).
BIN_CENTERS = tuple((2 * s - 1) / (2 * NUM_BINS) for s in range(1, NUM_BINS + 1))

_SUM_TOL = 1e-9


@dataclass(frozen=True)
class RatingDistribution:
    """Normalized histogram of aesthetic scores.

    probs[s-1] is the probability mass of score s. ``n_raters`` records how
    many votes the masses were derived from, when known; histogram-to-sample
    expansion (dip test) requires it.
    """

    probs: tuple[float, ...]
    n_raters: int | None = None

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if len(probs) != NUM_BINS:
            raise ValueError(f"expected {NUM_BINS} bins, got {len(probs)}")
        if any(p < 0 for p in probs):
            raise ValueError("probabilities must be non-negative")
        total = sum(probs)
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        object.__setattr__(self, "probs", probs)
        if self.n_raters is not None:
            n = int(self.n_raters)
            if n < 0:
                raise ValueError("n_raters must be non-negative")
            object.__setattr__(self, "n_raters", n)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)


@dataclass(frozen=True)
class CdfVector:
    """Cumulative sums of a RatingDistribution; values[k-1] = CDF at score k."""

    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) != NUM_BINS:
            raise ValueError(f"expected {NUM_BINS} entries, got {len(values)}")
        if any(b < a - 1e-12 for a, b in zip(values, values[1:])):
            raise ValueError("CDF must be non-decreasing")
        if abs(values[-1] - 1.0) > _SUM_TOL:
            raise ValueError(f"final CDF entry is {values[-1]!r}, expected 1")
        object.__setattr__(self, "values", values)


def normalize_counts(counts: Sequence[int]) -> RatingDistribution:
    """Turn raw per-score vote counts into a RatingDistribution.

    Raises AllZeroCounts when there is not a single vote.
    """
    counts = [int(c) for c in counts]
    if len(counts) != NUM_BINS:
        raise ValueError(f"expected {NUM_BINS} counts, got {len(counts)}")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be non-negative")
    total = sum(counts)
    if total == 0:
        raise AllZeroCounts("all score counts are zero")
    return RatingDistribution(tuple(c / total for c in counts), n_raters=total)


def uniform_distribution() -> RatingDistribution:
    """The uniform histogram, 0.1 per bin."""
    return RatingDistribution((1.0 / NUM_BINS,) * NUM_BINS)


def delta_distribution(score: int, n_raters: int | None = None) -> RatingDistribution:
    """All mass on one score bin."""
    if not 1 <= score <= NUM_BINS:
        raise ValueError(f"score must be in 1..{NUM_BINS}")
    probs = [0.0] * NUM_BINS
    probs[score - 1] = 1.0
    return RatingDistribution(tuple(probs), n_raters=n_raters)


def cdf(p: RatingDistribution) -> CdfVector:
    return CdfVector(tuple(np.cumsum(p.as_array())))


def _emd_probs(u: np.ndarray, v: np.ndarray, r: float) -> float:
    # Raw-vector core shared with the loss-gradient path, which probes
    # points slightly off the simplex.
    diff = np.abs(np.cumsum(u) - np.cumsum(v))
    return float(np.mean(diff**r) ** (1.0 / r))


def emd(p: RatingDistribution, q: RatingDistribution, r: float = 2.0) -> float:
    """Earth mover's distance of order r between two rating distributions.

    For 1-D histograms over a common ordered support this is the r-norm of
    the CDF differences, averaged over the bins:

        ((1/10) * sum_k |CDF_p(k) - CDF_q(k)|**r) ** (1/r)

    r=2 is the fitting/training convention, r=1 the evaluation-reporting
    convention.
    """
    if r < 1:
        raise InvalidOrder(f"EMD order must be >= 1, got {r}")
    return _emd_probs(p.as_array(), q.as_array(), float(r))


def kld(p_true: RatingDistribution, p_pred: RatingDistribution) -> float:
    """KL divergence KL(p_true || p_pred) with epsilon-smoothed prediction.

    The prediction gets 1e-8 added to every bin and is renormalized, so the
    divergence is finite even when the prediction assigns zero mass to a
    voted bin. Terms with p_true[k] = 0 contribute nothing.
    """
    t = p_true.as_array()
    q = p_pred.as_array() + 1e-8
    q /= q.sum()
    mask = t > 0
    return float(np.sum(t[mask] * np.log(t[mask] / q[mask])))


def mean_score(p: RatingDistribution) -> float:
    """Mean rating on the 1..10 score scale."""
    return float(np.dot(p.as_array(), np.arange(1, NUM_BINS + 1)))


def std_normalized(p: RatingDistribution) -> float:
    """Standard deviation of the bin-center random variable on [0, 1]."""
    centers = np.asarray(BIN_CENTERS)
    probs = p.as_array()
    mu = float(np.dot(probs, centers))
    var = float(np.dot(probs, (centers - mu) ** 2))
    return math.sqrt(max(var, 0.0))


def mad_median(p: RatingDistribution) -> float:
    """Mean absolute deviation around the median bin center, on [0, 1].

    The median bin is the smallest score s whose CDF reaches 0.5.
    """
    probs = p.as_array()
    cum = np.cumsum(probs)
    median_idx = int(np.argmax(cum >= 0.5))
    centers = np.asarray(BIN_CENTERS)
    return float(np.dot(probs, np.abs(centers - centers[median_idx])))


def to_score_scale(x: float) -> float:
    """Convert a [0, 1]-scale spread statistic (STD/MAD) to the 1..10 scale."""
    return 10.0 * x


def _as_float_arrays(xs: Sequence[float], ys: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.ndim != 1 or y.ndim != 1 or len(x) != len(y):
        raise ValueError("inputs must be 1-D sequences of equal length")
    if len(x) < 2:
        raise ValueError("need at least two points")
    return x, y


def plcc(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson linear correlation coefficient."""
    x, y = _as_float_arrays(xs, ys)
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(np.dot(xc, xc))
    sy = float(np.dot(yc, yc))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateInput("correlation undefined for zero-variance input")
    return float(np.dot(xc, yc) / math.sqrt(sx * sy))


def _average_ranks(x: np.ndarray) -> np.ndarray:
    # Ties share the average of the ranks they cover.
    order = np.argsort(x, kind="mergesort")
    ranks = np.empty(len(x), dtype=float)
    sx = x[order]
    i = 0
    while i < len(sx):
        j = i
        while j + 1 < len(sx) and sx[j + 1] == sx[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def srocc(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank-order correlation (average ranks for ties)."""
    x, y = _as_float_arrays(xs, ys)
    return plcc(_average_ranks(x), _average_ranks(y))


def mae(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Mean absolute error."""
    x, y = _as_float_arrays(xs, ys)
    return float(np.mean(np.abs(x - y)))
