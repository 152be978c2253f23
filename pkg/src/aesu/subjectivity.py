"""Scalar subjectivity metrics over one rating distribution.

Five metrics are reported side by side: the classical spread measures
(STD, MAD), two distance-to-reference measures (DUD against the uniform
histogram, MED against the maximum-entropy histogram of equal mean), and
the probabilistic aesthetic-uncertainty metric (the uncertainty mass of
the fitted opinion). STD/MAD/MED/DUD live on the normalized [0, 1] axis;
the uncertainty mass is a probability by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beta_model import FitResult, Opinion, opinion_from_shape
from .distributions import (
    NUM_BINS,
    RatingDistribution,
    delta_distribution,
    emd,
    mad_median,
    mean_score,
    std_normalized,
    uniform_distribution,
)

__all__ = [
    "SubjectivityReport",
    "aesu",
    "max_entropy_same_mean",
    "med",
    "dud",
    "full_report",
]

_MEAN_TOL = 1e-9
_LAMBDA_LO = -20.0
_LAMBDA_HI = 20.0


@dataclass(frozen=True)
class SubjectivityReport:
    """All per-image subjectivity metrics plus the binary pleasingness call."""

    std: float
    mad: float
    med: float
    dud: float
    aesu: float
    mean: float
    binary_pleasing: bool


def aesu(o: Opinion) -> float:
    """Aesthetic uncertainty: the uncertainty mass of the opinion."""
    return o.uncertainty


def _mean_of_lambda(lam: float) -> float:
    scores = np.arange(1, NUM_BINS + 1, dtype=float)
    w = np.exp(lam * scores - np.max(lam * scores))
    w /= w.sum()
    return float(np.dot(w, scores))


def _distribution_of_lambda(lam: float) -> RatingDistribution:
    scores = np.arange(1, NUM_BINS + 1, dtype=float)
    w = np.exp(lam * scores - np.max(lam * scores))
    return RatingDistribution(tuple(w / w.sum()))


def max_entropy_same_mean(p: RatingDistribution) -> RatingDistribution:
    """Maximum-entropy histogram with the same mean score as p.

    The entropy maximizer under a mean constraint is exponential in the
    score, q_s proportional to exp(lambda*s); lambda is found by bisection
    since the mean is strictly increasing in lambda. Means outside the
    bracket's reach collapse to the single-bin limit.
    """
    target = mean_score(p)
    lo, hi = _LAMBDA_LO, _LAMBDA_HI
    if target <= _mean_of_lambda(lo):
        return delta_distribution(1)
    if target >= _mean_of_lambda(hi):
        return delta_distribution(NUM_BINS)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        m = _mean_of_lambda(mid)
        if abs(m - target) <= _MEAN_TOL:
            return _distribution_of_lambda(mid)
        if m < target:
            lo = mid
        else:
            hi = mid
    return _distribution_of_lambda(0.5 * (lo + hi))


def med(p: RatingDistribution) -> float:
    """Distance from the maximum-entropy distribution of matched mean (r=1 EMD)."""
    return emd(p, max_entropy_same_mean(p), r=1.0)


def dud(p: RatingDistribution) -> float:
    """Distance to the uniform distribution (r=1 EMD)."""
    return emd(p, uniform_distribution(), r=1.0)


def full_report(p: RatingDistribution, fit: FitResult) -> SubjectivityReport:
    """Assemble every subjectivity metric for one rating distribution.

    ``fit`` must be the fit of ``p`` itself; the aesthetic uncertainty is
    read off the fitted shape's opinion.
    """
    mean = mean_score(p)
    return SubjectivityReport(
        std=std_normalized(p),
        mad=mad_median(p),
        med=med(p),
        dud=dud(p),
        aesu=aesu(opinion_from_shape(fit.shape)),
        mean=mean,
        binary_pleasing=mean > 5.0,
    )
