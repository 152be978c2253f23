"""Training losses for simultaneous rating-distribution / shape prediction.

A model that emits both a 10-bin rating distribution and a beta shape pair
is scored by three terms: distribution error (EMD against the ground
truth), shape error (RMSLE against the shape fitted to the ground truth),
and a consistency term tying the two outputs together (EMD between the
predicted distribution and the discretization of the predicted shape).
The total is the weighted sum

    total = w1*L1 + w2*wb*L2 + w3*L3

where wb compensates for the different scales of EMD and RMSLE.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .beta_model import BetaShape, b2r
from .distributions import RatingDistribution, emd
from .errors import InvalidWeights, NonFiniteValue

__all__ = [
    "LossWeights",
    "LossBreakdown",
    "DEFAULT_WEIGHTS",
    "l1_emd",
    "l2_rmsle",
    "l3_consistency",
    "total_loss",
    "fd_gradient",
]


@dataclass(frozen=True)
class LossWeights:
    """Mixing weights; w1 + w2 + w3 must equal 1, wb rescales the RMSLE term."""

    w1: float
    w2: float
    w3: float
    wb: float

    def __post_init__(self):
        if self.w1 < 0 or self.w2 < 0 or self.w3 < 0:
            raise InvalidWeights("loss weights must be non-negative")
        total = self.w1 + self.w2 + self.w3
        if abs(total - 1.0) > 1e-9:
            raise InvalidWeights(f"w1+w2+w3 must be 1, got {total!r}")

    def combine(self, l1: float, l2: float, l3: float) -> float:
        return self.w1 * l1 + self.w2 * self.wb * l2 + self.w3 * l3


#: Reference operating point: w1=0.4, w2=0.5, w3=0.1, wb=0.2.
DEFAULT_WEIGHTS = LossWeights(w1=0.4, w2=0.5, w3=0.1, wb=0.2)


@dataclass(frozen=True)
class LossBreakdown:
    l1: float
    l2: float
    l3: float
    total: float


def l1_emd(r_pred: RatingDistribution, r_true: RatingDistribution) -> float:
    """Distribution loss: order-2 EMD between prediction and ground truth."""
    return emd(r_pred, r_true, r=2.0)


def l2_rmsle(b_pred: BetaShape, b_true: BetaShape) -> float:
    """Shape loss: root mean squared log(1+.) error over the two parameters.

    The log transform keeps occasionally huge shape parameters from
    dominating; the +1 offset is the standard RMSLE convention and keeps
    the kink outside the alpha, beta >= 1 domain.
    """
    da = math.log1p(b_pred.alpha) - math.log1p(b_true.alpha)
    db = math.log1p(b_pred.beta) - math.log1p(b_true.beta)
    return math.sqrt((da * da + db * db) / 2.0)


def l3_consistency(r_pred: RatingDistribution, b_pred: BetaShape) -> float:
    """Consistency loss: order-2 EMD between the two heads' distributions."""
    return emd(r_pred, b2r(b_pred), r=2.0)


def total_loss(
    r_pred: RatingDistribution,
    b_pred: BetaShape,
    r_true: RatingDistribution,
    b_true: BetaShape,
    w: LossWeights = DEFAULT_WEIGHTS,
) -> LossBreakdown:
    """Evaluate all three losses and their weighted combination."""
    l1 = l1_emd(r_pred, r_true)
    l2 = l2_rmsle(b_pred, b_true)
    l3 = l3_consistency(r_pred, b_pred)
    return LossBreakdown(l1=l1, l2=l2, l3=l3, total=w.combine(l1, l2, l3))


def fd_gradient(
    f: Callable[[np.ndarray], float],
    x: Sequence[float],
    h: float = 1e-6,
) -> np.ndarray:
    """Central-difference gradient of a scalar function.

    Every coordinate is probed symmetrically, so the result is exact for
    quadratics up to rounding and is the zero vector at symmetric kinks.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    x = np.asarray(x, dtype=float)
    grad = np.empty_like(x)
    for i in range(len(x)):
        step = np.zeros_like(x)
        step[i] = h
        hi = float(f(x + step))
        lo = float(f(x - step))
        if not (math.isfinite(hi) and math.isfinite(lo)):
            raise NonFiniteValue(f"function not finite near coordinate {i} of {x!r}")
        grad[i] = (hi - lo) / (2.0 * h)
    return grad
