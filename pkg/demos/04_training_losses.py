"""The simultaneous-learning loss suite.

A model that predicts both a rating distribution and a beta shape pair is
trained with three terms: distribution error against the ground truth
(EMD), shape error against the shape fitted to the ground truth (RMSLE),
and a consistency term binding the two heads together. This script scores
a few hypothetical predictions and probes the loss surface with the
finite-difference gradient helper.
"""

import numpy as np

from aesu import (
    BetaShape,
    DEFAULT_WEIGHTS,
    RatingDistribution,
    b2r,
    fd_gradient,
    fit_beta,
    l2_rmsle,
    normalize_counts,
    total_loss,
)

truth_hist = normalize_counts([0, 1, 5, 17, 38, 36, 15, 6, 5, 1])
truth_shape = fit_beta(truth_hist, seed=1).shape
print(f"ground truth shape: alpha={truth_shape.alpha:.3f} beta={truth_shape.beta:.3f}")
print(f"weights: w1={DEFAULT_WEIGHTS.w1} w2={DEFAULT_WEIGHTS.w2} "
      f"w3={DEFAULT_WEIGHTS.w3} wb={DEFAULT_WEIGHTS.wb}\n")

predictions = {
    # exact ground truth on both heads; only the consistency term is
    # nonzero because the raw histogram is not exactly beta-shaped
    "ground truth heads": (truth_hist, truth_shape),
    "close": (b2r(BetaShape(truth_shape.alpha * 1.15, truth_shape.beta * 0.9)),
              BetaShape(truth_shape.alpha * 1.15, truth_shape.beta * 0.9)),
    "inconsistent heads": (truth_hist, BetaShape(2, 8)),
    "way off": (b2r(BetaShape(8, 1.5)), BetaShape(8, 1.5)),
}

print(f"{'prediction':>20} {'L1':>8} {'L2':>8} {'L3':>8} {'total':>8}")
for name, (r_pred, b_pred) in predictions.items():
    bd = total_loss(r_pred, b_pred, truth_hist, truth_shape)
    print(f"{name:>20} {bd.l1:8.4f} {bd.l2:8.4f} {bd.l3:8.4f} {bd.total:8.4f}")

# RMSLE tolerates the occasional huge shape parameter; absolute error would
# not.
print("\nwhy RMSLE for shapes: (100,100) vs (110,110)")
print(f"  RMSLE          : {l2_rmsle(BetaShape(110, 110), BetaShape(100, 100)):.4f}")
print(f"  absolute error : 10.0")

# Finite-difference gradient of the total loss with respect to the two
# predicted shape parameters; a trainer without autodiff can descend on
# this directly.
def loss_of_shape(v):
    shape = BetaShape(float(v[0]), float(v[1]))
    return total_loss(b2r(shape), shape, truth_hist, truth_shape).total

start = np.array([truth_shape.alpha * 1.3, truth_shape.beta * 0.8])
grad = fd_gradient(loss_of_shape, start, h=1e-5)
print(f"\ngradient at a perturbed shape {start.round(3)}: {grad.round(5)}")
step = start - 2.0 * grad
print(f"loss before step: {loss_of_shape(start):.5f}")
print(f"loss after step : {loss_of_shape(step):.5f}")
