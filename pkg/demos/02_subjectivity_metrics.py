"""The five subjectivity metrics side by side.

STD and MAD measure spread, DUD and MED measure distance from reference
distributions, and the uncertainty mass (last column) is the probability
of "people genuinely disagree". The sweep below morphs a consensus spike
into the uniform histogram and prints all five at each step: they agree on
the ordering, but only the uncertainty mass reads as a probability.
"""

import numpy as np

from aesu import (
    RatingDistribution,
    delta_distribution,
    fit_beta,
    full_report,
    uniform_distribution,
)

spike = delta_distribution(6)
uniform = uniform_distribution()

print(f"{'mix t':>6} {'STD':>7} {'MAD':>7} {'MED':>7} {'DUD':>7} {'AesU':>7}")
for t in np.linspace(0.0, 1.0, 6):
    probs = tuple((1 - t) * a + t * b for a, b in zip(spike.probs, uniform.probs))
    p = RatingDistribution(probs)
    rep = full_report(p, fit_beta(p, seed=3))
    print(
        f"{t:6.2f} {rep.std:7.3f} {rep.mad:7.3f} {rep.med:7.3f}"
        f" {rep.dud:7.3f} {rep.aesu:7.3f}"
    )

print()
print("interpretability check: the scales differ ...")
print(f"  STD of the most polarized histogram (half 1s, half 10s): "
      f"{full_report(half_half := RatingDistribution((0.5,) + (0.0,) * 8 + (0.5,)), fit_beta(half_half, seed=3)).std:.3f}")
print(f"  its AesU: {full_report(half_half, fit_beta(half_half, seed=3)).aesu:.3f}"
      f"  (a probability: raters are maximally split)")
