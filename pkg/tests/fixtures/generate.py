"""Regenerate bindings_fixtures.jsonl (run manually from the repo root).

The fixture corpus pins fit and loss outputs so any consumer of the
compute surface (in-process or through the CLI) can assert numeric parity
against the same frozen numbers. Values are stored at full precision.
"""

import json
import pathlib

import numpy as np

from aesu import (
    BetaShape,
    LossWeights,
    RatingDistribution,
    b2r,
    fit_beta,
    normalize_counts,
    opinion_from_shape,
    total_loss,
)

OUT = pathlib.Path(__file__).parent / "bindings_fixtures.jsonl"


def fit_case(counts, seed):
    res = fit_beta(normalize_counts(counts), r=2.0, seed=seed)
    o = opinion_from_shape(res.shape)
    return {
        "kind": "fit",
        "counts": list(counts),
        "emd_r": 2.0,
        "seed": seed,
        "expected": {
            "alpha": res.shape.alpha,
            "beta": res.shape.beta,
            "b": o.belief,
            "d": o.disbelief,
            "u": o.uncertainty,
            "fit_emd": res.fit_emd,
        },
    }


def loss_case(r_pred, b_pred, r_true, b_true, weights):
    bd = total_loss(
        RatingDistribution(tuple(r_pred)),
        BetaShape(*b_pred),
        RatingDistribution(tuple(r_true)),
        BetaShape(*b_true),
        LossWeights(**weights),
    )
    return {
        "kind": "losses",
        "r_pred": list(r_pred),
        "b_pred": list(b_pred),
        "r_true": list(r_true),
        "b_true": list(b_true),
        "weights": weights,
        "expected": {"l1": bd.l1, "l2": bd.l2, "l3": bd.l3, "total": bd.total},
    }


def main():
    rng = np.random.default_rng(424242)
    cases = []

    count_sets = [
        [1] * 10,
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 25],
        [0, 1, 5, 17, 38, 36, 15, 6, 5, 1],
        [12, 9, 7, 5, 4, 3, 2, 2, 1, 1],
    ]
    for shape in [(3.0, 5.0), (1.5, 1.5), (12.0, 4.0)]:
        probs = np.asarray(b2r(BetaShape(*shape)).probs)
        count_sets.append([int(c) for c in np.rint(probs * 1000)])
    for _ in range(3):
        count_sets.append([int(c) for c in rng.integers(0, 40, size=10) + 1])
    for i, counts in enumerate(count_sets):
        cases.append(fit_case(counts, seed=100 + i))

    default_w = {"w1": 0.4, "w2": 0.5, "w3": 0.1, "wb": 0.2}
    shapes = [(2.0, 7.0), (5.0, 5.0), (1.0, 1.0), (30.0, 3.0), (8.0, 2.0)]
    for i in range(10):
        b_pred = shapes[i % len(shapes)]
        b_true = shapes[(i + 2) % len(shapes)]
        if i < 2:
            r_pred = list(b2r(BetaShape(*b_pred)).probs)  # consistent heads
        else:
            r_pred = list(rng.dirichlet(np.full(10, 1.5)))
        r_true = list(rng.dirichlet(np.full(10, 1.5)))
        w = default_w if i % 3 else {"w1": 0.25, "w2": 0.25, "w3": 0.5, "wb": 1.0}
        if i == 0:
            r_true, b_true = r_pred, b_pred  # perfect prediction
        cases.append(loss_case(r_pred, b_pred, r_true, b_true, w))

    with OUT.open("w", encoding="utf-8") as fh:
        for case in cases:
            fh.write(json.dumps(case) + "\n")
    print(f"wrote {len(cases)} fixtures -> {OUT}")


if __name__ == "__main__":
    main()
