"""Acceptance suite: one test per release criterion.

Each test prints a single [ACCEPTANCE] pass/fail line (visible with -s or
-rA) and enforces the criterion's numeric tolerance and runtime budget.
Run with:  pytest tests/test_acceptance.py -v -s
"""

import math
import os
import time
from contextlib import contextmanager

import numpy as np
import pytest

from aesu import (
    BetaShape,
    DEFAULT_WEIGHTS,
    Opinion,
    RecommendationRule,
    SyntheticSpec,
    TernaryCenter,
    TernaryClass,
    AnalysisOptions,
    analyze_corpus,
    b2r,
    classify,
    compute_center,
    delta_distribution,
    dip_test,
    dud,
    emd,
    fd_gradient,
    fit_beta,
    generate_synthetic,
    l2_rmsle,
    l3_consistency,
    med,
    normalize_counts,
    opinion_from_shape,
    read_corpus,
    simulate_recommendation,
    uniform_distribution,
)
from aesu.cli import cli_main
from conftest import random_distribution, random_opinion, random_shape
from oracles import grid_fit_oracle


@contextmanager
def criterion(name: str, max_seconds: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] {name}: FAIL")
        raise
    elapsed = time.perf_counter() - start
    if max_seconds is not None:
        assert elapsed < max_seconds, f"{name} took {elapsed:.1f}s (limit {max_seconds}s)"
    print(f"[ACCEPTANCE] {name}: PASS ({elapsed:.2f}s)")


def test_opinion_conversion_conformance():
    with criterion("opinion conversion conformance", max_seconds=1.0):
        rng = np.random.default_rng(1)
        for _ in range(1000):
            o = opinion_from_shape(random_shape(rng, 1.0, 500.0))
            assert abs(o.belief + o.disbelief + o.uncertainty - 1.0) <= 1e-12
            assert o.belief >= 0.0 and o.disbelief >= 0.0 and o.uncertainty >= 0.0
        assert opinion_from_shape(BetaShape(1, 1)).as_tuple() == (0.0, 0.0, 1.0)
        assert opinion_from_shape(BetaShape(9, 1)).as_tuple() == (0.8, 0.0, 0.2)


def test_fit_round_trip():
    with criterion("fit round-trip on 200 seeded shapes", max_seconds=60.0):
        rng = np.random.default_rng(2)
        for _ in range(200):
            true = random_shape(rng, 1.2, 30.0)
            res = fit_beta(b2r(true), r=2.0, seed=7)
            want = opinion_from_shape(true).as_tuple()
            got = opinion_from_shape(res.shape).as_tuple()
            assert got == pytest.approx(want, abs=0.01)
            assert res.fit_emd <= 1e-4


def test_grid_oracle_optimality():
    with criterion("grid-oracle optimality on 50 noisy histograms", max_seconds=300.0):
        spec = SyntheticSpec(
            n_images=50, raters_per_image=200, vote_noise=0.05, seed=33
        )
        for i, rec in enumerate(generate_synthetic(spec)):
            res = fit_beta(rec.distribution, r=2.0, seed=[33, i])
            _, _, grid_best = grid_fit_oracle(rec.distribution.probs, r=2.0)
            assert res.fit_emd <= grid_best + 1e-4


def test_loss_identities():
    with criterion("loss identities"):
        shape = BetaShape(4.5, 2.0)
        assert l3_consistency(b2r(shape), shape) <= 1e-12
        assert DEFAULT_WEIGHTS.combine(1.0, 1.0, 1.0) == 0.6
        assert abs(l2_rmsle(BetaShape(3, 1), BetaShape(1, 3)) - math.log(2)) <= 1e-12


def test_finite_difference_consistency():
    with criterion("finite-difference Richardson consistency"):
        cases = [
            (lambda v: math.sin(v[0]) * math.exp(v[1]),
             np.array([0.4, 0.3]),
             np.array([math.cos(0.4) * math.exp(0.3), math.sin(0.4) * math.exp(0.3)])),
            (lambda v: math.exp(v[0] * v[1]),
             np.array([0.8, 0.6]),
             np.array([0.6 * math.exp(0.48), 0.8 * math.exp(0.48)])),
            (lambda v: v[0] ** 4 + math.cos(v[1]),
             np.array([1.1, 0.9]),
             np.array([4 * 1.1 ** 3, -math.sin(0.9)])),
        ]
        for f, x, exact in cases:
            err_h = np.linalg.norm(fd_gradient(f, x, h=1e-3) - exact)
            err_h2 = np.linalg.norm(fd_gradient(f, x, h=5e-4) - exact)
            assert 3.5 <= err_h / err_h2 <= 4.5


def _two_cluster_histogram(rng) -> "normalize_counts":
    counts = np.zeros(10, dtype=int)
    lo = int(rng.integers(1, 4))  # cluster center among scores 1..3
    hi = int(rng.integers(7, 10))  # cluster center among scores 7..9
    left = int(rng.integers(90, 111))
    counts[lo - 1] = left
    counts[hi - 1] = 200 - left
    return normalize_counts(counts)


def test_dip_test_pipeline():
    with criterion("dip-test pipeline on synthetic corpora", max_seconds=600.0):
        boot, seed = 2000, 77
        spec = SyntheticSpec(
            n_images=500, raters_per_image=200, vote_noise=0.05, seed=55
        )
        unimodal_hits = sum(
            dip_test(rec.distribution, boot=boot, seed=seed).unimodal
            for rec in generate_synthetic(spec)
        )
        assert unimodal_hits >= 0.90 * 500, f"only {unimodal_hits}/500 accepted"

        rng = np.random.default_rng(66)
        bimodal_hits = sum(
            not dip_test(_two_cluster_histogram(rng), boot=boot, seed=seed).unimodal
            for _ in range(200)
        )
        assert bimodal_hits >= 0.90 * 200, f"only {bimodal_hits}/200 rejected"


def test_ternary_classification():
    with criterion("ternary classification"):
        ava_center = TernaryCenter(0.419, 0.444, 0.137)
        assert classify(Opinion(0.50, 0.35, 0.15), ava_center) is TernaryClass.PLEASING
        assert classify(Opinion(0.35, 0.40, 0.25), ava_center) is TernaryClass.UNCERTAIN

        centroid = TernaryCenter(1 / 3, 1 / 3, 1 / 3)
        names = (TernaryClass.PLEASING, TernaryClass.UNPLEASING, TernaryClass.UNCERTAIN)
        rng = np.random.default_rng(3)
        for _ in range(10_000):
            o = random_opinion(rng)
            assert classify(o, centroid) is names[int(np.argmax(o.as_tuple()))]


def test_recommendation_simulation():
    with criterion("recommendation simulation direction", max_seconds=60.0):
        confident = generate_synthetic(SyntheticSpec(
            n_images=1000, raters_per_image=200,
            alpha_range=(8.0, 12.0), beta_range=(2.0, 3.0), seed=101,
        ))
        borderline = generate_synthetic(SyntheticSpec(
            n_images=1000, raters_per_image=200,
            alpha_range=(1.15, 1.35), beta_range=(1.0, 1.15), seed=202,
        ))
        corpus = confident + borderline
        opts = AnalysisOptions(seed=9, with_report=False)
        corpus = analyze_corpus(corpus, opts, jobs=4)
        center = compute_center([r.opinion for r in corpus])
        summary = simulate_recommendation(corpus, center)
        binary = summary.by_rule(RecommendationRule.BINARY_MEAN).satisfaction
        ternary = summary.by_rule(RecommendationRule.TERNARY_PLEASING).satisfaction
        assert ternary - binary >= 0.01, f"ternary {ternary:.4f} vs binary {binary:.4f}"


@pytest.mark.skipif(
    not os.environ.get("AVA_RATINGS_PATH"),
    reason="set AVA_RATINGS_PATH to an AVA.txt ratings file for the informational run",
)
def test_recommendation_simulation_on_ava():
    # informational only: reports both ratios for comparison against the
    # published 58.26% / 61.79%; no tolerance asserted
    path = os.environ["AVA_RATINGS_PATH"]
    records = read_corpus(path, "ava", skip_bad=True)
    records = analyze_corpus(records, AnalysisOptions(seed=1, with_report=False), jobs=4)
    center = compute_center([r.opinion for r in records])
    summary = simulate_recommendation(records, center)
    for result in summary.results:
        print(
            f"[ACCEPTANCE:INFO] AVA {result.rule.value} rule: "
            f"satisfaction {100 * result.satisfaction:.2f}% "
            f"over {result.n_recommended} images"
        )


def test_metric_axioms():
    with criterion("metric axioms"):
        rng = np.random.default_rng(4)
        for _ in range(1000):
            p, q = random_distribution(rng), random_distribution(rng)
            assert emd(p, p, 2.0) == 0.0
            assert emd(p, q, 1.0) == pytest.approx(emd(q, p, 1.0), abs=1e-15)
        for _ in range(1000):
            p, q, s = (random_distribution(rng) for _ in range(3))
            assert emd(p, s, 1.0) <= emd(p, q, 1.0) + emd(q, s, 1.0) + 1e-12
        assert dud(uniform_distribution()) == 0.0
        assert med(uniform_distribution()) == 0.0
        assert dud(delta_distribution(1)) == pytest.approx(0.45, abs=1e-15)


def test_pipeline_determinism(tmp_path):
    with criterion("pipeline determinism across jobs", max_seconds=300.0):
        outputs = {}
        for tag, jobs in (("a", "1"), ("b", "3")):
            base = tmp_path / tag
            base.mkdir()
            corpus = base / "corpus.jsonl"
            metrics = base / "metrics.jsonl"
            classes = base / "classes.jsonl"
            summary = base / "summary.json"
            assert cli_main(["gen", "--n", "40", "--raters", "120", "--seed", "5",
                             "--noise", "0.05", "--out", str(corpus)]) == 0
            assert cli_main(["metrics", "--input", str(corpus), "--format", "jsonl",
                             "--out", str(metrics), "--seed", "11", "--boot", "300",
                             "--jobs", jobs]) == 0
            assert cli_main(["classify", "--input", str(metrics), "--format", "jsonl",
                             "--out", str(classes), "--seed", "11",
                             "--jobs", jobs]) == 0
            assert cli_main(["simulate", "--input", str(classes), "--format", "jsonl",
                             "--seed", "11", "--jobs", jobs,
                             "--out", str(summary)]) == 0
            outputs[tag] = tuple(
                f.read_bytes() for f in (corpus, metrics, classes, summary)
            )
        assert outputs["a"] == outputs["b"]
