import math

import numpy as np
import pytest

from aesu import (
    BetaShape,
    DEFAULT_WEIGHTS,
    InvalidWeights,
    LossWeights,
    NonFiniteValue,
    RatingDistribution,
    b2r,
    delta_distribution,
    emd,
    fd_gradient,
    l1_emd,
    l2_rmsle,
    l3_consistency,
    total_loss,
    uniform_distribution,
)
from conftest import random_distribution, random_shape


class TestL1:
    def test_identical(self):
        u = uniform_distribution()
        assert l1_emd(u, u) == 0.0

    def test_extreme_bins(self):
        assert l1_emd(delta_distribution(1), delta_distribution(10)) == pytest.approx(
            math.sqrt(0.9)
        )

    def test_symmetric(self, rng):
        for _ in range(10):
            p, q = random_distribution(rng), random_distribution(rng)
            assert l1_emd(p, q) == pytest.approx(l1_emd(q, p), abs=1e-15)


class TestL2:
    def test_equal_shapes(self):
        assert l2_rmsle(BetaShape(4, 7), BetaShape(4, 7)) == 0.0

    def test_swapped_pair(self):
        assert l2_rmsle(BetaShape(3, 1), BetaShape(1, 3)) == pytest.approx(
            math.log(2), abs=1e-12
        )

    def test_scale_robustness(self):
        # oracle: the absolute-error analog on the same pair
        pred, true = BetaShape(110, 110), BetaShape(100, 100)
        rmse = math.sqrt(((110 - 100) ** 2 + (110 - 100) ** 2) / 2)
        assert l2_rmsle(pred, true) < rmse / 50


class TestL3:
    def test_consistent_heads(self):
        shape = BetaShape(2.5, 4.0)
        assert l3_consistency(b2r(shape), shape) <= 1e-12

    def test_uniform_pair(self):
        assert l3_consistency(uniform_distribution(), BetaShape(1, 1)) == pytest.approx(
            0.0, abs=1e-9
        )

    def test_spike_against_uniform_shape(self):
        # composition oracle: equals the plain EMD to the uniform histogram
        expected = emd(delta_distribution(10), b2r(BetaShape(1, 1)), 2.0)
        assert l3_consistency(delta_distribution(10), BetaShape(1, 1)) == pytest.approx(
            expected, abs=1e-12
        )


class TestTotalLoss:
    def test_unit_losses_reference_weights(self):
        assert DEFAULT_WEIGHTS.combine(1.0, 1.0, 1.0) == 0.6

    def test_perfect_prediction(self):
        shape = BetaShape(3, 5)
        p = b2r(shape)
        breakdown = total_loss(p, shape, p, shape)
        assert breakdown.l1 == 0.0
        assert breakdown.l2 == 0.0
        assert breakdown.l3 <= 1e-12
        assert breakdown.total <= 1e-12

    def test_projection_weights(self, rng):
        w = LossWeights(1.0, 0.0, 0.0, 0.7)
        p, q = random_distribution(rng), random_distribution(rng)
        s1, s2 = random_shape(rng), random_shape(rng)
        breakdown = total_loss(p, s1, q, s2, w)
        assert breakdown.total == breakdown.l1

    def test_combination_identity(self, rng):
        for _ in range(20):
            p, q = random_distribution(rng), random_distribution(rng)
            s1, s2 = random_shape(rng), random_shape(rng)
            bd = total_loss(p, s1, q, s2)
            w = DEFAULT_WEIGHTS
            assert bd.total == w.w1 * bd.l1 + w.w2 * w.wb * bd.l2 + w.w3 * bd.l3
            assert bd.l1 >= 0 and bd.l2 >= 0 and bd.l3 >= 0

    def test_invalid_weights(self):
        with pytest.raises(InvalidWeights):
            LossWeights(0.5, 0.5, 0.5, 0.2)
        with pytest.raises(InvalidWeights):
            LossWeights(-0.2, 1.0, 0.2, 0.2)


class TestFdGradient:
    def test_quadratic(self):
        grad = fd_gradient(lambda x: float(np.sum(x**2)), [1.0, 2.0], h=1e-4)
        assert grad == pytest.approx([2.0, 4.0], abs=1e-6)

    def test_l2_zero_at_minimum(self):
        def f(v):
            return l2_rmsle(BetaShape(v[0], v[1]), BetaShape(4, 6))

        grad = fd_gradient(f, [4.0, 6.0], h=1e-6)
        assert grad == pytest.approx([0.0, 0.0], abs=1e-5)

    def test_richardson_halving(self):
        # smooth non-polynomial target; central differences are O(h^2), so
        # halving h should shrink the error by about 4x
        def f(v):
            return math.sin(v[0]) * math.exp(v[1])

        x = np.array([0.4, 0.3])
        exact = np.array([math.cos(0.4) * math.exp(0.3), math.sin(0.4) * math.exp(0.3)])
        err_h = np.linalg.norm(fd_gradient(f, x, h=1e-3) - exact)
        err_h2 = np.linalg.norm(fd_gradient(f, x, h=5e-4) - exact)
        assert 3.5 <= err_h / err_h2 <= 4.5

    def test_non_finite(self):
        with pytest.raises(NonFiniteValue):
            fd_gradient(lambda v: float("nan"), [0.0], h=1e-4)

    def test_bad_step(self):
        with pytest.raises(ValueError):
            fd_gradient(lambda v: 0.0, [0.0], h=0.0)

    def test_l1_descent_direction(self, rng):
        # the projected negative gradient must not increase the loss
        from aesu.distributions import _emd_probs

        for _ in range(10):
            p = rng.dirichlet(np.full(10, 2.0))
            target = rng.dirichlet(np.full(10, 2.0))

            def f(v):
                return _emd_probs(v, target, 2.0)

            grad = fd_gradient(f, p, h=1e-7)
            step = grad - grad.mean()  # tangent to the simplex
            if np.linalg.norm(step) < 1e-12:
                continue
            eta = 1e-5 / np.linalg.norm(step)
            moved = p - eta * step
            assert moved.min() > 0
            assert f(moved) <= f(p) + 1e-12
