"""Beta-distribution machinery: special functions, discretization, fitting.

The pipeline here is: a crowd rating histogram is approximated by the beta
density whose 10-bin discretization minimizes the earth mover's distance
to the histogram, and the fitted shape pair (alpha, beta) is then read as
a binomial subjective-logic opinion

    belief      b = (alpha - 1) / (alpha + beta)
    disbelief   d = (beta  - 1) / (alpha + beta)
    uncertainty u = 2 / (alpha + beta)

which is only well-formed for alpha, beta >= 1, hence the fit-space
constraint baked into BetaShape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import NUM_BINS, BIN_CENTERS, RatingDistribution
from .errors import DomainError, InvalidOrder

__all__ = [
    "SHAPE_MIN",
    "SHAPE_MAX",
    "BetaShape",
    "Opinion",
    "FitResult",
    "log_beta_fn",
    "beta_pdf",
    "reg_inc_beta",
    "b2r",
    "opinion_from_shape",
    "moments_init",
    "fit_beta",
]

#: Lower bound keeps opinions valid (b, d >= 0 needs alpha, beta >= 1).
SHAPE_MIN = 1.0
#: Upper cap keeps the optimizer landscape finite on single-bin spikes and
#: bounds uncertainty away from exact zero (u >= 2/1000).
SHAPE_MAX = 500.0


@dataclass(frozen=True)
class BetaShape:
    """Shape-parameter pair of a beta density, constrained to fit space."""

    alpha: float
    beta: float

    def __post_init__(self):
        a = float(self.alpha)
        b = float(self.beta)
        if not (SHAPE_MIN <= a <= SHAPE_MAX) or not (SHAPE_MIN <= b <= SHAPE_MAX):
            raise DomainError(
                f"shape parameters must lie in [{SHAPE_MIN:g}, {SHAPE_MAX:g}], "
                f"got alpha={a!r}, beta={b!r}"
            )
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)


@dataclass(frozen=True)
class Opinion:
    """Binomial subjective-logic opinion; components sum to 1."""

    belief: float
    disbelief: float
    uncertainty: float

    def __post_init__(self):
        b, d, u = (float(self.belief), float(self.disbelief), float(self.uncertainty))
        for name, v in (("belief", b), ("disbelief", d), ("uncertainty", u)):
            if not (-1e-12 <= v <= 1.0 + 1e-12):
                raise ValueError(f"{name}={v!r} outside [0, 1]")
        if abs(b + d + u - 1.0) > 1e-12:
            raise ValueError(f"components sum to {b + d + u!r}, expected 1")
        object.__setattr__(self, "belief", b)
        object.__setattr__(self, "disbelief", d)
        object.__setattr__(self, "uncertainty", u)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.belief, self.disbelief, self.uncertainty)


@dataclass(frozen=True)
class FitResult:
    """Outcome of fitting a beta shape to a rating distribution."""

    shape: BetaShape
    fit_emd: float
    iterations: int
    converged: bool


def log_beta_fn(a: float, b: float) -> float:
    """ln B(a, b) via log-gamma; the Eq.-free route through lgamma keeps
    relative error at machine level even for large arguments."""
    if a <= 0 or b <= 0:
        raise DomainError(f"log_beta_fn needs positive arguments, got ({a!r}, {b!r})")
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_pdf(x: float, shape: BetaShape) -> float:
    """Beta density at x; endpoint values are the exponent-zero limits."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x={x!r} outside [0, 1]")
    a, b = shape.alpha, shape.beta
    # At the endpoints a zero base with exponent zero takes its limit 1,
    # leaving 1/B(1, b) = b at x=0 (resp. 1/B(a, 1) = a at x=1).
    if x == 0.0:
        return b if a == 1.0 else 0.0
    if x == 1.0:
        return a if b == 1.0 else 0.0
    log_pdf = (a - 1) * math.log(x) + (b - 1) * math.log1p(-x) - log_beta_fn(a, b)
    return math.exp(log_pdf)


_CF_EPS = 3e-16
_CF_TINY = 1e-300
_CF_MAX_ITER = 500


class NonConvergence(RuntimeError):
    pass


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise NonConvergence(f"incomplete-beta continued fraction stalled at a={a}, b={b}, x={x}")


def _reg_inc_beta_raw(a: float, b: float, x: float, log_beta: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    log_front = a * math.log(x) + b * math.log1p(-x) - log_beta
    front = math.exp(log_front)
    # Symmetry switch keeps the continued fraction in its fast-converging
    # region.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def reg_inc_beta(x: float, shape: BetaShape) -> float:
    """Regularized incomplete beta I_x(alpha, beta), the beta CDF at x."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x={x!r} outside [0, 1]")
    a, b = shape.alpha, shape.beta
    return min(1.0, max(0.0, _reg_inc_beta_raw(a, b, x, log_beta_fn(a, b))))


def _b2r_probs(alpha: float, beta: float) -> list[float]:
    log_beta = math.lgamma(alpha) + math.lgamma(beta) - math.lgamma(alpha + beta)
    edges = [_reg_inc_beta_raw(alpha, beta, s / NUM_BINS, log_beta) for s in range(1, NUM_BINS)]
    cdf_vals = [0.0] + edges + [1.0]
    return [max(cdf_vals[i + 1] - cdf_vals[i], 0.0) for i in range(NUM_BINS)]


def b2r(shape: BetaShape) -> RatingDistribution:
    """Discretize a beta density to the ten score bins.

    Bin s-1 receives the beta probability mass of [(s-1)/10, s/10), i.e.
    the difference of the regularized incomplete beta at the bin edges.
    """
    return RatingDistribution(tuple(_b2r_probs(shape.alpha, shape.beta)))


def opinion_from_shape(shape: BetaShape) -> Opinion:
    """Convert a shape pair to the (belief, disbelief, uncertainty) triple."""
    a, b = shape.alpha, shape.beta
    if a < 1.0 or b < 1.0:
        raise DomainError("opinion conversion needs alpha, beta >= 1")
    s = a + b
    return Opinion((a - 1.0) / s, (b - 1.0) / s, 2.0 / s)


def moments_init(p: RatingDistribution) -> BetaShape:
    """Method-of-moments starting shape for the fit.

    Matches the beta mean/variance to the histogram's on the normalized
    bin centers; a near-zero variance (single-bin spike) falls back to a
    large, mean-directed shape at the cap.
    """
    centers = np.asarray(BIN_CENTERS)
    probs = p.as_array()
    m = float(np.dot(probs, centers))
    v = float(np.dot(probs, (centers - m) ** 2))

    def clamp(x: float) -> float:
        return min(max(x, SHAPE_MIN), SHAPE_MAX)

    if v < 1e-9:
        alpha0 = clamp(SHAPE_MAX * m)
        beta0 = clamp(SHAPE_MAX - alpha0)
        return BetaShape(alpha0, beta0)
    t = m * (1.0 - m) / v - 1.0
    return BetaShape(clamp(m * t), clamp((1.0 - m) * t))


def _shape_from_unconstrained(a: float, c: float) -> tuple[float, float]:
    # alpha = 1 + e^a, clamped at the cap; exp guarded against overflow.
    alpha = SHAPE_MIN + math.exp(min(a, 30.0))
    beta = SHAPE_MIN + math.exp(min(c, 30.0))
    return (min(alpha, SHAPE_MAX), min(beta, SHAPE_MAX))


def _unconstrained_from_shape(shape: BetaShape) -> tuple[float, float]:
    a = math.log(max(shape.alpha - SHAPE_MIN, 1e-8))
    c = math.log(max(shape.beta - SHAPE_MIN, 1e-8))
    return (a, c)


def _nelder_mead(f, x0: tuple[float, float], max_iter: int = 500,
                 diam_tol: float = 1e-6, step: float = 0.25):
    """Minimize f over R^2 with the standard reflect/expand/contract simplex.

    Returns (best point, best value, iterations used, converged flag); the
    converged flag means the simplex diameter dropped below diam_tol.
    Points are plain float pairs: the dimension is fixed at 2 and the
    objective dominates the cost, so array machinery would only add
    overhead here.
    """
    simplex = [
        (x0[0], x0[1]),
        (x0[0] + step, x0[1]),
        (x0[0], x0[1] + step),
    ]
    values = [f(v) for v in simplex]

    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        order = sorted(range(3), key=lambda i: values[i])
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        (bx, by), (sx, sy), (wx, wy) = simplex

        diam2 = max(
            (bx - sx) ** 2 + (by - sy) ** 2,
            (bx - wx) ** 2 + (by - wy) ** 2,
            (sx - wx) ** 2 + (sy - wy) ** 2,
        )
        if diam2 < diam_tol * diam_tol:
            converged = True
            break

        cx, cy = 0.5 * (bx + sx), 0.5 * (by + sy)
        reflected = (2.0 * cx - wx, 2.0 * cy - wy)
        f_r = f(reflected)
        if f_r < values[0]:
            expanded = (3.0 * cx - 2.0 * wx, 3.0 * cy - 2.0 * wy)
            f_e = f(expanded)
            if f_e < f_r:
                simplex[2], values[2] = expanded, f_e
            else:
                simplex[2], values[2] = reflected, f_r
        elif f_r < values[1]:
            simplex[2], values[2] = reflected, f_r
        else:
            if f_r < values[2]:
                contracted = (1.5 * cx - 0.5 * wx, 1.5 * cy - 0.5 * wy)
                f_c = f(contracted)
                if f_c <= f_r:
                    simplex[2], values[2] = contracted, f_c
                else:
                    simplex, values = _shrink(f, simplex, values)
            else:
                contracted = (0.5 * cx + 0.5 * wx, 0.5 * cy + 0.5 * wy)
                f_c = f(contracted)
                if f_c < values[2]:
                    simplex[2], values[2] = contracted, f_c
                else:
                    simplex, values = _shrink(f, simplex, values)

    best = min(range(3), key=lambda i: values[i])
    return simplex[best], values[best], iterations, converged


def _shrink(f, simplex, values):
    (bx, by) = simplex[0]
    new_simplex = [simplex[0]] + [
        (0.5 * (bx + x), 0.5 * (by + y)) for x, y in simplex[1:]
    ]
    return new_simplex, [values[0], f(new_simplex[1]), f(new_simplex[2])]


def fit_beta(p: RatingDistribution, r: float = 2.0, seed: int = 0) -> FitResult:
    """Fit a beta shape to a rating distribution by EMD minimization.

    The objective emd(b2r(shape), p, r) is minimized over the unconstrained
    plane via the softplus-free transform shape = (1 + e^a, 1 + e^c), which
    honors the alpha, beta >= 1 validity constraint without boundary
    handling. Nelder-Mead runs from the method-of-moments start plus three
    seeded perturbed restarts; among equally good optima the smallest
    alpha + beta (largest uncertainty) wins.

    Deterministic for a fixed seed; seeds may be ints or int sequences.
    """
    if r < 1:
        raise InvalidOrder(f"EMD order must be >= 1, got {r}")
    r = float(r)
    target_cdf = [0.0] * NUM_BINS
    acc = 0.0
    for i, pi in enumerate(p.probs):
        acc += pi
        target_cdf[i] = acc
    lgamma = math.lgamma
    inv_bins = 1.0 / NUM_BINS

    def objective(x: tuple[float, float]) -> float:
        # emd(b2r(shape), p, r) straight from the CDF edge values; the bin
        # CDF of b2r at score k is the incomplete beta at k/10
        alpha, beta = _shape_from_unconstrained(x[0], x[1])
        log_beta = lgamma(alpha) + lgamma(beta) - lgamma(alpha + beta)
        total = 0.0
        for k in range(1, NUM_BINS):
            edge = _reg_inc_beta_raw(alpha, beta, k * inv_bins, log_beta)
            total += abs(edge - target_cdf[k - 1]) ** r
        total += abs(1.0 - target_cdf[NUM_BINS - 1]) ** r
        return (total * inv_bins) ** (1.0 / r)

    x0 = _unconstrained_from_shape(moments_init(p))
    rng = np.random.default_rng(seed)
    starts = [x0] + [
        (x0[0] + rng.normal(0.0, 1.0), x0[1] + rng.normal(0.0, 1.0))
        for _ in range(3)
    ]

    best = None  # (f, alpha+beta, shape, iterations, converged)
    for start in starts:
        x, fx, iters, conv = _nelder_mead(objective, start)
        alpha, beta = _shape_from_unconstrained(x[0], x[1])
        cand = (fx, alpha + beta, BetaShape(alpha, beta), iters, conv)
        if best is None or cand[0] < best[0] - 1e-12 or (
            abs(cand[0] - best[0]) <= 1e-12 and cand[1] < best[1]
        ):
            best = cand
    fx, _, shape, iters, conv = best
    return FitResult(shape=shape, fit_emd=fx, iterations=iters, converged=conv)
