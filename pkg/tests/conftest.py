import numpy as np
import pytest

from aesu import BetaShape, Opinion, RatingDistribution


def random_distribution(rng: np.random.Generator, concentration: float = 1.0) -> RatingDistribution:
    return RatingDistribution(tuple(rng.dirichlet(np.full(10, concentration))))


def random_shape(rng: np.random.Generator, lo: float = 1.2, hi: float = 30.0) -> BetaShape:
    a = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
    b = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
    return BetaShape(a, b)


def random_opinion(rng: np.random.Generator) -> Opinion:
    b, d, u = rng.dirichlet((1.0, 1.0, 1.0))
    u = 1.0 - b - d  # exact sum for the strict invariant
    return Opinion(float(b), float(d), float(u))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
