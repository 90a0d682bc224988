from math import factorial

import numpy as np
import pytest

from bellkron import Jet, PolyFn


def rel_gap(actual, expected) -> float:
    """Max-abs difference scaled by 1 + max-abs of the expected side."""
    actual = np.asarray(actual, dtype=float)
    expected = np.asarray(expected, dtype=float)
    return float(np.max(np.abs(actual - expected)) / (1.0 + np.max(np.abs(expected))))


def random_jet(rng, n_x: int, n_y: int, max_order: int) -> Jet:
    mats = tuple(rng.uniform(-1.0, 1.0, size=(n_y, n_x ** l))
                 for l in range(1, max_order + 1))
    return Jet(n_x, n_y, rng.uniform(-1.0, 1.0, size=n_y), mats)


def random_poly(rng, n_x: int, n_y: int, degree: int, terms: int = 4) -> PolyFn:
    """Random polynomial whose derivative entries stay O(1): each monomial
    coefficient is scaled by the inverse exponent factorials."""
    components = []
    for _ in range(n_y):
        monos = []
        for _ in range(terms):
            exps = [0] * n_x
            for _ in range(int(rng.integers(0, degree + 1))):
                exps[int(rng.integers(0, n_x))] += 1
            norm = 1.0
            for e in exps:
                norm *= factorial(e)
            monos.append((float(rng.uniform(-1.0, 1.0)) / norm, tuple(exps)))
        components.append(monos)
    return PolyFn(n_x, n_y, components)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
