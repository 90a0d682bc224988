import numpy as np
import pytest

from bellkron import (
    GaussianSpec,
    PolyFn,
    compose_poly,
    identity_poly,
    isserlis_moment,
    iter_pairing_partitions,
    monte_carlo_moment,
)
from bellkron.verification import double_factorial_odd, partition_type_count
from conftest import random_poly

SIGMA = np.array([[2.0, 0.5], [0.5, 1.0]])


# ---------------------------------------------------------------------------
# pairing partitions and Isserlis


def test_pairing_partitions_cover_everything():
    for n in range(1, 7):
        for part in iter_pairing_partitions(n):
            seen = sorted(part.singletons + tuple(i for pair in part.pairs for i in pair))
            assert seen == list(range(n))


def test_pure_pairing_count_is_double_factorial():
    for m in range(1, 6):
        assert partition_type_count(2 * m) == double_factorial_odd(m)


def test_isserlis_fourth_cross_moment():
    # 3 pairings of 4 indices: (12)(34), (13)(24), (14)(23).
    spec = GaussianSpec(2, [0.0, 0.0], SIGMA)
    expected = SIGMA[0, 0] * SIGMA[1, 1] + 2.0 * SIGMA[0, 1] ** 2
    assert abs(isserlis_moment(spec, (2, 2)) - expected) < 1e-14
    assert abs(isserlis_moment(spec, (2, 2)) - 2.5) < 1e-14


def test_isserlis_first_moment(rng):
    spec = GaussianSpec(2, rng.uniform(-1, 1, 2), SIGMA)
    assert isserlis_moment(spec, (1, 0)) == spec.mean[0]


def test_isserlis_univariate_fourth_moment():
    spec = GaussianSpec(1, [0.0], [[1.7]])
    assert abs(isserlis_moment(spec, (4,)) - 3.0 * 1.7 ** 2) < 1e-13


def test_isserlis_zero_covariance_reduces_to_mean_powers(rng):
    mean = rng.uniform(-1, 1, 2)
    spec = GaussianSpec(2, mean, np.zeros((2, 2)))
    for exps in [(2, 1), (3, 0), (1, 2)]:
        expected = mean[0] ** exps[0] * mean[1] ** exps[1]
        assert abs(isserlis_moment(spec, exps) - expected) < 1e-13


def test_isserlis_order_cap():
    spec = GaussianSpec(1, [0.0], [[1.0]])
    with pytest.raises(ValueError):
        isserlis_moment(spec, (11,))


# ---------------------------------------------------------------------------
# Monte Carlo


def test_monte_carlo_constant_product():
    spec = GaussianSpec(2, [0.0, 0.0], SIGMA)
    estimate, stderr = monte_carlo_moment(spec, (0, 0), 10_000, seed=1)
    assert estimate == 1.0
    assert stderr == 0.0


def test_monte_carlo_recovers_mean():
    spec = GaussianSpec(2, [3.0, 0.0], SIGMA)
    estimate, stderr = monte_carlo_moment(spec, (1, 0), 50_000, seed=7)
    assert abs(estimate - 3.0) < 4.0 * stderr


def test_monte_carlo_fourth_cross_moment():
    spec = GaussianSpec(2, [0.0, 0.0], SIGMA)
    estimate, stderr = monte_carlo_moment(spec, (2, 2), 200_000, seed=11)
    assert abs(estimate - 2.5) < 4.0 * stderr


def test_monte_carlo_is_seed_deterministic():
    spec = GaussianSpec(2, [0.0, 0.0], SIGMA)
    first = monte_carlo_moment(spec, (2, 2), 10_000, seed=3)
    second = monte_carlo_moment(spec, (2, 2), 10_000, seed=3)
    assert first == second


def test_monte_carlo_stderr_shrinks_with_samples():
    spec = GaussianSpec(2, [0.0, 0.0], SIGMA)
    _, narrow = monte_carlo_moment(spec, (2, 2), 160_000, seed=5)
    _, wide = monte_carlo_moment(spec, (2, 2), 40_000, seed=5)
    assert 1.5 < wide / narrow < 2.7  # roughly a factor of two


def test_monte_carlo_rejects_small_samples_and_bad_cov():
    spec = GaussianSpec(2, [0.0, 0.0], SIGMA)
    with pytest.raises(ValueError):
        monte_carlo_moment(spec, (2, 2), 100, seed=1)
    singular = GaussianSpec(2, [0.0, 0.0], np.zeros((2, 2)))
    with pytest.raises(ValueError, match="factorizable"):
        monte_carlo_moment(singular, (2, 0), 10_000, seed=1)


# ---------------------------------------------------------------------------
# polynomial composition


def test_compose_with_identity_outer(rng):
    g = random_poly(rng, 2, 3, degree=3)
    assert compose_poly(identity_poly(3), g).components == g.components


def test_compose_scalar_square_of_shift():
    f = PolyFn(1, 1, [[(1.0, (2,))]])
    g = PolyFn(1, 1, [[(1.0, (1,)), (1.0, (0,))]])
    composed = compose_poly(f, g)
    assert composed.components[0] == (((0,), 1.0), ((1,), 2.0), ((2,), 1.0))


def test_compose_matches_pointwise_evaluation(rng):
    f = random_poly(rng, 2, 2, degree=2)
    g = random_poly(rng, 2, 2, degree=2)
    composed = compose_poly(f, g)
    for _ in range(20):
        x = rng.uniform(-1, 1, 2)
        direct = f.evaluate(g.evaluate(x))
        via = composed.evaluate(x)
        assert np.max(np.abs(direct - via)) <= 1e-12 * (1.0 + np.max(np.abs(direct)))


def test_compose_dimension_mismatch():
    f = PolyFn(2, 1, [[(1.0, (1, 0))]])
    g = PolyFn(1, 1, [[(1.0, (1,))]])
    with pytest.raises(ValueError):
        compose_poly(f, g)


def test_compose_monomial_cap():
    f = PolyFn(1, 1, [[(1.0, (6,))]])
    g = PolyFn(3, 1, [[(1.0, (1, 0, 0)), (1.0, (0, 1, 0)), (1.0, (0, 0, 1))]])
    with pytest.raises(ValueError, match="cap"):
        compose_poly(f, g, monomial_cap=10)
