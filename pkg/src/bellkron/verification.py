"""Independent oracles: Wick/Isserlis combinatorial moments, Monte Carlo
estimation, and exact polynomial composition.

Nothing here touches the Bell polynomial or Kronecker code paths, so these
results are usable as ground truth for them.  Monte Carlo draws are fully
pinned: numpy's default_rng(seed) produces one (samples, dim) standard
normal block, row i is sample i, and samples map through the lower Cholesky
factor as mean + z @ L.T.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .matrix_calculus import PolyFn
from .normal_moments import GaussianSpec

MAX_ISSERLIS_ORDER = 10
DEFAULT_MONOMIAL_CAP = 200_000


@dataclass(frozen=True)
class PairingPartition:
    """A split of factor positions into singletons and unordered pairs."""

    singletons: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]


def iter_pairing_partitions(n: int):
    """Every partition of positions 0..n-1 into singletons and pairs."""

    def rec(remaining):
        if not remaining:
            yield (), ()
            return
        a, rest = remaining[0], remaining[1:]
        for singles, pairs in rec(rest):
            yield (a,) + singles, pairs
        for i in range(len(rest)):
            b = rest[i]
            for singles, pairs in rec(rest[:i] + rest[i + 1:]):
                yield singles, ((a, b),) + pairs

    for singles, pairs in rec(tuple(range(n))):
        yield PairingPartition(singles, pairs)


def isserlis_moment(spec: GaussianSpec, exponents) -> float:
    """E[prod X_i^{e_i}] by the Wick expansion with mean terms: sum over all
    singleton/pair partitions of prod mu_singleton * prod Sigma_pair."""
    exponents = [int(e) for e in exponents]
    if len(exponents) != spec.dim or any(e < 0 for e in exponents):
        raise ValueError(f"exponents must be {spec.dim} nonnegative integers")
    n = sum(exponents)
    if n > MAX_ISSERLIS_ORDER:
        raise ValueError(f"total order {n} exceeds the enumeration cap {MAX_ISSERLIS_ORDER}")
    if n == 0:
        return 1.0
    var = []
    for i, e in enumerate(exponents):
        var.extend([i] * e)
    total = 0.0
    for part in iter_pairing_partitions(n):
        term = 1.0
        for s in part.singletons:
            term *= spec.mean[var[s]]
        for a, b in part.pairs:
            term *= spec.cov[var[a], var[b]]
        total += term
    return total


def monte_carlo_moment(spec: GaussianSpec, exponents, samples: int,
                       seed: int) -> tuple[float, float]:
    """Sample estimate and standard error of E[prod X_i^{e_i}]."""
    exponents = [int(e) for e in exponents]
    if len(exponents) != spec.dim or any(e < 0 for e in exponents):
        raise ValueError(f"exponents must be {spec.dim} nonnegative integers")
    if samples < 10_000:
        raise ValueError("at least 10^4 samples are required")
    try:
        chol = np.linalg.cholesky(spec.cov)
    except np.linalg.LinAlgError as exc:
        raise ValueError("covariance is not factorizable (not PSD within tolerance)") from exc
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((samples, spec.dim))
    x = spec.mean + z @ chol.T
    values = np.ones(samples)
    for i, e in enumerate(exponents):
        if e:
            values = values * x[:, i] ** e
    estimate = float(values.mean())
    stderr = float(values.std(ddof=1) / np.sqrt(samples))
    return estimate, stderr


def _mul(a: dict, b: dict, cap: int) -> dict:
    out: dict[tuple[int, ...], float] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0.0) + ca * cb
        if len(out) > cap:
            raise ValueError(f"composition exceeds the monomial cap {cap}")
    return {e: c for e, c in out.items() if c != 0.0}


def compose_poly(f: PolyFn, g: PolyFn, monomial_cap: int = DEFAULT_MONOMIAL_CAP) -> PolyFn:
    """Exact monomial-level expansion of f after g.

    The jet of the result is ground truth for composite-derivative code at
    orders where finite differences are useless.
    """
    if f.n_x != g.n_y:
        raise ValueError(f"f consumes {f.n_x} inputs but g produces {g.n_y}")
    one = tuple([0] * g.n_x)
    inner: list[dict] = [dict(rows) for rows in g.components]
    out_components = []
    for rows in f.components:
        acc: dict[tuple[int, ...], float] = {}
        for exps, coeff in rows:
            term = {one: float(coeff)}
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = _mul(term, inner[i], monomial_cap)
            for key, c in term.items():
                acc[key] = acc.get(key, 0.0) + c
            if len(acc) > monomial_cap:
                raise ValueError(f"composition exceeds the monomial cap {monomial_cap}")
        out_components.append([(c, e) for e, c in acc.items()])
    return PolyFn(g.n_x, f.n_y, out_components)


def partition_type_count(n: int) -> int:
    """Number of pure pairings of n positions (no singletons); equals the
    double factorial (n-1)!! for even n."""
    return sum(1 for p in iter_pairing_partitions(n) if not p.singletons)


def double_factorial_odd(m: int) -> int:
    """(2m-1)!! computed directly."""
    return prod(range(1, 2 * m, 2))
