"""Univariate and matrix-valued partial Bell polynomials, plus the sandwiched
recurrence identities that survive the move to Kronecker products.

Zero conventions: B_{n,k} is zero for k > n and for n = 0 or k = 0.  The
recurrence sums reference B_{n-i,k-1}; at k = 1 every such factor is zero
except the i = n slot, where the would-be 1x1 unit factor is never built --
the term is the bare derivative matrix instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .kron_ops import DEFAULT_SIZE_CAP, check_size, kron, kron_chain, kron_power
from .partitions import BellIndex, bell_coefficient, enumerate_bell_indices


@dataclass(frozen=True, eq=False)
class Jet:
    """A function value plus its derivative matrices for orders 1..L.

    The order-l matrix has shape (n_y, n_x**l); column c encodes the
    multi-index (i_1, ..., i_l) with the first digit most significant, so
    c = sum_t i_t * n_x**(l - 1 - t) for 0-based digits.
    """

    n_x: int
    n_y: int
    value: np.ndarray
    matrices: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        value = np.asarray(self.value, dtype=float).reshape(-1)
        if value.shape != (self.n_y,):
            raise ValueError(f"value length {value.shape} != n_y = {self.n_y}")
        mats = []
        for l, m in enumerate(self.matrices, start=1):
            m = np.asarray(m, dtype=float)
            expected = (self.n_y, self.n_x ** l)
            if m.shape != expected:
                raise ValueError(f"order-{l} matrix has shape {m.shape}, expected {expected}")
            mats.append(m)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "matrices", tuple(mats))

    @property
    def max_order(self) -> int:
        return len(self.matrices)

    def matrix(self, order: int) -> np.ndarray:
        if not 1 <= order <= self.max_order:
            raise ValueError(f"jet holds orders 1..{self.max_order}, requested {order}")
        return self.matrices[order - 1]


def bell_univariate(n: int, k: int, g) -> float:
    """Scalar partial Bell polynomial over the derivative values g[0], g[1], ...

    g[l-1] is the order-l derivative.  Returns 0 for k > n and for the n = 0
    or k = 0 conventions.
    """
    if n < 0 or k < 0:
        raise ValueError(f"n and k must be nonnegative, got n={n}, k={k}")
    if k > n or n == 0 or k == 0:
        return 0.0
    if len(g) < n - k + 1:
        raise ValueError(f"need {n - k + 1} derivative values, got {len(g)}")
    total = 0.0
    for idx in enumerate_bell_indices(n, k):
        term = float(bell_coefficient(idx))
        for l, j_l in enumerate(idx.j, start=1):
            if j_l:
                term *= float(g[l - 1]) ** j_l
        total += term
    return total


def base_polynomial(idx: BellIndex, g: Jet, size_cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """One coefficient-free Bell term: the Kronecker chain with j_l copies of
    the order-l derivative matrix, shape (n_y**k, n_x**n)."""
    check_size(g.n_y ** idx.k, g.n_x ** idx.n, size_cap)
    factors = []
    for l, j_l in enumerate(idx.j, start=1):
        factors.extend([g.matrix(l)] * j_l)
    return kron_chain(factors, size_cap=size_cap)


def bell_multivariate(n: int, k: int, g: Jet, size_cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """Matrix-valued partial Bell polynomial, shape (n_y**k, n_x**n).

    Terms accumulate in lexicographic index order with compensated summation
    so results are deterministic and cancellation-resistant.
    """
    if n < 1 or k < 1:
        raise ValueError(f"n and k must be positive, got n={n}, k={k}")
    check_size(g.n_y ** k, g.n_x ** n, size_cap)
    total = np.zeros((g.n_y ** k, g.n_x ** n))
    if k > n:
        return total
    comp = np.zeros_like(total)
    for idx in enumerate_bell_indices(n, k):
        term = float(bell_coefficient(idx)) * base_polynomial(idx, g, size_cap=size_cap)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def sandwich_value(D, k: int, matrix, X, n: int, size_cap: int = DEFAULT_SIZE_CAP) -> float:
    """D^{(x)k} @ matrix @ X^{(x)n} as a scalar, for row D and column X."""
    D = np.asarray(D, dtype=float).reshape(1, -1)
    X = np.asarray(X, dtype=float).reshape(-1, 1)
    left = kron_power(D, k, size_cap=size_cap)
    right = kron_power(X, n, size_cap=size_cap)
    return float((left @ np.asarray(matrix, dtype=float) @ right)[0, 0])


def bell_dx_sandwich_rhs(n: int, k: int, g: Jet, D, X,
                         size_cap: int = DEFAULT_SIZE_CAP) -> float:
    """Sandwiched derivative recurrence right side:

        D^{(x)k} [ sum_i C(n,i) (B_{n-i,k-1} (x) g_{x^{i+1}}) ] X^{(x)(n+1)}.

    At k = 1 only the i = n slot survives and contributes the bare
    g_{x^{n+1}} (the 1x1 unit Bell factor is never synthesized).
    """
    if n < 1 or k < 1 or k > n:
        raise ValueError(f"require 1 <= k <= n, got n={n}, k={k}")
    rhs = np.zeros((g.n_y ** k, g.n_x ** (n + 1)))
    if k == 1:
        rhs = float(comb(n, n)) * g.matrix(n + 1)
    else:
        for i in range(1, n - k + 2):
            b = bell_multivariate(n - i, k - 1, g, size_cap=size_cap)
            rhs = rhs + comb(n, i) * kron(b, g.matrix(i + 1), size_cap=size_cap)
    return sandwich_value(D, k, rhs, X, n + 1, size_cap=size_cap)


def recurrence_check(n: int, k: int, g: Jet, D, X,
                     size_cap: int = DEFAULT_SIZE_CAP) -> float:
    """Residual of the sandwiched step recurrence

        D^{(x)k} B_{n+1,k} X^{(x)(n+1)}
            = D^{(x)k} [ (B_{n,k-1} (x) g_x) + d B_{n,k}/dx' ] X^{(x)(n+1)},

    with the derivative term expanded through bell_dx_sandwich_rhs.  Holds
    for arbitrary jet matrices of the right shapes; the absolute difference
    is returned.
    """
    if n < 1 or k < 1 or k > n:
        raise ValueError(f"require 1 <= k <= n, got n={n}, k={k}")
    lhs = sandwich_value(D, k, bell_multivariate(n + 1, k, g, size_cap=size_cap),
                         X, n + 1, size_cap=size_cap)
    rhs = bell_dx_sandwich_rhs(n, k, g, D, X, size_cap=size_cap)
    if k >= 2:
        grown = kron(bell_multivariate(n, k - 1, g, size_cap=size_cap), g.matrix(1),
                     size_cap=size_cap)
        rhs += sandwich_value(D, k, grown, X, n + 1, size_cap=size_cap)
    return abs(lhs - rhs)
