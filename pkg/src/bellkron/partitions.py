"""Bell index sequences, their multinomial coefficients, and a set-partition
counting oracle.

A Bell index for the pair (n, k) is a sequence j = (j_1, ..., j_{n-k+1}) of
nonnegative integers with

    sum_l j_l     = k        (number of blocks)
    sum_l l * j_l = n        (total weight)

One index per partition type of an n-element set into k blocks; j_l counts
the blocks of size l.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

MAX_PARTITION_N = 12


@dataclass(frozen=True)
class BellIndex:
    """A valid (n, k) index sequence; validates the two Bell constraints."""

    n: int
    k: int
    j: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError(f"BellIndex requires n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        if len(self.j) != self.n - self.k + 1:
            raise ValueError(
                f"index length {len(self.j)} != n-k+1 = {self.n - self.k + 1}"
            )
        if any(v < 0 for v in self.j):
            raise ValueError(f"negative multiplicity in {self.j}")
        if sum(self.j) != self.k:
            raise ValueError(f"sum(j) = {sum(self.j)} != k = {self.k}")
        if sum(l * v for l, v in enumerate(self.j, start=1)) != self.n:
            raise ValueError(f"weighted sum of {self.j} != n = {self.n}")

    @property
    def factor_orders(self) -> tuple[int, ...]:
        """Derivative orders of the k chain factors, e.g. j=(1,1) -> (1, 2)."""
        orders = []
        for l, count in enumerate(self.j, start=1):
            orders.extend([l] * count)
        return tuple(orders)


def enumerate_bell_indices(n: int, k: int) -> list[BellIndex]:
    """All index sequences for (n, k), lexicographically increasing in j.

    Returns the empty list for k > n.  n = 0 or k = 0 is rejected: those
    polynomials are zero by convention and callers handle them directly.
    """
    if n < 1 or k < 1:
        raise ValueError(f"n and k must be positive, got n={n}, k={k}")
    if k > n:
        return []
    length = n - k + 1
    out: list[BellIndex] = []

    def extend(prefix: list[int], rem_k: int, rem_n: int):
        pos = len(prefix)
        if pos == length:
            if rem_k == 0 and rem_n == 0:
                out.append(BellIndex(n, k, tuple(prefix)))
            return
        l = pos + 1
        # j_l can't exceed what the block-count or weight budget allows
        max_jl = min(rem_k, rem_n // l)
        for v in range(max_jl + 1):
            extend(prefix + [v], rem_k - v, rem_n - v * l)

    extend([], k, n)
    return out


def bell_coefficient(idx: BellIndex) -> Fraction:
    """Multinomial coefficient of one Bell polynomial term, exact.

    alpha_j = n! / (prod_l j_l!) * prod_l (1/l!)^{j_l}.  The value counts
    set partitions of type j, so it is always a positive integer, but it is
    computed and returned as an exact Fraction to keep rounding out of the
    pipeline.
    """
    denom = 1
    for l, v in enumerate(idx.j, start=1):
        denom *= factorial(v) * factorial(l) ** v
    return Fraction(factorial(idx.n), denom)


def count_set_partitions(n: int, k: int) -> int:
    """Number of partitions of an n-element set into k nonempty blocks.

    Counts by walking every partition (restricted-growth assignment of each
    element to an existing block or a new one), so the result is independent
    of the Bell coefficient formula and usable as its oracle.
    """
    if n < 1 or k < 1:
        raise ValueError(f"n and k must be positive, got n={n}, k={k}")
    if n > MAX_PARTITION_N:
        raise ValueError(f"n = {n} exceeds the enumeration cap {MAX_PARTITION_N}")
    if k > n:
        return 0

    # Walk every restricted-growth assignment: element i joins one of the
    # open blocks or opens a new one.  Each completed assignment is one
    # partition, so every partition is visited exactly once (no Stirling
    # recurrence shortcut).
    def count(element: int, blocks_used: int) -> int:
        if blocks_used + (n - element) < k:
            return 0  # not enough elements left to open the missing blocks
        if element == n:
            return 1 if blocks_used == k else 0
        total = 0
        for _ in range(blocks_used):
            total += count(element + 1, blocks_used)
        if blocks_used < k:
            total += count(element + 1, blocks_used + 1)
        return total

    return count(1, 1)
