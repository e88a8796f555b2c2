"""Classical number triangles and polynomial families.

Lah numbers, Stirling numbers of the second kind, Bell and Lah-Bell
polynomials, and partial/complete Bell polynomials.  Triangles are exact
and memoized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .exact_core import UniPoly
from .series import series_pow, to_egf


@dataclass(frozen=True)
class TriangleTable:
    """Lower-triangular table ``entries[n][k]`` for ``0 <= k <= n <= max_n``.

    Reads with ``k > n`` (or ``k < 0``) return 0, the convention every
    summation in this package relies on.
    """

    max_n: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.max_n + 1:
            raise ValueError("triangle must have max_n + 1 rows")
        for n, row in enumerate(self.entries):
            if len(row) != n + 1:
                raise ValueError(f"row {n} must have {n + 1} entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> TriangleTable:
        return cls(len(rows) - 1, tuple(tuple(Fraction(v) for v in row) for row in rows))

    def __getitem__(self, nk: tuple[int, int]) -> Fraction:
        n, k = nk
        if n < 0 or n > self.max_n:
            raise IndexError(f"row {n} outside table of order {self.max_n}")
        if k < 0 or k > n:
            return Fraction(0)
        return self.entries[n][k]

    def row(self, n: int) -> tuple[Fraction, ...]:
        return self.entries[n]

    def rows(self) -> Iterator[tuple[Fraction, ...]]:
        return iter(self.entries)

    def perturbed(self, n: int, k: int, delta=1) -> TriangleTable:
        """Copy with ``entries[n][k]`` shifted by ``delta`` (mutation testing)."""
        if not 0 <= k <= n <= self.max_n:
            raise IndexError(f"({n}, {k}) is not a triangle entry")
        rows = [list(r) for r in self.entries]
        rows[n][k] += Fraction(delta)
        return TriangleTable.from_rows(rows)


def lah(n: int, k: int) -> Fraction:
    """Unsigned Lah number n!/k! * C(n-1, k-1), with L(0,0) = 1."""
    if n < 0 or k < 0:
        raise ValueError("lah needs nonnegative arguments")
    if k > n:
        return Fraction(0)
    if k == 0:
        return Fraction(1 if n == 0 else 0)
    return Fraction(math.factorial(n) // math.factorial(k) * math.comb(n - 1, k - 1))


@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = (k * prev[k] if k < n else 0) + prev[k - 1]
    return tuple(row)


def stirling2(n: int, k: int) -> Fraction:
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs nonnegative arguments")
    if k > n:
        return Fraction(0)
    return Fraction(_stirling2_row(n)[k])


@lru_cache(maxsize=None)
def lah_table(max_n: int) -> TriangleTable:
    return TriangleTable.from_rows([[lah(n, k) for k in range(n + 1)] for n in range(max_n + 1)])


@lru_cache(maxsize=None)
def stirling2_table(max_n: int) -> TriangleTable:
    return TriangleTable.from_rows([_stirling2_row(n) for n in range(max_n + 1)])


@lru_cache(maxsize=None)
def bell_poly(n: int) -> UniPoly:
    """Bell (Touchard) polynomial sum_k S(n,k) x^k."""
    return UniPoly(_stirling2_row(n))


@lru_cache(maxsize=None)
def lah_bell_poly(n: int) -> UniPoly:
    """Lah-Bell polynomial sum_k L(n,k) x^k."""
    return UniPoly(lah(n, k) for k in range(n + 1))


def lah_table_from_series(max_n: int) -> TriangleTable:
    """Lah triangle read off the coefficients of (1/(1-t) - 1)^k / k!.

    Independent of :func:`lah`: uses only truncated series arithmetic.
    """
    g = [Fraction(0)] + [Fraction(1)] * max_n
    rows = [[Fraction(0)] * (n + 1) for n in range(max_n + 1)]
    for k in range(max_n + 1):
        coeffs = to_egf(series_pow(g, k, max_n))
        for n in range(k, max_n + 1):
            rows[n][k] = coeffs[n] / math.factorial(k)
    return TriangleTable.from_rows(rows)


def _need(xs: Sequence, length: int, what: str) -> list[Fraction]:
    if len(xs) < length:
        raise ValueError(f"{what} needs at least {length} arguments, got {len(xs)}")
    return [Fraction(x) for x in xs]


def partial_bell_table(max_n: int, xs: Sequence) -> list[list[Fraction]]:
    """All partial Bell values ``B[n][k]`` for ``n <= max_n``.

    Convolution recurrence
    ``B_{n,k} = sum_{i=1}^{n-k+1} C(n-1, i-1) x_i B_{n-i,k-1}``.
    ``xs[0]`` is x_1.  Entry (n, k) only reads x_1..x_{n-k+1}; missing
    arguments are padded with zeros, which never reach a fully supplied
    entry.
    """
    x = [Fraction(0)] + [Fraction(v) for v in xs[:max_n]]
    x.extend(Fraction(0) for _ in range(max_n + 1 - len(x)))
    B = [[Fraction(0)] * (n + 1) for n in range(max_n + 1)]
    B[0][0] = Fraction(1)
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            s = Fraction(0)
            for i in range(1, n - k + 2):
                prev = B[n - i][k - 1]
                if prev and x[i]:
                    s += math.comb(n - 1, i - 1) * x[i] * prev
            B[n][k] = s
    return B


def partial_bell(n: int, k: int, xs: Sequence) -> Fraction:
    """Partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1})."""
    if not 0 <= k <= n:
        raise ValueError(f"partial_bell needs n >= k >= 0, got ({n}, {k})")
    xs = _need(xs, n - k + 1 if n else 0, "partial_bell")
    return partial_bell_table(n, xs[: n - k + 1])[n][k]


def _partitions_by_multiplicity(n: int, k: int, largest: int) -> Iterator[dict[int, int]]:
    """Partitions of n into exactly k parts, each part <= largest, as {part: count}."""
    if k == 0:
        if n == 0:
            yield {}
        return
    for part in range(min(largest, n - k + 1), 0, -1):
        if part * k < n:
            break
        for rest in _partitions_by_multiplicity(n - part, k - 1, part):
            out = dict(rest)
            out[part] = out.get(part, 0) + 1
            yield out


def partial_bell_oracle(n: int, k: int, xs: Sequence) -> Fraction:
    """Partial Bell polynomial by enumerating block-size multiplicities.

    Sums ``n! / prod(k_j!) * prod((x_j / j!)^{k_j})`` over all
    ``(k_1, ..., k_{n-k+1})`` with ``sum k_j = k`` and ``sum j k_j = n``.
    Exponential cost; kept only as an independent check.
    """
    if not 0 <= k <= n:
        raise ValueError(f"partial_bell_oracle needs n >= k >= 0, got ({n}, {k})")
    xs = _need(xs, n - k + 1 if n else 0, "partial_bell_oracle")
    total = Fraction(0)
    for mult in _partitions_by_multiplicity(n, k, n - k + 1):
        term = Fraction(math.factorial(n))
        for j, kj in mult.items():
            term *= (xs[j - 1] / math.factorial(j)) ** kj / math.factorial(kj)
        total += term
    return total


def complete_bell(n: int, xs: Sequence) -> Fraction:
    """Complete Bell polynomial B_n(x_1, ..., x_n) = sum_k B_{n,k}."""
    xs = _need(xs, n, "complete_bell")
    row = partial_bell_table(n, xs[:n])[n]
    return sum(row, Fraction(0))
