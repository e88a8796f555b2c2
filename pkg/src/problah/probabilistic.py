"""Probabilistic Lah numbers L_Y(n,k) and Lah-Bell polynomials B_n^{(L,Y)}(x).

L_Y(n,k) is the coefficient of t^n/n! in (E[(1-t)^{-Y}] - 1)^k / k!, and
B_n^{(L,Y)}(x) = sum_k L_Y(n,k) x^k.  The primary route is the partial Bell
polynomial of the rising-factorial moments; the other functions here are
independent routes used to cross-check it.
"""

from __future__ import annotations

import decimal
import itertools
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

from .combinatorics import (
    TriangleTable,
    bell_poly,
    lah,
    partial_bell,
    partial_bell_table,
    stirling2,
)
from .distributions import (
    DistributionSpec,
    MomentProfile,
    SpecError,
    build_profile,
    finite_support,
)
from .exact_core import (
    RationalLike,
    UniPoly,
    binom_poly,
    binomial_convolve,
    rising_factorial_poly,
)
from .series import from_egf, series_exp, to_egf

DOBINSKI_K_MAX = 1000
DOBINSKI_STREAK = 3
DIFFERENCE_MAX_COPIES = 6


class OrderError(ValueError):
    """Requested index exceeds the order the context was built for."""


@dataclass(frozen=True)
class ProbLahContext:
    """Moment profile plus the eagerly built L_Y triangle and B_n polynomials."""

    profile: MomentProfile
    lah_table: TriangleTable
    poly_cache: tuple[UniPoly, ...]

    @classmethod
    def build(cls, source: DistributionSpec | MomentProfile, max_order: int | None = None) -> ProbLahContext:
        if isinstance(source, MomentProfile):
            profile = source
        else:
            if max_order is None:
                raise ValueError("max_order is required when building from a spec")
            profile = build_profile(source, max_order)
        N = profile.max_order
        B = partial_bell_table(N, profile.rising[1:])
        table = TriangleTable.from_rows(B)
        return cls(profile, table, tuple(UniPoly(row) for row in B))

    @property
    def spec(self) -> DistributionSpec:
        return self.profile.spec

    @property
    def max_order(self) -> int:
        return self.profile.max_order

    @property
    def moments(self) -> tuple[Fraction, ...]:
        return self.profile.rising

    def poly(self, n: int) -> UniPoly:
        self._check_order(n)
        return self.poly_cache[n]

    def perturbed(self, n: int, k: int, delta: RationalLike = 1) -> ProbLahContext:
        """Copy with L_Y(n,k) shifted by ``delta``; for mutation testing only.

        The polynomial cache is kept consistent with the table, so the fault
        looks like a wrong computation rather than a broken invariant.
        """
        table = self.lah_table.perturbed(n, k, delta)
        polys = list(self.poly_cache)
        polys[n] = UniPoly(table.row(n))
        return ProbLahContext(self.profile, table, tuple(polys))

    def _check_order(self, n: int) -> None:
        if n < 0 or n > self.max_order:
            raise OrderError(f"order {n} outside context built to order {self.max_order}")


def prob_lah(ctx: ProbLahContext, n: int, k: int) -> Fraction:
    """L_Y(n,k) from the precomputed partial-Bell triangle."""
    ctx._check_order(n)
    return ctx.lah_table[n, k]


@lru_cache(maxsize=128)
def _sum_moment_rows(profile: MomentProfile, k_max: int) -> tuple[tuple[Fraction, ...], ...]:
    N = profile.max_order
    rows = [tuple([Fraction(1)] + [Fraction(0)] * N)]
    for _ in range(k_max):
        rows.append(tuple(binomial_convolve(rows[-1], profile.rising, N + 1)))
    return tuple(rows)


def prob_lah_alternating(ctx: ProbLahContext, n: int, k: int) -> Fraction:
    """L_Y(n,k) = (1/k!) sum_l C(k,l) (-1)^{k-l} E[<S_l>_n]."""
    ctx._check_order(n)
    if k < 0:
        raise ValueError("k must be >= 0")
    rows = _sum_moment_rows(ctx.profile, k)
    s = Fraction(0)
    for l in range(k + 1):
        term = math.comb(k, l) * rows[l][n]
        s += term if (k - l) % 2 == 0 else -term
    return s / math.factorial(k)


@lru_cache(maxsize=4096)
def _difference_at_zero(n: int, shifts: tuple[Fraction, ...]) -> Fraction:
    f = rising_factorial_poly(n)
    for y in shifts:
        f = f.shift(y) - f
    return f(0)


def prob_lah_difference(spec: DistributionSpec, n: int, m: int) -> Fraction:
    """L_Y(n,m) = E[Delta_{Y_1..Y_m} <0>_n] / m!, by enumerating support^m.

    Only finitely supported laws, and at most six copies.
    """
    atoms = finite_support(spec)
    if atoms is None:
        raise SpecError("difference-operator route needs a finitely supported distribution")
    if not 0 <= m <= DIFFERENCE_MAX_COPIES:
        raise ValueError(f"difference-operator route supports 0 <= m <= {DIFFERENCE_MAX_COPIES}, got m={m}")
    total = Fraction(0)
    for combo in itertools.product(atoms, repeat=m):
        weight = Fraction(1)
        for _, p in combo:
            weight *= p
        if weight == 0:
            continue
        # difference operators commute, so the multiset of shifts is enough
        shifts = tuple(sorted(v for v, _ in combo))
        total += weight * _difference_at_zero(n, shifts)
    return total / math.factorial(m)


def prob_lah_bell_poly(ctx: ProbLahContext, n: int) -> UniPoly:
    return ctx.poly(n)


def prob_lah_bell_recurrence(ctx: ProbLahContext, n: int) -> UniPoly:
    """B_{n+1}(x) = x sum_k C(n,k) E[<Y>_{k+1}] B_{n-k}(x), from lower polynomials."""
    ctx._check_order(n + 1)
    acc = UniPoly()
    for k in range(n + 1):
        acc = acc + ctx.poly_cache[n - k].scale(math.comb(n, k) * ctx.moments[k + 1])
    return acc * UniPoly.x()


@dataclass(frozen=True)
class DobinskiResult:
    value: Decimal
    terms_used: int

    def __float__(self) -> float:
        return float(self.value)


def dobinski_eval(
    ctx: ProbLahContext,
    n: int,
    x: RationalLike,
    abs_tol: float = 1e-12,
    *,
    precision: int = 60,
) -> DobinskiResult:
    """Truncated exponential mixture e^{-x} sum_k x^k/k! E[<S_k>_n].

    Partial sums are exact; only the factor e^{-x} is approximated, in
    ``precision``-digit decimal arithmetic, so the error is dominated by
    truncation.  Summation stops once three consecutive terms fall below
    ``abs_tol``.
    """
    ctx._check_order(n)
    x = Fraction(x)
    if x < 0:
        raise ValueError("dobinski_eval is only defined here for x >= 0")
    with decimal.localcontext() as dctx:
        dctx.prec = precision
        emx = (-(Decimal(x.numerator) / Decimal(x.denominator))).exp()
        tol = Decimal(abs_tol)
        row = [Fraction(1)] + [Fraction(0)] * n
        moments = ctx.moments[: n + 1]
        partial = Fraction(0)
        weight = Fraction(1)  # x^k / k!
        quiet = 0
        for k in range(DOBINSKI_K_MAX):
            term = weight * row[n]
            partial += term
            term_dec = Decimal(term.numerator) / Decimal(term.denominator) * emx
            quiet = quiet + 1 if abs(term_dec) < tol else 0
            if quiet >= DOBINSKI_STREAK:
                value = Decimal(partial.numerator) / Decimal(partial.denominator) * emx
                return DobinskiResult(+value, k + 1)
            row = binomial_convolve(row, moments, n + 1)
            weight = weight * x / (k + 1)
    raise ArithmeticError(f"Dobinski series did not converge within {DOBINSKI_K_MAX} terms (n={n}, x={x})")


def derivative_identity(ctx: ProbLahContext, n: int, k: int) -> UniPoly:
    """k! sum_{j<=n-k} C(n,j) B_j(x) L_Y(n-j,k), the k-th x-derivative of B_n."""
    ctx._check_order(n)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({n}, {k})")
    acc = UniPoly()
    for j in range(n - k + 1):
        acc = acc + ctx.poly_cache[j].scale(math.comb(n, j) * ctx.lah_table[n - j, k])
    return acc.scale(math.factorial(k))


def first_derivative_identity(ctx: ProbLahContext, n: int) -> UniPoly:
    """sum_{j<n} C(n,j) E[<Y>_{n-j}] B_j(x), the first x-derivative of B_n."""
    ctx._check_order(n)
    acc = UniPoly()
    for j in range(n):
        acc = acc + ctx.poly_cache[j].scale(math.comb(n, j) * ctx.moments[n - j])
    return acc


# --- alternative expressions used by the identity checks -------------------

def lah_bell_via_moment_partial_bell(ctx: ProbLahContext, n: int, x: RationalLike) -> Fraction:
    """sum_k B_{n,k}(x E[<Y>_1], ..., x E[<Y>_{n-k+1}])."""
    ctx._check_order(n)
    x = Fraction(x)
    args = [x * m for m in ctx.moments[1 : n + 1]]
    return sum(partial_bell_table(n, args)[n], Fraction(0))


def moment_partial_bell_table(ctx: ProbLahContext, x: RationalLike, order: int) -> list[list[Fraction]]:
    """Table of B_{n,k}(x E[<Y>_1], x E[<Y>_2], ...) for n <= order."""
    ctx._check_order(order)
    x = Fraction(x)
    return partial_bell_table(order, [x * m for m in ctx.moments[1 : order + 1]])


def lah_bell_via_binomial_basis(ctx: ProbLahContext, n: int) -> UniPoly:
    """sum_k k! C(x,k) B_{n,k}(B_1(1), ..., B_{n-k+1}(1))."""
    ctx._check_order(n)
    at_one = [ctx.poly_cache[j](1) for j in range(1, n + 1)]
    row = partial_bell_table(n, at_one)[n]
    acc = UniPoly()
    for k in range(n + 1):
        acc = acc + binom_poly(k).scale(math.factorial(k) * row[k])
    return acc


def scaled_lah_sum(ctx: ProbLahContext, n: int, k: int, x: RationalLike) -> Fraction:
    """sum_{j<=n-k} C(n,k) k^j x^j L_Y(n-k, j)."""
    ctx._check_order(n)
    x = Fraction(x)
    return sum(
        (math.comb(n, k) * Fraction(k) ** j * x**j * ctx.lah_table[n - k, j] for j in range(n - k + 1)),
        Fraction(0),
    )


def weighted_values_partial_bell_table(ctx: ProbLahContext, x: RationalLike, order: int) -> list[list[Fraction]]:
    """Table of B_{n,k}(B_0(x), 2 B_1(x), 3 B_2(x), ...) for n <= order."""
    ctx._check_order(order)
    args = [(j + 1) * ctx.poly_cache[j](x) for j in range(order)]
    return partial_bell_table(order, args)


def values_partial_bell_table(ctx: ProbLahContext, x: RationalLike, order: int) -> list[list[Fraction]]:
    """Table of B_{n,k}(B_1(x), B_2(x), ...) for n <= order."""
    ctx._check_order(order)
    args = [ctx.poly_cache[j](x) for j in range(1, order + 1)]
    return partial_bell_table(order, args)


def partial_bell_of_weighted_values(ctx: ProbLahContext, n: int, k: int, x: RationalLike) -> Fraction:
    """B_{n,k}(B_0(x), 2 B_1(x), ..., (n-k+1) B_{n-k}(x))."""
    ctx._check_order(n)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({n}, {k})")
    args = [(j + 1) * ctx.poly_cache[j](x) for j in range(n - k + 1)]
    return partial_bell(n, k, args)


def partial_bell_of_values(ctx: ProbLahContext, n: int, k: int, x: RationalLike) -> Fraction:
    """B_{n,k}(B_1(x), ..., B_{n-k+1}(x))."""
    ctx._check_order(n)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({n}, {k})")
    if k == 0:
        # B_{n,0} reads no arguments; B_{n+1} may lie beyond the context
        return Fraction(1 if n == 0 else 0)
    args = [ctx.poly_cache[j](x) for j in range(1, n - k + 2)]
    return partial_bell(n, k, args)


def stirling_lah_sum(ctx: ProbLahContext, n: int, k: int, x: RationalLike) -> Fraction:
    """sum_{j=k}^n S(j,k) L_Y(n,j) x^j."""
    ctx._check_order(n)
    x = Fraction(x)
    return sum((stirling2(j, k) * ctx.lah_table[n, j] * x**j for j in range(k, n + 1)), Fraction(0))


def lah_bell_values_from_series(profile: MomentProfile, order: int, x: RationalLike) -> list[Fraction]:
    """B_n(x) for n <= order, read off exp(x (E[(1-t)^{-Y}] - 1)) as a series.

    Shares nothing with the partial-Bell route beyond the moment profile.
    """
    if order > profile.max_order:
        raise OrderError(f"order {order} outside profile of order {profile.max_order}")
    x = Fraction(x)
    inner = from_egf([Fraction(0)] + [x * m for m in profile.rising[1 : order + 1]])
    return to_egf(series_exp(inner, order))


def poisson_lah_bell(alpha: RationalLike, n: int) -> UniPoly:
    """sum_k phi_k(x) alpha^k L(n,k), with phi_k the Bell polynomials."""
    alpha = Fraction(alpha)
    acc = UniPoly()
    for k in range(n + 1):
        acc = acc + bell_poly(k).scale(alpha**k * lah(n, k))
    return acc

