"""Exact rational scalars and dense univariate polynomials over them.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator, so equality is structural.
"""

from __future__ import annotations

import math
import operator
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[int, Fraction]

_RAT_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def as_rational(value: RationalLike | str) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction.

    Floats are rejected: they would silently smuggle binary rounding into
    exact computations.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """``"num/den"``, with the denominator omitted when it is 1."""
    return str(Fraction(q))


def rat_arith(a: RationalLike, b: RationalLike, op: str) -> Fraction:
    try:
        fn = _RAT_OPS[op]
    except KeyError:
        raise ValueError(f"unknown rational operation {op!r}") from None
    a, b = Fraction(a), Fraction(b)
    if op == "div" and b == 0:
        raise ZeroDivisionError(f"rational division of {a} by zero")
    return fn(a, b)


def factorial(n: int) -> Fraction:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return Fraction(math.factorial(n))


def binomial(n: int, k: int) -> Fraction:
    """C(n, k) as a Fraction, zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


class UniPoly:
    """Dense univariate polynomial with Fraction coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``.  Trailing zeros are
    stripped, so the zero polynomial has no coefficients and degree ``-1``
    stands in for minus infinity.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: RationalLike) -> UniPoly:
        return cls((c,))

    @classmethod
    def x(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1) -> UniPoly:
        return cls([0] * k + [c])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == UniPoly.constant(other)._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"UniPoly([{', '.join(map(str, self._coeffs))}])"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for i, c in reversed(list(enumerate(self._coeffs))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"({abs(c)})*{mono}" if c.denominator != 1 else f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return UniPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([ai + (b[i] if i < len(b) else 0) for i, ai in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self._coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> UniPoly:
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = UniPoly.constant(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: RationalLike) -> UniPoly:
        c = Fraction(c)
        return UniPoly([c * a for a in self._coeffs])

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval(self, x)

    def derivative(self, order: int = 1) -> UniPoly:
        cs = list(self._coeffs)
        for _ in range(order):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return UniPoly(cs)

    def rescale(self, c: RationalLike) -> UniPoly:
        """p(c*x)."""
        c = Fraction(c)
        return UniPoly([a * c**i for i, a in enumerate(self._coeffs)])

    def shift(self, y: RationalLike) -> UniPoly:
        """p(x + y), by Horner in polynomial arithmetic."""
        lin = UniPoly((y, 1))
        out = UniPoly()
        for c in reversed(self._coeffs):
            out = out * lin + c
        return out


def poly_arith(p: UniPoly, q: UniPoly | RationalLike, op: str) -> UniPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_eval(p: UniPoly, x: RationalLike) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def rising_factorial_poly(n: int) -> UniPoly:
    """x(x+1)...(x+n-1); the constant 1 for n = 0."""
    if n < 0:
        raise ValueError(f"rising factorial order must be >= 0, got {n}")
    if n == 0:
        return UniPoly.constant(1)
    return rising_factorial_poly(n - 1) * UniPoly((n - 1, 1))


@lru_cache(maxsize=None)
def falling_factorial_poly(n: int) -> UniPoly:
    """x(x-1)...(x-n+1); the constant 1 for n = 0."""
    if n < 0:
        raise ValueError(f"falling factorial order must be >= 0, got {n}")
    if n == 0:
        return UniPoly.constant(1)
    return falling_factorial_poly(n - 1) * UniPoly((-(n - 1), 1))


def binom_poly(k: int) -> UniPoly:
    """C(x, k) = (x)_k / k! as a polynomial in x."""
    return falling_factorial_poly(k).scale(Fraction(1, math.factorial(k)))


def rising_factorial(x: RationalLike, n: int) -> Fraction:
    """<x>_n evaluated directly as a product."""
    x = Fraction(x)
    acc = Fraction(1)
    for i in range(n):
        acc *= x + i
    return acc


def binomial_convolve(a: Sequence[Fraction], b: Sequence[Fraction], length: int | None = None) -> list[Fraction]:
    """Coefficients of the product of two exponential generating functions.

    ``out[n] = sum_j C(n, j) a[j] b[n - j]``.
    """
    if length is None:
        length = min(len(a), len(b))
    out = []
    for n in range(length):
        s = Fraction(0)
        for j in range(n + 1):
            s += math.comb(n, j) * a[j] * b[n - j]
        out.append(s)
    return out
