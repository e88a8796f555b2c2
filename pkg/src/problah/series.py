"""Truncated formal power series over the rationals.

A series is a list of ordinary coefficients ``[a_0, a_1, ..., a_N]``; every
operation truncates to the requested order ``N`` (inclusive).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def truncate(a: Sequence[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(c) for c in a[: order + 1]]
    out.extend(Fraction(0) for _ in range(order + 1 - len(out)))
    return out


def series_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    a, b = truncate(a, order), truncate(b, order)
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(order + 1 - i):
            out[i + j] += ai * b[j]
    return out


def series_pow(a: Sequence[Fraction], k: int, order: int) -> list[Fraction]:
    result = truncate([1], order)
    base = truncate(a, order)
    while k:
        if k & 1:
            result = series_mul(result, base, order)
        base = series_mul(base, base, order)
        k >>= 1
    return result


def series_exp(f: Sequence[Fraction], order: int) -> list[Fraction]:
    """exp(f) for a series with zero constant term.

    Uses ``E' = f' E``, i.e. ``n e_n = sum_{k=1}^n k f_k e_{n-k}``.
    """
    f = truncate(f, order)
    if f[0] != 0:
        raise ValueError("series_exp needs a series with zero constant term")
    e = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        s = Fraction(0)
        for k in range(1, n + 1):
            if f[k]:
                s += k * f[k] * e[n - k]
        e[n] = s / n
    return e


def from_egf(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Ordinary coefficients of ``sum c_n t^n / n!``."""
    return [Fraction(c) / math.factorial(n) for n, c in enumerate(coeffs)]


def to_egf(a: Sequence[Fraction]) -> list[Fraction]:
    """Read a series back as ``sum c_n t^n / n!``."""
    return [Fraction(c) * math.factorial(n) for n, c in enumerate(a)]
