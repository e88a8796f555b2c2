"""Brute-force oracles, independent of the package's computation paths."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def set_partitions(items):
    """All partitions of a list into nonempty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def count_set_partitions(n, k):
    return sum(1 for p in set_partitions(list(range(n))) if len(p) == k)


def count_ordered_partitions(n, k):
    """Partitions of an n-set into k nonempty linearly ordered blocks."""
    total = 0
    for p in set_partitions(list(range(n))):
        if len(p) == k:
            total += math.prod(math.factorial(len(b)) for b in p)
    return total


def pascal(n, k):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[k] if 0 <= k <= n else 0


def iterated_product(n):
    acc = 1
    for i in range(1, n + 1):
        acc *= i
    return acc


def expand_product(roots_shift):
    """Coefficients of prod (x + s) over shifts s, by repeated multiplication."""
    coeffs = [Fraction(1)]
    for s in roots_shift:
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] += c * s
            new[i + 1] += c
        coeffs = new
    return coeffs


def poisson_rising_float(alpha, n, tol=1e-17):
    """sum_j e^{-alpha} alpha^j / j! <j>_n, summed until terms vanish."""
    alpha = float(alpha)
    total, j, pmf = 0.0, 0, math.exp(-alpha)
    while True:
        r = 1.0
        for i in range(n):
            r *= j + i
        term = pmf * r
        total += term
        if j > alpha + n and term < tol * max(1.0, total):
            return total
        j += 1
        pmf *= alpha / j


def rising(x, n):
    acc = Fraction(1)
    for i in range(n):
        acc *= x + i
    return acc


def finite_sum_rising(atoms, k, n):
    """E[<S_k>_n] by enumerating every k-tuple of atoms."""
    total = Fraction(0)
    for combo in itertools.product(atoms, repeat=k):
        w = math.prod((p for _, p in combo), start=Fraction(1))
        total += w * rising(sum((v for v, _ in combo), Fraction(0)), n)
    return total
