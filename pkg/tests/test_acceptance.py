"""Exit criteria for the build: one test per criterion, each timed.

Every criterion records a PASS/FAIL line that is printed in the pytest
terminal summary (see conftest.py).
"""

import io
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_RESULTS
from problah.cli import main
from problah.combinatorics import (
    bell_poly,
    lah,
    lah_bell_poly,
    lah_table,
    lah_table_from_series,
    partial_bell,
    partial_bell_oracle,
)
from problah.distributions import BATTERY, Bernoulli, Constant, Poisson, build_profile, spec_to_json, sum_moments
from problah.exact_core import UniPoly
from problah.identities import PASS, check
from problah.montecarlo import SimConfig, compare_sum_moments
from problah.probabilistic import (
    ProbLahContext,
    dobinski_eval,
    prob_lah,
    prob_lah_alternating,
    prob_lah_bell_poly,
    prob_lah_difference,
)

FINITE = [s for s in BATTERY if s.support() is not None]


class Criterion:
    """Times a block and records its verdict against a runtime budget."""

    def __init__(self, number: int, title: str, budget: float):
        self.number, self.title, self.budget = number, title, budget
        self.failures: list[str] = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def expect(self, ok: bool, message: str):
        if not ok and len(self.failures) < 5:
            self.failures.append(message)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if elapsed >= self.budget:
            self.failures.append(f"runtime {elapsed:.2f}s exceeds {self.budget}s")
        ok = not self.failures
        detail = "" if ok else " | " + "; ".join(self.failures)
        line = f"{self.title} ({elapsed:.2f}s, budget {self.budget}s){detail}"
        ACCEPTANCE_RESULTS[self.number] = (ok, line)
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {self.number}: {line}")
        if exc_type is None:
            assert ok, line
        return False


def test_01_classical_reduction():
    with Criterion(1, "Constant(1) reduces to L(n,k) and B_n^L(x) for n <= 16", 5) as c:
        ctx = ProbLahContext.build(Constant(1), 16)
        for n in range(17):
            for k in range(n + 1):
                c.expect(prob_lah(ctx, n, k) == lah(n, k), f"L_Y({n},{k})")
            c.expect(prob_lah_bell_poly(ctx, n) == lah_bell_poly(n), f"B_{n}")


def test_02_bernoulli():
    with Criterion(2, "Bernoulli(p): L_Y = p^k L and B_n = B_n^L(px), p in {1/2,1/3,1}, n <= 12", 5) as c:
        for p in (Fraction(1, 2), Fraction(1, 3), Fraction(1)):
            ctx = ProbLahContext.build(Bernoulli(p), 12)
            for n in range(13):
                for k in range(n + 1):
                    c.expect(prob_lah(ctx, n, k) == p**k * lah(n, k), f"p={p} L_Y({n},{k})")
                c.expect(prob_lah_bell_poly(ctx, n) == lah_bell_poly(n).rescale(p), f"p={p} B_{n}")


def test_03_poisson():
    with Criterion(3, "Poisson(alpha): E[<S_k>_n] = B_n^L(alpha k) and Bell/Lah expansion, n,k <= 10", 5) as c:
        for alpha in (Fraction(1), Fraction(1, 2)):
            profile = build_profile(Poisson(alpha), 10)
            ctx = ProbLahContext.build(profile)
            for k in range(11):
                row = sum_moments(profile, k)
                for n in range(11):
                    c.expect(row[n] == lah_bell_poly(n)(alpha * k), f"alpha={alpha} k={k} n={n}")
            for n in range(11):
                rhs = UniPoly()
                for k in range(n + 1):
                    rhs = rhs + bell_poly(k).scale(alpha**k * lah(n, k))
                c.expect(prob_lah_bell_poly(ctx, n) == rhs, f"alpha={alpha} B_{n}")


def test_04_route_triangle():
    with Criterion(4, "partial-Bell = alternating sum (n <= 12) = difference operator (finite, n <= 8, m <= 4)", 30) as c:
        for spec in BATTERY:
            ctx = ProbLahContext.build(spec, 12)
            for n in range(13):
                for k in range(n + 1):
                    c.expect(prob_lah(ctx, n, k) == prob_lah_alternating(ctx, n, k), f"{spec} alt ({n},{k})")
        for spec in FINITE:
            ctx = ProbLahContext.build(spec, 8)
            for n in range(9):
                for m in range(5):
                    c.expect(prob_lah(ctx, n, m) == prob_lah_difference(spec, n, m), f"{spec} diff ({n},{m})")


def test_05_theorem_battery():
    theorems = ("T2.5", "T2.6", "T2.7", "T2.8", "T2.9", "T2.10", "T2.11")
    with Criterion(5, "T2.5-T2.11 exact for n <= 10 over the battery, full T2.7 grid", 60) as c:
        for spec in BATTERY:
            ctx = ProbLahContext.build(spec, 10)
            for t in theorems:
                r = check(t, spec, 10, context=ctx)
                c.expect(r.status == PASS, f"{t} {spec}: {r.status} {r.witnesses}")
                if t == "T2.7":
                    c.expect(r.cases == sum((n + 1) ** 2 for n in range(11)), f"T2.7 grid size {r.cases}")


def test_06_generating_functions():
    with Criterion(6, "series coefficients match lah(n,k) and B_n^{(L,Y)} to order 12", 10) as c:
        c.expect(lah_table_from_series(12) == lah_table(12), "Lah generating function")
        for spec in BATTERY:
            r = check("T2.3", spec, 12)
            c.expect(r.status == PASS, f"T2.3 {spec}: {r.witnesses}")


def test_07_dobinski():
    with Criterion(7, "Dobinski series within 1e-9 for x in {0,1,2}, n <= 8, K <= 200", 10) as c:
        for spec in BATTERY:
            ctx = ProbLahContext.build(spec, 8)
            for x in (0, 1, 2):
                for n in range(9):
                    res = dobinski_eval(ctx, n, x, 1e-12)
                    err = abs(Fraction(res.value) - prob_lah_bell_poly(ctx, n)(x))
                    c.expect(err <= Fraction(1e-9), f"{spec} n={n} x={x} err={float(err)}")
                    c.expect(res.terms_used <= 200, f"{spec} n={n} x={x} K={res.terms_used}")


def test_08_partial_bell_oracle():
    with Criterion(8, "partial_bell recurrence = enumeration oracle, n <= 12, 100 random trials", 30) as c:
        rng = random.Random(8)
        for _ in range(100):
            xs = [Fraction(rng.randint(-50, 50), rng.randint(1, 30)) for _ in range(13)]
            for n in range(13):
                for k in range(n + 1):
                    args = xs[: n - k + 1]
                    c.expect(partial_bell(n, k, args) == partial_bell_oracle(n, k, args), f"({n},{k}) {args}")


def test_09_monte_carlo():
    with Criterion(9, "Monte Carlo E[<S_k>_n] within 4 stderr, N=1e5, k <= 5, n <= 6, reproducible", 60) as c:
        for spec in BATTERY:
            cfg = SimConfig(20261015, 100_000, spec)
            rows = compare_sum_moments(cfg, 5, 6)
            for r in rows:
                c.expect(r.within, f"{spec} k={r.k} n={r.n} z={r.z:.2f}")
            again = compare_sum_moments(cfg, 5, 6)
            c.expect([(r.estimate, r.stderr) for r in rows] == [(r.estimate, r.stderr) for r in again],
                     f"{spec} rerun differs")


def test_10_cli_contract():
    with Criterion(10, "verify over the battery exits 0; any injected off-by-one exits 1 with a witness", 60) as c:
        out = io.StringIO()
        c.expect(main(["verify", "--battery", "--n-max", "10"], out=out) == 0, "battery verify did not exit 0")
        spec = spec_to_json(Constant(1))
        for n in range(11):
            for k in range(n + 1):
                out = io.StringIO()
                code = main(["verify", "--spec", spec, "--n-max", "10", "--perturb", f"{n},{k}"], out=out)
                c.expect(code == 1 and "witness" in out.getvalue(), f"perturb ({n},{k}) exit {code}")
        for spec in BATTERY[1:]:
            out = io.StringIO()
            code = main(["verify", "--spec", spec_to_json(spec), "--n-max", "10", "--perturb", "7,3"], out=out)
            c.expect(code == 1 and "witness" in out.getvalue(), f"{spec} perturb exit {code}")
