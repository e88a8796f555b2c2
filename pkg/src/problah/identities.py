"""Runnable checks of every identity satisfied by L_Y(n,k) and B_n^{(L,Y)}(x).

Each theorem label T2.1 ... T2.14 maps to a check that sweeps all
``0 <= k <= n <= n_max`` (and the evaluation grids where the identity is
polynomial in x) and reports the first exact mismatch as a witness.
Polynomial identities of degree <= n are checked on the n + 1 grid points
1, ..., n + 1, which suffices for equality as polynomials.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Callable, Iterator, Optional, Union

from .combinatorics import lah, lah_bell_poly
from .distributions import (
    DistributionSpec,
    Poisson,
    bernoulli_parameter,
    finite_support,
    spec_from_dict,
)
from .exact_core import UniPoly
from .probabilistic import (
    DIFFERENCE_MAX_COPIES,
    ProbLahContext,
    _sum_moment_rows,
    derivative_identity,
    dobinski_eval,
    first_derivative_identity,
    lah_bell_values_from_series,
    lah_bell_via_binomial_basis,
    moment_partial_bell_table,
    poisson_lah_bell,
    prob_lah,
    prob_lah_alternating,
    prob_lah_bell_poly,
    prob_lah_bell_recurrence,
    prob_lah_difference,
    scaled_lah_sum,
    stirling_lah_sum,
    values_partial_bell_table,
    weighted_values_partial_bell_table,
)

THEOREMS = tuple(f"T2.{i}" for i in range(1, 15))
MAX_N = 16
DOBINSKI_POINTS = (0, 1, 2)
DOBINSKI_ABS_TOL = 1e-12
DOBINSKI_TOLERANCE = 1e-9

DESCRIPTIONS = {
    "T2.1": "L_Y(n,k) as an alternating sum of E[<S_l>_n]",
    "T2.2": "L_Y(n,m) as an expected iterated difference of <x>_n at 0",
    "T2.3": "exponential generating function of B_n^{(L,Y)}(x)",
    "T2.4": "Dobinski-type exponential mixture series",
    "T2.5": "B_n^{(L,Y)}(x) as partial Bell polynomials of x E[<Y>_j]",
    "T2.6": "recurrence in n through the rising-factorial moments",
    "T2.7": "binomial identity B_n(x+y) = sum C(n,k) B_k(x) B_{n-k}(y)",
    "T2.8": "expansion in the basis k! C(x,k)",
    "T2.9": "partial Bell polynomial of (j+1) B_j(x)",
    "T2.10": "partial Bell polynomial of B_j(x) via Stirling numbers",
    "T2.11": "higher x-derivatives of B_n^{(L,Y)}(x)",
    "T2.12": "Poisson: E[<S_k>_n] = B_n^L(alpha k)",
    "T2.13": "Poisson: expansion in Bell polynomials and Lah numbers",
    "T2.14": "Bernoulli: L_Y(n,k) = p^k L(n,k) and B_n^L(px)",
}

PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not-applicable"

Value = Union[Fraction, tuple, Decimal]


@dataclass(frozen=True)
class Witness:
    """First mismatch found by a check.

    ``lhs``/``rhs`` are Fractions, coefficient tuples for polynomial
    identities, or a Decimal for the truncated Dobinski series.
    """

    n: int
    k: Optional[int]
    point: Optional[Union[Fraction, tuple]]
    lhs: Value
    rhs: Value
    label: str = ""


@dataclass(frozen=True)
class CheckReport:
    theorem_id: str
    spec: DistributionSpec
    n_max: int
    status: str
    witnesses: tuple[Witness, ...] = ()
    cases: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def applicable(self) -> bool:
        return self.status != NOT_APPLICABLE

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "spec": self.spec.to_dict(),
            "n_max": self.n_max,
            "status": self.status,
            "cases": self.cases,
            "details": dict(self.details),
            "witnesses": [_witness_to_dict(w) for w in self.witnesses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict) -> CheckReport:
        return cls(
            theorem_id=doc["theorem_id"],
            spec=spec_from_dict(doc["spec"]),
            n_max=doc["n_max"],
            status=doc["status"],
            witnesses=tuple(_witness_from_dict(w) for w in doc["witnesses"]),
            cases=doc["cases"],
            details=dict(doc["details"]),
        )

    @classmethod
    def from_json(cls, text: str) -> CheckReport:
        return cls.from_dict(json.loads(text))


def _encode(v):
    if v is None:
        return None
    if isinstance(v, Decimal):
        return {"decimal": str(v)}
    if isinstance(v, tuple):
        return [_encode(c) for c in v]
    return str(Fraction(v))


def _decode(v):
    if v is None:
        return None
    if isinstance(v, dict):
        return Decimal(v["decimal"])
    if isinstance(v, list):
        return tuple(_decode(c) for c in v)
    return Fraction(v)


def _witness_to_dict(w: Witness) -> dict:
    return {
        "n": w.n,
        "k": w.k,
        "point": _encode(w.point),
        "lhs": _encode(w.lhs),
        "rhs": _encode(w.rhs),
        "label": w.label,
    }


def _witness_from_dict(d: dict) -> Witness:
    return Witness(d["n"], d["k"], _decode(d["point"]), _decode(d["lhs"]), _decode(d["rhs"]), d.get("label", ""))


# --- individual theorem checks --------------------------------------------
# Each yields (n, k, point, lhs, rhs, label) cases; the driver compares.

Case = tuple
CheckFn = Callable[[ProbLahContext, int], Iterator[Case]]


def _grid(n: int) -> range:
    return range(1, n + 2)


def _coeffs(p: UniPoly) -> tuple:
    return p.coeffs


def _alternating_sum_route(ctx, n_max):
    for n in range(n_max + 1):
        for k in range(n + 1):
            yield n, k, None, prob_lah(ctx, n, k), prob_lah_alternating(ctx, n, k), ""


def _difference_operator_route(ctx, n_max):
    for n in range(n_max + 1):
        for m in range(min(n, DIFFERENCE_MAX_COPIES) + 1):
            yield n, m, None, prob_lah(ctx, n, m), prob_lah_difference(ctx.spec, n, m), ""


def _generating_function_series(ctx, n_max):
    for x in _grid(n_max):
        series = lah_bell_values_from_series(ctx.profile, n_max, x)
        for n in range(n_max + 1):
            yield n, None, Fraction(x), series[n], prob_lah_bell_poly(ctx, n)(x), ""


def _scaled_moment_partial_bell(ctx, n_max):
    for x in _grid(n_max):
        table = moment_partial_bell_table(ctx, x, n_max)
        for n in range(x - 1, n_max + 1):
            yield n, None, Fraction(x), prob_lah_bell_poly(ctx, n)(x), sum(table[n], Fraction(0)), ""


def _moment_recurrence(ctx, n_max):
    for n in range(1, n_max + 1):
        yield n, None, None, _coeffs(prob_lah_bell_recurrence(ctx, n - 1)), _coeffs(prob_lah_bell_poly(ctx, n)), ""


def _binomial_type(ctx, n_max):
    top = 2 * (n_max + 1)
    values = [[ctx.poly_cache[j](v) for v in range(top + 1)] for j in range(n_max + 1)]
    for n in range(n_max + 1):
        for x in _grid(n):
            for y in _grid(n):
                rhs = sum(
                    (math.comb(n, k) * values[k][x] * values[n - k][y] for k in range(n + 1)),
                    Fraction(0),
                )
                yield n, None, (Fraction(x), Fraction(y)), values[n][x + y], rhs, ""


def _binomial_basis_expansion(ctx, n_max):
    for n in range(n_max + 1):
        yield n, None, None, _coeffs(prob_lah_bell_poly(ctx, n)), _coeffs(lah_bell_via_binomial_basis(ctx, n)), ""


def _weighted_values_partial_bell(ctx, n_max):
    for x in _grid(n_max):
        table = weighted_values_partial_bell_table(ctx, x, n_max)
        for n in range(x - 1, n_max + 1):
            for k in range(n + 1):
                yield n, k, Fraction(x), scaled_lah_sum(ctx, n, k, x), table[n][k], ""


def _stirling_values_partial_bell(ctx, n_max):
    for x in _grid(n_max):
        table = values_partial_bell_table(ctx, x, n_max)
        for n in range(x - 1, n_max + 1):
            for k in range(n + 1):
                yield n, k, Fraction(x), table[n][k], stirling_lah_sum(ctx, n, k, x), ""


def _derivatives(ctx, n_max):
    for n in range(n_max + 1):
        poly = prob_lah_bell_poly(ctx, n)
        for k in range(n + 1):
            yield n, k, None, _coeffs(poly.derivative(k)), _coeffs(derivative_identity(ctx, n, k)), ""
        if n >= 1:
            yield n, 1, None, _coeffs(poly.derivative()), _coeffs(first_derivative_identity(ctx, n)), "first-derivative"


def _poisson_sum_moments(ctx, n_max):
    alpha = ctx.spec.alpha
    rows = _sum_moment_rows(ctx.profile, n_max)
    for k in range(n_max + 1):
        for n in range(n_max + 1):
            yield n, k, None, rows[k][n], lah_bell_poly(n)(alpha * k), ""


def _poisson_bell_expansion(ctx, n_max):
    alpha = ctx.spec.alpha
    for n in range(n_max + 1):
        yield n, None, None, _coeffs(prob_lah_bell_poly(ctx, n)), _coeffs(poisson_lah_bell(alpha, n)), ""


def _bernoulli_scaling(ctx, n_max):
    p = bernoulli_parameter(ctx.spec)
    for n in range(n_max + 1):
        for k in range(n + 1):
            yield n, k, None, prob_lah(ctx, n, k), p**k * lah(n, k), ""
        yield n, None, None, _coeffs(prob_lah_bell_poly(ctx, n)), _coeffs(lah_bell_poly(n).rescale(p)), "polynomial"


_EXACT_CHECKS: dict[str, CheckFn] = {
    "T2.1": _alternating_sum_route,
    "T2.2": _difference_operator_route,
    "T2.3": _generating_function_series,
    "T2.5": _scaled_moment_partial_bell,
    "T2.6": _moment_recurrence,
    "T2.7": _binomial_type,
    "T2.8": _binomial_basis_expansion,
    "T2.9": _weighted_values_partial_bell,
    "T2.10": _stirling_values_partial_bell,
    "T2.11": _derivatives,
    "T2.12": _poisson_sum_moments,
    "T2.13": _poisson_bell_expansion,
    "T2.14": _bernoulli_scaling,
}


def applicable(theorem_id: str, spec: DistributionSpec) -> bool:
    if theorem_id == "T2.2":
        return finite_support(spec) is not None
    if theorem_id in ("T2.12", "T2.13"):
        return isinstance(spec, Poisson)
    if theorem_id == "T2.14":
        return bernoulli_parameter(spec) is not None
    return theorem_id in THEOREMS


def _check_dobinski(ctx: ProbLahContext, spec, n_max: int) -> CheckReport:
    cases = 0
    max_terms = 0
    worst = Fraction(0)
    for x in DOBINSKI_POINTS:
        for n in range(n_max + 1):
            cases += 1
            approx = dobinski_eval(ctx, n, x, DOBINSKI_ABS_TOL)
            exact = prob_lah_bell_poly(ctx, n)(x)
            err = abs(Fraction(approx.value) - exact)
            worst = max(worst, err)
            max_terms = max(max_terms, approx.terms_used)
            if err > Fraction(DOBINSKI_TOLERANCE):
                w = Witness(n, None, Fraction(x), approx.value, exact, f"terms={approx.terms_used}")
                return CheckReport("T2.4", spec, n_max, FAIL, (w,), cases, _dobinski_details(max_terms, worst))
    return CheckReport("T2.4", spec, n_max, PASS, (), cases, _dobinski_details(max_terms, worst))


def _dobinski_details(max_terms: int, worst: Fraction) -> dict:
    return {
        "tolerance": repr(DOBINSKI_TOLERANCE),
        "abs_tol": repr(DOBINSKI_ABS_TOL),
        "max_terms": max_terms,
        "max_abs_error": repr(float(worst)),
    }


def check(
    theorem_id: str,
    spec: DistributionSpec,
    n_max: int,
    *,
    context: Optional[ProbLahContext] = None,
) -> CheckReport:
    """Verify one theorem for ``spec`` over all indices up to ``n_max``."""
    if theorem_id not in THEOREMS:
        raise ValueError(f"unknown theorem id {theorem_id!r}; expected one of {', '.join(THEOREMS)}")
    if not 0 <= n_max <= MAX_N:
        raise ValueError(f"n_max must lie in 0..{MAX_N}, got {n_max}")
    if not applicable(theorem_id, spec):
        return CheckReport(theorem_id, spec, n_max, NOT_APPLICABLE)
    if context is None:
        context = ProbLahContext.build(spec, n_max)
    elif context.max_order < n_max:
        raise ValueError(f"context of order {context.max_order} cannot check n_max={n_max}")
    if theorem_id == "T2.4":
        return _check_dobinski(context, spec, n_max)
    cases = 0
    for n, k, point, lhs, rhs, label in _EXACT_CHECKS[theorem_id](context, n_max):
        cases += 1
        if lhs != rhs:
            w = Witness(n, k, point, lhs, rhs, label)
            return CheckReport(theorem_id, spec, n_max, FAIL, (w,), cases)
    return CheckReport(theorem_id, spec, n_max, PASS, (), cases)


def check_all(
    spec: DistributionSpec,
    n_max: int,
    *,
    perturb: Optional[tuple[int, int]] = None,
) -> list[CheckReport]:
    """Run every theorem in order; ``perturb=(n, k)`` adds 1 to L_Y(n,k) first."""
    if not 0 <= n_max <= MAX_N:
        raise ValueError(f"n_max must lie in 0..{MAX_N}, got {n_max}")
    ctx = ProbLahContext.build(spec, n_max)
    if perturb is not None:
        ctx = ctx.perturbed(*perturb)
    return [check(t, spec, n_max, context=ctx) for t in THEOREMS]


def all_passed(reports) -> bool:
    return all(r.status != FAIL for r in reports)
