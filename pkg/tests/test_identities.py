from fractions import Fraction

import pytest

from problah.distributions import BATTERY, Bernoulli, Constant, FiniteDiscrete, Poisson, RawRisingMoments
from problah.identities import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    THEOREMS,
    CheckReport,
    all_passed,
    check,
    check_all,
)
from problah.probabilistic import ProbLahContext

UNIFORM_123 = FiniteDiscrete(((1, Fraction(1, 3)), (2, Fraction(1, 3)), (3, Fraction(1, 3))))


def statuses(reports):
    return {r.theorem_id: r.status for r in reports}


def test_bernoulli_theorem_passes():
    assert check("T2.14", Bernoulli(Fraction(1, 2)), 10).status == PASS


def test_inapplicable_is_distinct():
    r = check("T2.12", Bernoulli(Fraction(1, 2)), 10)
    assert r.status == NOT_APPLICABLE and not r.witnesses and not r.passed
    assert check("T2.2", Poisson(1), 5).status == NOT_APPLICABLE


def test_binomial_identity_classical():
    r = check("T2.7", Constant(1), 8)
    assert r.status == PASS
    assert r.cases == sum((n + 1) ** 2 for n in range(9))


def test_constant_one_suite():
    reports = check_all(Constant(1), 10)
    applicable = [r for r in reports if r.applicable]
    assert len(applicable) == 12
    assert all(r.status == PASS for r in applicable)
    assert statuses(reports)["T2.12"] == statuses(reports)["T2.13"] == NOT_APPLICABLE


def test_poisson_suite():
    reports = check_all(Poisson(1), 8)
    st = statuses(reports)
    assert st["T2.12"] == st["T2.13"] == PASS
    assert all(s in (PASS, NOT_APPLICABLE) for s in st.values())


def test_finite_suite():
    st = statuses(check_all(UNIFORM_123, 8))
    assert st["T2.2"] == PASS
    assert all(s in (PASS, NOT_APPLICABLE) for s in st.values())


def test_raw_moments_suite():
    spec = RawRisingMoments(tuple(Fraction(j + 2, 3) for j in range(8)))
    st = statuses(check_all(spec, 8))
    assert {t for t, s in st.items() if s == NOT_APPLICABLE} == {"T2.2", "T2.12", "T2.13", "T2.14"}
    assert all(s != FAIL for s in st.values())


def test_order_errors():
    with pytest.raises(ValueError):
        check("T2.1", Constant(1), 17)
    with pytest.raises(ValueError):
        check("T9.9", Constant(1), 3)
    with pytest.raises(ValueError):
        check("T2.1", Constant(1), 6, context=ProbLahContext.build(Constant(1), 4))


def test_determinism():
    a = [r.to_json() for r in check_all(Bernoulli(Fraction(1, 3)), 7)]
    b = [r.to_json() for r in check_all(Bernoulli(Fraction(1, 3)), 7)]
    assert a == b


def test_report_ordering():
    assert [r.theorem_id for r in check_all(Constant(2), 3)] == list(THEOREMS)


def test_dobinski_details():
    r = check("T2.4", Poisson(Fraction(1, 2)), 8)
    assert r.status == PASS
    assert r.details["max_terms"] <= 200
    assert float(r.details["max_abs_error"]) <= 1e-9


@pytest.mark.parametrize("spec", [Constant(1), Bernoulli(Fraction(1, 2)), Poisson(1), UNIFORM_123])
def test_every_perturbation_is_caught(spec):
    n_max = 6
    for n in range(n_max + 1):
        for k in range(n + 1):
            reports = check_all(spec, n_max, perturb=(n, k))
            assert not all_passed(reports), (n, k)
            t21 = reports[0]
            assert t21.status == FAIL
            w = t21.witnesses[0]
            assert (w.n, w.k) == (n, k)
            assert w.lhs - w.rhs == 1


def test_failure_report_round_trips_through_json():
    reports = check_all(Bernoulli(Fraction(1, 2)), 5, perturb=(3, 2))
    failing = [r for r in reports if r.status == FAIL]
    assert {r.theorem_id for r in failing} >= {"T2.1", "T2.4", "T2.6", "T2.11"}
    for r in reports:
        assert CheckReport.from_json(r.to_json()) == r
        assert r.passed == (not r.witnesses and r.status == PASS)


def test_witness_values_are_exact():
    reports = check_all(Poisson(Fraction(1, 2)), 5, perturb=(5, 1))
    for r in reports:
        for w in r.witnesses:
            if r.theorem_id == "T2.4":
                continue
            for v in (w.lhs, w.rhs):
                assert isinstance(v, (Fraction, tuple))
                if isinstance(v, tuple):
                    assert all(isinstance(c, Fraction) for c in v)


def test_series_check_independent_of_table():
    # a corrupted polynomial cache cannot fool the series-expansion route
    ctx = ProbLahContext.build(UNIFORM_123, 6).perturbed(6, 6, Fraction(-1, 7))
    assert check("T2.3", UNIFORM_123, 6, context=ctx).status == FAIL
