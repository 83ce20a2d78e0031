from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mahler_gauge.errors import DomainError, HypothesisNotSatisfied
from mahler_gauge.interval import Interval, mpf_to_fraction
from mahler_gauge.measure import (
    check_cor_1_5,
    check_eisenstein_bounds,
    check_l1,
    check_mahler_classical,
    check_thm_1_2,
    mahler_measure,
    ruppert_quadratic,
)
from mahler_gauge.polyexact import IntPolynomial, cyclotomic, discriminant_exact, parse_poly
from mahler_gauge.suites import random_paired_polynomial


def polys(min_degree=1, max_degree=6, bound=30):
    return st.lists(st.integers(-bound, bound), min_size=min_degree, max_size=max_degree).flatmap(
        lambda cs: st.integers(-bound, bound).filter(bool).map(lambda lead: IntPolynomial(tuple(cs) + (lead,)))
    )


def overlap(a: Interval, b: Interval) -> bool:
    return a.le(b) is not False and a.ge(b) is not False


def measure(f) -> Interval:
    return mahler_measure(f).value


def reference_measure(f: IntPolynomial) -> float:
    with mpmath.workdps(50):
        roots = mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=400, extraprec=400)
        out = mpmath.mpf(abs(f.leading))
        for z in roots:
            out *= max(1, abs(z))
        return float(out)


@pytest.mark.parametrize(
    "text, expected",
    [("3x^2-2", Fraction(3)), ("x^2+1", Fraction(1)), ("x^2-4", Fraction(4)), ("2x^3-16", Fraction(16))],
)
def test_exact_measures(text, expected):
    assert measure(parse_poly(text)).exact == expected


def test_golden_ratio_measure():
    m = measure(parse_poly("x^2-x-1"))
    assert float(m) == pytest.approx((1 + 5**0.5) / 2, rel=1e-15)
    assert mpf_to_fraction(m.rad) < Fraction(1, 10**30)
    assert (m * m - m - 1).contains_zero()


def test_lehmer_polynomial():
    m = measure(parse_poly("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"))
    assert float(m) == pytest.approx(1.17628081825991750654, rel=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 12, 30])
def test_cyclotomic_measure_is_one(n):
    assert measure(cyclotomic(n)).exact == 1


@settings(max_examples=60)
@given(polys())
def test_agrees_with_independent_root_product(f):
    assert float(measure(f)) == pytest.approx(reference_measure(f), rel=1e-12)


@settings(max_examples=40)
@given(polys(max_degree=4, bound=12), polys(max_degree=4, bound=12))
def test_multiplicative(f, g):
    assert overlap(measure(f * g), measure(f) * measure(g))


@given(polys())
def test_invariant_under_negated_variable(f):
    assert overlap(measure(f), measure(f.negate_variable()))


@given(polys())
def test_invariant_under_reversal(f):
    assume(f.constant != 0)
    assert overlap(measure(f), measure(f.reversed()))


@given(polys())
def test_bounded_below_and_l1_window(f):
    m = measure(f)
    assert m.ge(abs(f.leading)) is True
    assert m.ge(1) is True
    rep = check_l1(f)
    assert rep.holds is True


@given(st.integers(-40, 40), st.integers(1, 400))
def test_ruppert_quadratic_agrees(b, c):
    assume(b * b < 4 * c)
    f = IntPolynomial((c, b, 1))
    assert measure(f).exact == ruppert_quadratic(b, c) == max(1, c)


@settings(max_examples=80)
@given(polys(min_degree=2, bound=100))
def test_classical_inequality_holds(f):
    rep = check_mahler_classical(f)
    assert rep.holds is True
    assert rep.details["characterization_consistent"] is not False


@given(st.integers(2, 8), st.integers(1, 100), st.sampled_from([-1, 1]), st.sampled_from([-1, 1]))
def test_extremal_binomials_give_equality(d, a, s0, s1):
    f = IntPolynomial((s0 * a,) + (0,) * (d - 1) + (s1 * a,))
    rep = check_mahler_classical(f)
    assert rep.holds is True and rep.equality is True
    assert rep.details["extremal_binomial"] is True


def test_non_extremal_is_strict():
    rep = check_mahler_classical(parse_poly("x^2-x-1"))
    assert rep.holds is True and rep.equality is False


def test_rational_coefficient_input_is_exact():
    rep = check_mahler_classical([Fraction(-4), Fraction(0), Fraction(1)])
    assert rep.holds is True
    rep = check_mahler_classical([Fraction(-1, 2), 0, Fraction(1, 2)])
    assert rep.equality is True


def test_paired_bound_equality_family():
    for R in (1, 2, 7, 100):
        rep = check_thm_1_2(IntPolynomial((R * R, 0, 1)), r=1)
        assert rep.holds is True
        assert rep.slack.exact == 0


def test_paired_bound_hypothesis_and_domain():
    with pytest.raises(HypothesisNotSatisfied):
        check_thm_1_2(parse_poly("x^2-x-1"), r=1)
    with pytest.raises(DomainError):
        check_thm_1_2(parse_poly("2x^2+1"), r=1)
    with pytest.raises(DomainError):
        check_thm_1_2(parse_poly("x^2+4"), r=Fraction(1, 2))
    rep = check_thm_1_2(parse_poly("x^2-x-1"), r="auto")
    assert rep.holds is True


@settings(max_examples=60)
@given(st.randoms(use_true_random=False))
def test_paired_bound_and_l1_corollary_on_constructed_polynomials(rng):
    f, r = random_paired_polynomial(rng)
    assume(discriminant_exact(f) != 0)
    assert check_thm_1_2(f, r=r).holds is True
    cor = check_cor_1_5(f, r=r)
    assert cor.holds is True
    assert cor.details["mahler_l1_holds"] is True


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("d", [2, 5, 8])
def test_eisenstein_bounds(p, d):
    below, upper = check_eisenstein_bounds(p, d)
    assert below.holds is True and upper.holds is True


def test_precision_env_override(monkeypatch):
    monkeypatch.setenv("MAHLER_GAUGE_PRECISION", "256")
    rep = check_mahler_classical(parse_poly("x^3-x-1"))
    assert rep.precision_bits >= 256
