from fractions import Fraction

import pytest
from hypothesis import example, given
from hypothesis import strategies as st
from mpmath import libmp

from mahler_gauge.interval import Interval, certainly_ge, integer_root, mpf_to_fraction, root_exact, sqrt_exact

fractions = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)
positive = st.fractions(min_value=Fraction(1, 1000), max_value=10**6, max_denominator=10**4)


def loose(q: Fraction, prec: int = 64) -> Interval:
    """Interval around q with no exact carry, to exercise the rounding path."""
    iv = Interval.point(q, prec)
    return Interval(iv.lo, iv.hi, None, prec)


@given(fractions, fractions)
def test_arithmetic_encloses_exact_result(a, b):
    x, y = loose(a), loose(b)
    assert (x + y).contains(a + b)
    assert (x - y).contains(a - b)
    assert (x * y).contains(a * b)
    if b != 0:
        assert (x / y).contains(a / b)


@given(fractions, st.integers(min_value=0, max_value=7))
def test_powers_enclose(a, n):
    assert (loose(a) ** n).contains(a**n)


@given(fractions, fractions)
def test_exact_carry(a, b):
    x, y = Interval.point(a), Interval.point(b)
    assert (x + y).exact == a + b
    assert (x * y).exact == a * b
    assert (x - y).exact == a - b
    assert (x - x).exact == 0


@given(positive, st.integers(min_value=2, max_value=5))
@example(Fraction(5, 1531), 3)
def test_roots_enclose(a, n):
    iv = loose(a, 128).root(n)
    lo, hi = mpf_to_fraction(iv.lo), mpf_to_fraction(iv.hi)
    assert lo**n <= a <= hi**n


def test_comparisons_are_three_valued():
    a = Interval.point(Fraction(1, 3))
    assert a.ge(Fraction(1, 3)) is True
    assert a.gt(Fraction(1, 3)) is False
    wide = Interval.hull(libmp.from_int(0), libmp.from_int(1))
    assert wide.ge(Fraction(1, 2)) is None
    assert wide.le(2) is True
    assert wide.gt(-1) is True
    assert certainly_ge(3, 2) is True
    assert certainly_ge(wide, Fraction(1, 2)) is None


def test_exact_roots():
    assert sqrt_exact(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_exact(Fraction(2)) is None
    assert sqrt_exact(Fraction(-4)) is None
    assert root_exact(Fraction(27, 8), 3) == Fraction(3, 2)
    assert root_exact(Fraction(10), 3) is None
    assert Interval.point(4).sqrt().exact == 2


@given(st.integers(min_value=0, max_value=10**40), st.integers(min_value=1, max_value=9))
def test_integer_root_is_floor(a, n):
    r = integer_root(a, n)
    assert r**n <= a < (r + 1) ** n


def test_division_by_interval_containing_zero():
    with pytest.raises(ZeroDivisionError):
        Interval.point(1) / Interval.hull(libmp.from_int(-1), libmp.from_int(1))


def test_json_form():
    doc = Interval.point(Fraction(1, 2)).to_json()
    assert doc["exact"] == "1/2"
    assert float(doc["lo"]) <= 0.5 <= float(doc["hi"])
