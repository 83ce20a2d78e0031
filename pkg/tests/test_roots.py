from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mahler_gauge.errors import DomainError, HypothesisNotSatisfied
from mahler_gauge.polyexact import IntPolynomial, parse_poly
from mahler_gauge.roots import derive_profile, find_roots


def polys(max_degree=7, bound=40):
    return st.lists(st.integers(-bound, bound), min_size=1, max_size=max_degree).flatmap(
        lambda cs: st.integers(-bound, bound).filter(bool).map(lambda lead: IntPolynomial(tuple(cs) + (lead,)))
    )


def reference_roots(f: IntPolynomial):
    with mpmath.workdps(60):
        return mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=400, extraprec=400)


@settings(max_examples=60)
@given(polys())
def test_every_reference_root_lies_in_a_certified_disk(f):
    rs = find_roots(f)
    assert rs.certified
    assert rs.degree == f.degree
    for z in reference_roots(f):
        assert any(abs(complex(z) - complex(r.value)) <= float(r.radius) + 1e-20 for r in rs.roots)


def test_golden_ratio():
    rs = find_roots(parse_poly("x^2-x-1"))
    values = sorted(float(r.value.real) for r in rs.roots)
    phi = (1 + 5**0.5) / 2
    assert values == pytest.approx([1 - phi, phi], abs=1e-15)
    assert all(r.real is True for r in rs.roots)


def test_multiplicities_and_rational_roots():
    f = IntPolynomial.from_roots([1, 1, 1, -2]) * parse_poly("x^2+1")
    rs = find_roots(f)
    exact = sorted(r.exact for r in rs.roots if r.exact is not None)
    assert exact == [-2, 1, 1, 1]
    assert sorted(r.multiplicity for r in rs.roots) == [1, 1, 1, 3, 3, 3]


def test_rational_snap_needs_proximity():
    # -0.678... is near no rational root; -1 is a root and must not absorb it
    rs = find_roots(parse_poly("x^4+12x^3+18x^2+7x"))
    assert sorted(r.exact for r in rs.roots if r.exact is not None) == [-1, 0]
    assert rs.certified


def test_conjugate_partners():
    rs = find_roots(parse_poly("x^3-x-1"))
    complex_roots = [i for i, r in enumerate(rs.roots) if r.real is False]
    assert len(complex_roots) == 2
    i, j = complex_roots
    assert rs.conjugate[i] == j and rs.conjugate[j] == i


def test_complex_coefficients():
    rs = find_roots([1j, 0, 1])  # x^2 + i
    for r in rs.roots:
        assert abs(r.value * r.value + 1j) < 1e-30


def test_constant_and_zero_rejected():
    with pytest.raises(DomainError):
        find_roots(IntPolynomial((5,)))
    with pytest.raises(DomainError):
        find_roots([0, 0])


def test_paired_profile_conjugate_pair():
    prof = derive_profile(find_roots(parse_poly("x^2+4")), 1)
    assert prof.m == 2 and prof.r == 1 and prof.small_indices == ()


def test_paired_profile_real_pair_and_small_roots():
    f = parse_poly("x^2-9") * parse_poly("x-1") * parse_poly("x")
    prof = derive_profile(find_roots(f), 1)
    assert prof.m == 2
    assert len(prof.small_indices) == 2


def test_unpaired_large_root_fails_hypothesis():
    with pytest.raises(HypothesisNotSatisfied):
        derive_profile(find_roots(parse_poly("x^2-x-1")), 1)


def test_auto_radius_covers_unpaired_roots():
    prof = derive_profile(find_roots(parse_poly("x^2-x-1")), "auto")
    assert prof.auto and prof.r >= Fraction(1618, 1000)
    assert prof.m == 0


def test_radius_below_one_rejected():
    with pytest.raises(DomainError):
        derive_profile(find_roots(parse_poly("x^2+4")), Fraction(1, 2))
