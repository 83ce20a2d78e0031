from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mahler_gauge.errors import DomainError
from mahler_gauge.polyexact import (
    IntPolynomial,
    bareiss_det,
    cyclotomic,
    discriminant_exact,
    family_eisenstein,
    family_footnote1,
    family_jones,
    is_irreducible,
    l1_norm,
    parse_poly,
    poly_gcd,
    resultant,
    squarefree_decomposition,
    strip_cyclotomic,
)

X = sympy.Symbol("x")


def to_sympy(f: IntPolynomial):
    return sympy.Poly(list(reversed(f.coeffs)), X)


def polys(min_degree=1, max_degree=7, bound=30):
    return st.lists(st.integers(-bound, bound), min_size=min_degree, max_size=max_degree).flatmap(
        lambda cs: st.integers(-bound, bound).filter(bool).map(lambda lead: IntPolynomial(tuple(cs) + (lead,)))
    )


@given(polys(min_degree=2))
def test_discriminant_matches_sympy(f):
    assert discriminant_exact(f) == int(sympy.discriminant(to_sympy(f)))


@given(polys(max_degree=5), polys(max_degree=5))
def test_resultant_magnitude_matches_sympy(f, g):
    # sympy orders the factors the other way, which can flip the sign
    assert abs(resultant(f, g)) == abs(int(sympy.resultant(to_sympy(f), to_sympy(g))))
    assert resultant(g, f) == (-1) ** (f.degree * g.degree) * resultant(f, g)


@given(
    st.lists(st.integers(-6, 6), min_size=1, max_size=4),
    st.integers(-5, 5).filter(bool),
    polys(max_degree=4, bound=10),
)
def test_resultant_is_product_over_roots(roots, lead, g):
    f = IntPolynomial.from_roots(roots, leading=lead)
    expected = lead ** g.degree
    for a in roots:
        expected *= g(a)
    assert resultant(f, g) == expected


@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_sympy(m):
    assert bareiss_det(m) == int(sympy.Matrix(m).det())


def test_known_discriminants():
    assert discriminant_exact(parse_poly("x^3-x-1")) == -23
    assert discriminant_exact(parse_poly("x^2+x+1")) == -3
    assert discriminant_exact(parse_poly("3x^2-2")) == 24
    assert discriminant_exact(parse_poly("x^4+x^3+x^2+x+1")) == 125
    for d in range(2, 21):
        assert abs(discriminant_exact(IntPolynomial.monomial(d) - IntPolynomial((1,)))) == d**d


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("d", range(2, 7))
def test_footnote_family_closed_form(p, d):
    fam = family_footnote1(p, d)
    assert str(fam.poly) == f"{p + 1}x^{d}-{p}" if d > 1 else True
    assert abs(discriminant_exact(fam.poly)) == fam.disc_abs == d**d * (p * (p + 1)) ** (d - 1)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("d", range(2, 9))
def test_eisenstein_family_closed_form(p, d):
    fam = family_eisenstein(p, d)
    assert abs(discriminant_exact(fam.poly)) == fam.disc_abs
    assert is_irreducible(fam.poly)
    assert fam.poly.coeffs[-1] == 1 and all(c % p == 0 for c in fam.poly.coeffs[:-1])
    assert fam.poly.coeffs[0] % (p * p) != 0


@pytest.mark.parametrize("text", ["x^3+2x^2+2", "-x^5+3", "7", "x", "2x^2-x", "x^10-1"])
def test_parse_roundtrip(text):
    assert str(parse_poly(text)) == text


def test_parse_forms():
    assert parse_poly("[1, 0, 1]") == parse_poly("x^2+1")
    assert parse_poly("x**2 + 2*x + 1") == parse_poly("x^2+2x+1")
    assert parse_poly("x^2+x+x") == parse_poly("x^2+2x")
    for bad in ["", "x^^2", "2 3", "x x", "[1.5]", "y+1", "[1,"]:
        with pytest.raises(DomainError):
            parse_poly(bad)


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_matches_sympy(n):
    assert cyclotomic(n) == IntPolynomial(tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, X)).all_coeffs())))


@given(polys(max_degree=6, bound=12))
def test_irreducibility_matches_sympy(f):
    f = f.primitive()
    _, factors = sympy.factor_list(to_sympy(f))
    expected = len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree() == f.degree
    assert is_irreducible(f) == expected


@given(polys(max_degree=3, bound=6), polys(max_degree=3, bound=6))
def test_squarefree_decomposition_recomposes(f, g):
    h = f * f * g
    parts = squarefree_decomposition(h)
    prod = IntPolynomial((1,))
    for q, e in parts:
        prod = prod * q**e
    assert prod.primitive() == h.primitive() or prod.primitive() == (-h).primitive()


def test_gcd_and_helpers():
    f = IntPolynomial.from_roots([1, 2, 3])
    g = IntPolynomial.from_roots([2, 3, 5])
    assert poly_gcd(f, g).primitive() in (IntPolynomial.from_roots([2, 3]), -IntPolynomial.from_roots([2, 3]))
    assert l1_norm(parse_poly("x^2-3x+2")) == 6
    assert parse_poly("x^3-2").reversed() == parse_poly("-2x^3+1")
    assert parse_poly("x^3+x").negate_variable() == parse_poly("-x^3-x")
    rest, found = strip_cyclotomic(cyclotomic(5) * cyclotomic(3) * parse_poly("x-7"))
    assert sorted(found) == [(3, 1), (5, 1)]
    assert rest.primitive() in (parse_poly("x-7"), parse_poly("-x+7"))


def test_jones_family_shape():
    f = family_jones(3, 1, 2)
    assert f == IntPolynomial((7, 0, -16 * 3 * 7, 1))
    with pytest.raises(DomainError):
        family_jones(6, 1, 1)
