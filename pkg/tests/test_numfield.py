import json
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mahler_gauge.errors import DomainError, HypothesisNotSatisfied
from mahler_gauge.numfield import (
    IMAGINARY_QUADRATIC,
    build_box,
    build_order,
    build_real_box,
    check_field_bounds,
    compute_M_OK,
    enumerate_box,
    find_generators,
    find_generators_real_variant,
    imaginary_quadratic_order,
    load_field_spec,
    min_measure_by_elements,
    minimal_polynomial,
    minkowski_embed,
    minkowski_lattice,
)
from mahler_gauge.polyexact import IntPolynomial, parse_poly
from mahler_gauge.roots import find_roots

X, Y = sympy.symbols("x y")
FIELDS = ["x^2+1", "x^2-x+1", "x^2+5", "x^3-x-1", "x^3-2", "x^4+x^3+x^2+x+1", "x^2-2", "x^3-3x-1", "x^4-2"]


@pytest.fixture(scope="module")
def qi():
    return build_order("x^2+1", field_disc=-4)


def test_gaussian_order(qi):
    assert qi.signature == (0, 1)
    assert qi.disc_order == -4
    assert qi.is_power_basis
    lat = minkowski_lattice(qi)
    assert lat.covolume.exact == 1
    assert np.allclose(lat.matrix, [[1, 0], [0, 1]])


@pytest.mark.parametrize("poly", FIELDS)
def test_covolume_matches_determinant(poly):
    order = build_order(poly)
    lat = minkowski_lattice(order)
    expected = math.sqrt(abs(order.disc_order)) / 2**order.s
    assert lat.covolume_float() == pytest.approx(expected, rel=1e-9)
    assert float(lat.covolume) == pytest.approx(expected, rel=1e-12)


def test_embedding_order_reals_then_upper_half_plane():
    order = build_order("x^3-x-1")
    assert order.signature == (1, 1)
    theta = [Fraction(0), Fraction(1), Fraction(0)]
    sig = order.embeddings(theta)
    assert float(sig[0][0]) == pytest.approx(1.324717957244746)
    assert sig[0][1].exact == 0 or abs(float(sig[0][1])) < 1e-30
    assert float(sig[1][1]) > 0
    assert float(sig[2][1]) == pytest.approx(-float(sig[1][1]))
    vec = minkowski_embed(order, [0, 1, 0])
    assert [float(v) for v in vec] == pytest.approx([float(sig[0][0]), float(sig[1][0]), float(sig[1][1])])


def test_non_power_basis_maximal_order():
    order = build_order("x^2+3", basis=[[1, 0], ["1/2", "1/2"]], field_disc=-3)
    assert order.disc_order == -3
    assert not order.is_power_basis
    assert "Z-span" in order.lattice_description
    mp = minimal_polynomial(order, [0, 1])  # (1 + sqrt(-3)) / 2
    assert mp.poly == parse_poly("x^2-x+1")


@pytest.mark.parametrize(
    "poly, basis, disc",
    [
        ("x^2+4", None, -3),
        ("2x^2+1", None, None),
        ("x^2-1", None, None),
        ("x^2+1", [[1, 0], [0, "1/2"]], None),
        ("x^2+1", [[1, 0], [2, 0]], None),
        ("x^2+5", None, -4),
    ],
)
def test_invalid_orders_rejected(poly, basis, disc):
    with pytest.raises(DomainError):
        build_order(poly, basis=basis, field_disc=disc)


def test_field_spec_loading(tmp_path):
    path = tmp_path / "qi.json"
    path.write_text(json.dumps({"poly": "x^2+1", "disc": -4}))
    order = load_field_spec(str(path))
    assert order.field_disc == -4
    assert load_field_spec({"poly": [1, 0, 1]}).poly == parse_poly("x^2+1")
    with pytest.raises(DomainError):
        load_field_spec({"basis": []})


def _charpoly_by_resultant(f: IntPolynomial, power):
    fy = sum(int(c) * Y**i for i, c in enumerate(f.coeffs))
    gy = sum(sympy.Rational(c.numerator, c.denominator) * Y**i for i, c in enumerate(power))
    res = sympy.Poly(sympy.resultant(fy, X - gy, Y), X)
    return [int(c) for c in reversed(res.all_coeffs())]


@settings(max_examples=40)
@given(st.sampled_from(FIELDS), st.lists(st.integers(-6, 6), min_size=4, max_size=4))
def test_characteristic_polynomial_matches_resultant(poly, coords):
    order = build_order(poly)
    coords = coords[: order.degree]
    mp = minimal_polynomial(order, coords)
    expected = _charpoly_by_resultant(order.poly, order.to_power(coords))
    assert list(mp.charpoly.coeffs) == expected


def test_minimal_polynomials_in_subfields():
    zeta = build_order("x^4+x^3+x^2+x+1")
    mp = minimal_polynomial(zeta, [0, 1, 0, 0])
    assert mp.is_generator and mp.poly == zeta.poly
    # zeta + zeta^4 = -1 - zeta^2 - zeta^3 lies in Q(sqrt 5)
    mp = minimal_polynomial(zeta, [-1, 0, -1, -1])
    assert not mp.is_generator and mp.poly == parse_poly("x^2+x-1")
    mp = minimal_polynomial(zeta, [3, 0, 0, 0])
    assert mp.poly == parse_poly("x-3") and not mp.is_generator


def test_box_enumeration_matches_brute_force(qi):
    box = build_box(qi, 2, 10)
    enum = enumerate_box(qi, box)
    assert enum.points == ((11, 17),)
    order = build_order("x^3-x-1")
    box = build_box(order, 3, 15)
    enum = enumerate_box(order, box)
    lat = minkowski_lattice(order)
    grid = np.mgrid[-60:61, -60:61, -60:61].reshape(3, -1)
    images = lat.matrix @ grid
    lo = np.array([float(b[0]) for b in box.bounds])[:, None]
    hi = np.array([float(b[1]) for b in box.bounds])[:, None]
    inside_outer = ((images > lo - 1e-9) & (images < hi + 1e-9)).all(axis=0)
    inside_inner = ((images > lo + 1e-9) & (images < hi - 1e-9)).all(axis=0)
    outer = {tuple(int(x) for x in col) for col in grid[:, inside_outer].T}
    inner = {tuple(int(x) for x in col) for col in grid[:, inside_inner].T}
    assert inner
    assert inner <= set(enum.points) <= outer


def test_gaussian_generator_record(qi):
    rec = find_generators(qi, [10], c=2)[0]
    assert rec.alpha_coords == (11, 17)
    assert str(rec.minpoly) == "x^2-22x+410"
    assert rec.M.exact == 410 and abs(rec.disc_f) == 1156
    assert rec.c_K == 64 and rec.verified is True
    assert rec.to_json()["alpha_coords"] == [11, 17]


def _roots_within(rec) -> bool:
    outside = [m for m in find_roots(rec.minpoly).moduli() if m.le(rec.root_bound) is not True]
    return len(outside) <= 2


@pytest.mark.parametrize("poly, disc", [("x^2+1", -4), ("x^2-x+1", -3), ("x^3-x-1", -23), ("x^3-2", -108), ("x^4+x^3+x^2+x+1", 125)])
def test_generator_invariants(poly, disc):
    order = build_order(poly, field_disc=disc)
    recs = find_generators(order, [10, 20, 30, 40, 50])
    assert len(recs) == 5
    assert len({r.alpha_coords for r in recs}) == 5
    c_K = recs[0].c_K
    for rec in recs:
        assert rec.verified is True, rec.checks
        assert rec.ratio.le(c_K) is True
        q = Fraction(rec.disc_f, disc)
        assert q > 0 and q.denominator == 1 and math.isqrt(int(q)) ** 2 == q
        assert _roots_within(rec)


def test_totally_real_field_needs_real_variant():
    order = build_order("x^2-2", field_disc=8)
    with pytest.raises(HypothesisNotSatisfied):
        find_generators(order, [10])
    with pytest.raises(HypothesisNotSatisfied):
        build_box(order, 2, 10)
    recs = find_generators_real_variant(order, [10, 20, 30])
    assert all(r.verified is True for r in recs)
    assert len({r.alpha_coords for r in recs}) == 3


@pytest.mark.parametrize("poly", ["x^3-3x-1", "x^3-x-1"])
def test_real_variant(poly):
    recs = find_generators_real_variant(build_order(poly), [10, 20, 30])
    assert all(r.verified is True for r in recs)
    assert all(r.variant == "real" for r in recs)


def test_real_variant_needs_real_embedding(qi):
    with pytest.raises(DomainError):
        find_generators_real_variant(qi, [10])
    with pytest.raises(DomainError):
        build_real_box(qi, 2, 10)


def test_schedule_raises_small_T_with_notice(qi):
    recs = find_generators(qi, [1, 2], c=2)
    assert recs[0].T >= 10 and recs[1].T > recs[0].T + 2
    assert any("raised" in n for n in recs[0].notices)
    with pytest.raises(DomainError):
        find_generators(qi, [20, 10])


@pytest.mark.parametrize("disc", sorted(IMAGINARY_QUADRATIC))
def test_minimum_measure_two_ways(disc):
    order = imaginary_quadratic_order(disc)
    T_max = max(2, abs(disc) // 4 + 1)
    a = compute_M_OK(order, T_max)
    b = min_measure_by_elements(order, T_max)
    assert a.status == b.status == "computed"
    assert a.value.exact == b.value.exact
    assert a.value.exact >= Fraction(abs(disc), 4)


def test_minimum_measure_statuses():
    order = imaginary_quadratic_order(-19)
    assert compute_M_OK(order, 2).status == "exceeds T_max"
    zeta = build_order("x^4+x^3+x^2+x+1", field_disc=125)
    assert compute_M_OK(zeta, 125).status == "not computed"
    assert compute_M_OK(zeta, 1).value.exact == 1


def test_field_bounds(qi):
    reps = {r.name: r for r in check_field_bounds(qi, 1)}
    assert reps["imaginary_quadratic"].equality is True
    assert reps["field_totally_complex"].equality is True
    assert all(r.holds is True for r in reps.values())
    eis = {r.name: r for r in check_field_bounds(build_order("x^2-x+1", field_disc=-3), 1)}
    assert eis["imaginary_quadratic"].holds is True and eis["imaginary_quadratic"].equality is False
    zeta = {r.name: r for r in check_field_bounds(build_order("x^4+x^3+x^2+x+1", field_disc=125), 1)}
    lower = zeta["field_totally_complex"]
    assert lower.holds is True
    assert float(lower.rhs) ** (1 / 5) == pytest.approx(2 ** (-12 / 5) * 125 ** (1 / 5), rel=1e-9)
    real = {r.name for r in check_field_bounds(build_order("x^2-2", field_disc=8), 2)}
    assert real == {"field_classical", "field_upper"}
    with pytest.raises(DomainError):
        check_field_bounds(build_order("x^2+1"), 1)
