import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mahler_gauge.energy import (
    PointConfiguration,
    _reflect,
    check_thm_2_1,
    config_discriminant,
    config_measure,
    config_measure_sq,
    configuration_from_roots,
    energy_log,
    pair_by_norm,
    random_paired_configuration,
    sharpness_family,
    sharpness_ratios,
)
from mahler_gauge.errors import DomainError, HypothesisNotSatisfied
from mahler_gauge.interval import Interval
from mahler_gauge.measure import mahler_measure
from mahler_gauge.polyexact import IntPolynomial, discriminant_exact, parse_poly
from mahler_gauge.roots import find_roots

configs = st.tuples(
    st.integers(0, 2**32),
    st.sampled_from([1, 2, 3, 5]),
    st.integers(2, 10),
    st.sampled_from([Fraction(1), Fraction(3, 2), Fraction(2)]),
).map(lambda t: (random_paired_configuration(random.Random(t[0]), t[1], t[2], t[3]), t[3]))
rngs = st.integers(0, 2**32).map(random.Random)


def test_antipodal_pair_is_equality():
    cfg = PointConfiguration.from_json({"k": 3, "points": [[1, 0, 0], [-1, 0, 0]]})
    rep, trace = check_thm_2_1(cfg, 1)
    assert rep.holds is True and rep.equality is True
    assert trace.all_hold is True


def test_large_antipodal_pair_is_equality():
    for R in (2, 5, Fraction(7, 3)):
        cfg = PointConfiguration(((R, 0), (-R, 0)))
        rep, _ = check_thm_2_1(cfg, 1)
        assert rep.equality is True


def test_coincident_points_hold_trivially():
    cfg = PointConfiguration(((1, 2), (1, 2), (0, 0)))
    assert config_discriminant(cfg).is_zero
    assert energy_log(cfg) == math.inf
    rep, trace = check_thm_2_1(cfg, 1)
    assert rep.holds is True and trace is None


def test_square_roots_of_unity_energy():
    cfg = PointConfiguration(((1, 0), (0, 1), (-1, 0), (0, -1)))
    assert config_discriminant(cfg).value == 4**4
    assert energy_log(cfg) == pytest.approx(-4 * math.log(4))
    assert config_measure_sq(cfg) == 1


@pytest.mark.parametrize("d", [3, 5, 8, 13])
def test_equidistributed_energy_from_roots_of_unity(d):
    f = IntPolynomial.monomial(d) - IntPolynomial((1,))
    cfg = configuration_from_roots(find_roots(f))
    assert cfg.d == d
    assert energy_log(cfg) == pytest.approx(-d * math.log(d), rel=1e-12)


def test_repeated_roots_appear_once_per_multiplicity():
    f = IntPolynomial.from_roots([1, 1, -2]) * parse_poly("x^2+1")
    cfg = configuration_from_roots(find_roots(f))
    assert cfg.d == f.degree
    disc = config_discriminant(cfg).value
    assert disc == 0 or (isinstance(disc, Interval) and disc.contains_zero())


def _signed_permutation(rng: random.Random, cfg: PointConfiguration) -> PointConfiguration:
    perm = list(range(cfg.k))
    rng.shuffle(perm)
    signs = [rng.choice([-1, 1]) for _ in range(cfg.k)]
    return PointConfiguration(tuple(tuple(signs[i] * p[perm[i]] for i in range(cfg.k)) for p in cfg.points))


def _reflected(rng: random.Random, cfg: PointConfiguration) -> PointConfiguration:
    u = [Fraction(rng.randint(-4, 4)) for _ in range(cfg.k)]
    while not any(u):
        u = [Fraction(rng.randint(-4, 4)) for _ in range(cfg.k)]
    uu = sum(x * x for x in u)
    out = []
    for p in cfg.points:
        s = 2 * sum(a * b for a, b in zip(p, u)) / uu
        out.append(tuple(a - s * b for a, b in zip(p, u)))
    return PointConfiguration(tuple(out))


@settings(max_examples=60)
@given(configs, rngs)
def test_isometry_invariance(item, rng):
    cfg, r = item
    for moved in (_signed_permutation(rng, cfg), _reflected(rng, cfg)):
        assert config_measure_sq(moved) == config_measure_sq(cfg)
        assert config_discriminant(moved).value == config_discriminant(cfg).value
        rep, _ = check_thm_2_1(moved, r)
        assert rep.holds is True


@settings(max_examples=80)
@given(configs)
def test_random_configurations_satisfy_bound_and_trace(item):
    cfg, r = item
    rep, trace = check_thm_2_1(cfg, r)
    assert rep.holds is True
    assert trace is not None and trace.all_hold is True
    flags = trace.flags()
    assert set(flags) >= {"C0", "per_pair", "S_sizes", "S_bounds", "c_dm", "decomposition", "algebra"}


@settings(max_examples=40)
@given(configs, rngs)
def test_small_point_perturbation_keeps_bound(item, rng):
    cfg, r = item
    pairing = pair_by_norm(cfg, r)
    if not pairing.small:
        return
    i = rng.choice(pairing.small)
    pts = list(cfg.points)
    shrink = Fraction(rng.randint(1, 9), 10)
    pts[i] = tuple(c * shrink for c in pts[i])
    moved = PointConfiguration(tuple(pts))
    rep, _ = check_thm_2_1(moved, r)
    assert rep.holds is True


def test_reflection_preserves_norm():
    rng = random.Random(3)
    v = (Fraction(3), Fraction(-2), Fraction(5, 7))
    w = _reflect(rng, v)
    assert w is not None and sum(x * x for x in w) == sum(x * x for x in v)


def test_pairing_hypothesis_failures():
    with pytest.raises(HypothesisNotSatisfied):
        pair_by_norm(PointConfiguration(((3, 0), (0, 0))), 1)
    with pytest.raises(HypothesisNotSatisfied):
        pair_by_norm(PointConfiguration(((3, 0), (0, 2))), 1)
    with pytest.raises(DomainError):
        pair_by_norm(PointConfiguration(((3, 0), (-3, 0))), Fraction(1, 2))


def test_interval_path_with_radii():
    radii = (Fraction(1, 10**30),) * 3
    cfg = PointConfiguration(((3, 0), (0, 3), (Fraction(1, 2), 0)), radii=radii)
    assert not cfg.exact
    rep, trace = check_thm_2_1(cfg, 1)
    assert rep.holds is True and trace.all_hold is True
    # an antipodal pair is tight in the per-pair bound; intervals cannot certify equality
    tight = PointConfiguration(((3, 0), (-3, 0), (Fraction(1, 2), 0)), radii=radii)
    rep, trace = check_thm_2_1(tight, 1)
    assert rep.holds is True
    assert trace.flags()["per_pair"] is None
    assert all(v is True for k, v in trace.flags().items() if k != "per_pair")


def test_sharpness_family_shape():
    cfg = sharpness_family(3, 6, 1, 100)
    assert cfg.d == 6 and cfg.k == 3
    assert len(set(cfg.points)) == 6
    for p in cfg.points[:4]:
        assert sum(c * c for c in p) == 1
    assert cfg.points[4] == (0, 0, 100) and cfg.points[5] == (0, 0, -100)


def test_sharpness_ratio_tends_to_four():
    sharp, weak = sharpness_ratios(sharpness_family(2, 3, 1, 1000))
    assert float(sharp) == pytest.approx(4, rel=1e-2)
    assert float(weak) > 1000


@pytest.mark.parametrize("bad", [{"points": [[1, 2]]}, {"points": [[1], [1, 2]]}, {"k": 3, "points": [[1, 0], [0, 1]]}, {"pts": []}])
def test_configuration_validation(bad):
    with pytest.raises(DomainError):
        PointConfiguration.from_json(bad)


def test_polynomial_and_configuration_values_agree():
    f = parse_poly("x^4-3x^3+x-5")
    rs = find_roots(f)
    cfg = configuration_from_roots(rs)
    disc = config_discriminant(cfg).value
    assert float(disc) == pytest.approx(abs(discriminant_exact(f)), rel=1e-12)
    assert float(config_measure(cfg)) == pytest.approx(float(mahler_measure(f).value), rel=1e-12)
