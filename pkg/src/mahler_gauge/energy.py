"""Point configurations in R^k: measure, discriminant, logarithmic energy.

A configuration is exact (rational coordinates) unless per-point error
radii are supplied, in which case every derived quantity is an
:class:`Interval`. Both kinds go through the same checker; the exact kind
decides equality cases exactly.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from mpmath import libmp

from .errors import DomainError, HypothesisNotSatisfied, PrecisionError
from .interval import DEFAULT_PREC, Interval, as_interval, certainly_ge, certainly_le, mpf_to_fraction, sqrt_exact
from .report import InequalityReport, jsonable

Value = Union[Fraction, Interval]


def to_fraction(x: Any) -> Fraction:
    """Decimal text, rational text, ints and floats (as their decimal repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite coordinate {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise DomainError(f"cannot parse number {x!r}") from exc
    raise DomainError(f"not a number: {x!r}")


@dataclass(frozen=True)
class PointConfiguration:
    points: Tuple[Tuple[Fraction, ...], ...]
    radii: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        pts = tuple(tuple(to_fraction(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise DomainError("a configuration needs at least two points")
        k = len(pts[0])
        if k < 1 or any(len(p) != k for p in pts):
            raise DomainError("all points must share one dimension k >= 1")
        if self.radii is not None:
            rad = tuple(to_fraction(x) for x in self.radii)
            if len(rad) != len(pts) or any(x < 0 for x in rad):
                raise DomainError("radii must be one non-negative value per point")
            object.__setattr__(self, "radii", rad if any(rad) else None)

    @property
    def k(self) -> int:
        return len(self.points[0])

    @property
    def d(self) -> int:
        return len(self.points)

    @property
    def exact(self) -> bool:
        return self.radii is None

    @classmethod
    def from_json(cls, data: Union[str, Dict]) -> "PointConfiguration":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "points" not in data:
            raise DomainError("configuration JSON needs a 'points' array")
        cfg = cls(tuple(tuple(p) for p in data["points"]), data.get("radii"))
        if "k" in data and int(data["k"]) != cfg.k:
            raise DomainError(f"declared k={data['k']} but points have dimension {cfg.k}")
        return cfg

    @classmethod
    def load(cls, path: str) -> "PointConfiguration":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> Dict:
        out: Dict[str, Any] = {"k": self.k, "points": [[str(c) for c in p] for p in self.points]}
        if self.radii is not None:
            out["radii"] = [str(x) for x in self.radii]
        return out


def _sq(v: Sequence[Fraction]) -> Fraction:
    return sum((c * c for c in v), Fraction(0))


def _widen_sq(exact_sq: Fraction, radius: Fraction, prec: int) -> Value:
    """Square of (sqrt(exact_sq) ± radius), clipped at zero."""
    if radius == 0:
        return exact_sq
    centre = Interval.point(exact_sq, prec).sqrt()
    lo = centre - radius
    hi = centre + radius
    span = Interval(lo.lo, hi.hi, None, prec)
    return abs(span) ** 2


def norm_sq(cfg: PointConfiguration, i: int, prec: int = DEFAULT_PREC) -> Value:
    base = _sq(cfg.points[i])
    return base if cfg.radii is None else _widen_sq(base, cfg.radii[i], prec)


def dist_sq(cfg: PointConfiguration, i: int, j: int, prec: int = DEFAULT_PREC) -> Value:
    base = _sq([a - b for a, b in zip(cfg.points[i], cfg.points[j])])
    if cfg.radii is None:
        return base
    return _widen_sq(base, cfg.radii[i] + cfg.radii[j], prec)


def _sqrt(x: Value, prec: int) -> Interval:
    return Interval.point(x, prec).sqrt() if isinstance(x, Fraction) else x.sqrt()


def _max1(x: Value) -> Value:
    if isinstance(x, Fraction):
        return max(x, Fraction(1))
    return x.maximum(1)


def config_measure_sq(cfg: PointConfiguration, prec: int = DEFAULT_PREC) -> Value:
    """M(alpha)^2 = prod max(1, |a_i|^2); exact for exact configurations."""
    out: Value = Fraction(1)
    for i in range(cfg.d):
        out = out * _max1(norm_sq(cfg, i, prec))
    return out


def config_measure(cfg: PointConfiguration, prec: int = DEFAULT_PREC) -> Interval:
    """prod max(1, |a_i|) as an interval, carrying the exact value when rational."""
    return _sqrt(config_measure_sq(cfg, prec), prec)


def _log(x: Value) -> float:
    if isinstance(x, Fraction):
        if x == 0:
            return -math.inf
        return math.log(x.numerator) - math.log(x.denominator)
    if not libmp.mpf_gt(x.lo, libmp.fzero):
        return -math.inf if libmp.mpf_le(x.hi, libmp.fzero) else libmp.to_float(libmp.mpf_log(x.mid, 53))
    return libmp.to_float(libmp.mpf_log(x.mid, 53))


@dataclass(frozen=True)
class DiscriminantResult:
    value: Value
    energy: float

    @property
    def is_zero(self) -> bool:
        return isinstance(self.value, Fraction) and self.value == 0


def config_discriminant(cfg: PointConfiguration, prec: int = DEFAULT_PREC) -> DiscriminantResult:
    """prod_{i<j} |a_i - a_j|^2 and E_log = -log of it (+inf when it vanishes)."""
    out: Value = Fraction(1)
    for i in range(cfg.d):
        for j in range(i + 1, cfg.d):
            out = out * dist_sq(cfg, i, j, prec)
    if cfg.radii is None and any(cfg.points[i] == cfg.points[j] for i in range(cfg.d) for j in range(i)):
        out = Fraction(0)
    return DiscriminantResult(out, -_log(out))


def energy_log(cfg: PointConfiguration) -> float:
    return config_discriminant(cfg).energy


# -- pairing ----------------------------------------------------------------


def _key(x: Value) -> float:
    return float(x)


def _same(a: Value, b: Value) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return certainly_ge(a, b) is not False and certainly_le(a, b) is not False


@dataclass(frozen=True)
class NormPairing:
    r: Fraction
    pairs: Tuple[Tuple[int, int], ...]
    small: Tuple[int, ...]

    @property
    def m(self) -> int:
        return 2 * len(self.pairs)

    @property
    def order(self) -> Tuple[int, ...]:
        return tuple(i for p in self.pairs for i in p) + self.small


def pair_by_norm(cfg: PointConfiguration, r, prec: int = DEFAULT_PREC) -> NormPairing:
    """Pair the points of norm > r into equal-norm pairs, largest first.

    Ties among three or more points are resolved greedily in sorted order.
    """
    r = to_fraction(r)
    if r < 1:
        raise DomainError("r must be at least 1")
    norms = [norm_sq(cfg, i, prec) for i in range(cfg.d)]
    large, small = [], []
    for i, n in enumerate(norms):
        above = n.gt(r * r) if isinstance(n, Interval) else n > r * r
        if above is None:
            raise PrecisionError(f"point {i} cannot be classified against r={r} with the given radii")
        (large if above else small).append(i)
    large.sort(key=lambda i: (-_key(norms[i]), i))
    small.sort(key=lambda i: (-_key(norms[i]), i))
    if len(large) % 2:
        raise HypothesisNotSatisfied(f"{len(large)} points of norm > {r}: odd count cannot be paired")
    pairs = []
    for a, b in zip(large[::2], large[1::2]):
        if not _same(norms[a], norms[b]):
            raise HypothesisNotSatisfied(f"points {a} and {b} exceed r={r} with different norms")
        pairs.append((a, b))
    return NormPairing(r, tuple(pairs), tuple(small))


# -- proof trace ------------------------------------------------------------


def _le(a: Value, b: Value) -> Optional[bool]:
    return certainly_le(a, b)


@dataclass
class ProofTrace:
    """Every intermediate bound of the paired-energy argument, with verdicts."""

    d: int
    m: int
    r: Fraction
    order: Tuple[int, ...]
    C0: Value
    C0_bound: Fraction
    C0_holds: Optional[bool]
    per_pair_bounds: List[Dict[str, Any]] = field(default_factory=list)
    S_sizes: List[int] = field(default_factory=list)
    S_checks: List[Dict[str, Any]] = field(default_factory=list)
    c_dm: Value = Fraction(0)
    c_dm_bound: Fraction = Fraction(0)
    c_dm_holds: Optional[bool] = None
    tail_product: Value = Fraction(1)
    tail_holds: Optional[bool] = None
    decomposition_holds: Optional[bool] = None
    algebra_holds: Optional[bool] = None
    pair_product_holds: Optional[bool] = None

    def flags(self) -> Dict[str, Optional[bool]]:
        out = {
            "C0": self.C0_holds,
            "c_dm": self.c_dm_holds,
            "tail": self.tail_holds,
            "decomposition": self.decomposition_holds,
            "algebra": self.algebra_holds,
            "pair_product": self.pair_product_holds,
            "S_sizes": all(c["size_holds"] for c in self.S_checks),
        }
        out["per_pair"] = _all3(b["holds"] for b in self.per_pair_bounds)
        out["S_bounds"] = _all3(c["holds"] for c in self.S_checks)
        return out

    @property
    def all_hold(self) -> Optional[bool]:
        return _all3(self.flags().values())

    def to_json(self) -> Dict:
        return jsonable(
            {
                "d": self.d,
                "m": self.m,
                "r": self.r,
                "order": list(self.order),
                "C0": self.C0,
                "C0_bound": self.C0_bound,
                "per_pair_bounds": self.per_pair_bounds,
                "S_sizes": self.S_sizes,
                "S_checks": self.S_checks,
                "c_dm": self.c_dm,
                "c_dm_bound": self.c_dm_bound,
                "tail_product": self.tail_product,
                "flags": self.flags(),
                "all_hold": self.all_hold,
            }
        )


def _all3(values) -> Optional[bool]:
    seen_none = False
    for v in values:
        if v is False:
            return False
        if v is None:
            seen_none = True
    return None if seen_none else True


def _eq(a: Value, b: Value) -> Optional[bool]:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    if isinstance(a, Interval) and a.exact is not None and isinstance(b, Fraction):
        return a.exact == b
    # intervals can only confirm consistency, never exact equality
    return None if _same(a, b) else False


def build_trace(cfg: PointConfiguration, pairing: NormPairing, prec: int = DEFAULT_PREC) -> ProofTrace:
    d, m, r = cfg.d, pairing.m, pairing.r
    half = m // 2
    two_r = 2 * r
    norms = {i: norm_sq(cfg, i, prec) for i in range(d)}

    def pair_norm(i: int) -> Value:
        a, b = pairing.pairs[i]
        na, nb = norms[a], norms[b]
        if isinstance(na, Fraction) and isinstance(nb, Fraction):
            return max(na, nb)
        return Interval.point(na, prec).maximum(nb) if isinstance(na, Fraction) else na.maximum(nb)

    small = list(pairing.small)
    c0: Value = Fraction(1)
    for x in range(len(small)):
        for y in range(x + 1, len(small)):
            c0 = c0 * dist_sq(cfg, small[x], small[y], prec)
    c0_bound = two_r ** ((d - m) * (d - m - 1))
    trace = ProofTrace(d, m, r, pairing.order, c0, c0_bound, _le(c0, c0_bound))

    chain: Value = c0
    factorised: Value = c0
    pair_power: Value = Fraction(1)
    tail: Value = Fraction(1)
    for i in range(half):
        a, b = pairing.pairs[i]
        vn = pair_norm(i)
        dd = dist_sq(cfg, a, b, prec)
        trace.per_pair_bounds.append(
            {"pair": [a, b], "norm_sq": vn, "dist_sq": dd, "bound": 4 * vn, "holds": _le(dd, 4 * vn)}
        )
        # S_i: later large points of both rows plus all small points
        later = [pairing.pairs[j][0] for j in range(i + 1, half)] + small + [pairing.pairs[j][1] for j in range(i + 1, half)]
        size = len(later)
        trace.S_sizes.append(size)
        worst = []
        prod: Value = dd
        for beta in later:
            da = dist_sq(cfg, a, beta, prec)
            db = dist_sq(cfg, b, beta, prec)
            worst.append(_le(da, 4 * vn))
            worst.append(_le(db, 4 * vn))
            prod = prod * da * db
        trace.S_checks.append(
            {
                "i": i + 1,
                "size": size,
                "expected": d - 2 * (i + 1),
                "size_holds": size == d - 2 * (i + 1),
                "bound": 4 * vn,
                "holds": _all3(worst),
            }
        )
        factorised = factorised * prod
        chain = chain * (4 * vn) * (16 * vn * vn) ** size
        pair_power = pair_power * vn ** (2 * d - 3)
        step = i + 1
        tail = tail * vn ** (-4 * step + 4)

    trace.c_dm = c0 * Fraction(2) ** (m * (2 * d - m - 1))
    trace.c_dm_bound = two_r ** (d * (d - 1))
    trace.c_dm_holds = _le(trace.c_dm, trace.c_dm_bound)
    trace.tail_product = tail
    trace.tail_holds = _le(tail, Fraction(1))

    disc = config_discriminant(cfg, prec).value
    trace.decomposition_holds = _eq(factorised, disc) if cfg.exact else _consistent(factorised, disc)
    rearranged = trace.c_dm * pair_power * tail
    trace.algebra_holds = _eq(chain, rearranged) if cfg.exact else _consistent(chain, rearranged)
    trace.pair_product_holds = _le(pair_power, config_measure_sq(cfg, prec) ** (2 * d - 3))
    return trace


def _consistent(a: Value, b: Value) -> Optional[bool]:
    return True if _same(a, b) else False


# -- main inequality --------------------------------------------------------


def check_thm_2_1(
    cfg: PointConfiguration, r=1, prec: int = DEFAULT_PREC
) -> Tuple[InequalityReport, Optional[ProofTrace]]:
    """M(alpha)^(2d-3) >= (2r)^(d(1-d)) |Delta(alpha)| with its proof trace.

    Coincident points make the discriminant vanish and the inequality holds
    trivially; no pairing or trace is produced then.
    """
    r = to_fraction(r)
    if r < 1:
        raise DomainError("r must be at least 1")
    d = cfg.d
    e = 2 * d - 3
    scale = (2 * r) ** (d * (1 - d))
    disc = config_discriminant(cfg, prec)
    msq = config_measure_sq(cfg, prec)
    lhs = _sqrt(msq, prec) ** e
    desc = json.dumps(cfg.to_json(), sort_keys=True)
    name = "energy_paired"
    if disc.is_zero:
        rep = InequalityReport(name, desc, lhs, Interval.point(0, prec), True, prec, ">=", {"trivial": True, "r": r})
        return rep, None
    pairing = pair_by_norm(cfg, r, prec)
    rhs = disc.value * scale
    if isinstance(msq, Fraction) and isinstance(rhs, Fraction):
        # compare squares so that irrational square roots never enter
        holds: Optional[bool] = msq**e >= rhs * rhs
        rhs_iv = Interval.point(rhs, prec)
    else:
        rhs_iv = Interval.point(rhs, prec) if isinstance(rhs, Fraction) else rhs
        holds = lhs.ge(rhs_iv)
    trace = build_trace(cfg, pairing, prec)
    details = {
        "r": r,
        "m": pairing.m,
        "pairs": [list(p) for p in pairing.pairs],
        "small": list(pairing.small),
        "measure": _sqrt(msq, prec),
        "abs_disc": disc.value,
        "energy": disc.energy,
        "ratio": as_interval(disc.value, prec) / lhs,
        "trace_all_hold": trace.all_hold,
    }
    return InequalityReport(name, desc, lhs, rhs_iv, holds, prec, ">=", details), trace


# -- constructions ----------------------------------------------------------


def _circle_point(theta: float, r: Fraction) -> Tuple[Fraction, Fraction]:
    """Rational point on the radius-r circle near angle theta."""
    if abs(theta - math.pi) < 1e-12:
        return (-r, Fraction(0))
    t = Fraction(math.tan(theta / 2)).limit_denominator(10**6)
    den = 1 + t * t
    return (r * (1 - t * t) / den, r * 2 * t / den)


def sharpness_family(k: int, d: int, r, R) -> PointConfiguration:
    """d-2 distinct rational points on the radius-r sphere plus +-R e_k.

    The fixed points sit near equal spacing on the circle spanned by e_1, e_2
    (exactly at the angles 0 and pi); for k = 1 only the two points +-r exist.
    """
    r, R = to_fraction(r), to_fraction(R)
    if d < 2:
        raise DomainError("d must be at least 2")
    if k < 1:
        raise DomainError("k must be at least 1")
    if r < 1 or R <= r:
        raise DomainError("need 1 <= r < R")
    n = d - 2
    fixed: List[Tuple[Fraction, ...]] = []
    if k == 1:
        if n > 2:
            raise DomainError("the radius-r sphere in R^1 has only two points")
        fixed = [(r,), (-r,)][:n]
    else:
        for j in range(n):
            x, y = _circle_point(2 * math.pi * j / n, r)
            fixed.append((x, y) + (Fraction(0),) * (k - 2))
        if len(set(fixed)) != n:
            raise DomainError("rational placement collapsed two fixed points")
    top = (Fraction(0),) * (k - 1) + (R,)
    bottom = (Fraction(0),) * (k - 1) + (-R,)
    return PointConfiguration(tuple(fixed) + (top, bottom))


def sharpness_ratios(cfg: PointConfiguration, prec: int = DEFAULT_PREC) -> Tuple[Interval, Interval]:
    """(|Delta| / M^(2d-3), |Delta| / M^(2d-4)) as intervals."""
    d = cfg.d
    disc = Interval.point(config_discriminant(cfg, prec).value, prec)
    meas = config_measure(cfg, prec)
    return disc / meas ** (2 * d - 3), disc / meas ** (2 * d - 4)


def configuration_from_roots(rs) -> PointConfiguration:
    """Certified complex roots as points of R^2, radii taken from the root disks.

    Repeated roots already appear once per multiplicity in the root set.
    """
    pts, rad = [], []
    for root in rs.roots:
        if root.exact is not None:
            pts.append((root.exact, Fraction(0)))
            rad.append(Fraction(0))
        else:
            pts.append((mpf_to_fraction(root.value.real), mpf_to_fraction(root.value.imag)))
            rad.append(mpf_to_fraction(root.radius))
    return PointConfiguration(tuple(pts), tuple(rad))


def _random_rational(rng: random.Random, bound: int, den: int) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), den)


def random_paired_configuration(
    rng: random.Random, k: int, d: int, r=1, den: int = 8, spread: int = 6
) -> PointConfiguration:
    """Random exact configuration whose points of norm > r come in equal-norm pairs.

    Partners are mirror images under a random rational reflection, so their
    norms agree exactly. Some pairs start from a reflection of an earlier point
    to create equal-norm ties across pairs. All points are distinct.
    """
    r = to_fraction(r)
    if d < 2:
        raise DomainError("d must be at least 2")
    half = rng.randint(0, d // 2)
    points: List[Tuple[Fraction, ...]] = []
    bases: List[Tuple[Fraction, ...]] = []
    while len(bases) < half:
        if bases and rng.random() < 0.15:
            v = _reflect(rng, bases[rng.randrange(len(bases))])
            if v is None:
                continue
        else:
            v = tuple(_random_rational(rng, spread, den) for _ in range(k))
            if _sq(v) <= r * r:
                continue
        w = _reflect(rng, v)
        if w is None or w == v or v in points or w in points:
            continue
        bases.append(v)
        points.extend([v, w])
    while len(points) < d:
        v = tuple(_random_rational(rng, int(math.ceil(r)), den) * (r / math.ceil(r)) for _ in range(k))
        if _sq(v) <= r * r and v not in points:
            points.append(v)
    order = list(range(d))
    rng.shuffle(order)
    return PointConfiguration(tuple(points[i] for i in order))


def _reflect(rng: random.Random, v: Tuple[Fraction, ...]) -> Optional[Tuple[Fraction, ...]]:
    k = len(v)
    if k == 1:
        return (-v[0],)
    u = [Fraction(rng.randint(-5, 5)) for _ in range(k)]
    uu = _sq(u)
    vu = sum((a * b for a, b in zip(v, u)), Fraction(0))
    if uu == 0 or vu == 0:
        return None
    s = 2 * vu / uu
    return tuple(a - s * b for a, b in zip(v, u))
