"""Orders in number fields, their Minkowski lattices and small generators.

Elements are stored as exact integer coordinates over the order's Z-basis;
the basis itself is given by rational rows over the power basis
1, theta, ..., theta^(d-1) of the defining polynomial. Embeddings are
certified complex intervals built from the certified roots of the defining
polynomial, so every separation and box-membership claim is either proven
or reported as undecided.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

from .errors import DomainError, HypothesisNotSatisfied, PrecisionError
from .interval import Interval
from .measure import mahler_measure
from .polyexact import (
    IntPolynomial,
    discriminant_exact,
    is_irreducible,
    is_squarefree,
    parse_poly,
    poly_gcd,
    exact_quotient,
    rational_det,
)
from .report import InequalityReport, jsonable
from .roots import CertifiedRootSet, find_roots

CInterval = Tuple[Interval, Interval]
Matrix = List[List[Fraction]]


# -- exact arithmetic in Q[x]/(f) --------------------------------------------


def _mulmod(a: Sequence[Fraction], b: Sequence[Fraction], f: IntPolynomial) -> List[Fraction]:
    d = f.degree
    prod = [Fraction(0)] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    # reduce with the monic relation theta^d = -sum f_k theta^k
    for k in range(len(prod) - 1, d - 1, -1):
        top = prod[k]
        if top:
            for j in range(d):
                prod[k - d + j] -= top * f.coeffs[j]
        prod[k] = Fraction(0)
    return prod[:d]


def _eval_in_field(g: IntPolynomial, beta: Sequence[Fraction], f: IntPolynomial) -> List[Fraction]:
    d = f.degree
    acc = [Fraction(0)] * d
    for c in reversed(g.coeffs):
        acc = _mulmod(acc, beta, f)
        acc[0] += c
    return acc


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p)] for i in range(n)]


def _inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise DomainError("basis matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                fac = aug[r][col]
                aug[r] = [x - fac * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def characteristic_polynomial(a: Matrix) -> List[Fraction]:
    """Ascending coefficients of det(x I - A) by the Faddeev-LeVerrier recursion."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = _matmul(a, m)
        for i in range(n):
            am[i][i] += coeffs[n - k + 1]
        m = am
        amk = _matmul(a, m)
        coeffs[n - k] = -sum((amk[i][i] for i in range(n)), Fraction(0)) / k
    return coeffs


def _is_square(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


# -- complex intervals -------------------------------------------------------


def _cmul(a: CInterval, b: CInterval) -> CInterval:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cabs_sq(a: CInterval) -> Interval:
    return a[0] ** 2 + a[1] ** 2


# -- orders --------------------------------------------------------------------


@dataclass(frozen=True)
class FieldOrder:
    """A full-rank order given by a monic defining polynomial and a Z-basis."""

    poly: IntPolynomial
    basis: Tuple[Tuple[Fraction, ...], ...]
    disc_order: int
    field_disc: Optional[int]
    signature: Tuple[int, int]
    roots: CertifiedRootSet
    embedding_roots: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def r(self) -> int:
        return self.signature[0]

    @property
    def s(self) -> int:
        return self.signature[1]

    @property
    def precision(self) -> int:
        return self.roots.precision

    @property
    def is_power_basis(self) -> bool:
        d = self.degree
        return all(self.basis[i][j] == (1 if i == j else 0) for i in range(d) for j in range(d))

    @property
    def lattice_description(self) -> str:
        if self.is_power_basis:
            return f"Z[theta], theta a root of {self.poly}"
        rows = "; ".join(",".join(str(x) for x in row) for row in self.basis)
        return f"Z-span of power-basis rows [{rows}] for theta a root of {self.poly}"

    @cached_property
    def basis_inverse(self) -> Matrix:
        return _inverse([list(row) for row in self.basis])

    @cached_property
    def theta_powers(self) -> List[List[CInterval]]:
        """theta_j^k for every embedding j (all d of them) and k < d."""
        prec = self.precision
        out = []
        for j in self._all_embedding_roots():
            root, conj = j
            item = self.roots.roots[root]
            re = Interval.around(item.value.real, item.radius, prec)
            if item.real:
                im = Interval.point(0, prec)
            else:
                im = Interval.around(item.value.imag, item.radius, prec)
                if conj:
                    im = -im
            theta = (re, im)
            pw = [(Interval.point(1, prec), Interval.point(0, prec))]
            for _ in range(1, self.degree):
                pw.append(_cmul(pw[-1], theta))
            out.append(pw)
        return out

    def _all_embedding_roots(self) -> List[Tuple[int, bool]]:
        """(root index, conjugated?) for sigma_1..sigma_d: reals, reps, then conjugates."""
        reps = [(i, False) for i in self.embedding_roots]
        return reps + [(i, True) for i in self.embedding_roots[self.r :]]

    def to_power(self, coords: Sequence[int]) -> List[Fraction]:
        d = self.degree
        return [sum((Fraction(coords[i]) * self.basis[i][k] for i in range(d)), Fraction(0)) for k in range(d)]

    def from_power(self, power: Sequence[Fraction]) -> List[Fraction]:
        inv = self.basis_inverse
        d = self.degree
        return [sum((power[k] * inv[k][i] for k in range(d)), Fraction(0)) for i in range(d)]

    def multiply(self, a: Sequence[int], b: Sequence[int]) -> List[Fraction]:
        return self.from_power(_mulmod(self.to_power(a), self.to_power(b), self.poly))

    def embeddings(self, power: Sequence[Fraction]) -> List[CInterval]:
        """sigma_1..sigma_d of the element with the given power-basis coordinates."""
        prec = self.precision
        out = []
        for pw in self.theta_powers:
            re = Interval.point(0, prec)
            im = Interval.point(0, prec)
            for a, (pr, pi) in zip(power, pw):
                if a:
                    re = re + pr * a
                    im = im + pi * a
            out.append((re, im))
        return out

    def to_json(self) -> Dict[str, Any]:
        lat = minkowski_lattice(self)
        return jsonable(
            {
                "poly": str(self.poly),
                "degree": self.degree,
                "basis": [list(row) for row in self.basis],
                "lattice": self.lattice_description,
                "disc_order": self.disc_order,
                "field_disc": self.field_disc,
                "signature": list(self.signature),
                "covolume": lat.covolume,
                "embeddings_of_theta": [
                    [float(re), float(im)] for re, im in self.embeddings([Fraction(int(k == 1)) for k in range(self.degree)])
                ],
            }
        )


def build_order(
    poly: Union[IntPolynomial, str, Sequence[int]],
    basis: Optional[Sequence[Sequence[Any]]] = None,
    field_disc: Optional[int] = None,
    precision: Optional[int] = None,
) -> FieldOrder:
    """Validate an order and compute its signature and discriminant exactly."""
    if isinstance(poly, str):
        poly = parse_poly(poly)
    elif not isinstance(poly, IntPolynomial):
        poly = IntPolynomial(tuple(int(c) for c in poly))
    d = poly.degree
    if d < 1 or not poly.is_monic:
        raise DomainError("defining polynomial must be monic of degree >= 1")
    if d > 1 and not is_irreducible(poly):
        raise DomainError(f"{poly} is reducible")
    if basis is None:
        rows = tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
    else:
        rows = tuple(tuple(Fraction(x) if not isinstance(x, str) else Fraction(x.strip()) for x in row) for row in basis)
        if len(rows) != d or any(len(row) != d for row in rows):
            raise DomainError(f"basis must be {d}x{d}")
    det = rational_det([list(row) for row in rows])
    if det == 0:
        raise DomainError("basis matrix is singular")
    disc_q = discriminant_exact(poly) * det * det
    if disc_q.denominator != 1:
        raise DomainError("basis does not span an order (non-integral discriminant)")
    disc = int(disc_q)
    _validate_order(poly, rows)
    if field_disc is not None:
        field_disc = int(field_disc)
        if field_disc == 0 or disc % field_disc or _is_square(disc // field_disc) is None:
            raise DomainError(f"disc {disc} / field disc {field_disc} is not a perfect square")
    rs = find_roots(poly, precision)
    if not rs.certified:
        raise PrecisionError(f"could not certify the roots of {poly}")
    reals = [i for i, x in enumerate(rs.roots) if x.real]
    upper = [i for i, x in enumerate(rs.roots) if not x.real and x.value.imag > 0]
    if len(reals) + 2 * len(upper) != d:
        raise PrecisionError("could not separate real and complex roots")
    reals.sort(key=lambda i: rs.roots[i].value.real)
    upper.sort(key=lambda i: (rs.roots[i].value.real, rs.roots[i].value.imag))
    return FieldOrder(poly, rows, disc, field_disc, (len(reals), len(upper)), rs, tuple(reals + upper))


def _validate_order(poly: IntPolynomial, rows: Tuple[Tuple[Fraction, ...], ...]) -> None:
    d = poly.degree
    inv = _inverse([list(r) for r in rows])

    def coords(power):
        return [sum((power[k] * inv[k][i] for k in range(d)), Fraction(0)) for i in range(d)]

    one = coords([Fraction(int(k == 0)) for k in range(d)])
    if any(x.denominator != 1 for x in one):
        raise DomainError("basis does not contain 1")
    for i in range(d):
        for j in range(i, d):
            prod = coords(_mulmod(rows[i], rows[j], poly))
            if any(x.denominator != 1 for x in prod):
                raise DomainError("basis is not closed under multiplication")


def load_field_spec(spec: Union[str, Dict]) -> FieldOrder:
    """Build an order from {"poly": ..., "basis": [[...]]?, "disc": int?} or a path to it."""
    if isinstance(spec, str):
        with open(spec) as fh:
            spec = json.load(fh)
    if not isinstance(spec, dict) or "poly" not in spec:
        raise DomainError("field spec needs a 'poly' entry")
    poly = spec["poly"]
    if isinstance(poly, list):
        poly = IntPolynomial(tuple(int(c) for c in poly))
    return build_order(poly, spec.get("basis"), spec.get("disc"))


# -- Minkowski lattice -----------------------------------------------------------


@dataclass(frozen=True)
class MinkowskiLattice:
    """Columns are the Minkowski images of the basis; rows are coordinates.

    Coordinate order: the r real embeddings, then (Re, Im) of each complex
    representative (positive imaginary part). The covolume equals
    2^(-s) sqrt(|disc_order|).
    """

    entries: Tuple[Tuple[Interval, ...], ...]
    matrix: np.ndarray
    inverse: np.ndarray
    covolume: Interval

    @property
    def dim(self) -> int:
        return len(self.entries)

    def covolume_float(self) -> float:
        return abs(float(np.linalg.det(self.matrix)))

    def point(self, coords: Sequence[int]) -> List[Interval]:
        out = []
        for row in self.entries:
            acc = None
            for z, e in zip(coords, row):
                if z:
                    term = e * z
                    acc = term if acc is None else acc + term
            out.append(acc if acc is not None else Interval.point(0, row[0].prec))
        return out


def minkowski_coordinates(order: FieldOrder, sigmas: Sequence[CInterval]) -> List[Interval]:
    out = [sigmas[i][0] for i in range(order.r)]
    for i in range(order.r, order.r + order.s):
        out.extend(sigmas[i])
    return out


def minkowski_embed(order: FieldOrder, coords: Sequence[int]) -> List[Interval]:
    """Minkowski vector of the element with the given basis coordinates."""
    return minkowski_coordinates(order, order.embeddings(order.to_power(coords)))


def minkowski_lattice(order: FieldOrder) -> MinkowskiLattice:
    cached = order.__dict__.get("_lattice")
    if cached is not None:
        return cached
    d = order.degree
    cols = [minkowski_embed(order, [int(i == j) for i in range(d)]) for j in range(d)]
    entries = tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
    mat = np.array([[float(x) for x in row] for row in entries])
    covol = Interval.point(abs(order.disc_order), order.precision).sqrt() * Fraction(1, 2**order.s)
    lat = MinkowskiLattice(entries, mat, np.linalg.inv(mat), covol)
    order.__dict__["_lattice"] = lat
    return lat


# -- boxes and enumeration --------------------------------------------------------


@dataclass(frozen=True)
class SearchBox:
    """Open axis-parallel box in Minkowski coordinates, every side of length c."""

    c: Fraction
    T: Fraction
    bounds: Tuple[Tuple[Fraction, Fraction], ...]
    variant: str = "complex"

    def to_json(self) -> Dict[str, Any]:
        return jsonable({"c": self.c, "T": self.T, "variant": self.variant, "bounds": [list(b) for b in self.bounds]})


def _check_cT(c, T) -> Tuple[Fraction, Fraction]:
    c, T = Fraction(c), Fraction(T)
    if c < 1:
        raise DomainError("box side c must be at least 1")
    if T < 1:
        raise DomainError("translation T must be at least 1")
    return c, T


def build_box(order: FieldOrder, c, T) -> SearchBox:
    """Box with one far complex coordinate; needs a complex embedding."""
    c, T = _check_cT(c, T)
    r, s = order.signature
    if s == 0:
        raise HypothesisNotSatisfied("the box construction needs a complex embedding (s >= 1); use the real variant")
    bounds: List[Tuple[Fraction, Fraction]] = []
    for i in range(1, r + 1):
        bounds.append(((2 * i - 2) * c, (2 * i - 1) * c))
    for i in range(r + 1, r + s):
        bounds.append(((2 * i - 2) * c, (2 * i - 1) * c))
        bounds.append((c, 2 * c))
    bounds.append((T, T + c))
    bounds.append((T + 3 * c, T + 4 * c))
    return SearchBox(c, T, tuple(bounds), "complex")


def build_real_box(order: FieldOrder, c, T) -> SearchBox:
    """Box with one far real coordinate (the last real embedding)."""
    c, T = _check_cT(c, T)
    r, s = order.signature
    if r == 0:
        raise DomainError("the real variant needs a real embedding (r >= 1)")
    bounds: List[Tuple[Fraction, Fraction]] = []
    for i in range(1, r):
        bounds.append(((2 * i - 2) * c, (2 * i - 1) * c))
    bounds.append((T, T + c))
    for i in range(r + 1, r + s + 1):
        bounds.append(((2 * i - 2) * c, (2 * i - 1) * c))
        bounds.append((c, 2 * c))
    return SearchBox(c, T, tuple(bounds), "real")


@dataclass(frozen=True)
class BoxEnumeration:
    points: Tuple[Tuple[int, ...], ...]
    ambiguous: int
    candidates: int


ENUMERATION_LIMIT = 5_000_000


def enumerate_box(order: FieldOrder, box: SearchBox, lattice: Optional[MinkowskiLattice] = None) -> BoxEnumeration:
    """All order elements whose Minkowski image lies in the open box.

    Integer coordinate ranges come from the inverse basis over the box's
    vertices (with a margin of one); candidates are then certified against
    the open bounds. Points whose enclosure touches a face are excluded and
    counted as ambiguous.
    """
    lat = lattice or minkowski_lattice(order)
    d = order.degree
    lo = np.array([float(b[0]) for b in box.bounds])
    hi = np.array([float(b[1]) for b in box.bounds])
    inv = lat.inverse
    zmin = np.minimum(inv * lo, inv * hi).sum(axis=1)
    zmax = np.maximum(inv * lo, inv * hi).sum(axis=1)
    ranges = [np.arange(int(math.floor(a)) - 1, int(math.ceil(b)) + 2) for a, b in zip(zmin, zmax)]
    total = int(np.prod([len(r) for r in ranges], dtype=float))
    if total > ENUMERATION_LIMIT:
        raise DomainError(f"box needs {total} candidates, above the limit {ENUMERATION_LIMIT}")
    grids = np.meshgrid(*ranges, indexing="ij")
    zs = np.stack([g.ravel() for g in grids], axis=1)
    xs = zs @ lat.matrix.T
    tol = 1e-6 * (1 + np.abs(hi))
    keep = np.all((xs > lo - tol) & (xs < hi + tol), axis=1)
    found, ambiguous = [], 0
    for z in zs[keep]:
        coords = tuple(int(v) for v in z)
        x = lat.point(coords)
        verdict = True
        for xi, (a, b) in zip(x, box.bounds):
            inside = _and3(xi.gt(a), xi.lt(b))
            if inside is False:
                verdict = False
                break
            if inside is None:
                verdict = None
        if verdict is None:
            ambiguous += 1
        elif verdict:
            found.append(coords)
    return BoxEnumeration(tuple(sorted(found)), ambiguous, total)


def _and3(a: Optional[bool], b: Optional[bool]) -> Optional[bool]:
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


# -- minimal polynomials ------------------------------------------------------------


@dataclass(frozen=True)
class MinimalPolynomial:
    charpoly: IntPolynomial
    poly: IntPolynomial
    is_generator: bool
    disc: Optional[int]
    order_index: Optional[int]
    field_index: Optional[int]

    @property
    def degree(self) -> int:
        return self.poly.degree


def multiplication_matrix(order: FieldOrder, power: Sequence[Fraction]) -> Matrix:
    d = order.degree
    cols = [_mulmod(power, [Fraction(int(j == k)) for j in range(d)], order.poly) for k in range(d)]
    return [[cols[k][i] for k in range(d)] for i in range(d)]


def minimal_polynomial(order: FieldOrder, coords: Sequence[int]) -> MinimalPolynomial:
    """Characteristic polynomial of multiplication by the element, reduced to
    its squarefree part when the element lies in a proper subfield."""
    power = order.to_power(coords)
    return _minpoly_from_power(order, power)


def _minpoly_from_power(order: FieldOrder, power: Sequence[Fraction]) -> MinimalPolynomial:
    char = characteristic_polynomial(multiplication_matrix(order, power))
    if any(c.denominator != 1 for c in char):
        raise DomainError("element is not integral: characteristic polynomial has non-integer coefficients")
    cp = IntPolynomial(tuple(int(c) for c in char))
    if is_squarefree(cp):
        g = poly_gcd(cp, cp.derivative())
        assert g.degree == 0
        disc = discriminant_exact(cp)
        oi = _index(disc, order.disc_order)
        if oi is None:
            raise ArithmeticError(f"disc {disc} over order disc {order.disc_order} is not a square")
        fi = None
        if order.field_disc is not None:
            fi = _index(disc, order.field_disc)
            if fi is None:
                raise ArithmeticError(f"disc {disc} over field disc {order.field_disc} is not a square")
        return MinimalPolynomial(cp, cp, True, disc, oi, fi)
    g = poly_gcd(cp, cp.derivative())
    sf = exact_quotient(cp, g)
    if sf.leading < 0:
        sf = -sf
    # a power of one irreducible factor: strip repeated copies
    while not is_squarefree(sf):
        sf = exact_quotient(sf, poly_gcd(sf, sf.derivative()))
    return MinimalPolynomial(cp, sf, False, None, None, None)


def _index(disc_f: int, disc_ref: int) -> Optional[int]:
    if disc_ref == 0 or disc_f % disc_ref:
        return None
    return _is_square(disc_f // disc_ref)


# -- generator search ---------------------------------------------------------------


@dataclass
class GeneratorRecord:
    field: str
    lattice: str
    variant: str
    T: Fraction
    c: Fraction
    alpha_coords: Tuple[int, ...]
    alpha_power: Tuple[Fraction, ...]
    minpoly: IntPolynomial
    M: Interval
    disc_f: int
    exponent: int
    ratio: Interval
    c_K: int
    root_bound: int
    checks: Dict[str, Optional[bool]] = field(default_factory=dict)
    notices: List[str] = field(default_factory=list)
    index: Optional[int] = None
    order_index: Optional[int] = None
    ambiguous: int = 0

    @property
    def verified(self) -> Optional[bool]:
        vals = list(self.checks.values())
        if any(v is False for v in vals):
            return False
        if any(v is None for v in vals):
            return None
        return True

    def to_json(self) -> Dict[str, Any]:
        return jsonable(
            {
                "field": self.field,
                "lattice": self.lattice,
                "variant": self.variant,
                "T": self.T,
                "c": self.c,
                "alpha_coords": list(self.alpha_coords),
                "alpha_power": list(self.alpha_power),
                "minpoly": str(self.minpoly),
                "M": self.M,
                "disc_f": self.disc_f,
                "exponent": self.exponent,
                "ratio": self.ratio,
                "c_K": self.c_K,
                "root_bound": self.root_bound,
                "checks": self.checks,
                "verified": self.verified,
                "notices": self.notices,
                "index": self.index,
                "order_index": self.order_index,
                "ambiguous_boundary_points": self.ambiguous,
            }
        )


def _guarantee_c(lat: MinkowskiLattice) -> int:
    """Side length past which every open cube contains a lattice point."""
    return int(math.floor(float(np.abs(lat.matrix).sum(axis=1).max()) * (1 + 1e-12))) + 1


def _start_c(order: FieldOrder, lat: MinkowskiLattice) -> int:
    root = float(lat.covolume) ** (1 / order.degree)
    return max(1, math.ceil(root - 1e-12))


def _schedule(T_list: Sequence, c: Fraction, floor_T: Fraction) -> Tuple[List[Fraction], List[List[str]]]:
    out: List[Fraction] = []
    notices: List[List[str]] = []
    for T in T_list:
        T = Fraction(T)
        want = max(T, floor_T)
        if out and want <= out[-1] + c:
            want = out[-1] + c + 1
        notices.append([f"T={T} raised to {want} (need T >= {floor_T} and gaps > c={c})"] if want != T else [])
        out.append(want)
    return out, notices


def _search(order: FieldOrder, T_list: Sequence, c, variant: str) -> List[GeneratorRecord]:
    if not T_list:
        raise DomainError("T_list is empty")
    if any(Fraction(b) <= Fraction(a) for a, b in zip(T_list, T_list[1:])):
        raise DomainError("T_list must be strictly increasing")
    lat = minkowski_lattice(order)
    d = order.degree
    builder = build_box if variant == "complex" else build_real_box
    floor_factor = 5 if variant == "complex" else 4 * d

    def attempt(cv: Fraction):
        Ts, notes = _schedule(T_list, cv, floor_factor * cv)
        found = []
        for T in Ts:
            box = builder(order, cv, T)
            enum = enumerate_box(order, box, lat)
            if not enum.points:
                return None, notes
            found.append((T, enum))
        return found, notes

    if c == "auto" or c is None:
        cap = _guarantee_c(lat)
        cv = Fraction(min(_start_c(order, lat), cap))
        while True:
            found, notes = attempt(cv)
            if found is not None:
                break
            if cv >= cap:
                raise ArithmeticError(f"no lattice point at c={cv} although c >= covering bound {cap}")
            cv = min(cv * 2, Fraction(cap))
        auto_note = [f"c={cv} chosen automatically (start {_start_c(order, lat)}, guaranteed by {cap})"]
    else:
        cv = Fraction(c)
        found, notes = attempt(cv)
        if found is None:
            raise DomainError(f"some box of side c={cv} contains no lattice point; increase c")
        auto_note = []
    records = []
    for (T, enum), note in zip(found, notes):
        rec = _verify(order, enum.points[0], T, cv, variant)
        rec.notices = auto_note + note
        rec.ambiguous = enum.ambiguous
        records.append(rec)
    return records


def find_generators(order: FieldOrder, T_list: Sequence, c="auto") -> List[GeneratorRecord]:
    """One verified small generator per T from boxes with one far complex coordinate."""
    if order.s == 0:
        raise HypothesisNotSatisfied("field has no complex embedding (s = 0); use find_generators_real_variant")
    return _search(order, T_list, c, "complex")


def find_generators_real_variant(order: FieldOrder, T_list: Sequence, c="auto") -> List[GeneratorRecord]:
    """Same search with the far coordinate on the last real embedding."""
    if order.r == 0:
        raise DomainError("field has no real embedding (r = 0)")
    return _search(order, T_list, c, "real")


def _verify(order: FieldOrder, coords: Tuple[int, ...], T: Fraction, c: Fraction, variant: str) -> GeneratorRecord:
    d, (r, s) = order.degree, order.signature
    prec = order.precision
    power = order.to_power(coords)
    sig = order.embeddings(power)
    checks: Dict[str, Optional[bool]] = {}

    sep = True
    for i in range(d):
        for j in range(i + 1, d):
            diff = (sig[i][0] - sig[j][0], sig[i][1] - sig[j][1])
            verdict = _cabs_sq(diff).gt(c * c)
            sep = _and3(sep, verdict)
    checks["separation"] = sep

    mp = _minpoly_from_power(order, power)
    checks["generator"] = mp.is_generator and is_irreducible(mp.poly) and mp.poly.degree == d
    f = mp.poly
    meas = mahler_measure(f).value
    disc = mp.disc if mp.disc is not None else discriminant_exact(f)
    big = abs(disc)

    if variant == "complex":
        exponent = 2 * d - 3
        c_K = (2 * d * c) ** (d * (2 * d - 3))
        far = {r + s - 1, r + 2 * s - 1}
        m_bound = ((2 * (r + s - 1) + 1) * c) ** (d - 2) * (2 * T + 5 * c) ** 2
        d_bound = c ** ((d - 3) * (d - 2)) * T ** (2 * (2 * d - 3))
    else:
        exponent = 2 * d - 2
        c_K = (2 * d * c) ** (2 * (d - 1) ** 2) * 16 ** (d - 1)
        far = {r - 1}
        m_bound = (2 * d * c) ** (d - 1) * (T + c)
        d_bound = c ** ((d - 1) * (d - 2)) * (T / 2) ** (2 * (d - 1))
    ratio = meas**exponent / big if big else Interval.point(0, prec)
    checks["ratio_bound"] = (meas**exponent).le(Interval.point(c_K, prec) * big) if big else False
    root_bound = 2 * d * c
    ok = True
    for i in range(d):
        if i not in far:
            ok = _and3(ok, _cabs_sq(sig[i]).le(root_bound * root_bound))
    checks["root_bound"] = ok
    checks["measure_bound"] = meas.le(m_bound)
    checks["disc_bound"] = big >= d_bound
    checks["order_index_square"] = mp.order_index is not None if mp.is_generator else False
    if order.field_disc is not None:
        checks["field_index_square"] = mp.field_index is not None if mp.is_generator else False
    c_K_int = int(c_K) if Fraction(c_K).denominator == 1 else c_K
    return GeneratorRecord(
        field=str(order.poly),
        lattice=order.lattice_description,
        variant=variant,
        T=T,
        c=c,
        alpha_coords=tuple(coords),
        alpha_power=tuple(power),
        minpoly=f,
        M=meas,
        disc_f=disc,
        exponent=exponent,
        ratio=ratio,
        c_K=c_K_int,
        root_bound=int(root_bound) if Fraction(root_bound).denominator == 1 else root_bound,
        checks=checks,
        index=mp.field_index,
        order_index=mp.order_index,
    )


# -- M(O_K) ------------------------------------------------------------------------


@dataclass
class MinimumResult:
    status: str  # "computed", "exceeds T_max" or "not computed"
    T_max: Fraction
    value: Optional[Interval] = None
    witness: Optional[IntPolynomial] = None
    element: Optional[Tuple[Fraction, ...]] = None
    examined: int = 0
    ties: List[str] = field(default_factory=list)
    method: str = ""

    def to_json(self) -> Dict[str, Any]:
        return jsonable(
            {
                "status": self.status,
                "T_max": self.T_max,
                "value": self.value,
                "witness": None if self.witness is None else str(self.witness),
                "element_power_basis": None if self.element is None else list(self.element),
                "examined": self.examined,
                "ties": self.ties,
                "method": self.method,
            }
        )


COEFFICIENT_BUDGET = 2_000_000


def _assignments(order: FieldOrder, rs: CertifiedRootSet):
    """Bijections embeddings -> roots of f compatible with complex conjugation."""
    r, s = order.signature
    reals = [i for i, x in enumerate(rs.roots) if x.real]
    upper = [i for i, x in enumerate(rs.roots) if not x.real and x.value.imag > 0]
    if len(reals) != r or len(upper) != s:
        return
    ctx = rs.ctx
    for rp in itertools.permutations(reals):
        for cp in itertools.permutations(upper):
            for flips in itertools.product((False, True), repeat=s):
                vals = [rs.roots[i].value for i in rp]
                reps = [ctx.conj(rs.roots[i].value) if fl else rs.roots[i].value for i, fl in zip(cp, flips)]
                yield vals + reps + [ctx.conj(z) for z in reps]


def _root_in_field(order: FieldOrder, f: IntPolynomial) -> Optional[Tuple[Fraction, ...]]:
    """Power-basis coordinates of a root of f in K, verified exactly, or None."""
    rs = find_roots(f, order.precision)
    ctx = mpmath.MPContext()
    ctx.prec = order.precision
    d = order.degree
    thetas = []
    for idx, conj in order._all_embedding_roots():
        z = ctx.mpc(order.roots.roots[idx].value)
        thetas.append(ctx.conj(z) if conj else z)
    vand = ctx.matrix([[t**k for k in range(d)] for t in thetas])
    vinv = ctx.inverse(vand)
    denom = abs(discriminant_exact(order.poly)) or 1
    tol = ctx.mpf(2) ** (-order.precision // 3)
    for assign in _assignments(order, rs):
        vec = vinv * ctx.matrix([ctx.mpc(v) for v in assign])
        coords = []
        for k in range(d):
            v = vec[k] * denom
            if abs(v.imag) > tol * (1 + abs(v)):
                break
            n = int(ctx.nint(v.real))
            if abs(v.real - n) > tol * (1 + abs(v)):
                break
            coords.append(Fraction(n, denom))
        else:
            if not any(_eval_in_field(f, coords, order.poly)):
                return tuple(coords)
    return None


def _float_measure(coeffs: Sequence[int]) -> float:
    roots = np.roots(list(reversed(coeffs)))
    return float(abs(coeffs[-1]) * np.prod(np.maximum(1.0, np.abs(roots))))


def compute_M_OK(order: FieldOrder, T_max, budget: int = COEFFICIENT_BUDGET) -> MinimumResult:
    """Exact minimum of M(f) over monic irreducible f of degree d defining K, up to T_max.

    The coefficient box |a_j| <= C(d, j) T_max contains every monic f with
    M(f) <= T_max, so the minimum found is exact whenever one exists.
    """
    T_max = Fraction(T_max)
    if T_max < 1:
        raise DomainError("T_max must be at least 1")
    d = order.degree
    bounds = [math.floor(math.comb(d, j) * T_max) for j in range(1, d + 1)]
    bounds[-1] = min(bounds[-1], math.floor(T_max))
    total = 1
    for b in bounds:
        total *= 2 * b + 1
    if total > budget:
        return MinimumResult("not computed", T_max, examined=0, method=f"coefficient box of {total} exceeds budget {budget}")
    sign = (-1) ** order.s
    l1_cap = 2**d * T_max
    best: List[Tuple[Interval, IntPolynomial, Tuple[Fraction, ...]]] = []
    examined = 0
    for tail in itertools.product(*[range(-b, b + 1) for b in bounds]):
        examined += 1
        if tail[-1] == 0:
            continue
        if 1 + sum(abs(a) for a in tail) > l1_cap:
            continue
        coeffs = tuple(reversed(tail)) + (1,)
        if d > 1:
            f = IntPolynomial(coeffs)
            disc = discriminant_exact(f)
            if disc == 0 or (disc > 0) != (sign > 0):
                continue
            if order.field_disc is not None and _index(disc, order.field_disc) is None:
                continue
        else:
            f = IntPolynomial(coeffs)
        if _float_measure(coeffs) > float(T_max) * (1 + 1e-9) + 1e-9:
            continue
        if best and _float_measure(coeffs) > float(best[0][0]) * (1 + 1e-9) + 1e-9:
            continue
        if d > 1 and not is_irreducible(f):
            continue
        meas = mahler_measure(f).value
        if meas.gt(T_max) is True:
            continue
        beta = _root_in_field(order, f)
        if beta is None:
            continue
        if best and meas.gt(best[0][0]) is True:
            continue
        if best and meas.lt(best[0][0]) is True:
            best = []
        best.append((meas, f, beta))
    if not best:
        return MinimumResult("exceeds T_max", T_max, examined=examined, method="coefficient enumeration")
    best.sort(key=lambda t: (float(t[0]), t[1].coeffs))
    meas, f, beta = best[0]
    ties = [str(g) for _, g, _ in best[1:]]
    return MinimumResult("computed", T_max, meas, f, beta, examined, ties, "coefficient enumeration")


def min_measure_by_elements(order: FieldOrder, T_max, bound: Optional[int] = None) -> MinimumResult:
    """Independent oracle: scan order elements with bounded coordinates.

    Every element of measure <= T_max has all embeddings of modulus <= T_max,
    so with the default bound (inverse lattice row sums times T_max) the scan
    is complete for the order; it equals M(O_K) when the order is maximal.
    """
    T_max = Fraction(T_max)
    lat = minkowski_lattice(order)
    d = order.degree
    if bound is None:
        bound = int(math.ceil(float(np.abs(lat.inverse).sum(axis=1).max()) * float(T_max))) + 1
    best: List[Tuple[Interval, IntPolynomial, Tuple[Fraction, ...]]] = []
    examined = 0
    for coords in itertools.product(range(-bound, bound + 1), repeat=d):
        examined += 1
        x = lat.matrix @ np.array(coords, dtype=float)
        if np.abs(x).max() > float(T_max) * 1.5 + 1:
            continue
        mp = minimal_polynomial(order, coords)
        if not mp.is_generator:
            continue
        if _float_measure(mp.poly.coeffs) > float(T_max) * (1 + 1e-9) + 1e-9:
            continue
        meas = mahler_measure(mp.poly).value
        if meas.gt(T_max) is True:
            continue
        if best and meas.gt(best[0][0]) is True:
            continue
        if best and meas.lt(best[0][0]) is True:
            best = []
        best.append((meas, mp.poly, tuple(order.to_power(coords))))
    if not best:
        return MinimumResult("exceeds T_max", T_max, examined=examined, method="element scan")
    best.sort(key=lambda t: (float(t[0]), t[1].coeffs))
    meas, f, beta = best[0]
    ties = sorted({str(g) for _, g, _ in best[1:]} - {str(f)})
    return MinimumResult("computed", T_max, meas, f, beta, examined, ties, f"element scan, |coords| <= {bound}")


# -- field-level bounds -------------------------------------------------------------


def check_field_bounds(order: FieldOrder, M_value) -> List[InequalityReport]:
    """Every lower/upper bound on M(O_K) applicable to this signature."""
    if order.field_disc is None:
        raise DomainError("field discriminant unknown; only polynomial-level relations can be checked")
    prec = order.precision
    if isinstance(M_value, MinimumResult):
        if M_value.value is None:
            raise DomainError(f"M(O_K) not available: {M_value.status}")
        M_value = M_value.value
    meas = M_value if isinstance(M_value, Interval) else Interval.point(Fraction(M_value), prec)
    d = order.degree
    dk = abs(order.field_disc)
    desc = f"{order.poly} (disc_K={order.field_disc})"
    out = []
    if d >= 2:
        out.append(
            InequalityReport.compare(
                "field_classical", desc, meas ** (2 * d - 2), Fraction(dk, d**d), prec, exponent=2 * d - 2
            )
        )
    if order.r == 0 and d >= 2:
        out.append(
            InequalityReport.compare(
                "field_totally_complex",
                desc,
                meas ** (2 * d - 3),
                Fraction(dk) * Fraction(2) ** (d * (1 - d)),
                prec,
                exponent=2 * d - 3,
            )
        )
    if d == 2 and order.r == 0:
        rep = InequalityReport.compare("imaginary_quadratic", desc, meas, Fraction(dk, 4), prec)
        rep.details["equality"] = rep.equality
        out.append(rep)
    out.append(InequalityReport.compare("field_upper", desc, Interval.point(dk, prec), meas, prec))
    for rep in out:
        rep.details.setdefault("equality", rep.equality)
    return out


def field_bound_value(name: str, d: int, disc_k: int) -> float:
    """Closed-form lower bound on M(O_K) (for display)."""
    dk = abs(disc_k)
    if name == "field_classical":
        return d ** (-d / (2 * d - 2)) * dk ** (1 / (2 * d - 2))
    if name == "field_totally_complex":
        return 2 ** (d * (1 - d) / (2 * d - 3)) * dk ** (1 / (2 * d - 3))
    if name == "imaginary_quadratic":
        return dk / 4
    raise KeyError(name)


IMAGINARY_QUADRATIC = {
    -3: "x^2-x+1",
    -4: "x^2+1",
    -7: "x^2-x+2",
    -8: "x^2+2",
    -11: "x^2-x+3",
    -15: "x^2-x+4",
    -19: "x^2-x+5",
    -20: "x^2+5",
}


def imaginary_quadratic_order(disc: int) -> FieldOrder:
    """Maximal order of Q(sqrt(disc)) for the tabulated discriminants."""
    try:
        return build_order(IMAGINARY_QUADRATIC[disc], field_disc=disc)
    except KeyError:
        raise DomainError(f"no defining polynomial tabulated for disc {disc}") from None

