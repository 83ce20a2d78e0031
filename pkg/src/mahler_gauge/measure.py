"""Mahler measure and the polynomial inequalities built on it.

Integer polynomials use the exact discriminant and, whenever the root
structure allows it, an exact rational Mahler measure; everything else is
decided on certified intervals with precision escalation. Polynomials with
complex coefficients (ascending coefficient sequences) go through the same
checkers on the interval path only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .config import default_precision
from .errors import DomainError
from .interval import Interval
from .polyexact import (
    IntPolynomial,
    discriminant_exact,
    exact_quotient,
    family_eisenstein,
    l1_norm,
    strip_cyclotomic,
    totient,
)
from .report import InequalityReport
from .roots import CertifiedRootSet, PairedProfile, derive_profile, find_roots, to_mpc

Poly = Union[IntPolynomial, Sequence]


@dataclass(frozen=True)
class MeasureResult:
    value: Interval
    l1_window: Optional[Tuple[Fraction, int]]
    roots: CertifiedRootSet

    @property
    def exact(self) -> Optional[Fraction]:
        return self.value.exact


def _describe(f: Poly) -> str:
    if isinstance(f, IntPolynomial):
        return str(f)
    return "coeffs:" + ",".join(str(c) for c in f)


def _degree(f: Poly) -> int:
    if isinstance(f, IntPolynomial):
        return f.degree
    cs = list(f)
    while cs and cs[-1] == 0:
        cs.pop()
    return len(cs) - 1


def _binomial_measure(f: IntPolynomial) -> Optional[Fraction]:
    terms = f.nonzero_terms()
    if len(terms) == 1:
        return Fraction(abs(terms[0][1]))
    if len(terms) == 2:
        return Fraction(max(abs(terms[0][1]), abs(terms[1][1])))
    return None


def exact_measure(f: IntPolynomial, rs: CertifiedRootSet) -> Optional[Fraction]:
    """Exact M(f) when the root structure makes it rational, else None.

    Uses multiplicativity of M over the factors x^j, (q x - p), cyclotomic
    polynomials and a remaining factor g that is a binomial, a real quadratic
    without real roots, or has all roots certified on one side of the unit
    circle.
    """
    quick = _binomial_measure(f)
    if quick is not None:
        return quick
    if not rs.certified:
        return None
    prec = rs.precision
    total = Fraction(1)
    g = f
    j = next(i for i, a in enumerate(g.coeffs) if a)
    g = IntPolynomial(g.coeffs[j:])
    for root in rs.roots:
        q = root.exact
        if q is None or q == 0:
            continue
        lin = IntPolynomial((-q.numerator, q.denominator))
        nxt = exact_quotient(g, lin)
        if nxt is None:
            return None
        g = nxt
        total *= max(abs(q.numerator), q.denominator)
    inside = outside = ambiguous = 0
    for root in rs.roots:
        if root.exact is not None:
            continue
        mod = root.modulus(prec)
        if mod.le(1) is True:
            inside += 1
        elif mod.ge(1) is True:
            outside += 1
        else:
            ambiguous += 1
    if ambiguous:
        g, cyc = strip_cyclotomic(g)
        if sum(totient(n) * k for n, k in cyc) != ambiguous:
            return None
    if g.degree <= 0:
        return total * abs(g.leading)
    rest = _binomial_measure(g)
    if rest is not None:
        return total * rest
    if g.degree == 2:
        c, b, a = g.coeffs
        if b * b - 4 * a * c < 0:
            return total * max(abs(a), abs(c))
    if inside == g.degree:
        return total * abs(g.leading)
    if outside == g.degree:
        return total * abs(g.constant)
    return None


def mahler_measure(f: Poly, rs: Optional[CertifiedRootSet] = None, precision: Optional[int] = None) -> MeasureResult:
    """M(f) = |lead| * prod max(1, |root|), with the L1 window 2^-d |f|_1 <= M <= |f|_1."""
    if rs is None:
        rs = find_roots(f, precision)
    elif isinstance(f, IntPolynomial) and rs.source != f:
        raise DomainError("root set does not belong to this polynomial")
    if rs.degree != _degree(f):
        raise DomainError("root set does not belong to this polynomial")
    prec = rs.precision
    value = rs.leading_modulus()
    for mod in rs.moduli():
        value = value * mod.maximum(1)
    window = None
    if isinstance(f, IntPolynomial):
        ex = exact_measure(f, rs)
        if ex is not None:
            if not value.contains(ex):
                raise ArithmeticError(f"exact measure {ex} outside certified interval {value}")
            value = Interval(value.lo, value.hi, ex, prec)
        n1 = l1_norm(f)
        window = (Fraction(n1, 2**f.degree), n1)
    return MeasureResult(value, window, rs)


def abs_discriminant_from_roots(rs: CertifiedRootSet) -> Interval:
    """|lead|^(2d-2) prod_{i<j} |a_i - a_j|^2 on certified intervals."""
    prec = rs.precision
    d = rs.degree
    ctx = rs.ctx
    lib_roots = rs.roots
    out = rs.leading_modulus() ** (2 * d - 2)
    for i in range(d):
        for j in range(i + 1, d):
            a, b = lib_roots[i], lib_roots[j]
            if a.exact is not None and b.exact is not None:
                dist = Interval.point(abs(a.exact - b.exact), prec)
            else:
                diff = a.value - b.value
                re, im = diff.real._mpf_, diff.imag._mpf_
                centre = (Interval.hull(re, re, prec) ** 2 + Interval.hull(im, im, prec) ** 2).sqrt()
                r = Interval.around(ctx.mpf(0), a.radius + b.radius + ctx.ldexp(abs(diff), 2 - prec), prec)
                dist = abs(centre + r)
            out = out * dist**2
    return out


def _abs_disc(f: Poly, rs: CertifiedRootSet) -> Interval:
    if isinstance(f, IntPolynomial):
        return Interval.point(abs(discriminant_exact(f)), rs.precision)
    return abs_discriminant_from_roots(rs)


def _l1(f: Poly, prec: int) -> Interval:
    if isinstance(f, IntPolynomial):
        return Interval.point(l1_norm(f), prec)
    import mpmath

    ctx = mpmath.MPContext()
    ctx.prec = prec
    total = Interval.point(0, prec)
    for c in f:
        z = to_mpc(ctx, c)
        re, im = z.real._mpf_, z.imag._mpf_
        total = total + (Interval.hull(re, re, prec) ** 2 + Interval.hull(im, im, prec) ** 2).sqrt()
    return total


def _normalize(f: Poly) -> Tuple[Poly, Fraction]:
    """Rational coefficient sequences become (integer polynomial, scale)."""
    if isinstance(f, IntPolynomial):
        return f, Fraction(1)
    cs = list(f)
    if all(isinstance(c, (int, Fraction)) for c in cs):
        den = 1
        for c in cs:
            q = Fraction(c)
            den = den * q.denominator // gcd(den, q.denominator)
        return IntPolynomial(tuple(int(Fraction(c) * den) for c in cs)), Fraction(den)
    return f, Fraction(1)


def _is_monic(f: Poly) -> bool:
    if isinstance(f, IntPolynomial):
        return f.is_monic
    cs = list(f)
    while cs and cs[-1] == 0:
        cs.pop()
    return bool(cs) and cs[-1] == 1


def _escalate(compute: Callable[[int], InequalityReport], precision: Optional[int]) -> InequalityReport:
    policy = default_precision()
    p = precision or policy.bits
    cap = max(policy.cap, p)
    last = None
    while p <= cap:
        last = compute(p)
        if last.holds is not None:
            return last
        p *= 2
    return last


# -- Mahler's classical inequality -------------------------------------------------


def _is_extremal_binomial(f: Poly) -> bool:
    """f = a x^d + b with |a| = |b| > 0."""
    if isinstance(f, IntPolynomial):
        terms = f.nonzero_terms()
        return len(terms) == 2 and terms[0][0] == 0 and abs(terms[0][1]) == abs(terms[1][1])
    cs = list(f)
    while cs and cs[-1] == 0:
        cs.pop()
    nz = [i for i, c in enumerate(cs) if c != 0]
    return nz == [0, len(cs) - 1] and abs(complex(cs[0])) == abs(complex(cs[-1]))


def check_mahler_classical(f: Poly, precision: Optional[int] = None) -> InequalityReport:
    """M(f)^(2d-2) >= d^-d |disc(f)|, with the equality characterisation cross-checked."""
    d = _degree(f)
    if d < 2:
        raise DomainError("Mahler's inequality needs degree >= 2")

    g, scale = _normalize(f)

    def compute(prec: int) -> InequalityReport:
        res = mahler_measure(g, precision=prec)
        res = MeasureResult(res.value * (1 / scale), res.l1_window, res.roots)
        disc = _abs_disc(g, res.roots) * (1 / scale ** (2 * d - 2))
        lhs = res.value ** (2 * d - 2)
        rhs = disc * Fraction(1, d**d)
        rep = InequalityReport.compare("mahler_classical", _describe(f), lhs, rhs, res.roots.precision)
        extremal = _is_extremal_binomial(f)
        rep.details["measure"] = res.value
        rep.details["abs_disc"] = disc
        rep.details["extremal_binomial"] = extremal
        if disc.exact != 0 and not disc.contains_zero():
            rep.details["ratio"] = lhs / rhs
        eq = rep.equality
        rep.details["equality"] = eq
        rep.details["characterization_consistent"] = None if eq is None else (eq == extremal)
        return rep

    return _escalate(compute, precision)


def check_eisenstein_bounds(p: int, d: int, precision: Optional[int] = None) -> List[InequalityReport]:
    """M(f) < 3p and M(f)^(2d-2) < (9/(d-1))^(d-1) |disc| for the p-Eisenstein trinomial."""
    member = family_eisenstein(p, d)
    f = member.poly

    def below_3p(prec: int) -> InequalityReport:
        res = mahler_measure(f, precision=prec)
        return InequalityReport.compare(
            "eisenstein_measure_below_3p", str(f), Fraction(3 * p), res.value, res.roots.precision, strict=True,
            l1_bound=Fraction(2 * p + 1),
        )

    def upper(prec: int) -> InequalityReport:
        res = mahler_measure(f, precision=prec)
        lhs = Interval.point(Fraction(9, d - 1) ** (d - 1) * member.disc_abs, res.roots.precision)
        return InequalityReport.compare(
            "eisenstein_upper", str(f), lhs, res.value ** (2 * d - 2), res.roots.precision, strict=True
        )

    return [_escalate(below_3p, precision), _escalate(upper, precision)]


# -- paired-roots bound ------------------------------------------------------------


def _profile_at(f: Poly, prec: int, r, profile: Optional[PairedProfile]) -> PairedProfile:
    if profile is not None and profile.roots.precision >= prec:
        return profile
    target = profile.r if profile is not None and not profile.auto else r
    return derive_profile(find_roots(f, prec), target)


def check_thm_1_2(
    f: Poly, profile: Optional[PairedProfile] = None, r=1, precision: Optional[int] = None
) -> InequalityReport:
    """M(f)^(2d-3) >= (2r)^(d(1-d)) |disc(f)| for monic f whose roots of modulus > r pair up."""
    d = _degree(f)
    if d < 2:
        raise DomainError("paired-roots bound needs degree >= 2")
    if not _is_monic(f):
        raise DomainError("paired-roots bound needs a monic polynomial")
    if profile is not None and isinstance(f, IntPolynomial) and profile.roots.source != f:
        raise DomainError("profile belongs to a different polynomial")

    g, scale = _normalize(f)

    def compute(prec: int) -> InequalityReport:
        prof = _profile_at(g, prec, r, profile)
        res = mahler_measure(g, prof.roots)
        disc = _abs_disc(g, prof.roots) * (1 / scale ** (2 * d - 2))
        res = MeasureResult(res.value * (1 / scale), res.l1_window, res.roots)
        rr = prof.r
        lhs = res.value ** (2 * d - 3)
        rhs = disc * ((2 * rr) ** (d * (1 - d)))
        rep = InequalityReport.compare("paired_roots", _describe(f), lhs, rhs, prof.roots.precision)
        rep.details.update(
            r=rr, m=prof.m, pairs=len(prof.pairs), boundary_pairs=len(prof.boundary_pairs),
            measure=res.value, abs_disc=disc,
        )
        return rep

    return _escalate(compute, precision)


def check_cor_1_5(
    f: Poly, profile: Optional[PairedProfile] = None, r=1, precision: Optional[int] = None
) -> InequalityReport:
    """|disc(f)| <= (2r)^(d(d-1)) |f|_1^(2d-3) under the paired-roots hypothesis."""
    d = _degree(f)
    if d < 2:
        raise DomainError("needs degree >= 2")
    if not _is_monic(f):
        raise DomainError("needs a monic polynomial")

    g, scale = _normalize(f)

    def compute(prec: int) -> InequalityReport:
        prof = _profile_at(g, prec, r, profile)
        p = prof.roots.precision
        disc = _abs_disc(g, prof.roots) * (1 / scale ** (2 * d - 2))
        n1 = _l1(g, p) * (1 / scale)
        lhs = n1 ** (2 * d - 3) * ((2 * prof.r) ** (d * (d - 1)))
        rep = InequalityReport.compare("l1_disc_paired", _describe(f), lhs, disc, p)
        mahler_bound = n1 ** (2 * d - 2) * (d**d)
        rep.details.update(
            r=prof.r, m=prof.m, l1=n1,
            mahler_l1_bound=mahler_bound, mahler_l1_holds=mahler_bound.ge(disc),
        )
        return rep

    return _escalate(compute, precision)


# -- L1 window and Ruppert's quadratic formula ------------------------------------------


def check_l1(f: Poly, precision: Optional[int] = None) -> InequalityReport:
    """2^-d |f|_1 <= M(f) <= |f|_1; the report's lhs/rhs carry the lower half."""
    d = _degree(f)
    if d < 1:
        raise DomainError("needs degree >= 1")

    g, scale = _normalize(f)

    def compute(prec: int) -> InequalityReport:
        res = mahler_measure(g, precision=prec)
        p = res.roots.precision
        res = MeasureResult(res.value * (1 / scale), res.l1_window, res.roots)
        n1 = _l1(g, p) * (1 / scale)
        rep = InequalityReport.compare("l1_window", _describe(f), res.value, n1 * Fraction(1, 2**d), p)
        upper = n1.ge(res.value)
        rep.details.update(upper=n1, upper_holds=upper, lower_holds=rep.holds)
        if rep.holds is True and upper is not True:
            rep.holds = upper
        return rep

    return _escalate(compute, precision)


def ruppert_quadratic(b, c):
    """Mahler measure of x^2 + b x + c without real roots: max{1, (b^2 + |disc|)/4}."""
    disc = b * b - 4 * c
    if disc >= 0:
        raise DomainError("x^2 + bx + c has real roots")
    value = (b * b + abs(disc)) / 4
    if isinstance(value, int):
        value = Fraction(value)
    return max(1, value)
