"""Certified simultaneous root finding and equal-modulus pairing.

Roots are found with the Aberth-Ehrlich iteration, first in double precision
and then polished in an mpmath context private to the call. Each root gets
the Newton inclusion radius ``n |f(z) / f'(z)|`` (inflated by a bound on the
Horner rounding error); once the disks are pairwise disjoint each contains
exactly one root.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

from .config import Precision, default_precision
from .errors import DomainError, HypothesisNotSatisfied, PrecisionError
from .interval import Interval, mpf_to_fraction
from .polyexact import IntPolynomial, squarefree_decomposition

PolyLike = Union[IntPolynomial, Sequence[Any]]


@dataclass(frozen=True)
class CertifiedRoot:
    value: Any  # mpc in the owning root set's context
    radius: Any  # mpf upper bound on |value - true root|
    multiplicity: int = 1
    exact: Optional[Fraction] = None  # set for certified rational roots
    real: Optional[bool] = None  # None: not decided (or complex-coefficient source)

    def modulus(self, prec: int) -> Interval:
        if self.exact is not None:
            return Interval.point(abs(self.exact), prec)
        re = self.value.real._mpf_
        im = self.value.imag._mpf_
        sq = Interval.hull(re, re, prec) ** 2 + Interval.hull(im, im, prec) ** 2
        centre = sq.sqrt()
        r = self.radius._mpf_
        lo = mpmath.libmp.mpf_sub(centre.lo, r, prec, mpmath.libmp.round_floor)
        if mpmath.libmp.mpf_lt(lo, mpmath.libmp.fzero):
            lo = mpmath.libmp.fzero
        hi = mpmath.libmp.mpf_add(centre.hi, r, prec, mpmath.libmp.round_ceiling)
        return Interval(lo, hi, None, prec)


@dataclass(frozen=True)
class CertifiedRootSet:
    roots: Tuple[CertifiedRoot, ...]
    source: Any  # IntPolynomial or tuple of coefficients
    precision: int
    certified: bool
    conjugate: Tuple[Optional[int], ...]
    ctx: Any

    @property
    def degree(self) -> int:
        return len(self.roots)

    @property
    def real_source(self) -> bool:
        if isinstance(self.source, IntPolynomial):
            return True
        return all(to_mpc(self.ctx, c).imag == 0 for c in self.source)

    def leading_modulus(self) -> Interval:
        if isinstance(self.source, IntPolynomial):
            return Interval.point(abs(self.source.leading), self.precision)
        a = to_mpc(self.ctx, self.source[-1])
        return _abs_interval(a, self.precision)

    def moduli(self) -> List[Interval]:
        return [r.modulus(self.precision) for r in self.roots]


def to_mpc(ctx, c):
    if isinstance(c, Fraction):
        return ctx.mpc(ctx.mpf(c.numerator) / c.denominator)
    if isinstance(c, tuple):
        return ctx.mpc(to_mpc(ctx, c[0]).real, to_mpc(ctx, c[1]).real)
    return ctx.mpc(c)


def _abs_interval(z, prec: int) -> Interval:
    re, im = z.real._mpf_, z.imag._mpf_
    return (Interval.hull(re, re, prec) ** 2 + Interval.hull(im, im, prec) ** 2).sqrt()


# -- iteration kernels ------------------------------------------------------------


def _cauchy_radius(coeffs: Sequence[complex]) -> float:
    lead = abs(coeffs[-1])
    return 1.0 + max(abs(c) / lead for c in coeffs[:-1])


def _initial_guesses(n: int, radius: float, phase: float = 0.4) -> np.ndarray:
    k = np.arange(n)
    return radius * np.exp(1j * (2 * np.pi * k / n + phase))


def _aberth_double(coeffs: Sequence[complex], maxiter: int = 500) -> Optional[np.ndarray]:
    n = len(coeffs) - 1
    desc = np.array(list(reversed(coeffs)), dtype=complex)
    ddesc = np.polyder(desc)
    z = _initial_guesses(n, _cauchy_radius(coeffs))
    if n == 1:
        return np.array([-coeffs[0] / coeffs[1]], dtype=complex)
    with np.errstate(all="ignore"):
        for _ in range(maxiter):
            p = np.polyval(desc, z)
            dp = np.polyval(ddesc, z)
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            w = ratio / (1.0 - ratio * s)
            w[p == 0] = 0
            if not np.all(np.isfinite(w)):
                return None
            z = z - w
            if np.max(np.abs(w) / np.maximum(1.0, np.abs(z))) < 1e-14:
                return z
    return z if np.all(np.isfinite(z)) else None


def _horner(ctx, coeffs, z):
    """f(z), f'(z) and the absolute-value sums bounding their rounding errors."""
    p = ctx.mpc(0)
    dp = ctx.mpc(0)
    s = ctx.mpf(0)
    ds = ctx.mpf(0)
    az = abs(z)
    for a in reversed(coeffs):
        dp = dp * z + p
        ds = ds * az + s
        p = p * z + a
        s = s * az + abs(a)
    return p, dp, s, ds


def _aberth_mp(ctx, coeffs, z: List[Any], maxiter: int) -> List[Any]:
    n = len(z)
    tol = ctx.ldexp(1, -ctx.prec + 8)
    for _ in range(maxiter):
        biggest = ctx.mpf(0)
        for i in range(n):
            p, dp, _, _ = _horner(ctx, coeffs, z[i])
            if p == 0:
                continue
            if dp == 0:
                z[i] += ctx.ldexp(1, -ctx.prec // 2)
                biggest = ctx.mpf(1)
                continue
            ratio = p / dp
            s = ctx.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
            w = ratio / (1 - ratio * s)
            z[i] -= w
            step = abs(w) / max(1, abs(z[i]))
            if step > biggest:
                biggest = step
        if biggest < tol:
            break
    return z


def _newton_radius(ctx, coeffs, z, n: int):
    p, dp, s, ds = _horner(ctx, coeffs, z)
    u = ctx.ldexp(1, 1 - ctx.prec)
    err_p = 4 * (n + 2) * u * s
    err_dp = 4 * (n + 2) * u * ds
    denom = abs(dp) - err_dp
    if denom <= 0:
        return ctx.inf
    rad = n * (abs(p) + err_p) / denom
    return rad * (1 + ctx.ldexp(1, 10 - ctx.prec))


def _disks_disjoint(ctx, zs, rads) -> bool:
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if abs(zs[i] - zs[j]) <= (rads[i] + rads[j]) * (1 + ctx.ldexp(1, 10 - ctx.prec)):
                return False
    return True


def _polish(ctx, mcoeffs, guesses):
    """Approximations and Newton radii, restarting from fresh circles when disks overlap."""
    n = len(mcoeffs) - 1
    plain = [complex(c) for c in mcoeffs]
    starts = []
    if guesses is not None:
        starts.append(([ctx.mpc(g) for g in guesses], 200))
    approx = _aberth_double(plain)
    if approx is not None:
        starts.append(([ctx.mpc(complex(a)) for a in approx], 200))
    radius = _cauchy_radius(plain)
    for phase, scale in ((0.4, 1.0), (1.3, 1.1), (2.2, 0.7)):
        starts.append(([ctx.mpc(complex(a)) for a in _initial_guesses(n, radius * scale, phase)], 2000))
    for start, iters in starts:
        z = _aberth_mp(ctx, mcoeffs, start, maxiter=iters)
        rads = [_newton_radius(ctx, mcoeffs, zi, n) for zi in z]
        if all(ctx.isfinite(r) for r in rads) and _disks_disjoint(ctx, z, rads):
            break
    return z, rads


def _solve_factor(ctx, coeffs, guesses, exact_poly: Optional[IntPolynomial]):
    """Roots, radii, exact rationals and realness for one squarefree factor."""
    n = len(coeffs) - 1
    mcoeffs = [to_mpc(ctx, c) for c in coeffs]
    z, rads = _polish(ctx, mcoeffs, guesses)

    exact: List[Optional[Fraction]] = [None] * n
    if exact_poly is not None:
        lead = abs(exact_poly.leading)
        for i, zi in enumerate(z):
            if abs(zi.imag) <= rads[i]:
                cand = mpf_to_fraction(zi.real).limit_denominator(lead)
                near = abs(zi - ctx.mpf(cand.numerator) / cand.denominator) <= rads[i] * 2
                if near and exact_poly(cand) == 0:
                    exact[i] = cand
                    z[i] = ctx.mpc(ctx.mpf(cand.numerator) / cand.denominator)
                    rads[i] = ctx.ldexp(abs(z[i].real), 1 - ctx.prec)

    certified = all(ctx.isfinite(r) for r in rads) and _disks_disjoint(ctx, z, rads)
    real_coeffs = all(c.imag == 0 for c in mcoeffs)
    realness: List[Optional[bool]] = [None] * n
    partner: List[Optional[int]] = [None] * n
    if certified and real_coeffs:
        slack = 1 + ctx.ldexp(1, 10 - ctx.prec)
        for i in range(n):
            if exact[i] is not None:
                realness[i] = True
                continue
            hits = [
                j
                for j in range(n)
                if j != i and abs(ctx.conj(z[i]) - z[j]) <= (rads[i] + rads[j]) * slack
            ]
            if abs(z[i].imag) > rads[i]:
                realness[i] = False
                if len(hits) == 1:
                    partner[i] = hits[0]
            elif not hits:
                realness[i] = True
                z[i] = ctx.mpc(z[i].real, 0)
        for i in range(n):
            if realness[i] is None:
                certified = False
            elif realness[i] is False and (partner[i] is None or partner[partner[i]] != i):
                certified = False
    return z, rads, exact, realness, partner, certified


def find_roots(f: PolyLike, precision: Optional[int] = None, cap: Optional[int] = None) -> CertifiedRootSet:
    """All complex roots of ``f`` with certified error radii.

    ``f`` is an :class:`IntPolynomial` or an ascending sequence of complex
    coefficients. Precision doubles from ``precision`` until every squarefree
    factor has disjoint inclusion disks or ``cap`` is reached; in the latter
    case the set is returned with ``certified=False``.
    """
    policy = default_precision()
    prec = precision or policy.bits
    cap = cap or max(policy.cap, prec)

    if isinstance(f, IntPolynomial):
        if f.is_zero:
            raise DomainError("roots of the zero polynomial")
        if f.degree < 1:
            raise DomainError("roots of a constant polynomial")
        factors = [(g, k, g.coeffs, g) for g, k in squarefree_decomposition(f)]
        source: Any = f
    else:
        coeffs = tuple(f)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 2:
            raise DomainError("roots of a constant or zero polynomial")
        factors = [(None, 1, coeffs, None)]
        source = coeffs

    guesses: List[Optional[list]] = [None] * len(factors)
    while True:
        ctx = mpmath.MPContext()
        ctx.prec = prec
        roots: List[CertifiedRoot] = []
        conj: List[Optional[int]] = []
        ok = True
        for fi, (_, k, coeffs, exact_poly) in enumerate(factors):
            z, rads, exact, realness, partner, cert = _solve_factor(ctx, coeffs, guesses[fi], exact_poly)
            guesses[fi] = [complex(zi) for zi in z] if prec < 1024 else z
            ok = ok and cert
            base = len(roots)
            n = len(z)
            for copy in range(k):
                for i in range(n):
                    roots.append(CertifiedRoot(z[i], rads[i], k, exact[i], realness[i]))
                    conj.append(None if partner[i] is None else base + copy * n + partner[i])
        if ok or prec * 2 > cap:
            if not ok:
                warnings.warn(f"root certification failed at {prec} bits", RuntimeWarning, stacklevel=2)
            return CertifiedRootSet(tuple(roots), source, prec, ok, tuple(conj), ctx)
        prec *= 2


# -- pairing profile ---------------------------------------------------------------


@dataclass(frozen=True)
class PairedProfile:
    """Hypothesis data for the paired-roots bound.

    ``pairs`` are the equal-modulus pairs of modulus > r (m = 2 len(pairs));
    ``small_indices`` have modulus <= r. ``boundary_pairs`` lists pairs whose
    modulus could not be separated from r; they are counted as small, which
    is harmless because such a pair satisfies the hypothesis either way.
    """

    r: Fraction
    m: int
    pairs: Tuple[Tuple[int, int], ...]
    small_indices: Tuple[int, ...]
    boundary_pairs: Tuple[Tuple[int, int], ...]
    roots: CertifiedRootSet
    auto: bool = False


class _Ambiguous(Exception):
    pass


def _overlap(a: Interval, b: Interval) -> bool:
    if a.exact is not None and b.exact is not None:
        return a.exact == b.exact
    lib = mpmath.libmp
    return lib.mpf_le(a.lo, b.hi) and lib.mpf_le(b.lo, a.hi)


def _classify(rs: CertifiedRootSet, r: Optional[Fraction]) -> PairedProfile:
    if not rs.certified:
        raise _Ambiguous("root set not certified")
    prec = rs.precision
    mods = rs.moduli()
    d = rs.degree
    pairs: List[Tuple[int, int]] = []
    used = set()
    if rs.real_source:
        for i in range(d):
            j = rs.conjugate[i]
            if rs.roots[i].real is False and j is not None and i not in used:
                pairs.append((i, j))
                used.update((i, j))
    rest = [i for i in range(d) if i not in used]
    order = sorted(rest, key=lambda i: -float(mods[i]))

    if r is None:
        unpaired = []
        pool = order[:]
        while pool:
            i = pool.pop(0)
            j = next((j for j in pool if _overlap(mods[i], mods[j])), None)
            if j is None:
                unpaired.append(i)
            else:
                pool.remove(j)
                pairs.append((i, j))
        r_val = Fraction(1)
        for i in unpaired:
            m = mods[i]
            cand = m.exact if m.exact is not None else mpf_to_fraction(m.hi)
            r_val = max(r_val, cand)
        auto = True
    else:
        r_val = Fraction(r)
        pool = [i for i in order if mods[i].le(r_val) is not True]
        while pool:
            i = pool.pop(0)
            j = next((j for j in pool if _overlap(mods[i], mods[j])), None)
            if j is None:
                above = mods[i].gt(r_val)
                if above is True:
                    raise HypothesisNotSatisfied(
                        f"root {i} of modulus ~{float(mods[i]):.6g} > r={r_val} has no equal-modulus partner"
                    )
                if above is None:
                    raise _Ambiguous(f"root {i} cannot be classified against r")
            else:
                pool.remove(j)
                pairs.append((i, j))
        auto = False

    large, boundary = [], []
    for i, j in pairs:
        gi, gj = mods[i].gt(r_val), mods[j].gt(r_val)
        if gi is True and gj is True:
            large.append((i, j))
        elif gi is False and gj is False:
            continue
        else:
            boundary.append((i, j))
    in_large = {x for p in large for x in p}
    small = tuple(i for i in range(d) if i not in in_large)
    for i in small:
        if not any(i in p for p in boundary) and mods[i].le(r_val) is not True:
            raise _Ambiguous(f"small root {i} not certified <= r")
    large.sort(key=lambda p: -float(mods[p[0]]))
    return PairedProfile(r_val, 2 * len(large), tuple(large), small, tuple(boundary), rs, auto)


def derive_profile(rs: CertifiedRootSet, r: Union[str, int, Fraction, None] = "auto") -> PairedProfile:
    """Pair the large roots of ``rs`` by equal modulus.

    Complex-conjugate roots of a real polynomial are paired structurally;
    other large roots are paired when their modulus intervals overlap.
    Raises :class:`HypothesisNotSatisfied` for an unpairable large root and
    :class:`PrecisionError` if classification stays ambiguous at the cap.
    """
    target = None if r in (None, "auto") else Fraction(r)
    if target is not None and target < 1:
        raise DomainError("r must be >= 1")
    policy = default_precision()
    cap = max(policy.cap, rs.precision)
    current = rs
    while True:
        try:
            return _classify(current, target)
        except _Ambiguous as exc:
            if current.precision * 2 > cap:
                raise PrecisionError(str(exc)) from None
            current = find_roots(current.source, current.precision * 2, cap)
