"""Outward-rounded real intervals with an optional exact rational value.

Endpoints are raw mpmath ``libmp`` tuples so that every operation carries
its own precision and rounding direction; nothing here touches mpmath's
global context, which keeps the class safe to use from several threads.

When both operands carry an ``exact`` :class:`~fractions.Fraction`, the
result carries one too, so identities that hold exactly over Q are decided
exactly and the interval is only a fallback.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational
from typing import Optional, Union

from mpmath import libmp
from mpmath.libmp import round_ceiling as CEIL
from mpmath.libmp import round_floor as FLOOR

DEFAULT_PREC = 128

Number = Union[int, Fraction, "Interval"]


def _from_fraction(q: Fraction, prec: int, rnd) -> tuple:
    return libmp.from_rational(q.numerator, q.denominator, prec, rnd)


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpf (raw tuple or mpmath object)."""
    raw = getattr(x, "_mpf_", x)
    if raw in (libmp.finf, libmp.fninf, libmp.fnan):
        raise ValueError("non-finite value has no rational form")
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


def sqrt_exact(q: Fraction) -> Optional[Fraction]:
    """Return the rational square root of ``q`` if there is one."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def integer_root(a: int, n: int) -> int:
    """floor(a ** (1/n)) for a >= 0, by integer Newton iteration."""
    if a < 2:
        return a
    r = 1 << ((a.bit_length() + n - 1) // n)
    while True:
        s = ((n - 1) * r + a // r ** (n - 1)) // n
        if s >= r:
            return r
        r = s


def root_exact(q: Fraction, n: int) -> Optional[Fraction]:
    if q < 0:
        return None
    if n == 1:
        return q

    def iroot(a: int) -> Optional[int]:
        r = integer_root(a, n)
        return r if r**n == a else None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


class Interval:
    __slots__ = ("lo", "hi", "exact", "prec")

    def __init__(self, lo, hi, exact: Optional[Fraction] = None, prec: int = DEFAULT_PREC):
        self.lo = lo
        self.hi = hi
        self.exact = exact
        self.prec = prec

    # -- construction -----------------------------------------------------

    @classmethod
    def point(cls, q, prec: int = DEFAULT_PREC) -> "Interval":
        if isinstance(q, Interval):
            return q
        q = Fraction(q)
        return cls(_from_fraction(q, prec, FLOOR), _from_fraction(q, prec, CEIL), q, prec)

    @classmethod
    def around(cls, center, radius, prec: int = DEFAULT_PREC) -> "Interval":
        """``center ± radius`` for mpf center/radius (objects or raw tuples)."""
        c = getattr(center, "_mpf_", center)
        r = libmp.mpf_abs(getattr(radius, "_mpf_", radius))
        return cls(libmp.mpf_sub(c, r, prec, FLOOR), libmp.mpf_add(c, r, prec, CEIL), None, prec)

    @classmethod
    def hull(cls, lo, hi, prec: int = DEFAULT_PREC) -> "Interval":
        lo = getattr(lo, "_mpf_", lo)
        hi = getattr(hi, "_mpf_", hi)
        return cls(lo, hi, None, prec)

    def _coerce(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Rational)):
            return Interval.point(Fraction(other), self.prec)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = max(self.prec, o.prec)
        if self.exact is not None and o.exact is not None:
            return Interval.point(self.exact + o.exact, p)
        return Interval(libmp.mpf_add(self.lo, o.lo, p, FLOOR), libmp.mpf_add(self.hi, o.hi, p, CEIL), None, p)

    __radd__ = __add__

    def __neg__(self):
        ex = -self.exact if self.exact is not None else None
        return Interval(libmp.mpf_neg(self.hi), libmp.mpf_neg(self.lo), ex, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = max(self.prec, o.prec)
        if self.exact is not None and o.exact is not None:
            return Interval.point(self.exact * o.exact, p)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lows = [libmp.mpf_mul(a, b, p, FLOOR) for a, b in pairs]
        highs = [libmp.mpf_mul(a, b, p, CEIL) for a, b in pairs]
        return Interval(_min(lows), _max(highs), None, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.contains_zero():
            raise ZeroDivisionError("interval divisor contains zero")
        p = max(self.prec, o.prec)
        if self.exact is not None and o.exact is not None:
            return Interval.point(self.exact / o.exact, p)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lows = [libmp.mpf_div(a, b, p, FLOOR) for a, b in pairs]
        highs = [libmp.mpf_div(a, b, p, CEIL) for a, b in pairs]
        return Interval(_min(lows), _max(highs), None, p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return Interval.point(1, self.prec) / (self**-n)
        if n == 0:
            return Interval.point(1, self.prec)
        p = self.prec
        if self.exact is not None:
            return Interval.point(self.exact**n, p)
        lo, hi = self.lo, self.hi
        if libmp.mpf_ge(lo, libmp.fzero):
            return Interval(libmp.mpf_pow_int(lo, n, p, FLOOR), libmp.mpf_pow_int(hi, n, p, CEIL), None, p)
        if libmp.mpf_le(hi, libmp.fzero):
            a, b = libmp.mpf_neg(hi), libmp.mpf_neg(lo)
            mag = Interval(a, b, None, p) ** n
            if n % 2 == 0:
                return Interval(mag.lo, mag.hi, None, p)
            return Interval(libmp.mpf_neg(mag.hi), libmp.mpf_neg(mag.lo), None, p)
        # straddles zero
        top = _max([libmp.mpf_pow_int(libmp.mpf_neg(lo), n, p, CEIL), libmp.mpf_pow_int(hi, n, p, CEIL)])
        if n % 2 == 0:
            return Interval(libmp.fzero, top, None, p)
        return Interval(libmp.mpf_pow_int(lo, n, p, FLOOR), libmp.mpf_pow_int(hi, n, p, CEIL), None, p)

    def sqrt(self) -> "Interval":
        return self.root(2)

    def root(self, n: int) -> "Interval":
        """Principal n-th root of a non-negative interval."""
        if libmp.mpf_lt(self.hi, libmp.fzero):
            raise ValueError("root of a negative interval")
        p = self.prec
        lo = self.lo if libmp.mpf_ge(self.lo, libmp.fzero) else libmp.fzero
        ex = root_exact(self.exact, n) if self.exact is not None else None
        return Interval(_nthroot_bound(lo, n, p, False), _nthroot_bound(self.hi, n, p, True), ex, p)

    def __abs__(self):
        ex = abs(self.exact) if self.exact is not None else None
        if libmp.mpf_ge(self.lo, libmp.fzero):
            return Interval(self.lo, self.hi, ex, self.prec)
        if libmp.mpf_le(self.hi, libmp.fzero):
            return Interval(libmp.mpf_neg(self.hi), libmp.mpf_neg(self.lo), ex, self.prec)
        return Interval(libmp.fzero, _max([libmp.mpf_neg(self.lo), self.hi]), ex, self.prec)

    def maximum(self, other) -> "Interval":
        o = self._coerce(other)
        ex = max(self.exact, o.exact) if self.exact is not None and o.exact is not None else None
        # max(x, y) is exact whenever one side certainly dominates and is exact
        if ex is None:
            if o.exact is not None and libmp.mpf_le(self.hi, o.lo):
                ex = o.exact
            elif self.exact is not None and libmp.mpf_le(o.hi, self.lo):
                ex = self.exact
        return Interval(_max([self.lo, o.lo]), _max([self.hi, o.hi]), ex, max(self.prec, o.prec))

    # -- comparisons (three-valued) ---------------------------------------

    def ge(self, other) -> Optional[bool]:
        """True/False when ``self >= other`` is certain, None otherwise."""
        o = self._coerce(other)
        if self.exact is not None and o.exact is not None:
            return self.exact >= o.exact
        if libmp.mpf_ge(self.lo, o.hi):
            return True
        if libmp.mpf_lt(self.hi, o.lo):
            return False
        return None

    def gt(self, other) -> Optional[bool]:
        o = self._coerce(other)
        if self.exact is not None and o.exact is not None:
            return self.exact > o.exact
        if libmp.mpf_gt(self.lo, o.hi):
            return True
        if libmp.mpf_le(self.hi, o.lo):
            return False
        return None

    def le(self, other) -> Optional[bool]:
        return self._coerce(other).ge(self)

    def lt(self, other) -> Optional[bool]:
        return self._coerce(other).gt(self)

    def contains_zero(self) -> bool:
        return libmp.mpf_le(self.lo, libmp.fzero) and libmp.mpf_ge(self.hi, libmp.fzero)

    def contains(self, q) -> bool:
        q = Fraction(q)
        return libmp.mpf_le(self.lo, _from_fraction(q, self.prec, CEIL)) and libmp.mpf_ge(
            self.hi, _from_fraction(q, self.prec, FLOOR)
        )

    # -- views ------------------------------------------------------------

    @property
    def mid(self):
        return libmp.mpf_shift(libmp.mpf_add(self.lo, self.hi, self.prec + 2), -1)

    @property
    def rad(self):
        return libmp.mpf_shift(libmp.mpf_sub(self.hi, self.lo, self.prec, CEIL), -1)

    def __float__(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return libmp.to_float(self.mid)

    def to_json(self, digits: int = 25) -> dict:
        return {
            "lo": libmp.to_str(self.lo, digits),
            "hi": libmp.to_str(self.hi, digits),
            "exact": None if self.exact is None else str(self.exact),
        }

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"Interval(exact={self.exact})"
        return f"Interval([{libmp.to_str(self.lo, 15)}, {libmp.to_str(self.hi, 15)}])"


def _min(xs):
    out = xs[0]
    for x in xs[1:]:
        if libmp.mpf_lt(x, out):
            out = x
    return out


def _exact_pow(x, n: int):
    out = libmp.fone
    for _ in range(n):
        out = libmp.mpf_mul(out, x)
    return out


def _nthroot_bound(x, n: int, prec: int, upper: bool):
    # mpf_nthroot is not correctly rounded for n >= 3; step outward until certified
    y = libmp.mpf_nthroot(x, n, prec, CEIL if upper else FLOOR)
    while True:
        yn = _exact_pow(y, n)
        if (libmp.mpf_ge(yn, x) if upper else libmp.mpf_le(yn, x)) or y == libmp.fzero:
            return y
        y = libmp.mpf_add(y, libmp.mpf_shift(y, -prec), prec, CEIL) if upper else libmp.mpf_sub(
            y, libmp.mpf_shift(y, -prec), prec, FLOOR
        )


def _max(xs):
    out = xs[0]
    for x in xs[1:]:
        if libmp.mpf_gt(x, out):
            out = x
    return out


def as_interval(x, prec: int = DEFAULT_PREC) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(x, prec)


def certainly_ge(a, b) -> Optional[bool]:
    """Three-valued ``a >= b`` for any mix of rationals and intervals."""
    if not isinstance(a, Interval) and not isinstance(b, Interval):
        return Fraction(a) >= Fraction(b)
    if isinstance(a, Interval):
        return a.ge(b)
    return b.le(a)


def certainly_le(a, b) -> Optional[bool]:
    return certainly_ge(b, a)
