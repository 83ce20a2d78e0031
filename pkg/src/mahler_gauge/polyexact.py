"""Exact integer/rational polynomial arithmetic.

Coefficients are stored in ascending degree order, so ``coeffs[i]`` is the
coefficient of ``x**i``. Note that the leading coefficient (called ``a_0``
in the classical Mahler-measure notation) is ``coeffs[-1]`` here.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import comb, gcd
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import DomainError


def _strip(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        if any(int(a) != a for a in self.coeffs):
            raise DomainError("IntPolynomial coefficients must be integers")
        object.__setattr__(self, "coeffs", _strip(cs))

    @classmethod
    def from_roots(cls, roots: Iterable[int], leading: int = 1) -> "IntPolynomial":
        f = cls((leading,))
        for a in roots:
            f = f * cls((-a, 1))
        return f

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * n + (c,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "IntPolynomial":
        """Primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPolynomial(tuple(a // c for a in self.coeffs))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * a for i, a in enumerate(self.coeffs))[1:])

    def reversed(self) -> "IntPolynomial":
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def negate_variable(self) -> "IntPolynomial":
        """f(-x)."""
        return IntPolynomial(tuple(a if i % 2 == 0 else -a for i, a in enumerate(self.coeffs)))

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(other * a for a in self.coeffs))
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(n):
            out = out * self
        return out

    def nonzero_terms(self) -> List[Tuple[int, int]]:
        return [(i, a) for i, a in enumerate(self.coeffs) if a]

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    def to_json(self) -> str:
        return json.dumps(list(self.coeffs))


@dataclass(frozen=True)
class RatPolynomial:
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_int(cls, f: IntPolynomial) -> "RatPolynomial":
        return cls(tuple(Fraction(a) for a in f.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "RatPolynomial":
        lc = self.leading
        return RatPolynomial(tuple(c / lc for c in self.coeffs))

    def to_int_primitive(self) -> IntPolynomial:
        """Clear denominators and return the primitive integer multiple."""
        if self.is_zero:
            return IntPolynomial(())
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.coeffs), 1)
        return IntPolynomial(tuple(int(c * den) for c in self.coeffs)).primitive()

    def __call__(self, x):
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc


def rat_divmod(f: RatPolynomial, g: RatPolynomial) -> Tuple[RatPolynomial, RatPolynomial]:
    if g.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f.coeffs)
    dg = g.degree
    lc = g.leading
    q = [Fraction(0)] * max(len(r) - dg, 1)
    while len(r) - 1 >= dg and any(r):
        k = len(r) - 1 - dg
        t = r[-1] / lc
        q[k] = t
        for i, b in enumerate(g.coeffs):
            r[i + k] -= t * b
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return RatPolynomial(tuple(q)), RatPolynomial(tuple(r))


def rat_gcd(f: RatPolynomial, g: RatPolynomial) -> RatPolynomial:
    """Monic gcd over Q (the zero polynomial if both inputs are zero)."""
    a, b = f, g
    while not b.is_zero:
        a, b = b, rat_divmod(a, b)[1]
    return a.monic() if not a.is_zero else a


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Primitive gcd of two integer polynomials, positive leading coefficient."""
    return rat_gcd(RatPolynomial.from_int(f), RatPolynomial.from_int(g)).to_int_primitive()


def exact_quotient(f: IntPolynomial, g: IntPolynomial) -> Optional[IntPolynomial]:
    """f / g if g divides f in Z[x], else None."""
    q, r = rat_divmod(RatPolynomial.from_int(f), RatPolynomial.from_int(g))
    if not r.is_zero or any(c.denominator != 1 for c in q.coeffs):
        return None
    return IntPolynomial(tuple(int(c) for c in q.coeffs))


# -- norms, determinants, resultants ------------------------------------------


def l1_norm(f: IntPolynomial) -> int:
    if f.is_zero:
        raise DomainError("l1 norm of the zero polynomial")
    return sum(abs(a) for a in f.coeffs)


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise DomainError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def rational_det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a rational matrix via Bareiss on the denominator-cleared matrix."""
    n = len(matrix)
    scale = 1
    rows = []
    for row in matrix:
        den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(c).denominator for c in row), 1)
        scale *= den
        rows.append([int(Fraction(c) * den) for c in row])
    return Fraction(bareiss_det(rows), scale) if n else Fraction(1)


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> List[List[int]]:
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        raise DomainError("Sylvester matrix of a zero polynomial")
    size = m + n
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - i - len(fd)))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - i - len(gd)))
    return rows


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    if f.degree + g.degree == 0:
        return 1
    return bareiss_det(sylvester_matrix(f, g))


def discriminant_exact(f: IntPolynomial) -> int:
    """Exact discriminant; sign convention (-1)^(d(d-1)/2) Res(f, f') / lead(f)."""
    d = f.degree
    if d < 2:
        raise DomainError("discriminant needs degree >= 2")
    res = resultant(f, f.derivative())
    q, rem = divmod(res, f.leading)
    if rem:
        raise ArithmeticError("resultant not divisible by leading coefficient")
    return -q if (d * (d - 1) // 2) % 2 else q


# -- squarefree decomposition, cyclotomics -------------------------------------


def squarefree_decomposition(f: IntPolynomial) -> List[Tuple[IntPolynomial, int]]:
    """Yun's algorithm over Q; returns primitive (g_k, k) with f ~ prod g_k^k.

    Factors of degree 0 are omitted; the integer unit/content is not returned.
    """
    if f.degree < 1:
        return []
    F = RatPolynomial.from_int(f)
    dF = RatPolynomial.from_int(f.derivative())
    a = rat_gcd(F, dF)
    b = rat_divmod(F, a)[0]
    c = rat_divmod(dF, a)[0]
    out = []
    k = 1
    while b.degree > 0:
        bd = RatPolynomial(tuple(i * x for i, x in enumerate(b.coeffs))[1:])
        diff = RatPolynomial(tuple(x - y for x, y in _pad(c.coeffs, bd.coeffs)))
        g = rat_gcd(b, diff) if not diff.is_zero else b.monic()
        if g.degree > 0:
            out.append((g.to_int_primitive(), k))
        b = rat_divmod(b, g)[0]
        c = rat_divmod(diff, g)[0] if not diff.is_zero else RatPolynomial(())
        k += 1
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    return zip(tuple(a) + (0,) * (n - len(a)), tuple(b) + (0,) * (n - len(b)))


def is_squarefree(f: IntPolynomial) -> bool:
    return poly_gcd(f, f.derivative()).degree <= 0


def totient(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by exact division of x^n - 1."""
    f = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
    for k in range(1, n):
        if n % k == 0:
            f = exact_quotient(f, cyclotomic(k))
    return f


def strip_cyclotomic(f: IntPolynomial) -> Tuple[IntPolynomial, List[Tuple[int, int]]]:
    """Divide out every cyclotomic factor; returns (rest, [(n, multiplicity)])."""
    found = []
    d = f.degree
    n = 1
    # phi(n) >= sqrt(n/2), so n <= 2 d^2 covers every cyclotomic of degree <= d
    while n <= max(2 * d * d, 2):
        if totient(n) <= f.degree:
            phi = cyclotomic(n)
            mult = 0
            while f.degree >= phi.degree:
                q = exact_quotient(f, phi)
                if q is None:
                    break
                f, mult = q, mult + 1
            if mult:
                found.append((n, mult))
        n += 1
    return f, found


# -- irreducibility -------------------------------------------------------------


def _small_primes(limit: int = 400) -> List[int]:
    sieve = [True] * (limit + 1)
    sieve[0] = sieve[1] = False
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = [False] * len(sieve[i * i :: i])
    return [i for i, v in enumerate(sieve) if v]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _p_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _p_mod(a: List[int], b: List[int], p: int) -> List[int]:
    a = a[:]
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        t = a[-1] * inv % p
        k = len(a) - 1 - db
        for i, c in enumerate(b):
            a[i + k] = (a[i + k] - t * c) % p
        _p_trim(a)
    return a


def _p_div(a: List[int], b: List[int], p: int) -> List[int]:
    a = a[:]
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        t = a[-1] * inv % p
        k = len(a) - 1 - db
        q[k] = t
        for i, c in enumerate(b):
            a[i + k] = (a[i + k] - t * c) % p
        _p_trim(a)
    return _p_trim(q)


def _p_gcd(a: List[int], b: List[int], p: int) -> List[int]:
    while b:
        a, b = b, _p_mod(a, b, p)
    return a


def _p_mulmod(a: List[int], b: List[int], m: List[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _p_mod(_p_trim(out), m, p)


def _p_powmod(base: List[int], e: int, m: List[int], p: int) -> List[int]:
    result = [1]
    base = _p_mod(base, m, p)
    while e:
        if e & 1:
            result = _p_mulmod(result, base, m, p)
        base = _p_mulmod(base, base, m, p)
        e >>= 1
    return result


def factor_degrees_mod_p(f: IntPolynomial, p: int) -> List[int]:
    """Degrees of the irreducible factors of f mod p (f squarefree mod p, p not dividing lead)."""
    g = _p_trim([a % p for a in f.coeffs])
    degrees: List[int] = []
    h = [0, 1]
    k = 0
    while len(g) - 1 >= 2 * (k + 1):
        k += 1
        h = _p_powmod(h, p, g, p)
        hx = h + [0] * max(0, 2 - len(h))
        hx = hx[:]
        hx[1] = (hx[1] - 1) % p
        d = _p_gcd(g[:], _p_trim(hx), p)
        dd = len(d) - 1
        if dd > 0:
            degrees.extend([k] * (dd // k))
            g = _p_div(g, d, p)
            h = _p_mod(h, g, p)
    if len(g) - 1 > 0:
        degrees.append(len(g) - 1)
    return degrees


def _subset_sums(degs: List[int]) -> set:
    sums = {0}
    for x in degs:
        sums |= {s + x for s in sums}
    return sums


def is_irreducible(f: IntPolynomial, max_primes: int = 12) -> bool:
    """Irreducibility over Q of a primitive integer polynomial."""
    if f.is_zero:
        raise DomainError("irreducibility of the zero polynomial")
    if f.content() != 1:
        raise DomainError("is_irreducible expects a primitive polynomial")
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    if f.constant == 0:
        return False
    disc = discriminant_exact(f)
    if disc == 0:
        return False
    possible = set(range(1, d))
    used = 0
    for p in _small_primes():
        if (f.leading * disc) % p == 0:
            continue
        sums = _subset_sums(factor_degrees_mod_p(f, p))
        possible &= sums
        used += 1
        if not possible:
            return True
        if used >= max_primes:
            break
    return _root_subset_factor(f, sorted(k for k in possible if k <= d // 2)) is None


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [i for i in range(1, int(n**0.5) + 1) if n % i == 0]
    return sorted(set(small + [n // i for i in small]))


def _root_subset_factor(f: IntPolynomial, sizes: List[int]) -> Optional[IntPolynomial]:
    """Search for an integer factor among products of root subsets.

    Every factor of a squarefree f is c * prod_{a in S}(x - a) for a root subset
    S and a positive divisor c of lead(f); each candidate that rounds to an
    integer polynomial is confirmed by exact division.
    """
    from .roots import find_roots

    if not sizes:
        return None
    d = f.degree
    if comb(d, d // 2) > 20000:
        raise DomainError(f"exhaustive factor search not supported at degree {d}")
    rs = find_roots(f)
    ctx = rs.ctx
    zs = [r.value for r in rs.roots]
    divs = _divisors(f.leading)
    for k in sizes:
        for subset in combinations(range(d), k):
            prod = [ctx.mpc(1)]
            for i in subset:
                nxt = [ctx.mpc(0)] * (len(prod) + 1)
                for j, c in enumerate(prod):
                    nxt[j + 1] += c
                    nxt[j] -= c * zs[i]
                prod = nxt
            if any(abs(c.imag) > 1e-6 * (1 + abs(c)) for c in prod):
                continue
            for c in divs:
                vals = [c * z.real for z in prod]
                ints = [int(ctx.nint(v)) for v in vals]
                if all(abs(v - n) < 1e-6 * (1 + abs(n)) for v, n in zip(vals, ints)):
                    g = IntPolynomial(tuple(ints))
                    if exact_quotient(f, g) is not None:
                        return g
    return None


# -- parsing / formatting ---------------------------------------------------------

_TERM = re.compile(r"([+-]?)(\d*)(\*?x(?:\^(\d+))?)?")


def parse_poly(text: str) -> IntPolynomial:
    """Parse ``x^3+2x^2+2`` style text or a JSON array of ascending coefficients."""
    s = text.strip()
    if not s:
        raise DomainError("empty polynomial text")
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise DomainError(f"bad JSON coefficient array: {exc}") from None
        if not isinstance(data, list) or not all(isinstance(a, int) for a in data):
            raise DomainError("coefficient array must contain integers")
        return IntPolynomial(tuple(data))
    if re.search(r"[\dx]\s+[\dx]", s):
        raise DomainError(f"missing operator in {text!r}")
    s = s.replace(" ", "").replace("**", "^")
    coeffs: dict = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) == "" and m.group(3) is None):
            raise DomainError(f"cannot parse polynomial near {s[pos:]!r}")
        if pos > 0 and not m.group(1):
            raise DomainError(f"missing operator near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3) is None:
            e = 0
        else:
            e = int(m.group(4)) if m.group(4) else 1
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
    n = max(coeffs) + 1
    return IntPolynomial(tuple(coeffs.get(i, 0) for i in range(n)))


def format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        a = coeffs[i]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if i == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + ("x" if i == 1 else f"x^{i}")
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += sign + body
    return out


# -- closed-form families -----------------------------------------------------------


class FamilyMember(NamedTuple):
    poly: IntPolynomial
    disc_abs: int
    measure: Optional[int] = None


def family_footnote1(p: int, d: int) -> FamilyMember:
    """(p+1) x^d - p with its closed-form |discriminant| and Mahler measure p+1."""
    if p < 2 or d < 2:
        raise DomainError("need p >= 2 and d >= 2")
    f = IntPolynomial((-p,) + (0,) * (d - 1) + (p + 1,))
    return FamilyMember(f, d**d * (p * (p + 1)) ** (d - 1), p + 1)


def family_eisenstein(p: int, d: int) -> FamilyMember:
    """x^d + p x^(d-1) + (-1)^(d+1) p, with |disc| = p^(d-1) (d^d + ((d-1)p)^(d-1))."""
    if not is_prime(p) or d < 2:
        raise DomainError("need p prime and d >= 2")
    const = p if (d + 1) % 2 == 0 else -p
    coeffs = [0] * (d + 1)
    coeffs[0] += const
    coeffs[d - 1] += p
    coeffs[d] = 1
    return FamilyMember(IntPolynomial(tuple(coeffs)), p ** (d - 1) * (d**d + ((d - 1) * p) ** (d - 1)))


JONES_PARAMETERS = {(3, 1), (4, 2), (5, 1), (7, 1), (9, 2)}


def family_jones(d: int, w: int, t: int) -> IntPolynomial:
    """x^d - 16 d (d t + w) x^(d-1) + d t + w."""
    if (d, w) not in JONES_PARAMETERS:
        raise DomainError(f"unsupported (d, w) = ({d}, {w})")
    if t < 1:
        raise DomainError("t must be >= 1")
    a = d * t + w
    coeffs = [0] * (d + 1)
    coeffs[0] = a
    coeffs[d - 1] = -16 * d * a
    coeffs[d] = 1
    return IntPolynomial(tuple(coeffs))
