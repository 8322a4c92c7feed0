"""Exact integer polynomial arithmetic.

Coefficients are arbitrary-precision integers stored low-to-high.  The
discriminant goes through a fraction-free Sylvester determinant, so every
value this module produces is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt, lcm
from typing import Iterable, Optional

from .linalg import bareiss_det
from .padic import is_prime

_SMALL_PRIMES = tuple(q for q in range(2, 101) if is_prime(q))
_EISENSTEIN_SHIFTS = (0, 1, -1, 2, -2, 3, -3)


class IntPoly:
    """Integer polynomial a_0 + a_1 x + ... + a_n x^n with a_n != 0."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = list(int(a) for a in coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def from_string(cls, text: str) -> "IntPoly":
        """Parse the canonical encoding: comma-separated a_0,...,a_n in decimal."""
        return cls(int(part) for part in text.split(","))

    def to_string(self) -> str:
        if not self.coeffs:
            return "0"
        return ",".join(str(a) for a in self.coeffs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def height(self) -> int:
        return max((abs(a) for a in self.coeffs), default=0)

    @property
    def content(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no content")
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def hasse_derivative(self, i: int) -> "IntPoly":
        """The i-th derivative divided by i!, with integer coefficients C(j,i)*a_j."""
        if i < 0:
            raise ValueError("derivative order must be >= 0")
        if i == 0:
            return self
        return IntPoly(comb(j, i) * a for j, a in enumerate(self.coeffs[i:], start=i))

    def derivative(self) -> "IntPoly":
        return self.hasse_derivative(1)

    def shift(self, c: int) -> "IntPoly":
        """P(x + c), exact Taylor shift via synthetic division."""
        b = list(self.coeffs)
        n = len(b)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                b[j] += c * b[j + 1]
        return IntPoly(b)

    def __neg__(self):
        return IntPoly(-a for a in self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(
            (x + y for x, y in itertools.zip_longest(a, b, fillvalue=0))
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(other * a for a in self.coeffs)
        if self.is_zero or other.is_zero:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "IntPoly(0)"
        terms = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[j]
            if a == 0:
                continue
            sign = "-" if a < 0 else ("+" if terms else "")
            mag = abs(a)
            if j == 0:
                body = str(mag)
            else:
                xs = "x" if j == 1 else f"x^{j}"
                body = xs if mag == 1 else f"{mag}{xs}"
            terms.append(f"{sign}{body}" if not terms else f" {sign} {body}")
        return f"IntPoly({''.join(terms)})"


def content_primitive(poly: IntPoly) -> tuple[int, IntPoly]:
    """Split P = content * primitive with content > 0 and primitive of content 1."""
    if poly.is_zero:
        raise ValueError("zero polynomial has no content/primitive split")
    c = poly.content
    return c, IntPoly(a // c for a in poly.coeffs)


def sylvester_matrix(p: IntPoly, q: IntPoly) -> list[list[int]]:
    """Sylvester matrix of p and q (descending-coefficient convention)."""
    n, m = p.degree, q.degree
    if n < 0 or m < 0:
        raise ValueError("Sylvester matrix needs nonzero polynomials")
    size = n + m
    pd = list(reversed(p.coeffs))
    qd = list(reversed(q.coeffs))
    rows = []
    for i in range(m):
        rows.append([0] * i + pd + [0] * (size - i - n - 1))
    for i in range(n):
        rows.append([0] * i + qd + [0] * (size - i - m - 1))
    return rows


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Res(p, q) as an exact integer (Bareiss determinant of the Sylvester matrix)."""
    if p.degree + q.degree == 0:
        return 1
    return bareiss_det(sylvester_matrix(p, q))


def discriminant_coeffs(coeffs: tuple[int, ...]) -> int:
    """Discriminant from a raw low-to-high coefficient tuple (hot-loop entry).

    Same Sylvester/Bareiss route as discriminant(); the quadratic and cubic
    determinants are expanded inline because censuses call this millions of
    times.  Degree 1 has discriminant 1 (empty root-difference product).
    """
    n = len(coeffs) - 1
    if n < 1 or coeffs[n] == 0:
        raise ValueError("discriminant needs degree >= 1 with nonzero leading coefficient")
    if n == 1:
        return 1
    if n == 2:
        a0, a1, a2 = coeffs
        # det of [[a2,a1,a0],[2a2,a1,0],[0,2a2,a1]] expanded; D = -det/a2
        det = a2 * a1 * a1 - a1 * (2 * a2 * a1) + a0 * 4 * a2 * a2
        q, r = divmod(-det, a2)
        assert r == 0
        return q
    p = IntPoly(coeffs)
    res = resultant(p, p.derivative())
    q, r = divmod(res, coeffs[n])
    if r != 0:
        raise AssertionError("resultant not divisible by leading coefficient")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * q


def discriminant(poly: IntPoly) -> int:
    """D(P) = (-1)^(n(n-1)/2) Res(P, P') / a_n, exact."""
    return discriminant_coeffs(poly.coeffs)


def hadamard_bound(n: int, height: int) -> int:
    """Explicit B(n, H) with |D(P)| <= B for every degree-n P of height <= H.

    B = n^n (n+1)^(n-1) H^(2n-2): the Mahler-measure form of the Hadamard
    row-norm estimate for the Sylvester determinant, which keeps the exponent
    at 2n-2.
    """
    if n < 1 or height < 1:
        raise ValueError("hadamard_bound needs n >= 1 and height >= 1")
    return n**n * (n + 1) ** (n - 1) * height ** (2 * n - 2)


def eisenstein_check(poly: IntPoly, q: int) -> bool:
    """Eisenstein criterion at q: q | a_i for i < n, q does not divide a_n, q^2 does not divide a_0."""
    n = poly.degree
    if n < 1:
        raise ValueError("Eisenstein check needs degree >= 1")
    a = poly.coeffs
    if a[n] % q == 0:
        return False
    if any(a[i] % q for i in range(n)):
        return False
    return a[0] % (q * q) != 0


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, big = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                big.append(n // d)
        d += 1
    return small + big[::-1]


def rational_roots(poly: IntPoly) -> list[Fraction]:
    """All rational roots of a nonzero polynomial, via the rational root theorem."""
    if poly.is_zero:
        raise ValueError("zero polynomial")
    coeffs = poly.coeffs
    shift = 0
    while coeffs[shift] == 0:
        shift += 1
    roots = [Fraction(0)] if shift else []
    coeffs = coeffs[shift:]
    n = len(coeffs) - 1
    if n == 0:
        return roots
    a0, an = coeffs[0], coeffs[-1]
    for r in _divisors(a0):
        for s in _divisors(an):
            if gcd(r, s) != 1:
                continue
            for num in (r, -r):
                # integer test of P(num/s) = 0: sum a_i num^i s^(n-i)
                val = sum(a * num**i * s ** (n - i) for i, a in enumerate(coeffs))
                if val == 0:
                    roots.append(Fraction(num, s))
    return sorted(set(roots))


# --- polynomial arithmetic over F_l ---------------------------------------


def _ff_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _ff_mulmod(a: list[int], b: list[int], mod: list[int], l: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % l
    return _ff_rem(out, mod, l)


def _ff_rem(a: list[int], mod: list[int], l: int) -> list[int]:
    a = a[:]
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, l)
    while len(a) - 1 >= dm and _ff_trim(a):
        if not a:
            break
        f = a[-1] * inv_lead % l
        off = len(a) - 1 - dm
        for i, m in enumerate(mod):
            a[off + i] = (a[off + i] - f * m) % l
        _ff_trim(a)
    return a


def _ff_gcd(a: list[int], b: list[int], l: int) -> list[int]:
    a, b = _ff_trim(a[:]), _ff_trim(b[:])
    while b:
        a, b = b, _ff_rem(a, b, l)
        _ff_trim(b)
    if a:
        inv = pow(a[-1], -1, l)
        a = [x * inv % l for x in a]
    return a


def _ff_powmod_x(e: int, mod: list[int], l: int) -> list[int]:
    """x^e mod (mod, l) by binary exponentiation."""
    result = [1]
    base = _ff_rem([0, 1], mod, l)
    while e:
        if e & 1:
            result = _ff_mulmod(result, base, mod, l)
        base = _ff_mulmod(base, base, mod, l)
        e >>= 1
    return result


def poly_irreducible_mod(poly: IntPoly, l: int) -> bool:
    """True iff P mod l is irreducible of full degree over F_l (Rabin's test)."""
    n = poly.degree
    f = _ff_trim([a % l for a in poly.coeffs])
    if len(f) - 1 != n:
        return False  # degree dropped mod l; caller should pick l not dividing a_n
    if n == 1:
        return True
    deriv = _ff_trim([(j * a) % l for j, a in enumerate(f)][1:])
    if not deriv or len(_ff_gcd(f, deriv, l)) > 1:
        return False
    xq = _ff_powmod_x(l**n, f, l)
    x_minus = _ff_trim([(a - b) % l for a, b in itertools.zip_longest(xq, [0, 1], fillvalue=0)])
    if x_minus:
        return False
    n_primes = {r for r in range(2, n + 1) if n % r == 0 and is_prime(r)}
    for r in n_primes:
        xr = _ff_powmod_x(l ** (n // r), f, l)
        diff = _ff_trim([(a - b) % l for a, b in itertools.zip_longest(xr, [0, 1], fillvalue=0)])
        if len(_ff_gcd(f, diff, l)) > 1:
            return False
    return True


# --- Kronecker exhaustive factor search ------------------------------------


def poly_divmod_exact(num: IntPoly, den: IntPoly) -> Optional[IntPoly]:
    """num / den when den divides num exactly over Q, else None."""
    if den.is_zero:
        raise ZeroDivisionError
    if num.is_zero:
        return IntPoly(())
    if num.degree < den.degree:
        return None
    rem = [Fraction(a) for a in num.coeffs]
    dc = [Fraction(a) for a in den.coeffs]
    qlen = num.degree - den.degree + 1
    quo = [Fraction(0)] * qlen
    for k in range(qlen - 1, -1, -1):
        coeff = rem[k + den.degree] / dc[-1]
        quo[k] = coeff
        if coeff:
            for i, d in enumerate(dc):
                rem[k + i] -= coeff * d
    if any(rem):
        return None
    if any(f.denominator != 1 for f in quo):
        return None
    return IntPoly(int(f) for f in quo)


def kronecker_factor(poly: IntPoly) -> Optional[IntPoly]:
    """A nontrivial integer factor of a primitive polynomial, or None.

    Complete search by interpolation through divisor tuples; exponential in
    the factor degree, intended as the guaranteed fallback at desk scale.
    """
    n = poly.degree
    if n < 2:
        return None
    sample_pool = itertools.chain([0], (s * v for v in itertools.count(1) for s in (1, -1)))
    points: list[int] = []
    values: list[int] = []
    for x in sample_pool:
        val = poly(x)
        if val != 0:
            points.append(x)
            values.append(val)
        elif poly.degree >= 1:
            # x is an integer root; x - root is a factor.
            return IntPoly((-x, 1))
        if len(points) > n // 2:
            break
    for d in range(1, n // 2 + 1):
        xs = points[: d + 1]
        divisor_lists = []
        for j, v in enumerate(values[: d + 1]):
            divs = _divisors(v)
            if j == 0:
                divisor_lists.append(divs)  # sign-normalize: g(x_0) > 0
            else:
                divisor_lists.append([s * t for t in divs for s in (1, -1)])
        for choice in itertools.product(*divisor_lists):
            g = _interpolate_int(xs, choice)
            if g is None or g.degree < 1:
                continue
            if poly_divmod_exact(poly, g) is not None:
                return content_primitive(g)[1]
    return None


def _interpolate_int(xs: list[int], ys) -> Optional[IntPoly]:
    """Lagrange interpolation; None unless the result has integer coefficients."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i in range(k):
        num = [Fraction(1)]
        denom = Fraction(1)
        for j in range(k):
            if i == j:
                continue
            # multiply num by (x - xs[j])
            num = [Fraction(0)] + num
            for t in range(len(num) - 1):
                num[t] -= xs[j] * num[t + 1]
            denom *= xs[i] - xs[j]
        w = Fraction(ys[i]) / denom
        for t in range(len(num)):
            coeffs[t] += w * num[t]
    if any(f.denominator != 1 for f in coeffs):
        return None
    return IntPoly(int(f) for f in coeffs)


# --- irreducibility pipeline ------------------------------------------------


@dataclass(frozen=True)
class IrreducibilityResult:
    """Yes/no with a checkable certificate naming which stage decided."""

    irreducible: bool
    certificate: str
    detail: tuple = ()

    def __bool__(self) -> bool:
        return self.irreducible


def is_irreducible(poly: IntPoly) -> IrreducibilityResult:
    """Irreducibility over Q for a primitive polynomial of degree >= 1.

    Pipeline: rational-root test, Eisenstein scan (primes q <= 100, shifts
    |c| <= 3), irreducible-mod-l for the first ten primes not dividing a_n,
    then Kronecker exhaustive factor search as the complete fallback.
    """
    n = poly.degree
    if n < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if poly.content != 1:
        raise ValueError("polynomial must be primitive (content 1)")
    if n == 1:
        return IrreducibilityResult(True, "degree-1")
    if poly.coeffs[0] == 0:
        return IrreducibilityResult(False, "rational-root", (0, 1))
    if n == 2:
        # Reducible over Q iff the discriminant is a perfect square; this is
        # the linear-factor search in closed form.
        d = poly.coeffs[1] ** 2 - 4 * poly.coeffs[2] * poly.coeffs[0]
        if d >= 0 and isqrt(d) ** 2 == d:
            return IrreducibilityResult(False, "rational-root", ("sqrt-disc",))
        return IrreducibilityResult(True, "exhaustive-factor-search", ("linear-only",))
    roots = rational_roots(poly)
    if roots:
        r = roots[0]
        return IrreducibilityResult(False, "rational-root", (r.numerator, r.denominator))
    if n == 3:
        return IrreducibilityResult(True, "exhaustive-factor-search", ("linear-only",))
    for c in _EISENSTEIN_SHIFTS:
        shifted = poly.shift(c)
        for q in _SMALL_PRIMES:
            if eisenstein_check(shifted, q):
                return IrreducibilityResult(True, "eisenstein", (q, c))
    tried = 0
    for l in _SMALL_PRIMES:
        if poly.leading % l == 0:
            continue
        if poly_irreducible_mod(poly, l):
            return IrreducibilityResult(True, "irreducible-mod-l", (l,))
        tried += 1
        if tried >= 10:
            break
    factor = kronecker_factor(poly)
    if factor is not None:
        return IrreducibilityResult(False, "factor-found", factor.coeffs)
    return IrreducibilityResult(True, "exhaustive-factor-search")


# --- gcd / squarefree machinery over Q --------------------------------------


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Q with positive leading coefficient."""
    fa = [Fraction(x) for x in a.coeffs]
    fb = [Fraction(x) for x in b.coeffs]

    def trim(c):
        while c and c[-1] == 0:
            c.pop()
        return c

    fa, fb = trim(fa), trim(fb)
    while fb:
        # remainder of fa mod fb
        while len(fa) >= len(fb) and trim(fa):
            f = fa[-1] / fb[-1]
            off = len(fa) - len(fb)
            for i, x in enumerate(fb):
                fa[off + i] -= f * x
            trim(fa)
        fa, fb = fb, fa
    if not fa:
        return IntPoly(())
    denom = 1
    for f in fa:
        denom = lcm(denom, f.denominator)
    ints = [int(f * denom) for f in fa]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return IntPoly(ints)


def squarefree_part(poly: IntPoly) -> IntPoly:
    """Primitive squarefree polynomial with the same roots (ignoring multiplicity)."""
    if poly.degree < 1:
        raise ValueError("squarefree part needs degree >= 1")
    g = poly_gcd(poly, poly.derivative())
    if g.degree == 0:
        return content_primitive(poly)[1]
    quo = poly_divmod_exact(poly, g)
    assert quo is not None
    return content_primitive(quo)[1]


def squarefree_decomposition(poly: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun-style decomposition [(S_m, m), ...] with P = content * prod S_m^m."""
    if poly.degree < 1:
        raise ValueError("decomposition needs degree >= 1")
    p = content_primitive(poly)[1]
    out = []
    m = 1
    while p.degree >= 1:
        g = poly_gcd(p, p.derivative())
        if g.degree == 0:
            out.append((p, m))
            break
        s = poly_divmod_exact(p, g)  # product of distinct factors of p
        assert s is not None
        nxt = poly_divmod_exact(p, s)
        assert nxt is not None
        # factors appearing exactly once in p (multiplicity m overall):
        g2 = poly_gcd(s, nxt)
        once = poly_divmod_exact(s, g2)
        assert once is not None
        if once.degree >= 1:
            out.append((content_primitive(once)[1], m))
        p = nxt
        m += 1
    return out
