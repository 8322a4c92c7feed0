"""The constructive polynomial generator: parameter rounding, the coefficient
lattice with prescribed derivative divisibilities, short-vector extraction,
normalization bookkeeping, and the congruence/Eisenstein twist that turns
n+1 short lattice vectors into n+1 independent irreducible polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Optional, Sequence

from .intpoly import IntPoly, content_primitive, eisenstein_check
from .linalg import bareiss_det, lll_reduce, solve_mod_prime
from .padic import INF, _as_p, is_prime, valuation

DEFAULT_ENUM_LIMIT = 10**7


class RoundingInfeasible(ValueError):
    """No admissible integer rounding of the xi parameters exists."""


class DegenerateSample(RuntimeError):
    """The generator hit a degenerate x (flagged, never silently dropped)."""


@dataclass(frozen=True)
class XiParams:
    """Rounded size parameters: xi_i = p^-b_i, Q = p^t, sum b_i = t(n+1)."""

    p: int
    t: int
    b: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.t < 0:
            raise ValueError("t must be >= 0")
        if len(self.b) < 2:
            raise ValueError("need n >= 1, i.e. at least two b entries")
        if any(bi < 0 for bi in self.b):
            raise ValueError("b entries must be >= 0")
        if sum(self.b) != self.t * len(self.b):
            raise ValueError(
                f"sum(b) = {sum(self.b)} must equal t(n+1) = {self.t * len(self.b)}"
            )

    @property
    def n(self) -> int:
        return len(self.b) - 1

    @property
    def Q(self) -> int:
        return self.p**self.t

    def xi(self, i: int) -> Fraction:
        return Fraction(1, self.p ** self.b[i])


def _ceil_log(p: int, value: Fraction) -> int:
    """Smallest integer e with p^e >= value (value > 0); may be negative."""
    e = 0
    if value > 1:
        power = Fraction(1)
        while power < value:
            power *= p
            e += 1
        return e
    power = Fraction(1)
    while power / p >= value:
        power /= p
        e -= 1
    return e


def _floor_log(p: int, value: Fraction) -> int:
    """Largest integer e with p^e <= value (value > 0); may be negative."""
    e = _ceil_log(p, value)
    return e if Fraction(p) ** e == value else e - 1


def round_params(xi: Sequence[Fraction], p, Q: Optional[Fraction] = None) -> XiParams:
    """Round positive rationals xi_i to powers p^-b_i with sum b_i = t(n+1).

    Each b_i is constrained by p^-b_i <= xi_i <= p^(-b_i+n); the sum condition
    picks t >= 1.  Returns the lexicographically smallest feasible b.  Raises
    RoundingInfeasible when no admissible b exists (reporting the deficit).
    """
    q = _as_p(p)
    n = len(xi) - 1
    if n < 1:
        raise ValueError("need at least two xi values")
    xs = [Fraction(x) for x in xi]
    if any(x <= 0 for x in xs):
        raise ValueError("xi values must be positive")
    # p^-b <= xi  <=>  b >= ceil(log_p 1/xi);   xi <= p^(n-b)  <=>  b <= n + floor(log_p 1/xi)
    lo = [max(0, _ceil_log(q, 1 / x)) for x in xs]
    hi = [n + _floor_log(q, 1 / x) for x in xs]
    if any(l > h for l, h in zip(lo, hi)):
        bad = [i for i, (l, h) in enumerate(zip(lo, hi)) if l > h]
        raise RoundingInfeasible(f"xi at indices {bad} admit no b in the sandwich")
    if Q is not None:
        prod = Fraction(1)
        for x in xs:
            prod *= x
        ratio = Fraction(Q) ** (n + 1) * prod
        tol = Fraction(q) ** ((n + 1) * (n + 1))
        if not (1 / tol <= ratio <= tol):
            raise RoundingInfeasible(
                f"prod(xi) = {prod} is not within sandwich tolerance of Q^-(n+1)"
            )
    mod = n + 1
    suffix_min = [0] * (mod + 1)
    suffix_max = [0] * (mod + 1)
    for i in range(n, -1, -1):
        suffix_min[i] = suffix_min[i + 1] + lo[i]
        suffix_max[i] = suffix_max[i + 1] + hi[i]
    # Greedy lexicographic minimum.  Suffix sums range over a full interval of
    # integers (each b_i spans consecutive values), so feasibility of a prefix
    # is just an interval-vs-multiple check.
    chosen: list[int] = []
    prefix = 0
    for i in range(n + 1):
        found = None
        for b in range(lo[i], hi[i] + 1):
            smin = prefix + b + suffix_min[i + 1]
            smax = prefix + b + suffix_max[i + 1]
            target = max(mod, ((smin + mod - 1) // mod) * mod)
            if target <= smax:
                found = b
                break
        if found is None:
            raise RoundingInfeasible(
                f"no admissible rounding: achievable sums [{suffix_min[0]}, {suffix_max[0]}]"
                f" miss every positive multiple of {mod}"
            )
        chosen.append(found)
        prefix += found
    if prefix % mod or prefix < mod:
        raise AssertionError("greedy rounding produced an invalid total")
    return XiParams(q, prefix // mod, tuple(chosen))


def taylor_matrix(x: int, n: int) -> list[list[int]]:
    """Unit upper-triangular T with T[i][j] = C(j, i) x^(j-i).

    Row i of T a gives the normalized derivative (1/i!) P^(i)(x) for the
    coefficient vector a; T(x)^-1 = T(-x).
    """
    return [
        [comb(j, i) * x ** (j - i) if j >= i else 0 for j in range(n + 1)]
        for i in range(n + 1)
    ]


@dataclass(frozen=True)
class GammaLattice:
    """Sublattice of Z^(n+1) of coefficient vectors with v_p((1/i!)P^(i)(x)) >= b_i.

    box_q is the semi-axis of the reference box for successive minima; lattices
    built from XiParams use Q = p^t.
    """

    basis: tuple[tuple[int, ...], ...]  # columns
    x: int
    p: int
    b: tuple[int, ...]
    box_q: int
    params: Optional[XiParams] = None

    @property
    def n(self) -> int:
        return len(self.b) - 1

    @property
    def covolume(self) -> int:
        out = 1
        for bi in self.b:
            out *= self.p**bi
        return out

    def hasse_values(self, vec: Sequence[int]) -> list[int]:
        """(1/i!)P^(i)(x) for i = 0..n, P having coefficient vector vec."""
        n = self.n
        x = self.x
        return [
            sum(comb(j, i) * x ** (j - i) * vec[j] for j in range(i, n + 1))
            for i in range(n + 1)
        ]

    def contains(self, vec: Sequence[int]) -> bool:
        return all(
            valuation(value, self.p) >= bi
            for value, bi in zip(self.hasse_values(vec), self.b)
        )

    def box_count_estimate(self, radius: int) -> int:
        est = 1
        for bi in self.b:
            est *= 2 * radius // self.p**bi + 1
        return est

    def _level_data(self):
        n = self.n
        x = self.x
        mods = [self.p**bi for bi in self.b]
        coef = [
            [comb(j, i) * x ** (j - i) if j >= i else 0 for j in range(n + 1)]
            for i in range(n + 1)
        ]
        return mods, coef

    def enumerate_box(self, radius: int, include_zero: bool = False) -> Iterator[tuple[int, ...]]:
        """All lattice vectors with sup-norm <= radius, in deterministic order.

        Descends from a_n to a_0; at each level the congruence
        a_i = -sum_(j>i) C(j,i) x^(j-i) a_j  mod p^b_i restricts the choices,
        so the work is proportional to the number of points delivered.
        """
        n = self.n
        mods, coef = self._level_data()
        vec = [0] * (n + 1)

        def rec(i: int) -> Iterator[tuple[int, ...]]:
            if i < 0:
                point = tuple(vec)
                if include_zero or any(point):
                    yield point
                return
            s = sum(coef[i][j] * vec[j] for j in range(i + 1, n + 1))
            m = mods[i]
            r = (-s) % m
            start = -radius + ((r + radius) % m)
            for a in range(start, radius + 1, m):
                vec[i] = a
                yield from rec(i - 1)
            vec[i] = 0

        yield from rec(n)

    def half_box_points(self, radius: int) -> list[tuple[int, ...]]:
        """Nonzero lattice vectors with sup-norm <= radius, one per +-v pair.

        The canonical representative has its highest-index nonzero coordinate
        positive.  Collected eagerly (faster than the generator) for the
        successive-minima search.
        """
        n = self.n
        mods, coef = self._level_data()
        vec = [0] * (n + 1)
        out: list[tuple[int, ...]] = []
        append = out.append

        def rec(i: int, all_zero_above: bool):
            m = mods[i]
            s = 0
            for j in range(i + 1, n + 1):
                if vec[j]:
                    s += coef[i][j] * vec[j]
            r = (-s) % m
            lo = 0 if all_zero_above else -radius
            start = lo + ((r - lo) % m)
            if i == 0:
                for a in range(start, radius + 1, m):
                    if a or not all_zero_above:
                        vec[0] = a
                        append(tuple(vec))
                vec[0] = 0
                return
            for a in range(start, radius + 1, m):
                vec[i] = a
                rec(i - 1, all_zero_above and a == 0)
            vec[i] = 0

        rec(n, True)
        return out


def congruence_lattice(x: int, p: int, b: Sequence[int], box_q: Optional[int] = None,
                       params: Optional[XiParams] = None) -> GammaLattice:
    """Lattice of coefficient vectors with v_p((1/i!)P^(i)(x)) >= b_i, general b.

    The basis is T(-x) diag(p^b_i): column i solves the congruence system with
    right-hand side p^b_i e_i.  Covolume and per-column membership are
    re-verified by direct computation rather than trusted by construction.
    """
    b = tuple(int(bi) for bi in b)
    if any(bi < 0 for bi in b) or len(b) < 2:
        raise ValueError("b must be nonnegative with n >= 1")
    n = len(b) - 1
    x_red = x % p ** max(b) if max(b) > 0 else 0
    t_inv = taylor_matrix(-x_red, n)
    cols = []
    for i in range(n + 1):
        scale = p ** b[i]
        cols.append(tuple(t_inv[r][i] * scale for r in range(n + 1)))
    lat = GammaLattice(tuple(cols), x_red, p, b,
                       box_q if box_q is not None else p ** max(b), params)
    det = bareiss_det([[cols[c][r] for c in range(n + 1)] for r in range(n + 1)])
    if abs(det) != lat.covolume:
        raise AssertionError("basis determinant does not match covolume")
    for col in cols:
        if not lat.contains(col):
            raise AssertionError("basis column fails lattice membership")
    return lat


def build_gamma(x: int, params: XiParams) -> GammaLattice:
    """The generator's lattice: covolume p^(t(n+1)) = Q^(n+1), box semi-axis Q."""
    return congruence_lattice(x, params.p, params.b, params.Q, params)


class _RankTracker:
    """Incremental exact rank via rational row elimination."""

    def __init__(self, dim: int):
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []
        self.dim = dim

    def try_add(self, vec: Sequence[int]) -> bool:
        row = [Fraction(v) for v in vec]
        for piv, r in zip(self.pivots, self.rows):
            if row[piv]:
                f = row[piv] / r[piv]
                row = [a - f * b for a, b in zip(row, r)]
        for j, val in enumerate(row):
            if val:
                self.rows.append(row)
                self.pivots.append(j)
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def _sign_normalize(vec: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical representative of {v, -v}: highest-index nonzero entry positive."""
    for v in reversed(vec):
        if v > 0:
            return vec
        if v < 0:
            return tuple(-a for a in vec)
    return vec


@dataclass(frozen=True)
class ShortVectors:
    """n+1 independent lattice vectors of small sup-norm; c0 = max norm / Q."""

    vectors: tuple[tuple[int, ...], ...]
    c0: Fraction
    method: str


def _greedy_minima(points: list[tuple[int, tuple[int, ...]]], dim: int, want: int):
    tracker = _RankTracker(dim)
    chosen = []
    for norm, vec in points:
        if tracker.try_add(vec):
            chosen.append((norm, vec))
            if len(chosen) == want:
                break
    return chosen


def _reduced_vectors(lat: GammaLattice) -> list[tuple[int, ...]]:
    """LLL-reduced basis vectors, membership re-verified exactly."""
    reduced = [tuple(v) for v in lll_reduce([list(col) for col in lat.basis])]
    for v in reduced:
        if not lat.contains(v):
            raise AssertionError("reduced vector fails membership re-verification")
    return reduced


def _max_abs(vec: tuple[int, ...]) -> int:
    return max(abs(v) for v in vec)


def _exact_minima_search(lat: GammaLattice, want: int, enum_limit: int):
    """Grow the box radius until a greedy pass finds `want` independent vectors.

    The greedy over all points of sup-norm <= R returns the exact successive
    minima whenever it succeeds (every shorter candidate was enumerated).
    Returns None when the box would exceed enum_limit points first.
    """
    n = lat.n
    radius = 1
    while lat.box_count_estimate(radius) <= enum_limit:
        pts = sorted((_max_abs(v), v) for v in lat.half_box_points(radius))
        chosen = _greedy_minima(pts, n + 1, want)
        if len(chosen) == want:
            return chosen
        radius *= 2
    return None


def short_vectors(lat: GammaLattice, enum_limit: int = DEFAULT_ENUM_LIMIT) -> ShortVectors:
    """Find n+1 independent lattice vectors of small sup-norm.

    Exhaustive enumeration with a growing radius yields the exact successive
    minima (ties broken by (sup-norm, lexicographic order) on canonical sign
    representatives); when the box would exceed enum_limit points, the
    LLL-reduced basis is returned after exact membership re-verification.
    """
    n = lat.n
    Q = lat.box_q
    chosen = _exact_minima_search(lat, n + 1, enum_limit)
    if chosen is not None:
        vectors = tuple(v for _, v in chosen)
        c0 = Fraction(max(norm for norm, _ in chosen), Q)
        return ShortVectors(vectors, c0, "enumeration")
    reduced = _reduced_vectors(lat)
    pts = sorted(
        {(_max_abs(v), _sign_normalize(v)) for v in reduced},
        key=lambda item: (item[0], item[1]),
    )
    chosen = _greedy_minima(pts, n + 1, n + 1)
    if len(chosen) != n + 1:
        raise AssertionError("LLL basis lost independence")
    vectors = tuple(v for _, v in chosen)
    c0 = Fraction(max(norm for norm, _ in chosen), Q)
    return ShortVectors(vectors, c0, "lll")


def successive_minima(lat: GammaLattice, count: Optional[int] = None,
                      enum_limit: int = DEFAULT_ENUM_LIMIT) -> list[Fraction]:
    """Exact successive minima of the sup-norm box of semi-axis Q on the lattice."""
    n = lat.n
    want = count if count is not None else n + 1
    chosen = _exact_minima_search(lat, want, enum_limit)
    if chosen is None:
        raise RuntimeError("successive minima enumeration exceeds limit")
    return [Fraction(norm, lat.box_q) for norm, _ in chosen]


# --- normalization bookkeeping ----------------------------------------------


@dataclass(frozen=True)
class NormalizationCertificate:
    k: int
    lhs_exponent: Fraction  # log_p of prod_(i<k) d |g_i|_p
    rhs_exponent: Fraction  # log_p of the certified lower bound
    ok: bool


@dataclass(frozen=True)
class Normalization:
    """Exact renormalization data: |g_i|_p = p^g_exponents[i], d = p^d_exponent.

    Satisfies d^(n+1) prod |g_i|_p = 1 exactly, and carries the partial-product
    lower-bound certificates used by the non-divergence argument.
    """

    mode: str
    params: XiParams
    delta_exponent: int  # delta = p^-delta_exponent
    c2_exponent: int  # C2 = p^c2_exponent (even), pinch mode only
    i_pinch: Optional[int]
    v: Fraction
    g_exponents: tuple[int, ...]
    d_exponent: int
    certificates: tuple[NormalizationCertificate, ...]

    @property
    def d(self) -> Fraction:
        p = self.params.p
        e = self.d_exponent
        return Fraction(p**e) if e >= 0 else Fraction(1, p**-e)

    def g_mag(self, i: int) -> Fraction:
        p = self.params.p
        e = self.g_exponents[i]
        return Fraction(p**e) if e >= 0 else Fraction(1, p**-e)


def normalization(params: XiParams, mode: str, delta: Fraction,
                  c2: Optional[int] = None, i_pinch: Optional[int] = None,
                  v: Optional[Fraction] = None) -> Normalization:
    """Build the exact g_i / d renormalization for either mode.

    mode "height-floor": |g_i|_p = delta/xi_i, d = 1/(delta Q).
    mode "derivative-pinch": index i_pinch gets the extra factor
    delta^(2(n+1)) C2^-(n+1); |g_i|_p = delta/(delta_i xi_i), d = delta/(C2 Q).
    Both satisfy d^(n+1) prod |g_i|_p = 1 exactly.
    """
    p, t, b, n = params.p, params.t, params.b, params.n
    if t < 1:
        raise ValueError("normalization needs Q = p^t > 1")
    if b[-1] != 0 or any(b[i] < b[i + 1] for i in range(n)):
        raise ValueError("normalization requires xi_0 <= ... <= xi_n = 1 (b non-increasing, b_n = 0)")
    delta_e = _power_of_p_exponent(delta, p)
    if delta_e is None or delta_e >= 0:
        raise ValueError("delta must be a power of p strictly below 1")
    dv = -delta_e  # delta = p^-dv with dv >= 1
    if v is None:
        v = min(Fraction(1), Fraction(b[0], t) - 1)
    v = Fraction(v)
    if not 0 < v <= 1:
        raise ValueError(f"need 0 < v <= 1 (xi_0 <= Q^-(1+v)); got v = {v}")
    if Fraction(b[0], t) < 1 + v:
        raise ValueError("xi_0 > Q^-(1+v): b_0 < t(1+v)")

    if mode == "height-floor":
        g_exp = tuple(bi - dv for bi in b)
        d_exp = dv - t
        c2_exp = 0
        # certified floor: prod_(i<k) d|g_i|_p >= Q^v
        rhs_exp = Fraction(t) * v
    elif mode == "derivative-pinch":
        if i_pinch is None or not 0 <= i_pinch <= n:
            raise ValueError("pinch mode needs i_pinch in [0, n]")
        if c2 is None:
            raise ValueError("pinch mode needs C2")
        c2_exp = _power_of_p_exponent(Fraction(c2), p)
        if c2_exp is None or c2_exp < 0 or c2_exp % 2:
            raise ValueError("C2 must be a power of p^2, at least 1")
        g_exp = tuple(
            (bi - dv) if i != i_pinch
            else bi + dv * (2 * (n + 1) - 1) + c2_exp * (n + 1)
            for i, bi in enumerate(b)
        )
        # d C2 Q = R = delta, so d = delta / (C2 Q)
        d_exp = -dv - c2_exp - t
        # certified floor: prod_(i<k) d|g_i|_p >= Q^v delta^(4n+2) C2^(-2n-2)
        rhs_exp = Fraction(t) * v - dv * (4 * n + 2) - c2_exp * (2 * n + 2)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    if (n + 1) * d_exp + sum(g_exp) != 0:
        raise AssertionError("normalization identity d^(n+1) prod|g_i|_p = 1 failed")

    certs = []
    lhs = Fraction(0)
    for k in range(1, n + 1):
        lhs += d_exp + g_exp[k - 1]
        certs.append(NormalizationCertificate(k, lhs, rhs_exp, lhs >= rhs_exp))
    return Normalization(mode, params, dv, c2_exp if mode == "derivative-pinch" else 0,
                         i_pinch if mode == "derivative-pinch" else None, v,
                         g_exp, d_exp, tuple(certs))


def _power_of_p_exponent(value: Fraction, p: int) -> Optional[int]:
    """The exact exponent e with value = p^e, or None if value is no p power."""
    value = Fraction(value)
    if value <= 0:
        return None
    num, den = value.numerator, value.denominator
    if num == 1 and den > 1:
        e = valuation(den, p)
        return -e if p**e == den else None
    if den == 1:
        if num == 1:
            return 0
        e = valuation(num, p)
        return e if p**e == num else None
    return None


# --- the Eisenstein twist and the full pipeline ------------------------------


def admissible_primes(m: int, p) -> Iterator[int]:
    """All primes q with m < q < 4m and q != p, ascending."""
    if m < 1:
        raise ValueError("m must be >= 1")
    pp = _as_p(p)
    for q in range(m + 1, 4 * m):
        if q != pp and is_prime(q):
            yield q


def choose_q(m: int, p) -> int:
    """Smallest prime q with m < q < 4m and q != p (exists by Bertrand)."""
    for q in admissible_primes(m, p):
        return q
    raise AssertionError(f"no prime in ({m}, {4*m}) differing from {p}")


@dataclass(frozen=True)
class TwistResult:
    polys_raw: tuple[IntPoly, ...]
    etas: tuple[tuple[int, ...], ...]
    t_vec: tuple[int, ...]
    q: int
    columns: tuple[tuple[int, ...], ...]  # the A columns the twist combined


def eisenstein_twist(columns: Sequence[Sequence[int]], q: int) -> TwistResult:
    """Combine lattice vectors into polynomials with Eisenstein pattern at q.

    Solves A t = (0,...,0,1) mod q, then for each l builds
    eta_l = t + q gamma_l so that A eta_l = s + q r_l mod q^2, which forces
    a_i = 0 mod q (i < n), a_n = 1 mod q and a_0 != 0 mod q^2.
    """
    dim = len(columns)
    n = dim - 1
    rows = [[columns[c][r] for c in range(dim)] for r in range(dim)]
    det = bareiss_det(rows)
    if det % q == 0:
        raise ValueError(f"q = {q} divides det A; re-choose q")
    s = [0] * n + [1]
    t_vec = solve_mod_prime(rows, s, q)
    a_t = [sum(rows[r][c] * t_vec[c] for c in range(dim)) for r in range(dim)]
    u = [(a_t[r] - s[r]) // q for r in range(dim)]
    if any((a_t[r] - s[r]) % q for r in range(dim)):
        raise AssertionError("A t != s mod q")
    etas = []
    polys = []
    for l in range(dim):
        r_l = [1] * (dim - l) + [0] * l
        rhs = [(-u[r] + r_l[r]) % q for r in range(dim)]
        gamma = solve_mod_prime(rows, rhs, q)
        eta = tuple(t_vec[c] + q * gamma[c] for c in range(dim))
        coeffs = [sum(rows[r][c] * eta[c] for c in range(dim)) for r in range(dim)]
        poly = IntPoly(coeffs)
        if poly.degree != n:
            raise DegenerateSample(f"twist output degenerated to degree {poly.degree}")
        if not eisenstein_check(poly, q):
            raise AssertionError("twist output violates the Eisenstein pattern")
        etas.append(eta)
        polys.append(poly)
    return TwistResult(tuple(polys), tuple(etas), tuple(t_vec), q,
                       tuple(tuple(col) for col in columns))


@dataclass(frozen=True)
class PolyCertificate:
    """Per-polynomial verification record for one generator output."""

    coeffs: tuple[int, ...]
    content: int
    degree_ok: bool
    eisenstein_ok: bool
    membership_margins: tuple  # v_p((1/i!)P^(i)(x)) - b_i, entries int or INF
    membership_ok: bool
    height: int
    height_ok: bool

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.eisenstein_ok and self.membership_ok and self.height_ok


@dataclass(frozen=True)
class GeneratorOutput:
    x: int
    params: XiParams
    q: int
    m: int
    c0: Fraction
    c2: int
    method: str
    polys: tuple[IntPoly, ...]
    certificates: tuple[PolyCertificate, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.certificates)

    @property
    def delta0_exponent(self):
        """Largest membership margin: empirical delta_0 = p^-margin."""
        worst = 0
        for cert in self.certificates:
            for margin in cert.membership_margins:
                if margin is INF:
                    return INF
                worst = max(worst, margin)
        return worst


def smallest_c2(p: int, lower: Fraction) -> int:
    """Smallest power of p^2 that is >= lower (and >= 1)."""
    c2 = 1
    while c2 < lower:
        c2 *= p * p
    return c2


GENERATE_ENUM_LIMIT = 100_000


def generate(x: int, params: XiParams, c2_hint: Optional[int] = None,
             enum_limit: int = GENERATE_ENUM_LIMIT) -> GeneratorOutput:
    """Full pipeline: lattice, short vectors, index m, prime q, twist, verify.

    Every claimed property of the outputs (degree, primitivity, Eisenstein
    pattern, lattice membership, height ceiling C2 Q) is re-verified by direct
    computation; degenerate samples raise DegenerateSample.
    """
    p = params.p
    n = params.n
    Q = params.Q
    lat = build_gamma(x, params)
    sv = short_vectors(lat, enum_limit)
    rows = [[sv.vectors[c][r] for c in range(n + 1)] for r in range(n + 1)]
    det = abs(bareiss_det(rows))
    if det == 0:
        raise DegenerateSample("short vectors not independent")
    m, rem = divmod(det, lat.covolume)
    if rem:
        raise AssertionError("sublattice determinant is not a multiple of cov(Gamma)")
    c2 = smallest_c2(p, sv.c0 * ((4 * m) ** 2 - 1))
    if c2_hint is not None:
        c2 = max(c2, smallest_c2(p, Fraction(c2_hint)))

    last_error: Optional[DegenerateSample] = None
    for q in admissible_primes(m, p):
        try:
            twist = eisenstein_twist(sv.vectors, q)
            prim_polys, certs = _verify_twist(lat, twist, params, q, c2)
        except DegenerateSample as exc:
            last_error = exc  # p divided a content, or outputs became dependent
            continue
        return GeneratorOutput(
            x=lat.x, params=params, q=q, m=m, c0=sv.c0, c2=c2, method=sv.method,
            polys=tuple(prim_polys), certificates=tuple(certs),
        )
    raise last_error if last_error is not None else DegenerateSample("no admissible q")


def _pad(coeffs: tuple[int, ...], dim: int) -> tuple[int, ...]:
    return coeffs + (0,) * (dim - len(coeffs))


def _certify(lat: GammaLattice, prim: IntPoly, content: int, q: int, c2: int) -> PolyCertificate:
    params = lat.params
    p = params.p
    margins = []
    for value, bi in zip(lat.hasse_values(_pad(prim.coeffs, params.n + 1)), params.b):
        vv = valuation(value, p)
        margins.append(vv if vv is INF else vv - bi)
    return PolyCertificate(
        coeffs=prim.coeffs,
        content=content,
        degree_ok=prim.degree == params.n,
        eisenstein_ok=eisenstein_check(prim, q),
        membership_margins=tuple(margins),
        membership_ok=all(mg is INF or mg >= 0 for mg in margins),
        height=prim.height,
        height_ok=prim.height <= c2 * params.Q,
    )


def _verify_twist(lat: GammaLattice, twist: TwistResult, params: XiParams,
                  q: int, c2: int) -> tuple[list[IntPoly], list[PolyCertificate]]:
    """Primitivize and certify the twist outputs, repairing degenerate ones.

    Adding q^2 times a lattice column to an output preserves both defining
    congruences (so the Eisenstein pattern survives) and lattice membership;
    it is used to steer the content away from multiples of p (which would
    break the valuation upper bounds after dividing through) and to restore
    linear independence.  A content coprime to p leaves all p-valuations
    unchanged, so membership of the primitive part is then automatic.
    """
    p = params.p
    n = params.n
    dim = n + 1
    prim_polys: list[IntPoly] = []
    certs: list[PolyCertificate] = []
    tracker = _RankTracker(dim)
    for poly in twist.polys_raw:
        if not lat.contains(_pad(poly.coeffs, dim)):
            raise AssertionError("raw twist output is not a lattice member")
        candidates = [tuple(poly.coeffs)]
        for col in twist.columns:
            for sign in (1, -1):
                candidates.append(tuple(
                    a + sign * q * q * b for a, b in zip(_pad(poly.coeffs, dim), col)
                ))
        accepted = None
        for cand_coeffs in candidates:
            cand = IntPoly(cand_coeffs)
            if cand.degree != n:
                continue
            content, prim = content_primitive(cand)
            if content % p == 0:
                # dividing by the content shifts valuations; accept only if the
                # bounds survive with slack
                if not _certify(lat, prim, content, q, c2).membership_ok:
                    continue
            if not tracker.try_add(_pad(prim.coeffs, dim)):
                continue
            accepted = (content, prim)
            break
        if accepted is None:
            raise DegenerateSample(
                "no q^2-shift yields a primitive independent output with valid bounds"
            )
        content, prim = accepted
        prim_polys.append(prim)
        certs.append(_certify(lat, prim, content, q, c2))

    final_rows = [[_pad(prim_polys[c].coeffs, dim)[r] for c in range(dim)] for r in range(dim)]
    if bareiss_det(final_rows) == 0:
        raise AssertionError("rank tracker accepted a dependent set")
    return prim_polys, certs


# --- presets ------------------------------------------------------------------


def preset_theorem2(n: int, p: int, t: int, theta: Fraction) -> XiParams:
    """Separation-mode parameters: xi_0 = Q^-(n+1)+theta, xi_1 = Q^-theta, rest 1.

    b_1 is t*theta rounded to the nearest integer (ties down); b_0 absorbs the
    remainder so that sum b_i = t(n+1) holds exactly.
    """
    theta = Fraction(theta)
    if theta < 0:
        raise ValueError("theta must be >= 0")
    if n < 2:
        raise ValueError("n must be >= 2")
    target = t * theta
    b1 = int(target) + (1 if target - int(target) > Fraction(1, 2) else 0)
    b0 = t * (n + 1) - b1
    if b1 < 0 or b0 < b1:
        raise ValueError(f"theta = {theta} leaves no admissible ordering for t = {t}")
    return XiParams(p, t, (b0, b1) + (0,) * (n - 1))


def preset_theorem3(n: int, p: int, t: int, nu: Fraction) -> XiParams:
    """Discriminant-mode parameters from the optimal d_1, d_2 = ... = d_n split.

    Targets b_j = t theta_j with theta_(j-1) - theta_j = d_j,
    d_1 = n+1 - (n+2) nu / n and d_j = 2 nu / (n(n-1)) for j >= 2; the integer
    b minimizes the max deviation among non-increasing vectors with b_n = 0
    and sum b = t(n+1) (ties: lexicographically smallest).
    """
    nu = Fraction(nu)
    if not 0 <= nu <= n - 1:
        raise ValueError(f"nu must lie in [0, {n-1}]")
    if n < 2:
        raise ValueError("n must be >= 2")
    d = [Fraction(0)] * (n + 1)
    d[1] = Fraction(n + 1) - Fraction((n + 2) * nu, n)
    for j in range(2, n + 1):
        d[j] = Fraction(2 * nu, n * (n - 1))
    thetas = [Fraction(0)] * (n + 1)
    for j in range(n - 1, -1, -1):
        thetas[j] = thetas[j + 1] + d[j + 1]
    targets = [t * th for th in thetas]
    total = t * (n + 1)

    best: Optional[tuple] = None

    def rec(idx: int, remaining: int, prev: int, acc: list[int]):
        nonlocal best
        if idx == n:
            if remaining != 0:
                return
            cand = acc + [0]
            dev = max(abs(Fraction(bj) - tj) for bj, tj in zip(cand, targets))
            key = (dev, tuple(cand))
            if best is None or key < best[0]:
                best = (key, tuple(cand))
            return
        # b[idx] ranges over [ceil(remaining/(n-idx)) ... min(prev, remaining)]
        lo = -(-remaining // (n - idx))
        for bj in range(min(prev, remaining), lo - 1, -1):
            rec(idx + 1, remaining - bj, bj, acc + [bj])

    rec(0, total, total, [])
    if best is None:
        raise RoundingInfeasible("no monotone integer b matches the theorem-3 targets")
    return XiParams(p, t, best[1])


def expand_preset(descr: dict) -> XiParams:
    """Expand a JSON preset descriptor {mode, n, p, t, theta?, nu?} to XiParams."""
    mode = descr.get("mode")
    try:
        n = int(descr["n"])
        p = int(descr["p"])
        t = int(descr["t"])
    except KeyError as exc:
        raise ValueError(f"preset descriptor missing field {exc}") from exc
    if mode == "theorem2":
        if "theta" not in descr:
            raise ValueError("theorem2 preset needs theta")
        return preset_theorem2(n, p, t, Fraction(str(descr["theta"])))
    if mode == "theorem3":
        if "nu" not in descr:
            raise ValueError("theorem3 preset needs nu")
        return preset_theorem3(n, p, t, Fraction(str(descr["nu"])))
    raise ValueError(f"unknown preset mode {mode!r}")
