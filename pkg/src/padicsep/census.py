"""Exhaustive censuses over integer polynomials of bounded height.

Counts polynomials whose discriminant is divisible by large powers of p, or
whose conjugate roots are p-adically close, on exact thresholds; fits power
laws to the counts; and Monte-Carlo-estimates the measure of centers x whose
coefficient lattice admits unusually short vectors.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .intpoly import IntPoly, discriminant_coeffs, rational_roots
from .lattice import XiParams
from .padic import _as_p
from .roots import min_conjugate_separation

_WILSON_Z = 1.959963984540054  # 95% two-sided normal quantile
_SAMPLE_BLOCK = 512  # Monte-Carlo block size; fixed so results ignore worker count


@dataclass(frozen=True)
class CensusRecord:
    coeffs: tuple[int, ...]
    height: int
    disc: int
    vp_disc: Optional[int]  # None when disc = 0
    irreducible: Optional[bool]
    sep_val: Optional[Fraction]
    flag: str = ""


def poly_count(n: int, height_bound: int) -> int:
    """Total number of degree-n polynomials of height <= Q (both signs of a_n)."""
    return 2 * height_bound * (2 * height_bound + 1) ** n


def iter_coeffs(n: int, height_bound: int, an_lo: int = 1,
                an_hi: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Canonical coefficient tuples (a_0..a_n) with a_n in [an_lo, an_hi].

    Sign normalization a_n > 0: each polynomial stands for the pair {P, -P}.
    Deterministic order: a_n ascending, then a_(n-1), ..., then a_0.
    """
    q = height_bound
    hi = an_hi if an_hi is not None else q

    def rec(i: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if i < 0:
            yield tuple(acc)
            return
        for a in range(-q, q + 1):
            acc[i] = a
            yield from rec(i - 1, acc)

    for an in range(an_lo, hi + 1):
        acc = [0] * (n + 1)
        acc[n] = an
        yield from rec(n - 1, acc)


def _vp_int(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _is_square(d: int) -> bool:
    if d < 0:
        return False
    r = math.isqrt(d)
    return r * r == d


def _irreducible_cubic(coeffs: tuple[int, int, int, int]) -> bool:
    """Cubic irreducibility over Q: no rational root (linear factors only)."""
    if coeffs[0] == 0:
        return False
    from math import gcd

    g = gcd(gcd(abs(coeffs[0]), abs(coeffs[1])), gcd(abs(coeffs[2]), abs(coeffs[3])))
    prim = tuple(c // g for c in coeffs)
    return not rational_roots(IntPoly(prim))


def record_stream(n: int, height_bound: int, p, want_sep: bool = False,
                  an_lo: int = 1, an_hi: Optional[int] = None) -> Iterator[CensusRecord]:
    """CensusRecords in canonical order (library/demo entry; not the hot path)."""
    q = _as_p(p)
    for coeffs in iter_coeffs(n, height_bound, an_lo, an_hi):
        disc = discriminant_coeffs(coeffs)
        vpd = _vp_int(disc, q) if disc else None
        if n == 2:
            irr = disc != 0 and not _is_square(disc)
        elif n == 3:
            irr = disc != 0 and _irreducible_cubic(coeffs)
        else:
            irr = is_irreducible_for_census(coeffs)
        sep = None
        flag = ""
        if want_sep and disc != 0:
            if n == 2:
                sep = Fraction(vpd - 2 * _vp_int(coeffs[2], q), 2)
            else:
                sep = min_conjugate_separation(IntPoly(coeffs), q).val
            flag = "sep-exact"
        yield CensusRecord(coeffs, max(abs(c) for c in coeffs), disc, vpd, irr, sep, flag)


# --- discriminant census ------------------------------------------------------


def disc_threshold(p: int, height_bound: int, nu: Fraction, c_exp: int) -> int:
    """Smallest k with p^(k + c_exp) >= Q^(2 nu): membership is v_p(D) >= k."""
    nu = Fraction(nu)
    if nu == 0:
        return -c_exp
    a, d = nu.numerator, nu.denominator
    rhs = height_bound ** (2 * a)
    k = 0
    while p ** (k * d) < rhs:
        k += 1
    return k - c_exp


@dataclass(frozen=True)
class DiscCensusRow:
    n: int
    p: int
    height_bound: int
    nu: Fraction
    c_exp: int  # threshold constant C = p^c_exp
    threshold: int  # count requires v_p(D) >= threshold
    count_all: int
    count_irr: int
    flagged: int = 0


@dataclass(frozen=True)
class PrimePowerStat:
    """Distribution of (v_p(D), cofactor) for the almost-prime-power table."""

    height_bound: int
    k: int
    count_all: int
    count_irr: int
    min_cofactor: Optional[int]
    max_abs_disc: Optional[int]


@dataclass
class DiscCensus:
    rows: list[DiscCensusRow]
    stats: list[PrimePowerStat]
    complete: bool
    records_seen: int


def _disc_shard(args) -> tuple[list[int], list[int], dict, int]:
    n, p, height_bound, an_lo, an_hi, thresholds = args
    counts_all = [0] * len(thresholds)
    counts_irr = [0] * len(thresholds)
    hist: dict[int, list] = {}
    seen = 0
    if n == 2:
        rng = range(-height_bound, height_bound + 1)
        for a2 in range(an_lo, an_hi + 1):
            for a1 in rng:
                a1sq = a1 * a1
                for a0 in rng:
                    seen += 1
                    disc = a1sq - 4 * a2 * a0  # Sylvester determinant, expanded
                    if disc == 0:
                        continue
                    v = 0
                    d = disc
                    while d % p == 0:
                        d //= p
                        v += 1
                    irr = not _is_square(disc)
                    for idx, thr in enumerate(thresholds):
                        if v >= thr:
                            counts_all[idx] += 1
                            if irr:
                                counts_irr[idx] += 1
                    entry = hist.get(v)
                    cof = abs(d)
                    ad = abs(disc)
                    if entry is None:
                        hist[v] = [1, 1 if irr else 0, cof, ad]
                    else:
                        entry[0] += 1
                        entry[1] += 1 if irr else 0
                        if cof < entry[2]:
                            entry[2] = cof
                        if ad > entry[3]:
                            entry[3] = ad
    else:
        for coeffs in iter_coeffs(n, height_bound, an_lo, an_hi):
            seen += 1
            disc = discriminant_coeffs(coeffs)
            if disc == 0:
                continue
            v = _vp_int(disc, p)
            if n == 3:
                irr = _irreducible_cubic(coeffs)
            else:
                irr = bool(is_irreducible_for_census(coeffs))
            for idx, thr in enumerate(thresholds):
                if v >= thr:
                    counts_all[idx] += 1
                    if irr:
                        counts_irr[idx] += 1
            cof = abs(disc) // p**v
            ad = abs(disc)
            entry = hist.get(v)
            if entry is None:
                hist[v] = [1, 1 if irr else 0, cof, ad]
            else:
                entry[0] += 1
                entry[1] += 1 if irr else 0
                if cof < entry[2]:
                    entry[2] = cof
                if ad > entry[3]:
                    entry[3] = ad
    return counts_all, counts_irr, hist, seen


def is_irreducible_for_census(coeffs: tuple[int, ...]) -> bool:
    """Irreducibility over Q of an arbitrary (possibly imprimitive) polynomial."""
    from math import gcd

    from .intpoly import is_irreducible

    g = 0
    for c in coeffs:
        g = gcd(g, c)
    prim = IntPoly(tuple(c // g for c in coeffs))
    if prim.degree < 1:
        return False
    return bool(is_irreducible(prim))


def _shards(height_bound: int, shard_size: int = 8) -> list[tuple[int, int]]:
    """Leading-coefficient ranges; fixed rule independent of the worker count."""
    out = []
    lo = 1
    while lo <= height_bound:
        hi = min(height_bound, lo + shard_size - 1)
        out.append((lo, hi))
        lo = hi + 1
    return out


def disc_census(n: int, p, height_grid: Sequence[int], nu_grid: Sequence[Fraction],
                c_exps: Sequence[int] = (0, 1, 2), workers: int = 1,
                max_records: Optional[int] = None) -> DiscCensus:
    """Count polynomials with 0 < |D|_p <= p^c Q^(-2 nu), exactly.

    Canonical representatives have a_n > 0; totals count each +-P pair twice
    (discriminants are invariant under P -> -P).  Counts carry both the
    unrestricted and the irreducible-only versions, plus the prime-power
    split statistic of the discriminant values.
    """
    q = _as_p(p)
    rows: list[DiscCensusRow] = []
    stats: list[PrimePowerStat] = []
    complete = True
    seen_total = 0
    for hb in height_grid:
        combos = [(Fraction(nu), ce) for nu in nu_grid for ce in c_exps]
        thresholds = [disc_threshold(q, hb, nu, ce) for nu, ce in combos]
        if max_records is not None and seen_total + poly_count(n, hb) // 2 > max_records:
            complete = False
            break
        shard_args = [(n, q, hb, lo, hi, thresholds) for lo, hi in _shards(hb)]
        results = _run_shards(_disc_shard, shard_args, workers)
        counts_all = [0] * len(combos)
        counts_irr = [0] * len(combos)
        hist: dict[int, list] = {}
        for ca, ci, h, seen in results:
            seen_total += seen
            for i in range(len(combos)):
                counts_all[i] += ca[i]
                counts_irr[i] += ci[i]
            for k, entry in h.items():
                tgt = hist.get(k)
                if tgt is None:
                    hist[k] = list(entry)
                else:
                    tgt[0] += entry[0]
                    tgt[1] += entry[1]
                    tgt[2] = min(tgt[2], entry[2])
                    tgt[3] = max(tgt[3], entry[3])
        for (nu, ce), thr, ca, ci in zip(combos, thresholds, counts_all, counts_irr):
            # doubled: canonical enumeration covers each {P, -P} pair once
            rows.append(DiscCensusRow(n, q, hb, nu, ce, thr, 2 * ca, 2 * ci))
        for k in sorted(hist):
            cnt, cnt_irr, mc, mad = hist[k]
            stats.append(PrimePowerStat(hb, k, 2 * cnt, 2 * cnt_irr, mc, mad))
    return DiscCensus(rows, stats, complete, 2 * seen_total)


def _run_shards(fn, shard_args, workers: int):
    if workers <= 1 or len(shard_args) <= 1:
        return [fn(a) for a in shard_args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, shard_args))


# --- separation census ---------------------------------------------------------


@dataclass(frozen=True)
class SepCensusRow:
    n: int
    p: int
    t: int  # Q = p^t
    theta: Fraction
    c0_exp: int  # C0 = p^c0_exp slack
    count_all: int  # distinct-root P, H in [Q/p, Q], sep valuation >= theta t - c0_exp
    count_irr: int  # same, irreducible over Q only
    flagged: int
    max_exponent: Optional[float]  # max observed sep_val / log_p H, irreducible P


@dataclass
class SepCensus:
    rows: list[SepCensusRow]
    complete: bool
    records_seen: int


def _sep_shard(args):
    n, p, t, an_lo, an_hi, theta_pairs, c0_exp = args
    height_bound = p**t
    shell_lo = height_bound // p
    counts_all = [0] * len(theta_pairs)
    counts_irr = [0] * len(theta_pairs)
    flagged = 0
    best: Optional[tuple[int, int, int]] = None  # (sep num, sep den, height)
    seen = 0
    for coeffs in iter_coeffs(n, height_bound, an_lo, an_hi):
        seen += 1
        if max(abs(c) for c in coeffs) < shell_lo:
            continue
        disc = discriminant_coeffs(coeffs)
        if disc == 0:
            continue
        if n == 2:
            irr = not _is_square(disc)
            sep = Fraction(_vp_int(disc, p) - 2 * _vp_int(coeffs[2], p), 2)
        else:
            if n == 3:
                irr = _irreducible_cubic(coeffs)
            else:
                irr = is_irreducible_for_census(coeffs)
            sep = Fraction(min_conjugate_separation(IntPoly(coeffs), p).val)
        # sep >= theta t - c0_exp, exact comparison of fractions
        for idx, (num, den) in enumerate(theta_pairs):
            if sep * den >= num * t - c0_exp * den:
                counts_all[idx] += 1
                if irr:
                    counts_irr[idx] += 1
        h = max(abs(c) for c in coeffs)
        if irr and h > 1:
            cand = (sep.numerator, sep.denominator, h)
            if best is None or _exp_less(best, cand):
                best = cand
    return counts_all, counts_irr, flagged, best, seen


def _exp_less(a: tuple[int, int, int], b: tuple[int, int, int]) -> bool:
    """Compare sep/log(H) pairs: a < b, exactly, via cross-powers."""
    sn_a, sd_a, h_a = a
    sn_b, sd_b, h_b = b
    # a = sn_a/(sd_a log h_a) < sn_b/(sd_b log h_b)
    # <=> sn_a sd_b log h_b < sn_b sd_a log h_a  <=>  h_b^(sn_a sd_b) < h_a^(sn_b sd_a)
    ea = sn_a * sd_b
    eb = sn_b * sd_a
    lhs = Fraction(h_b) ** ea
    rhs = Fraction(h_a) ** eb
    return lhs < rhs


def sep_census(n: int, p, t_grid: Sequence[int], theta_grid: Sequence[Fraction],
               c0_exp: int = 0, workers: int = 1,
               max_records: Optional[int] = None) -> SepCensus:
    """Count irreducible P with close conjugate roots in the shell H in [Q/p, Q].

    Membership: separation valuation >= theta t - log_p C0 with C0 = p^c0_exp,
    compared exactly as rationals.  Counts are doubled for the sign pair.
    """
    q = _as_p(p)
    rows: list[SepCensusRow] = []
    complete = True
    seen_total = 0
    theta_pairs = [(Fraction(th).numerator, Fraction(th).denominator) for th in theta_grid]
    for t in t_grid:
        hb = q**t
        if max_records is not None and seen_total + poly_count(n, hb) // 2 > max_records:
            complete = False
            break
        shard_args = [(n, q, t, lo, hi, theta_pairs, c0_exp) for lo, hi in _shards(hb)]
        results = _run_shards(_sep_shard, shard_args, workers)
        counts_all = [0] * len(theta_pairs)
        counts_irr = [0] * len(theta_pairs)
        flagged = 0
        best = None
        for ca, ci, fl, bst, seen in results:
            seen_total += seen
            flagged += fl
            for i in range(len(theta_pairs)):
                counts_all[i] += ca[i]
                counts_irr[i] += ci[i]
            if bst is not None and (best is None or _exp_less(best, bst)):
                best = bst
        max_exp = None
        if best is not None:
            sn, sd, h = best
            max_exp = (sn / sd) / math.log(h, q)
        for (num, den), ca, ci in zip(theta_pairs, counts_all, counts_irr):
            rows.append(SepCensusRow(n, q, t, Fraction(num, den), c0_exp,
                                     2 * ca, 2 * ci, 2 * flagged, max_exp))
    return SepCensus(rows, complete, 2 * seen_total)


# --- exponent fitting -----------------------------------------------------------


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    residual_rms: float
    used: int
    dropped: list


def fit_exponent(points: Sequence[tuple[int, int]]) -> ExponentFit:
    """Least-squares slope of log(count) against log(Q); zero counts dropped."""
    clean = [(q, c) for q, c in points if c > 0]
    dropped = [(q, c) for q, c in points if c <= 0]
    if len(clean) < 2:
        raise ValueError("need at least two nonzero points to fit an exponent")
    xs = [math.log(q) for q, _ in clean]
    ys = [math.log(c) for _, c in clean]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    sxx = sum((x - xbar) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("all Q values identical")
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sxx
    intercept = ybar - slope * xbar
    resid = [y - (intercept + slope * x) for x, y in zip(xs, ys)]
    rms = math.sqrt(sum(r * r for r in resid) / len(resid))
    return ExponentFit(slope, intercept, rms, len(clean), dropped)


# --- Monte-Carlo measure estimation ---------------------------------------------


@dataclass(frozen=True)
class MeasureEstimate:
    mode: str
    threshold_exp: int  # epsilon or delta = p^-threshold_exp
    samples: int
    hits: int
    estimate: Fraction
    wilson_low: float
    wilson_high: float
    seed: int


def _wilson(hits: int, total: int, z: float = _WILSON_Z) -> tuple[float, float]:
    if total == 0:
        return 0.0, 1.0
    phat = hits / total
    denom = 1 + z * z / total
    center = (phat + z * z / (2 * total)) / denom
    half = z * math.sqrt(phat * (1 - phat) / total + z * z / (4 * total * total)) / denom
    low = max(0.0, center - half)
    high = min(1.0, center + half)
    # the interval always covers the point estimate; guard the float edges
    if hits == total:
        high = 1.0
    if hits == 0:
        low = 0.0
    return low, high


def _box_has_point(p: int, b: Sequence[int], x: int, radius: int,
                   require_top: bool = False) -> bool:
    """Is there a nonzero vector, sup-norm <= radius, meeting all congruences?

    The congruences are v_p(sum_(j>=i) C(j,i) x^(j-i) a_j) >= b_i.  With
    require_top the top coefficient must be nonzero (degree exactly n).
    """
    if radius < 1:
        return False
    n = len(b) - 1
    from math import comb

    mods = [p**bi for bi in b]
    coef = [
        [comb(j, i) * x ** (j - i) if j >= i else 0 for j in range(n + 1)]
        for i in range(n + 1)
    ]
    vec = [0] * (n + 1)

    def rec(i: int, nonzero: bool) -> bool:
        if i < 0:
            return nonzero
        s = 0
        for j in range(i + 1, n + 1):
            if vec[j]:
                s += coef[i][j] * vec[j]
        m = mods[i]
        r = (-s) % m
        start = -radius + ((r + radius) % m)
        for a in range(start, radius + 1, m):
            if i == n and require_top and a == 0:
                continue
            vec[i] = a
            if rec(i - 1, nonzero or a != 0):
                vec[i] = 0
                return True
        vec[i] = 0
        return False

    return rec(n, False)


def _measure_block(args) -> int:
    mode, p, b, t, thr_exp, pinch_extra, count, block_seed, require_top = args
    rng = random.Random(block_seed)
    hits = 0
    if mode == "short-vector":
        radius = p ** (t - thr_exp) if t >= thr_exp else 0
        bb = list(b)
    else:
        radius = pinch_extra[1]
        bb = list(b)
        bb[pinch_extra[0]] += pinch_extra[2]
    # the event is decided by x mod p^max(bb); sample with resolution to spare
    modulus = p ** (max(bb) + 4)
    for _ in range(count):
        x = rng.randrange(modulus)
        if radius >= 1 and _box_has_point(p, bb, x, radius, require_top):
            hits += 1
    return hits


def measure_estimate(params: XiParams, threshold_exp: int, mode: str = "short-vector",
                     samples: int = 10_000, seed: int = 0, workers: int = 1,
                     i_pinch: Optional[int] = None, c2: Optional[int] = None) -> MeasureEstimate:
    """Monte-Carlo measure of the exceptional set of centers x.

    mode "short-vector": the event is lambda_1 <= epsilon = p^-threshold_exp,
    i.e. a nonzero lattice vector of sup-norm <= epsilon Q exists (checked by
    exact enumeration).  mode "pinch": the event is a degree-n polynomial of
    height <= C2 Q satisfying the system with xi_(i_pinch) shrunk by
    delta^(2(n+1)) C2^-(n+1), delta = p^-threshold_exp.

    Sampling is uniform over x mod p^(max b_i + 4); blocks of 512 samples use
    seeds derived from (seed, block), so results do not depend on the worker
    count.  Returns the exact hit fraction with a 95% Wilson interval.
    """
    p = params.p
    if mode == "short-vector":
        pinch_extra = None
        require_top = False
    elif mode == "pinch":
        if i_pinch is None or c2 is None:
            raise ValueError("pinch mode needs i_pinch and c2")
        from .lattice import _power_of_p_exponent

        c2_exp = _power_of_p_exponent(Fraction(c2), p)
        if c2_exp is None or c2_exp < 0 or c2_exp % 2:
            raise ValueError("C2 must be a power of p^2")
        n = params.n
        extra = 2 * (n + 1) * threshold_exp + (n + 1) * c2_exp
        pinch_extra = (i_pinch, c2 * params.Q, extra)
        require_top = True
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if samples < 1:
        raise ValueError("samples must be >= 1")

    blocks = []
    done = 0
    idx = 0
    while done < samples:
        count = min(_SAMPLE_BLOCK, samples - done)
        block_seed = f"{seed}:{idx}"
        blocks.append((mode, p, params.b, params.t, threshold_exp, pinch_extra,
                       count, block_seed, require_top))
        done += count
        idx += 1
    results = _run_shards(_measure_block, blocks, workers)
    hits = sum(results)
    lo, hi = _wilson(hits, samples)
    return MeasureEstimate(mode, threshold_exp, samples, hits,
                           Fraction(hits, samples), lo, hi, seed)
