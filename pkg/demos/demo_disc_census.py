"""Walkthrough: the discriminant-divisibility census.

Counts quadratics with 0 < |D|_p <= C Q^(-2 nu) on exact thresholds, fits the
growth exponent against the predicted n+1 - (n+2) nu / n, and tabulates the
prime-power split D = p^k * cofactor.
"""

from fractions import Fraction

from padicsep import disc_census, disc_threshold, fit_exponent

n, p = 2, 3
grid = [10, 20, 40, 80]
nus = [Fraction(1, 4), Fraction(1, 2)]

print("=" * 70)
print(f"Census: degree {n}, p = {p}, height grid {grid}, nu in {[str(v) for v in nus]}")
print("membership: v_3(D) >= k with k the exact ceiling of 2 nu log_3 Q - log_3 C")
print("=" * 70)
for nu in nus:
    for q in grid:
        k = disc_threshold(p, q, nu, 0)
        print(f"   nu={nu}, Q={q}: threshold v_3(D) >= {k}")

result = disc_census(n, p, grid, nus, c_exps=(0, 1, 2), workers=2)
print(f"\nrecords seen: {result.records_seen} (both signs of the leading coefficient)")
print(f"{'nu':>5} {'C':>6} {'Q':>5} {'all':>9} {'irreducible':>12}")
for row in result.rows:
    print(f"{str(row.nu):>5} {'3^' + str(row.c_exp):>6} {row.height_bound:>5}"
          f" {row.count_all:>9} {row.count_irr:>12}")

print()
print("fitted exponents of the irreducible counts (target n+1-(n+2)nu/n = 3-2nu):")
for nu in nus:
    target = 3 - 2 * nu
    for ce in (0, 1, 2):
        pts = [(r.height_bound, r.count_irr) for r in result.rows
               if r.nu == nu and r.c_exp == ce]
        fit = fit_exponent(pts)
        print(f"   nu={nu}, C=3^{ce}: slope {fit.slope:.3f}"
              f"  (target {float(target):.2f}, residual rms {fit.residual_rms:.3f})")

print()
print("almost-prime-power statistic at Q = 80: D = 3^k * cofactor")
print(f"{'k':>3} {'count':>8} {'min |cofactor|':>15} {'max |D|':>10}")
for s in result.stats:
    if s.height_bound == 80 and s.k >= 2:
        print(f"{s.k:>3} {s.count_all:>8} {s.min_cofactor:>15} {s.max_abs_disc:>10}")
