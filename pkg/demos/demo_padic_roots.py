"""Walkthrough: exact p-adic arithmetic on polynomial roots.

Covers valuations, Newton polygons, Hensel lifting, full Z_p root search,
and distance profiles, with everything computed in exact arithmetic.
"""

from padicsep import (
    IntPoly,
    distance_profile,
    hensel_lift,
    min_conjugate_separation,
    newton_polygon,
    check_ordering_lemma,
    vp,
    zp_roots,
)

print("=" * 70)
print("1. Valuations: |12|_2 = 2^-2, |0|_p = 0 by convention")
print("=" * 70)
print("v_2(12) =", vp(12, 2).val)
print("v_3(-9) =", vp(-9, 3).val)
print("v_5(0)  =", vp(0, 5).val, "(the zero magnitude)")

print()
print("=" * 70)
print("2. Newton polygons read off root valuations from coefficients")
print("=" * 70)
for poly, p in [
    (IntPoly([-25, 0, 1]), 5),     # x^2 - 25: two roots of valuation 1
    (IntPoly([-5, 0, 0, 1]), 5),   # x^3 - 5: totally ramified, valuation 1/3
    (IntPoly([5, 1, 5]), 5),       # 5x^2 + x + 5: valuations +1 and -1
]:
    np_ = newton_polygon(poly, p)
    print(f"{poly}  at p={p}")
    print("   vertices:", np_.vertices)
    print("   root valuations (value, multiplicity):", np_.root_valuations())

print()
print("=" * 70)
print("3. Hensel lifting: sqrt(2) in Z_7 from the seed x0 = 3")
print("=" * 70)
poly = IntPoly([-2, 0, 1])
root, dist = hensel_lift(poly, 3, 7, 6)
print(f"root residue mod 7^6 = {root.residue}")
print(f"check: residue^2 mod 7^6 = {root.residue**2 % 7**6}")
print(f"distance |x0 - root|_7 = 7^-{dist} (the contract |P(x0)|/|P'(x0)|)")

print()
print("=" * 70)
print("4. All roots in Z_p, with multiplicity flags")
print("=" * 70)
poly = IntPoly([-1, 1]) * IntPoly([-1, 1]) * IntPoly([-3, 1])  # (x-1)^2 (x-3)
for r in zp_roots(poly, 5, 4):
    print(f"root = {r.residue} mod 5^{r.precision}, simple = {r.simple}")

print()
print("=" * 70)
print("5. Distance profiles and the derivative-vs-distances bound")
print("=" * 70)
poly = IntPoly([1 + 27, -(2 + 27), 1])  # (x - 1)(x - 28): roots collide mod 27
prof = distance_profile(poly, 1, 3)
print(f"profile of {poly} centered at 1 (p=3): {prof.entries}")
print("   (one exact root: +Infinity entry; the other at distance 3^-3)")
for row in check_ordering_lemma(poly, 1 + 3, 3, distance_profile(poly, 4, 3)):
    print(f"   j={row.j}: v(P^({row.j})/{row.j}!) = {row.lhs_valuation} >= "
          f"{row.bound_valuation} (equality expected: {row.equality_expected})")

print()
print("=" * 70)
print("6. Minimal conjugate separation, exact for every degree")
print("=" * 70)
for poly, p in [
    (IntPoly([-(5**4), 0, 1]), 5),   # roots +-25: separation valuation 2
    (IntPoly([-2, 0, 0, 1]), 3),     # x^3 - 2 at p=3: ramified, valuation 1/2
    (IntPoly([1, 1, 1]), 5),         # distinct units mod 5
]:
    sep = min_conjugate_separation(poly, p)
    print(f"{poly}  p={p}: closest pair at |.|_p = p^-({sep.val})")
