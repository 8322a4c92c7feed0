"""Walkthrough: Monte-Carlo measure of centers with unusually short vectors.

Estimates the measure of x in Z_p whose coefficient lattice contains a
nonzero vector of sup-norm <= eps Q, for shrinking eps.  Each sample is an
exact enumeration decision; only the sampling itself is random (seeded,
block-deterministic, so worker count never changes the result).
"""

import math

from padicsep import XiParams, measure_estimate

params = XiParams(3, 2, (4, 2, 0))
seed = 20260809
print("=" * 70)
print(f"Lattice family: p=3, Q=9, b={params.b}; event: lambda_1 <= eps")
print(f"seed {seed}, 10000 samples per eps; 95% Wilson intervals")
print("=" * 70)

rows = []
for e in (0, 1, 2, 3, 4):
    me = measure_estimate(params, e, samples=10_000, seed=seed)
    rows.append((e, me))
    print(f"eps = 3^-{e}: estimate {float(me.estimate):.4f} "
          f"[{me.wilson_low:.4f}, {me.wilson_high:.4f}]  ({me.hits}/{me.samples})")

print("\neps = 1 is certain (Minkowski: a nonzero vector of sup-norm <= Q always exists)")
pos = [(3.0**-e, float(me.estimate)) for e, me in rows if me.estimate > 0 and e > 0]
xs = [math.log(v) for v, _ in pos]
ys = [math.log(v) for _, v in pos]
xb, yb = sum(xs) / len(xs), sum(ys) / len(ys)
slope = sum((x - xb) * (y - yb) for x, y in zip(xs, ys)) / sum((x - xb) ** 2 for x in xs)
print(f"decay exponent (log-log slope over nonzero estimates): {slope:.3f}")
print("theoretical floor for n = 2: alpha = 1 / floor(((n+1)/2)^2) = 0.5")

print()
print("pinched variant: a degree-n polynomial with one derivative bound tightened")
for e in (1, 2):
    me = measure_estimate(params, e, mode="pinch", samples=4000, seed=seed,
                          i_pinch=0, c2=9)
    print(f"delta = 3^-{e}: estimate {float(me.estimate):.4f} "
          f"[{me.wilson_low:.4f}, {me.wilson_high:.4f}]")
