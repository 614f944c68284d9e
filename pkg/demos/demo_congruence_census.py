#!/usr/bin/env python3
"""Classifying solutions of b*sigma(n) = k (mod n) as regular or sporadic."""

from withinperfect import CongruenceProblem, census, sporadic_growth_report

# Regular solutions factor as n = p*m with p prime, p not dividing m,
# m | b*sigma(m), and sigma(m) = k/b.  For k = 12 the only anchor is m = 6,
# so the regular solutions are exactly n = 6p.
print("sigma(n) = 12 (mod n), n <= 200:")
for r in census(CongruenceProblem(b=1, k=12, limit=200)):
    wit = f" witnesses={list(r.witnesses)}" if r.witnesses else ""
    print(f"  n={r.n:>3}  sigma={r.sigma_n:>4}  {r.classification}{wit}")

# k = 0 is the multiply perfect census; sigma(m) = 0 has no solutions, so
# nothing can be regular there.
mp = census(CongruenceProblem(b=1, k=0, limit=10**6))
print("\nmultiply perfect n <= 1e6:", [r.n for r in mp])

# Sporadic solutions are rare: their count is expected to grow no faster
# than b^2 * x^(2/3+o(1)).  The report normalizes by that shape.
report = sporadic_growth_report(1, 12, [10**3, 10**4, 10**5, 10**6])
print("\nsporadic growth for k = 12:")
print("x, #sporadic, count/(x^(2/3)), slack-adjusted, count/x^0.55:")
for (x, c, _), r, s, r2 in zip(report.series.rows(), report.ratios,
                               report.slack_ratios, report.sqrt_shape_ratios):
    print(f"  {x:>8}  {c:>3}  {r:.5f}  {s:.5f}  {r2:.5f}")
print("bounded:", report.bounded)
