#!/usr/bin/env python3
"""Perfect and multiply perfect censuses, and the series they converge to."""

from withinperfect import enumerate_perfect, series_partial_sums, wirsing_count_check

LIMIT = 10**6

for ell in ("2", "3", "4", "3/2", "5/2"):
    census = enumerate_perfect(ell, LIMIT)
    print(f"l = {ell:>3}: members <= 1e6: {census.members}")

# The reciprocal sum over l-perfect numbers converges (the counting function
# grows far slower than any power); at l = 2 the partial sum is already
# stable to 4 decimals by 1e6.
sums = series_partial_sums("2", LIMIT)
print(f"\nsum of 1/m over perfect m <= 1e6 = {sums.reciprocal} "
      f"= {float(sums.reciprocal):.10f}")
print(f"sum of log(m)/m                  = {sums.log_weighted}")

# How slowly does the perfect-counting function grow?  The classical scale
# is exp(O(log x / log log x)); the report tracks log P(x) against it.
report = wirsing_count_check("2", [10**2, 10**3, 10**4, 10**5, 10**6])
print("\nx, P(x), log P(x) / (log x / log log x):")
for (x, count, _), ratio in zip(report.series.rows(), report.ratios):
    print(f"  {x:>8}  {count}  {ratio:.4f}")
print("net growth of the ratio across checkpoints:", report.grew)
