#!/usr/bin/env python3
"""The equation b*sigma(n) = a*n + k: regular families vs sporadic strays."""

from fractions import Fraction

from withinperfect import DiophantineProblem, solve_diophantine

# sigma(6p) = 12(p+1) = 2*(6p) + 12 whenever p is a prime not dividing 6,
# so k = 12 seeds an arithmetic family of solutions: n = 6p.
solution = solve_diophantine(DiophantineProblem(a=2, b=1, k=12, limit=10**4),
                             checkpoints=[10**2, 10**3, 10**4])
print("sigma(n) = 2n + 12, n <= 1e4")
print("family anchor m0 =", solution.family_anchor,
      " predicted density a/k =", solution.predicted_density)
regular = [r.n for r in solution.records if r.classification == "regular"]
sporadic = [r.n for r in solution.records if r.classification == "sporadic"]
print(f"regular solutions: {len(regular)} (first few {regular[:6]})")
print(f"sporadic solutions: {sporadic}")
print("counts at checkpoints:", solution.series.counts)
print("count/(x/log x) vs a/k =", [f"{q:.4f}" for q in solution.series.quotients],
      "->", float(Fraction(2, 12)))

# If a does not divide k the family cannot exist and everything is sporadic;
# such solution sets grow like a power x^(2/3+o(1)), not linearly over log x.
stray = solve_diophantine(DiophantineProblem(a=2, b=1, k=1, limit=10**6))
print(f"\nsigma(n) = 2n + 1, n <= 1e6: regular_family={stray.regular_family}, "
      f"solutions={[r.n for r in stray.records]}")

# Fractional targets work the same after clearing denominators.
frac = solve_diophantine(DiophantineProblem(a=3, b=2, k=6, limit=10**3))
print(f"\n2*sigma(n) = 3n + 6, n <= 1e3: anchor={frac.family_anchor}, "
      f"first solutions={[r.n for r in frac.records[:8]]}")
