#!/usr/bin/env python3
"""The empirical distribution of sigma(n)/n and the density phase transition."""

from withinperfect import empirical_cdf, phase_experiment, sigma_approx_probe

# F_x(u) = (1/x) #{n <= x : sigma(n)/n <= u}.  The limiting distribution is
# continuous and strictly increasing on [1, oo); finite-x estimates settle
# quickly.
grid = ["1.2", "1.5", "1.8", "2", "2.5", "3"]
for x in (10**4, 10**6):
    cdf = empirical_cdf(x, grid)
    print(f"F_{x}(u): " + "  ".join(f"{u}:{v:.4f}" for u, v in zip(cdf.labels, cdf.values)))

# Phase transition of the within-perfect density as the threshold grows:
# sublinear thresholds give density 0, k ~ c*n gives D(l+c) - D(l-c),
# superlinear thresholds sweep everything in.
sub = phase_experiment("2", "sublinear", [10**4, 10**5, 10**6])
print("\nsublinear k=y^0.5 densities:", [f"{d:.5f}" for d in sub.densities],
      "decreasing:", sub.trend_ok)

lin = phase_experiment("2", "linear", [10**6], c="0.1")
print(f"linear k=0.1y density {lin.densities[0]:.6f} vs "
      f"F(2.1)-F(1.9) = {lin.references[0]:.6f} (gap {lin.deviations[0]:.2e})")

sup = phase_experiment("2", "superlinear", [10**4, 10**6])
print("superlinear k=y*log y densities:", [f"{d:.6f}" for d in sup.densities],
      "rising:", sup.trend_ok)

# How closely can abundancy ratios approach a target?  The probe records
# each best-so-far m; targets just above 1 are chased by primes (1 + 1/p).
for target in ("2", "1.7", "1.000001"):
    report = sigma_approx_probe(target, depth=4, search_limit=10**4)
    trail = [(r.m, f"{float(r.distance):.2e}") for r in report.records]
    print(f"\ntarget {target}: best-so-far (m, distance) = {trail}")
