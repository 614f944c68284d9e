"""Empirical distribution of the abundancy ratio sigma(n)/n.

The limiting distribution of sigma(n)/n is continuous and strictly
increasing on [1, oo); here we estimate it at finite x, run the
density phase-transition experiments for sublinear/linear/superlinear
thresholds, and probe how well a target ratio can be approximated by
abundancy ratios.

All ratio comparisons are decided exactly: a float64 prefilter with a
relative guard band classifies nearly every n, and band candidates fall
back to exact cross-multiplication with arbitrary-precision integers.
Ratios equal to a query point u count as <= u (inclusive convention).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .sieve import SigmaSource
from .types import RationalTarget, ThresholdSpec
from .within import _check_scale, count_thresholds

_BAND = 1e-12


def _as_query_fraction(u, what: str = "query point") -> Fraction:
    """Exact Fraction for a grid/query value.

    Strings parse exactly ("2.1" -> 21/10); floats convert to the dyadic
    rational they already are (documented: pass a string for decimal intent).
    """
    if isinstance(u, Fraction):
        return u
    if isinstance(u, int):
        return Fraction(u)
    if isinstance(u, str):
        return Fraction(u)
    if isinstance(u, float):
        return Fraction(u)
    raise TypeError(f"{what} must be int, float, str, or Fraction")


def _ratio_le_mask(sigma: np.ndarray, n: np.ndarray, u: Fraction,
                   inclusive: bool = True) -> np.ndarray:
    """Mask of n with sigma(n)/n <= u (or < u), decided exactly."""
    uf = float(u)
    ratio = sigma.astype(np.float64) / n.astype(np.float64)
    mask = ratio < uf * (1.0 - _BAND)
    for i in np.flatnonzero(~mask & (ratio < uf * (1.0 + _BAND))):
        lhs = int(sigma[i]) * u.denominator
        rhs = u.numerator * int(n[i])
        if lhs < rhs or (inclusive and lhs == rhs):
            mask[i] = True
    return mask


@dataclass
class EmpiricalCDF:
    """F_x(u) = (1/x) * #{n <= x : sigma(n)/n <= u} on an ascending grid."""

    limit: int
    grid: tuple[Fraction, ...]
    labels: tuple[str, ...]
    counts: tuple[int, ...]
    inclusive: bool = True

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(c / self.limit for c in self.counts)

    def value_at(self, u) -> float:
        return self.values[self.grid.index(_as_query_fraction(u))]


def empirical_cdf(limit: int, grid, source: Optional[SigmaSource] = None,
                  inclusive: bool = True) -> EmpiricalCDF:
    """Estimate the abundancy distribution at the given query points (one pass)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    labels = tuple(str(u) for u in grid)
    fracs = tuple(_as_query_fraction(u) for u in grid)
    if list(fracs) != sorted(fracs):
        raise ValueError("grid must be ascending")
    source = source or SigmaSource()
    counts = [0] * len(fracs)
    for seg in source.segments(limit):
        n = seg.n_values()
        sig = seg.sigma.view(np.int64)
        for i, u in enumerate(fracs):
            counts[i] += int(np.count_nonzero(_ratio_le_mask(sig, n, u, inclusive)))
    return EmpiricalCDF(limit, fracs, labels, tuple(counts), inclusive)


@dataclass
class PhaseReport:
    """Density of the within-window per checkpoint, with the regime's reference.

    sublinear expects the density to fall toward 0, superlinear to rise
    toward 1; linear compares against the same-pass CDF difference
    F_x(l+c) - F_x(l-c).  linear_band reports densities for both slopes and
    asserts nothing (no target value is known for k comparable to n).
    """

    regime: str
    target: RationalTarget
    c: Optional[Fraction]
    checkpoints: list[int]
    densities: list[float]
    references: list[float]
    deviations: list[float]
    trend_ok: Optional[bool]
    upper_densities: Optional[list[float]] = None  # linear_band only


def phase_experiment(target, regime: str, checkpoints,
                     source: Optional[SigmaSource] = None, c=None,
                     c_upper=None) -> PhaseReport:
    """Run the density experiment for one threshold regime.

    regime: "sublinear" (k = y^c, default c = 1/2), "linear" (k = c*y),
    "superlinear" (k = y*log y), or "linear_band" (two slopes c, c_upper).
    """
    target = RationalTarget.parse(target)
    checkpoints = sorted(int(x) for x in checkpoints)
    source = source or SigmaSource()

    if regime == "sublinear":
        cf = Fraction(1, 2) if c is None else ThresholdSpec.power(c).param
        counts = count_thresholds(target, [ThresholdSpec.power(cf)], checkpoints, source)
        densities = [counts.strict[0][j] / x for j, x in enumerate(checkpoints)]
        trend_ok = all(d2 <= d1 + 1e-12 for d1, d2 in zip(densities, densities[1:]))
        return PhaseReport(regime, target, cf, checkpoints, densities,
                           [0.0] * len(checkpoints), densities[:], trend_ok)

    if regime == "superlinear":
        spec = ThresholdSpec.custom(lambda y: y * np.log(y))
        counts = count_thresholds(target, [spec], checkpoints, source)
        densities = [counts.strict[0][j] / x for j, x in enumerate(checkpoints)]
        trend_ok = all(d1 <= d2 + 1e-12 for d1, d2 in zip(densities, densities[1:]))
        return PhaseReport(regime, target, None, checkpoints, densities,
                           [1.0] * len(checkpoints),
                           [1.0 - d for d in densities], trend_ok)

    if regime == "linear_band":
        if c is None or c_upper is None:
            raise ValueError("linear_band needs both c and c_upper")
        lo = phase_experiment(target, "linear", checkpoints, source, c)
        hi = phase_experiment(target, "linear", checkpoints, source, c_upper)
        return PhaseReport(regime, target, lo.c, checkpoints, lo.densities,
                           hi.densities,
                           [h - l for l, h in zip(lo.densities, hi.densities)],
                           None, upper_densities=hi.densities)

    if regime != "linear":
        raise ValueError(f"unknown regime {regime!r}")
    if c is None:
        raise ValueError("linear regime needs the slope c")
    cf = _as_query_fraction(c, "slope")
    if cf <= 0:
        raise ValueError("slope must be positive")
    ell = target.fraction
    u_hi, u_lo = ell + cf, ell - cf

    # one pass: the open window |sigma/n - l| < c and both CDF counts
    window = [0] * len(checkpoints)
    cdf_hi = [0] * len(checkpoints)
    cdf_lo = [0] * len(checkpoints)
    slope = cf * target.b  # window test cleared of b: D = |b*sigma - a*n| < b*c*n
    for seg in source.segments(checkpoints[-1]):
        n = seg.n_values()
        sig = seg.sigma.view(np.int64)
        D = np.abs(np.int64(target.b) * sig - np.int64(target.a) * n)
        _check_scale(int(D.max(initial=0)) * slope.denominator,
                     slope.numerator * int(n[-1]))
        in_window = D * np.int64(slope.denominator) < np.int64(slope.numerator) * n
        hits_w = n[in_window]
        hits_hi = n[_ratio_le_mask(sig, n, u_hi)]
        hits_lo = n[_ratio_le_mask(sig, n, u_lo)]
        for j, ck in enumerate(checkpoints):
            if ck < seg.lo:
                continue
            for bucket, hits in ((window, hits_w), (cdf_hi, hits_hi), (cdf_lo, hits_lo)):
                bucket[j] += (len(hits) if ck >= seg.hi
                              else int(np.searchsorted(hits, ck, side="right")))
    densities = [w / x for w, x in zip(window, checkpoints)]
    references = [(h - l) / x for h, l, x in zip(cdf_hi, cdf_lo, checkpoints)]
    deviations = [abs(d - r) for d, r in zip(densities, references)]
    return PhaseReport("linear", target, cf, checkpoints, densities,
                       references, deviations, None)


@dataclass(frozen=True)
class ProbeRecord:
    """One best-so-far approximation of the target by an abundancy ratio."""

    m: int
    ratio: Fraction
    distance: Fraction
    meets_log_bound: bool  # distance < 1/log(m)


@dataclass
class ProbeReport:
    target: Fraction
    search_limit: int
    depth: int
    records: list[ProbeRecord]   # the last `depth` strict improvements, ascending m
    improvements_found: int
    exhausted: bool              # fewer than `depth` improvements existed


def sigma_approx_probe(target_value, depth: int, search_limit: int,
                       source: Optional[SigmaSource] = None) -> ProbeReport:
    """Scan 2 <= m <= search_limit for successively better approximations
    |target - sigma(m)/m|, keeping the last `depth` strict improvements.

    m = 1 is excluded: its ratio is the trivial endpoint 1, and targets just
    above 1 should be chased by genuine ratios (primes give 1 + 1/p).
    Distances are compared exactly; each record notes whether it beats the
    concrete envelope 1/log(m).  exhausted is set when the scan ran out of
    improvements before reaching the requested depth.
    """
    if depth < 1 or search_limit < 2:
        raise ValueError("depth must be >= 1 and search_limit >= 2")
    ell = _as_query_fraction(target_value, "target")
    if ell <= 1:
        raise ValueError("target must exceed 1")
    source = source or SigmaSource()
    ellf = float(ell)

    records: list[ProbeRecord] = []
    best: Optional[Fraction] = None
    for seg in source.segments(search_limit):
        n = seg.n_values()
        dist_f = np.abs(seg.sigma.astype(np.float64) / n.astype(np.float64) - ellf)
        if seg.lo == 1:
            dist_f[0] = np.inf
        if best is not None:
            candidates = np.flatnonzero(dist_f <= max(float(best), 1e-300) * (1.0 + 1e-9))
        else:
            floor = np.minimum.accumulate(dist_f)
            candidates = np.flatnonzero(dist_f <= floor * (1.0 + 1e-9) + 1e-300)
        for i in candidates:
            m = int(n[i])
            if m == 1:
                continue
            ratio = Fraction(int(seg.sigma[i]), m)
            dist = abs(ell - ratio)
            if best is None or dist < best:
                best = dist
                meets = float(dist) < 1.0 / math.log(m)
                records.append(ProbeRecord(m, ratio, dist, meets))
                if dist == 0:
                    break
        if best == 0:
            break
    found = len(records)
    return ProbeReport(ell, search_limit, depth, records[-depth:], found, found < depth)
