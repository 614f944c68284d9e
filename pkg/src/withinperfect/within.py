"""Counting within-perfect numbers: n <= x with |b*sigma(n) - a*n| < b*k(n).

The comparison clears the denominator b first, so everything is decided on
integers D = |b*sigma(n) - a*n|.  Power thresholds n^(p/q) are decided
exactly: a float64 prefilter with a relative guard band settles almost every
n, and the few candidates inside the band fall back to the integer comparison
D^q vs b^q * n^p.  Ties (equality) are tracked separately so both the strict
and non-strict conventions come out of a single pass.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from .errors import CapabilityError, InvalidThresholdError
from .exact import _guard_linear, enumerate_perfect, _fraction_sum
from .sieve import SigmaSource
from .types import (CheckpointSeries, RationalTarget, ThresholdSpec,
                    normalized_quotient)

#: Relative width of the float64 guard band around the threshold.
_BAND = 1e-9


def _check_scale(*values: int) -> None:
    """Vectorized comparisons live in int64; refuse anything that would wrap."""
    for v in values:
        if abs(v) >= 2**62:
            raise CapabilityError(
                "threshold parameters at this limit exceed the int64 working range")


def _power_compare(D: int, b: int, n: int, c: Fraction) -> int:
    """Exact sign of D - b*n^c for rational c = p/q: -1 below, 0 tie, +1 above."""
    lhs = D ** c.denominator
    rhs = (b ** c.denominator) * (n ** c.numerator)
    return (lhs > rhs) - (lhs < rhs)


def _xlog_compare(D: int, b: int, n: int) -> int:
    """Sign of D - b*n/log(n) at 50 digits (exact ties cannot occur for n >= 2)."""
    with mpmath.workdps(50):
        diff = mpmath.mpf(D) - mpmath.mpf(b * n) / mpmath.log(n)
        if abs(diff) < mpmath.mpf(10) ** -30:
            return 0
        return 1 if diff > 0 else -1


def _decide_segment(threshold: ThresholdSpec, b: int, D: np.ndarray, n: np.ndarray,
                    Df: np.ndarray, logn: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Boolean (strictly_inside, tie) masks for one segment, decided exactly
    for the analytic threshold kinds."""
    kind = threshold.kind
    if kind == "power":
        c = threshold.param
        t = b * np.exp(float(c) * logn)
        strict = Df < t * (1.0 - _BAND)
        tie = np.zeros_like(strict)
        for i in np.flatnonzero(~strict & (Df < t * (1.0 + _BAND))):
            s = _power_compare(int(D[i]), b, int(n[i]), c)
            if s < 0:
                strict[i] = True
            elif s == 0:
                tie[i] = True
        return strict, tie
    if kind == "constant":
        k0 = threshold.param
        _check_scale(int(D.max(initial=0)) * k0.denominator, b * k0.numerator)
        lhs = D * np.int64(k0.denominator)
        rhs = np.int64(b * k0.numerator)
        return lhs < rhs, lhs == rhs
    if kind == "linear":
        s = threshold.param
        _check_scale(int(D.max(initial=0)) * s.denominator,
                     b * s.numerator * int(n[-1]))
        lhs = D * np.int64(s.denominator)
        rhs = np.int64(b * s.numerator) * n
        return lhs < rhs, lhs == rhs
    if kind == "x_over_log":
        t = np.divide(b * n.astype(np.float64), logn,
                      out=np.full(len(n), np.inf), where=logn > 0)
        strict = Df < t * (1.0 - _BAND)
        tie = np.zeros_like(strict)
        for i in np.flatnonzero(~strict & (Df < t * (1.0 + _BAND))):
            s = _xlog_compare(int(D[i]), b, int(n[i]))
            if s < 0:
                strict[i] = True
            elif s == 0:
                tie[i] = True
        return strict, tie
    if kind == "custom":
        t = np.asarray(threshold.fn(n.astype(np.float64)), dtype=np.float64)
        if threshold.floor is not None:
            t = np.maximum(t, threshold.floor)
        if threshold.ceiling is not None:
            t = np.minimum(t, threshold.ceiling)
        t = b * t
        return Df < t, Df == t
    raise InvalidThresholdError(f"unsupported threshold kind {kind!r}")


@dataclass
class ThresholdCounts:
    """Strict and tie counts per (threshold, checkpoint) from one pass."""

    target: RationalTarget
    thresholds: list[ThresholdSpec]
    checkpoints: list[int]
    strict: list[list[int]]  # [threshold][checkpoint]
    ties: list[list[int]]

    def resolved(self, i: int, j: int, strict_mode: bool) -> int:
        return self.strict[i][j] + (0 if strict_mode else self.ties[i][j])


def count_thresholds(target, thresholds: list[ThresholdSpec], checkpoints,
                     source: Optional[SigmaSource] = None,
                     include_one: bool = True) -> ThresholdCounts:
    """One streaming pass over [1, max checkpoint] for several thresholds at once."""
    target = RationalTarget.parse(target)
    checkpoints = sorted(int(x) for x in checkpoints)
    limit = checkpoints[-1]
    source = source or SigmaSource()
    _guard_linear(target.a, target.b, limit)
    if any(t.at_limit for t in thresholds):
        raise InvalidThresholdError(
            "at_limit thresholds need count_at_limit (k is evaluated per checkpoint)")

    a, b = target.a, target.b
    strict_counts = [[0] * len(checkpoints) for _ in thresholds]
    tie_counts = [[0] * len(checkpoints) for _ in thresholds]
    for seg in source.segments(limit):
        n = seg.n_values()
        D = np.abs(np.int64(b) * seg.sigma.view(np.int64) - np.int64(a) * n)
        Df = D.astype(np.float64)
        logn = np.log(n.astype(np.float64))
        for i, threshold in enumerate(thresholds):
            strict, tie = _decide_segment(threshold, b, D, n, Df, logn)
            if not include_one and seg.lo == 1:
                strict[0] = False
                tie[0] = False
            hits = n[strict]
            tie_values = n[tie]
            for j, ck in enumerate(checkpoints):
                if ck < seg.lo:
                    continue
                if ck >= seg.hi:
                    strict_counts[i][j] += len(hits)
                    tie_counts[i][j] += len(tie_values)
                else:
                    strict_counts[i][j] += int(np.searchsorted(hits, ck, side="right"))
                    tie_counts[i][j] += int(np.searchsorted(tie_values, ck, side="right"))
    return ThresholdCounts(target, list(thresholds), checkpoints, strict_counts, tie_counts)


def count_at_limit(target, threshold: ThresholdSpec, checkpoints,
                   source: Optional[SigmaSource] = None,
                   include_one: bool = True) -> ThresholdCounts:
    """Variant with the threshold frozen at each checkpoint: |D| < b*k(x).

    Counts need not be monotone across checkpoints here, since the threshold
    value changes with x.
    """
    target = RationalTarget.parse(target)
    checkpoints = sorted(int(x) for x in checkpoints)
    limit = checkpoints[-1]
    source = source or SigmaSource()
    _guard_linear(target.a, target.b, limit)
    a, b = target.a, target.b

    at_n = ThresholdSpec(threshold.kind, threshold.param, threshold.fn,
                         threshold.floor, threshold.ceiling, threshold.strict, False)
    strict_counts = [[0] * len(checkpoints)]
    tie_counts = [[0] * len(checkpoints)]
    for seg in source.segments(limit):
        n = seg.n_values()
        D = np.abs(np.int64(b) * seg.sigma.view(np.int64) - np.int64(a) * n)
        Df = D.astype(np.float64)
        for j, ck in enumerate(checkpoints):
            if ck < seg.lo:
                continue
            upto = min(ck, seg.hi) - seg.lo + 1
            ck_arr = np.array([ck], dtype=np.int64)
            strict1, tie1 = _decide_segment(
                at_n, b, D[:upto],
                np.broadcast_to(ck_arr, (upto,)),
                Df[:upto],
                np.broadcast_to(np.log(np.float64(ck)), (upto,)))
            if not include_one and seg.lo == 1:
                strict1 = strict1.copy()
                tie1 = tie1.copy()
                strict1[0] = False
                tie1[0] = False
            strict_counts[0][j] += int(np.count_nonzero(strict1))
            tie_counts[0][j] += int(np.count_nonzero(tie1))
    return ThresholdCounts(target, [threshold], checkpoints, strict_counts, tie_counts)


def series(target, threshold: ThresholdSpec, checkpoints,
           source: Optional[SigmaSource] = None,
           include_one: bool = True) -> CheckpointSeries:
    """Within-perfect counts and quotients count/(x/log x) at each checkpoint."""
    target = RationalTarget.parse(target)
    if threshold.at_limit:
        counts = count_at_limit(target, threshold, checkpoints, source, include_one)
    else:
        counts = count_thresholds(target, [threshold], checkpoints, source, include_one)
    resolved = [counts.resolved(0, j, threshold.strict)
                for j in range(len(counts.checkpoints))]
    return CheckpointSeries(
        counts.checkpoints, resolved,
        label=f"within l={target} k={threshold.describe()}")


def count_within(target, threshold: ThresholdSpec, limit: int,
                 source: Optional[SigmaSource] = None,
                 include_one: bool = True) -> CheckpointSeries:
    """Single-checkpoint within-perfect count (see series)."""
    return series(target, threshold, [limit], source, include_one)


# --- reproduction of the published quotient grid for l = 2 ---

#: Exponents of the published grid, largest first (matching its row order).
TABLE_EXPONENTS = tuple(Fraction(c, 10) for c in range(9, 1, -1))

#: Checkpoints of the published grid.
TABLE_CHECKPOINTS = (10**6, 10**7, 2 * 10**7)

#: Published values of the normalized quotient for l = 2 (row: exponent,
#: column: checkpoint), used as the diff reference.
REFERENCE_QUOTIENTS: dict[tuple[Fraction, int], float] = {
    (Fraction(9, 10), 10**6): 3.661860, (Fraction(9, 10), 10**7): 3.305180, (Fraction(9, 10), 2 * 10**7): 3.196040,
    (Fraction(8, 10), 10**6): 1.141480, (Fraction(8, 10), 10**7): 0.945623, (Fraction(8, 10), 2 * 10**7): 0.908751,
    (Fraction(7, 10), 10**6): 0.494278, (Fraction(7, 10), 10**7): 0.435395, (Fraction(7, 10), 2 * 10**7): 0.426470,
    (Fraction(6, 10), 10**6): 0.311567, (Fraction(6, 10), 10**7): 0.274586, (Fraction(6, 10), 2 * 10**7): 0.267904,
    (Fraction(5, 10), 10**6): 0.276559, (Fraction(5, 10), 10**7): 0.259482, (Fraction(5, 10), 2 * 10**7): 0.255962,
    (Fraction(4, 10), 10**6): 0.264968, (Fraction(4, 10), 10**7): 0.252956, (Fraction(4, 10), 2 * 10**7): 0.250063,
    (Fraction(3, 10), 10**6): 0.225980, (Fraction(3, 10), 10**7): 0.247837, (Fraction(3, 10), 2 * 10**7): 0.247299,
    (Fraction(2, 10), 10**6): 0.151238, (Fraction(2, 10), 10**7): 0.195911, (Fraction(2, 10), 2 * 10**7): 0.197430,
}

#: The four counting conventions the reproduction sweeps.
CONVENTIONS = ("strict,n>=1", "non-strict,n>=1", "strict,n>=2", "non-strict,n>=2")


@dataclass
class TableOneReport:
    """The published 8x3 quotient grid recomputed under all four conventions."""

    limit: int
    exponents: tuple[Fraction, ...]
    checkpoints: tuple[int, ...]
    counts: dict[str, list[list[int]]]       # convention -> grid of counts
    quotients: dict[str, list[list[float]]]  # convention -> grid of quotients
    reference: dict[tuple[Fraction, int], float]
    max_deviation: dict[str, float]
    best_convention: str
    elapsed_seconds: float

    def deviation_grid(self, convention: Optional[str] = None) -> list[list[float]]:
        convention = convention or self.best_convention
        grid = self.quotients[convention]
        return [[abs(grid[i][j] - self.reference[(c, x)])
                 for j, x in enumerate(self.checkpoints)]
                for i, c in enumerate(self.exponents)]


def table1_reproduce(source: Optional[SigmaSource] = None,
                     limit: int = 2 * 10**7) -> TableOneReport:
    """Recompute the full 8x3 quotient grid for l = 2 in one sieve pass.

    Sweeps all four counting conventions (strict/non-strict inequality,
    first n = 1 or 2) and reports the one with the smallest worst-case
    deviation from the published values.
    """
    if limit < TABLE_CHECKPOINTS[-1]:
        raise CapabilityError(
            f"the grid needs sieve capability {TABLE_CHECKPOINTS[-1]}, got {limit}")
    t0 = time.monotonic()
    thresholds = [ThresholdSpec.power(c) for c in TABLE_EXPONENTS]
    counts = count_thresholds(RationalTarget(2, 1), thresholds,
                              list(TABLE_CHECKPOINTS), source, include_one=True)

    # contribution of n = 1 (D = a - b = 1, k(1) = 1): needed for the n>=2 grids
    hit1_strict, hit1_tie = [], []
    for c in TABLE_EXPONENTS:
        s = _power_compare(1, 1, 1, c)
        hit1_strict.append(1 if s < 0 else 0)
        hit1_tie.append(1 if s == 0 else 0)

    count_grids: dict[str, list[list[int]]] = {}
    quot_grids: dict[str, list[list[float]]] = {}
    max_dev: dict[str, float] = {}
    for convention in CONVENTIONS:
        strict_mode = convention.startswith("strict")
        from_one = convention.endswith("n>=1")
        grid, qgrid = [], []
        worst = 0.0
        for i, c in enumerate(TABLE_EXPONENTS):
            row, qrow = [], []
            drop = 0 if from_one else hit1_strict[i] + (0 if strict_mode else hit1_tie[i])
            for j, x in enumerate(TABLE_CHECKPOINTS):
                value = counts.resolved(i, j, strict_mode) - drop
                q = normalized_quotient(value, x)
                worst = max(worst, abs(q - REFERENCE_QUOTIENTS[(c, x)]))
                row.append(value)
                qrow.append(q)
            grid.append(row)
            qgrid.append(qrow)
        count_grids[convention] = grid
        quot_grids[convention] = qgrid
        max_dev[convention] = worst
    best = min(CONVENTIONS, key=lambda name: max_dev[name])
    return TableOneReport(
        limit=limit, exponents=TABLE_EXPONENTS, checkpoints=TABLE_CHECKPOINTS,
        counts=count_grids, quotients=quot_grids, reference=dict(REFERENCE_QUOTIENTS),
        max_deviation=max_dev, best_convention=best,
        elapsed_seconds=time.monotonic() - t0)


@dataclass
class LimitCheckReport:
    """Checkpointed comparison of the quotient against its expected scale.

    branch "limit": perfect members exist below the top checkpoint, so the
    quotient is compared with the partial sums of 1/m.  branch "bound": no
    members, so count/x^(2/3+c) is reported with a boundedness flag.
    """

    target: RationalTarget
    exponent: Fraction
    checkpoints: list[int]
    branch: str
    counts: list[int]
    quotients: list[float]
    partial_limits: list[float]
    deviations: list[float]
    trend: str
    normalized: list[float]
    bounded: Optional[bool]


def theorem_limit_check(target, threshold: ThresholdSpec, checkpoints,
                        source: Optional[SigmaSource] = None) -> LimitCheckReport:
    """Check the quotient against the reciprocal-sum limit (or the power bound)."""
    if threshold.kind != "power":
        raise InvalidThresholdError("the limit check applies to power thresholds")
    target = RationalTarget.parse(target)
    checkpoints = sorted(int(x) for x in checkpoints)
    source = source or SigmaSource()
    census = enumerate_perfect(target, checkpoints[-1], source, checkpoints)
    within_counts = series(target, threshold, checkpoints, source)
    c = threshold.param

    if census.members:
        partials, deviations = [], []
        for j, x in enumerate(checkpoints):
            upto = [m for m in census.members if m <= x]
            partial = float(_fraction_sum([Fraction(1, m) for m in upto]))
            partials.append(partial)
            deviations.append(abs(within_counts.quotients[j] - partial))
        if len(deviations) >= 2:
            trend = "narrowing" if deviations[-1] <= deviations[0] else "widening"
        else:
            trend = "n/a"
        return LimitCheckReport(target, c, checkpoints, "limit",
                                within_counts.counts, within_counts.quotients,
                                partials, deviations, trend, [], None)

    expo = 2.0 / 3.0 + float(c)
    normalized = [count / x**expo for count, x in zip(within_counts.counts, checkpoints)]
    nonincreasing = all(b2 <= b1 + 1e-12 for b1, b2 in zip(normalized, normalized[1:]))
    bounded = nonincreasing or (max(normalized) <= 10.0 if normalized else True)
    return LimitCheckReport(target, c, checkpoints, "bound",
                            within_counts.counts, within_counts.quotients,
                            [], [], "n/a", normalized, bounded)
