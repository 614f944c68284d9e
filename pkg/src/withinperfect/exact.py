"""Exact sigma-equations: perfect censuses, convergent series, gcd sums,
and the linear Diophantine equation b*sigma(n) = a*n + k."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np
from sympy import integer_nthroot, isprime

from .errors import CapabilityError, InvalidProblemError
from .sieve import SigmaSource, sigma_oracle
from .types import CheckpointSeries, RationalTarget, SolutionRecord


def _guard_linear(a: int, b: int, limit: int) -> None:
    """b*sigma(n) and a*n must stay well inside int64 for vectorized masks."""
    sigma_max = limit * (1 + math.log(limit)) if limit > 1 else 1
    if max(b * sigma_max, a * float(limit)) >= 2**62:
        raise CapabilityError(
            f"coefficients a={a}, b={b} at limit {limit} exceed the int64 working range"
        )


def _fraction_sum(terms: list[Fraction]) -> Fraction:
    """Balanced pairwise sum; keeps intermediate denominators small."""
    if not terms:
        return Fraction(0)
    work = list(terms)
    while len(work) > 1:
        work = [work[i] + work[i + 1] if i + 1 < len(work) else work[i]
                for i in range(0, len(work), 2)]
    return work[0]


def _counts_at(members: list[int], checkpoints: list[int]) -> list[int]:
    return [bisect_right(members, x) for x in checkpoints]


@dataclass
class PerfectCensus:
    """All m <= limit with b*sigma(m) = a*m, plus the counting function."""

    target: RationalTarget
    limit: int
    members: list[int]
    counting: CheckpointSeries

    def __contains__(self, n: int) -> bool:
        i = bisect_right(self.members, n)
        return i > 0 and self.members[i - 1] == n


def enumerate_perfect(target, limit: int, source: Optional[SigmaSource] = None,
                      checkpoints: Optional[list[int]] = None) -> PerfectCensus:
    """Exhaustively list all m <= limit with b*sigma(m) = a*m (one streaming pass)."""
    target = RationalTarget.parse(target)
    source = source or SigmaSource()
    _guard_linear(target.a, target.b, limit)
    a, b = np.int64(target.a), np.int64(target.b)
    members: list[int] = []
    for seg in source.segments(limit):
        n = seg.n_values()
        hits = n[b * seg.sigma.view(np.int64) == a * n]
        members.extend(int(v) for v in hits)
    cks = checkpoints or [limit]
    counting = CheckpointSeries(cks, _counts_at(members, cks), label=f"perfect l={target}")
    return PerfectCensus(target, limit, members, counting)


@dataclass
class WirsingReport:
    """Cumulative perfect counts against the log P / (log x / log log x) scale."""

    target: RationalTarget
    series: CheckpointSeries
    ratios: list[float]
    grew: bool


def wirsing_count_check(target, checkpoints, source: Optional[SigmaSource] = None) -> WirsingReport:
    """Count b*sigma(m) = a*m solutions at checkpoints and report the growth ratio.

    ratio(x) = log P(x) / (log x / log log x); NaN where the count is zero or
    x < 3.  grew flags a net increase from the first to the last finite ratio
    (an empirical consistency check, nothing more).
    """
    target = RationalTarget.parse(target)
    checkpoints = sorted(int(x) for x in checkpoints)
    census = enumerate_perfect(target, checkpoints[-1], source, checkpoints)
    ratios = []
    for x, count in zip(checkpoints, census.counting.counts):
        if count < 1 or x < 3:
            ratios.append(math.nan)
        else:
            ratios.append(math.log(count) / (math.log(x) / math.log(math.log(x))))
    finite = [r for r in ratios if not math.isnan(r)]
    grew = len(finite) >= 2 and finite[-1] > finite[0] + 1e-12
    series = CheckpointSeries(checkpoints, census.counting.counts,
                              label=f"wirsing l={target}")
    return WirsingReport(target, series, ratios, grew)


@dataclass
class SeriesSums:
    """Partial sums over the perfect members m <= limit."""

    target: RationalTarget
    limit: int
    members: list[int]
    reciprocal: Fraction          # sum of 1/m, exact
    log_weighted: mpmath.mpf      # sum of log(m)/m at 50 digits

    def reciprocal_decimal(self, places: int = 12) -> str:
        return mpmath.nstr(mpmath.mpf(self.reciprocal.numerator) / self.reciprocal.denominator,
                           places, strip_zeros=False)


def series_partial_sums(target, limit: int, source: Optional[SigmaSource] = None) -> SeriesSums:
    """Sum 1/m (exact rational) and log(m)/m (50 digits) over m <= limit with
    b*sigma(m) = a*m."""
    target = RationalTarget.parse(target)
    census = enumerate_perfect(target, limit, source)
    reciprocal = _fraction_sum([Fraction(1, m) for m in census.members])
    with mpmath.workdps(50):
        log_weighted = mpmath.fsum(mpmath.log(m) / m for m in census.members)
    return SeriesSums(target, limit, census.members, reciprocal, log_weighted)


@dataclass
class GcdSumReport:
    """The sum of gcd(m, sigma(m))/m^2 over the middle range (x^(1/3), x^(2/3)]."""

    x: int
    m_lo: int  # smallest m included
    m_hi: int  # largest m included
    value: Fraction
    bound: float        # 3 * x^(-1/3)
    bound_ratio: float  # value / bound
    scaled: float       # value * x^(1/3)


def gcd_sum(x: int, source: Optional[SigmaSource] = None) -> GcdSumReport:
    """Evaluate sum_{x^(1/3) < m <= x^(2/3)} gcd(m, sigma(m))/m^2 exactly."""
    if x < 8:
        raise ValueError("need x >= 8 so the range (x^(1/3), x^(2/3)] is nonempty")
    source = source or SigmaSource()
    m_lo = int(integer_nthroot(x, 3)[0]) + 1          # smallest m with m^3 > x
    m_hi = int(integer_nthroot(x * x, 3)[0])          # largest m with m^3 <= x^2
    table = source.table(m_hi, with_spf=False)
    ms = np.arange(m_lo, m_hi + 1, dtype=np.int64)
    gs = np.gcd(ms, table.sigma.view(np.int64)[m_lo - 1 : m_hi])
    value = _fraction_sum([Fraction(int(g), int(m) * int(m)) for g, m in zip(gs, ms)])
    bound = 3.0 * x ** (-1.0 / 3.0)
    return GcdSumReport(x, m_lo, m_hi, value, bound,
                        float(value) / bound, float(value) * x ** (1.0 / 3.0))


@dataclass(frozen=True)
class DiophantineProblem:
    """b*sigma(n) = a*n + k for n <= limit, with a > b >= 1 coprime and k != 0."""

    a: int
    b: int
    k: int
    limit: int

    def __post_init__(self):
        if self.b < 1 or self.a <= self.b:
            raise InvalidProblemError(f"need a > b >= 1, got a={self.a}, b={self.b}")
        if math.gcd(self.a, self.b) != 1:
            raise InvalidProblemError(f"a={self.a}, b={self.b} are not coprime")
        if self.k == 0:
            raise InvalidProblemError("k must be nonzero (k = 0 is the perfect census)")
        if self.limit < 1:
            raise InvalidProblemError("limit must be >= 1")


@dataclass
class DiophantineSolution:
    problem: DiophantineProblem
    records: list[SolutionRecord]
    series: CheckpointSeries
    regular_family: bool          # the regular-family branch conditions hold
    family_anchor: Optional[int]  # m0 = k/a when they do
    predicted_density: Optional[Fraction]  # a/k when they do


def regular_family_anchor(a: int, b: int, k: int) -> Optional[int]:
    """m0 = k/a when the regular-family branch applies: k >= 1, ab | k,
    sigma(k/a) = k/b.  Otherwise None (every solution is then sporadic)."""
    if k < 1 or k % (a * b) != 0:
        return None
    m0 = k // a
    if sigma_oracle(m0) != k // b:
        return None
    return m0


def solve_diophantine(problem: DiophantineProblem, source: Optional[SigmaSource] = None,
                      checkpoints: Optional[list[int]] = None) -> DiophantineSolution:
    """Exhaustively solve b*sigma(n) = a*n + k for n <= limit and classify.

    When the regular-family branch holds (k >= 1, ab | k, sigma(k/a) = k/b),
    a solution is regular exactly when n = p*(k/a) with p prime and
    p not dividing k/a; otherwise every solution is sporadic.
    """
    source = source or SigmaSource()
    a, b, k, limit = problem.a, problem.b, problem.k, problem.limit
    _guard_linear(a, b, limit)
    m0 = regular_family_anchor(a, b, k)

    records: list[SolutionRecord] = []
    av, bv, kv = np.int64(a), np.int64(b), np.int64(k)
    for seg in source.segments(limit):
        n = seg.n_values()
        mask = bv * seg.sigma.view(np.int64) - av * n == kv
        for idx in np.flatnonzero(mask):
            nn = int(n[idx])
            sig = int(seg.sigma[idx])
            witnesses: tuple[tuple[int, int], ...] = ()
            if m0 is not None and nn % m0 == 0:
                p = nn // m0
                if isprime(p) and m0 % p != 0:
                    witnesses = ((p, m0),)
            records.append(SolutionRecord(
                n=nn, sigma_n=sig,
                classification="regular" if witnesses else "sporadic",
                witnesses=witnesses, q=a))

    cks = checkpoints or [limit]
    members = [r.n for r in records]
    series = CheckpointSeries(cks, _counts_at(members, cks),
                              label=f"dioph {b}*sigma(n)={a}*n+{k}")
    return DiophantineSolution(
        problem=problem, records=records, series=series,
        regular_family=m0 is not None, family_anchor=m0,
        predicted_density=Fraction(a, k) if m0 is not None else None)
