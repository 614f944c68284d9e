"""Census of the congruence b*sigma(n) = k (mod n): regular vs sporadic solutions.

The congruence means n | (b*sigma(n) - k), with k allowed negative and never
reduced beforehand.  A solution is regular (for b | k) when n = p*m with p
prime, p not dividing m, m | b*sigma(m), and sigma(m) = k/b; every other
solution, and every solution when b does not divide k, is sporadic.  n = 1
divides everything, so it is a solution for every (b, k); it has no p*m
decomposition and is classified sporadic.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sympy import isprime

from .exact import _guard_linear
from .sieve import SigmaSource, sigma_oracle
from .types import CheckpointSeries, SolutionRecord


@dataclass(frozen=True)
class CongruenceProblem:
    """b*sigma(n) = k (mod n) for n <= limit."""

    b: int
    k: int
    limit: int

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("b must be >= 1")
        if self.limit < 1:
            raise ValueError("limit must be >= 1")

    @property
    def in_uniform_range(self) -> bool:
        """Whether |k| < b * limit^(2/3), the range the sporadic bound covers."""
        return abs(self.k) < self.b * self.limit ** (2.0 / 3.0)


def witness_anchors(b: int, k: int) -> tuple[int, ...]:
    """All m with sigma(m) = k/b and m | b*sigma(m): the second factors of
    regular decompositions n = p*m.  Empty when b does not divide k or k <= 0.

    sigma(m) >= m + 1 for m >= 2 caps the scan at m < k/b, so this stays cheap.
    """
    if k <= 0 or k % b != 0:
        return ()
    t = k // b
    if t == 1:
        return (1,)
    return tuple(m for m in range(2, t) if sigma_oracle(m) == t and (b * t) % m == 0)


def classify(n: int, b: int, k: int, anchors: tuple[int, ...]) -> tuple[str, tuple[tuple[int, int], ...]]:
    """Classify a known solution n, returning every valid witness (p, m)."""
    witnesses = []
    for m in anchors:
        if n % m != 0:
            continue
        p = n // m
        if p > 1 and m % p != 0 and isprime(p):
            witnesses.append((p, m))
    if witnesses:
        witnesses.sort(key=lambda w: w[1])
        return "regular", tuple(witnesses)
    return "sporadic", ()


def census(problem: CongruenceProblem, source: Optional[SigmaSource] = None) -> list[SolutionRecord]:
    """Exhaustively list and classify the solutions n <= limit, ascending."""
    source = source or SigmaSource()
    b, k, limit = problem.b, problem.k, problem.limit
    _guard_linear(1, b, limit)
    anchors = witness_anchors(b, k)
    records: list[SolutionRecord] = []
    bv, kv = np.int64(b), np.int64(k)
    for seg in source.segments(limit):
        n = seg.n_values()
        lhs = bv * seg.sigma.view(np.int64) - kv
        for idx in np.flatnonzero(lhs % n == 0):
            nn = int(n[idx])
            sig = int(seg.sigma[idx])
            value = b * sig - k
            cls, wit = classify(nn, b, k, anchors)
            records.append(SolutionRecord(
                n=nn, sigma_n=sig, classification=cls, witnesses=wit,
                q=value // nn if value >= 0 else None))
    return records


@dataclass
class SporadicGrowthReport:
    """Sporadic counts against the b^2 * x^(2/3) shape (with o(1) slack)."""

    b: int
    k: int
    series: CheckpointSeries           # sporadic counts per checkpoint
    ratios: list[float]                # count / (b^2 * x^(2/3))
    slack_ratios: list[float]          # count / (b^2 * x^(2/3) * x^0.05)
    sqrt_shape_ratios: list[float]     # count / x^0.55, reported but never asserted
    bounded: bool


def sporadic_growth_report(b: int, k: int, checkpoints,
                           source: Optional[SigmaSource] = None) -> SporadicGrowthReport:
    """Count sporadic solutions at each checkpoint and flag growth.

    bounded holds when the slack-adjusted ratios are nonincreasing or never
    exceed 10 (the empirical stand-in for the x^(2/3+o(1)) bound).
    """
    checkpoints = sorted(int(x) for x in checkpoints)
    records = census(CongruenceProblem(b, k, checkpoints[-1]), source)
    sporadics = [r.n for r in records if r.classification == "sporadic"]
    counts = [bisect_right(sporadics, x) for x in checkpoints]
    ratios, slack, sqrt_shape = [], [], []
    for x, c in zip(checkpoints, counts):
        ratios.append(c / (b * b * x ** (2.0 / 3.0)))
        slack.append(c / (b * b * x ** (2.0 / 3.0) * x**0.05))
        sqrt_shape.append(c / x**0.55)
    nonincreasing = all(s2 <= s1 + 1e-12 for s1, s2 in zip(slack, slack[1:]))
    bounded = nonincreasing or max(slack) <= 10.0
    series = CheckpointSeries(checkpoints, counts, quotients=ratios,
                              label=f"sporadic b={b} k={k}")
    return SporadicGrowthReport(b, k, series, ratios, slack, sqrt_shape, bounded)
