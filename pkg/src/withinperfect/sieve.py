"""Sum-of-divisors sieving: segments, the trial-division oracle, factorization.

Two production strategies share one vectorized kernel:

* a full in-memory table (lo = 1) when the range fits the memory budget, and
* a streaming segmented pass for anything larger.

Both enumerate divisor pairs (d, n/d) with d <= sqrt(hi), so a segment of
length L costs O(L * log(sqrt(hi))) strided numpy additions and O(L) memory.
The trial-division oracle stays deliberately naive; it is the independent
cross-check, never the fast path.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .errors import BudgetExceededError, SigmaOverflowError

#: Above this n, sigma(n) is no longer guaranteed to fit u64 with headroom.
DOMAIN_CAP = 1 << 55

#: Default streaming segment length (elements).
DEFAULT_SEGMENT_LENGTH = 1 << 22

#: Default per-segment memory budget (elements).
DEFAULT_BUDGET = 1 << 25

#: Smallest segment length the streaming source accepts.
MIN_SEGMENT_LENGTH = 1 << 10


@dataclass(frozen=True)
class SigmaSegment:
    """sigma(n) (and optionally smallest prime factors) over [lo, hi] inclusive.

    sigma[i] = sigma(lo + i) as u64.  spf[i] is the smallest prime factor of
    lo + i, with 0 as the sentinel for n = 1; spf is None for segments loaded
    from a cache file or sieved with with_spf=False.  Immutable after
    construction; disjoint segments may be sieved concurrently.
    """

    lo: int
    hi: int
    sigma: np.ndarray
    spf: Optional[np.ndarray] = None
    segment_id: int = 0

    def __post_init__(self):
        if not (1 <= self.lo <= self.hi):
            raise ValueError(f"bad segment range [{self.lo}, {self.hi}]")
        if len(self.sigma) != self.hi - self.lo + 1:
            raise ValueError("sigma array length does not match range")
        self.sigma.setflags(write=False)
        if self.spf is not None:
            self.spf.setflags(write=False)

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def n_values(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1, dtype=np.int64)

    def sigma_of(self, n: int) -> int:
        if n not in self:
            raise IndexError(f"{n} outside segment [{self.lo}, {self.hi}]")
        return int(self.sigma[n - self.lo])

    def spf_of(self, n: int) -> int:
        if self.spf is None:
            raise ValueError("segment carries no smallest-prime-factor data")
        if n not in self:
            raise IndexError(f"{n} outside segment [{self.lo}, {self.hi}]")
        return int(self.spf[n - self.lo])


@dataclass(frozen=True)
class FactorView:
    """Prime factorization of n with the derived statistics used downstream."""

    n: int
    distinct_primes: tuple[tuple[int, int], ...]  # (prime, exponent), ascending

    @property
    def omega(self) -> int:
        return len(self.distinct_primes)

    @property
    def largest_prime_factor(self) -> int:
        return self.distinct_primes[-1][0] if self.distinct_primes else 1


def _check_range(lo: int, hi: int, budget: int) -> None:
    if lo < 1 or hi < lo:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    if hi > DOMAIN_CAP:
        raise SigmaOverflowError(
            f"hi={hi} exceeds the supported domain cap 2^55; "
            "sigma values beyond it are not guaranteed to fit u64"
        )
    if hi - lo + 1 > budget:
        raise BudgetExceededError(
            f"segment of {hi - lo + 1} elements exceeds budget {budget}"
        )


def base_primes(limit: int) -> np.ndarray:
    """All primes <= limit via a plain boolean sieve (int64 array)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _sigma_block(lo: int, hi: int) -> np.ndarray:
    """Exact sigma(n) for n in [lo, hi] by divisor-pair accumulation."""
    sig = np.zeros(hi - lo + 1, dtype=np.uint64)
    for d in range(1, math.isqrt(hi) + 1):
        first_q = max(d, -(-lo // d))  # ceil(lo/d), but never the small side twice
        last_q = hi // d
        if first_q > last_q:
            continue
        vals = np.arange(first_q, last_q + 1, dtype=np.uint64)
        vals += np.uint64(d)
        if first_q == d:
            vals[0] = d  # n = d*d: the divisor d counts once
        start = d * first_q - lo
        sig[start :: d][: len(vals)] += vals
    return sig


def _spf_block(lo: int, hi: int) -> np.ndarray:
    """Smallest prime factor for n in [lo, hi]; 0 for n = 1, n itself for primes."""
    spf = np.zeros(hi - lo + 1, dtype=np.int64)
    for p in base_primes(math.isqrt(hi)):
        p = int(p)
        start = max(p, -(-lo // p) * p) - lo
        view = spf[start :: p]
        view[view == 0] = p
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    untouched = (spf == 0) & (ns > 1)
    spf[untouched] = ns[untouched]
    return spf


def sieve_segment(lo: int, hi: int, *, with_spf: bool = True, segment_id: int = 0,
                  budget: int = DEFAULT_BUDGET) -> SigmaSegment:
    """Sieve exact sigma values (and smallest prime factors) over [lo, hi].

    Deterministic and independent of segmentation: the same n yields the same
    sigma regardless of which segment covers it.
    """
    _check_range(lo, hi, budget)
    sigma = _sigma_block(lo, hi)
    spf = _spf_block(lo, hi) if with_spf else None
    return SigmaSegment(lo, hi, sigma, spf, segment_id)


def sigma_oracle(n: int) -> int:
    """sigma(n) by trial division up to sqrt(n): the slow, independent oracle."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > DOMAIN_CAP:
        raise SigmaOverflowError(f"n={n} exceeds the supported domain cap 2^55")
    total = 1
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            power_sum = 1
            pe = 1
            while rest % p == 0:
                rest //= p
                pe *= p
                power_sum += pe
            total *= power_sum
        p += 1 if p == 2 else 2
    if rest > 1:
        total *= rest + 1
    return total


def factor(n: int, context: Optional[SigmaSegment] = None) -> FactorView:
    """Prime factorization of n, via a full-table spf chain when available.

    The spf-chain path needs a table anchored at lo = 1 (quotients must stay
    covered); anything else falls back to trial division.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return FactorView(1, ())
    if context is not None and context.spf is not None and context.lo == 1 and n <= context.hi:
        pairs = []
        rest = n
        while rest > 1:
            p = int(context.spf[rest - 1])
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            pairs.append((p, e))
        return FactorView(n, tuple(pairs))
    pairs = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            pairs.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        pairs.append((rest, 1))
    return FactorView(n, tuple(pairs))


def abundancy(n: int, context: Optional[SigmaSegment] = None) -> Fraction:
    """sigma(n)/n as an exact reduced fraction."""
    s = context.sigma_of(n) if context is not None and n in context else sigma_oracle(n)
    return Fraction(s, n)


class SigmaSource:
    """Streams SigmaSegments covering [1, limit] in ascending order.

    Segments are sieved on demand (optionally on a thread pool) and, when a
    cache directory is configured, persisted in the binary segment format so
    later passes reload instead of resieving.  Results are deterministic and
    identical for any thread count.
    """

    def __init__(self, *, segment_length: int = DEFAULT_SEGMENT_LENGTH, threads: int = 1,
                 cache_dir: Optional[str] = None, with_spf: bool = False,
                 budget: int = DEFAULT_BUDGET):
        if segment_length < MIN_SEGMENT_LENGTH:
            raise ValueError(f"segment_length must be >= {MIN_SEGMENT_LENGTH}")
        if segment_length > budget:
            raise BudgetExceededError("segment_length exceeds the memory budget")
        if threads < 1:
            raise ValueError("threads must be >= 1")
        self.segment_length = segment_length
        self.threads = threads
        self.cache_dir = cache_dir
        self.with_spf = with_spf
        self.budget = budget

    def ranges(self, limit: int) -> list[tuple[int, int]]:
        if limit < 1:
            raise ValueError("limit must be >= 1")
        if limit > DOMAIN_CAP:
            raise SigmaOverflowError(f"limit {limit} exceeds the domain cap 2^55")
        return [(lo, min(lo + self.segment_length - 1, limit))
                for lo in range(1, limit + 1, self.segment_length)]

    def _materialize(self, task: tuple[int, tuple[int, int]]) -> SigmaSegment:
        seg_id, (lo, hi) = task
        if self.cache_dir is not None:
            from . import cache

            path = os.path.join(self.cache_dir, f"sigma_{lo}_{hi}.sgma")
            if os.path.exists(path):
                try:
                    return cache.read_segment(path, segment_id=seg_id)
                except cache.CacheFormatError:
                    pass  # stale or corrupt: resieve and overwrite below
            segment = sieve_segment(lo, hi, with_spf=self.with_spf,
                                    segment_id=seg_id, budget=self.budget)
            cache.write_segment(segment, path)
            return segment
        return sieve_segment(lo, hi, with_spf=self.with_spf,
                             segment_id=seg_id, budget=self.budget)

    def segments(self, limit: int) -> Iterator[SigmaSegment]:
        tasks = list(enumerate(self.ranges(limit)))
        if self.threads == 1:
            for task in tasks:
                yield self._materialize(task)
            return
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            yield from pool.map(self._materialize, tasks)

    def table(self, limit: int, *, with_spf: bool = True) -> SigmaSegment:
        """One full in-memory segment [1, limit] (budget permitting)."""
        return sieve_segment(1, limit, with_spf=with_spf, budget=self.budget)
