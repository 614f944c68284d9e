import random

import numpy as np
import pytest

from withinperfect.errors import BudgetExceededError, SigmaOverflowError
from withinperfect.sieve import (DOMAIN_CAP, FactorView, SigmaSource, abundancy,
                                 factor, sieve_segment, sigma_oracle)

from conftest import trial_factor


def test_sigma_single_points():
    assert sieve_segment(1, 1).sigma_of(1) == 1
    assert sieve_segment(13, 13).sigma_of(13) == 14
    assert sieve_segment(24, 24).sigma_of(24) == 60  # 1+2+3+4+6+8+12+24


def test_sigma_oracle_points():
    assert sigma_oracle(1) == 1
    assert sigma_oracle(6) == 12  # divisors 1,2,3,6
    assert sigma_oracle(496) == 992  # 496 is perfect


def test_oracle_equivalence_20k():
    seg = sieve_segment(1, 2 * 10**4)
    for n in range(1, 2 * 10**4 + 1):
        assert seg.sigma_of(n) == sigma_oracle(n)


def test_prime_rows():
    seg = sieve_segment(1, 1000)
    for p in (2, 3, 5, 7, 97, 101, 997):
        assert seg.sigma_of(p) == p + 1


def test_segment_independence():
    whole = sieve_segment(1, 10**4)
    for length in (10**3, 999):
        lo = 1
        while lo <= 10**4:
            hi = min(lo + length - 1, 10**4)
            part = sieve_segment(lo, hi)
            assert np.array_equal(part.sigma, whole.sigma[lo - 1 : hi])
            lo = hi + 1


def test_multiplicativity_random_pairs():
    rng = random.Random(42)
    table = SigmaSource().table(10**7, with_spf=False)
    checked = 0
    while checked < 10**4:
        u = rng.randrange(2, 10**4)
        v = rng.randrange(2, 10**7 // u)
        if np.gcd(u, v) != 1:
            continue
        assert table.sigma_of(u * v) == table.sigma_of(u) * table.sigma_of(v)
        checked += 1


def test_hardy_style_bound():
    seg = sieve_segment(1, 10**5, with_spf=False)
    n = seg.n_values().astype(np.float64)
    assert np.all(seg.sigma.astype(np.float64) <= n * (1.0 + np.log(n)) + 1e-9)


def test_budget_error():
    with pytest.raises(BudgetExceededError):
        sieve_segment(1, 10**6, budget=10**5)


def test_overflow_guard():
    with pytest.raises(SigmaOverflowError):
        sieve_segment(DOMAIN_CAP + 1, DOMAIN_CAP + 10)
    with pytest.raises(SigmaOverflowError):
        sigma_oracle(DOMAIN_CAP + 1)


def test_bad_range():
    with pytest.raises(ValueError):
        sieve_segment(0, 10)
    with pytest.raises(ValueError):
        sieve_segment(10, 5)


def test_spf_full_table():
    seg = sieve_segment(1, 10**4)
    assert seg.spf_of(1) == 0
    for n in range(2, 10**4 + 1):
        assert seg.spf_of(n) == trial_factor(n)[0][0]


def test_spf_high_segment():
    seg = sieve_segment(10**6, 10**6 + 2000)
    for n in range(10**6, 10**6 + 2001, 97):
        assert seg.spf_of(n) == trial_factor(n)[0][0]


def test_factor_views():
    assert factor(1) == FactorView(1, ())
    assert factor(1).omega == 0
    assert factor(1).largest_prime_factor == 1
    twelve = factor(12)
    assert twelve.distinct_primes == ((2, 2), (3, 1))
    assert twelve.omega == 2
    assert twelve.largest_prime_factor == 3
    assert factor(97).distinct_primes == ((97, 1),)


def test_factor_spf_chain_matches_trial():
    table = sieve_segment(1, 5000)
    for n in range(1, 5001):
        assert factor(n, table).distinct_primes == tuple(trial_factor(n))


def test_abundancy():
    from fractions import Fraction

    assert abundancy(1) == Fraction(1)
    assert abundancy(6) == Fraction(2)
    assert abundancy(10) == Fraction(9, 5)
    seg = sieve_segment(1, 100)
    assert abundancy(10, seg) == Fraction(9, 5)


def test_segment_arrays_immutable():
    seg = sieve_segment(1, 100)
    with pytest.raises(ValueError):
        seg.sigma[0] = 5


def test_sigma_multiplicative_across_segments():
    low = sieve_segment(1, 100)
    high = sieve_segment(101, 10100)
    for u, v in ((7, 100), (11, 91), (97, 103)):
        uv = u * v
        left = low.sigma_of(u) * (low.sigma_of(v) if v <= 100 else high.sigma_of(v))
        assert high.sigma_of(uv) == left


def test_source_thread_invariance():
    base = list(SigmaSource(segment_length=2**10).segments(5000))
    threaded = list(SigmaSource(segment_length=2**10, threads=4).segments(5000))
    assert [(s.lo, s.hi) for s in base] == [(s.lo, s.hi) for s in threaded]
    for a, b in zip(base, threaded):
        assert np.array_equal(a.sigma, b.sigma)


def test_source_validation():
    with pytest.raises(ValueError):
        SigmaSource(segment_length=100)
    with pytest.raises(ValueError):
        SigmaSource(threads=0)
    with pytest.raises(SigmaOverflowError):
        SigmaSource().ranges(DOMAIN_CAP + 1)
