import math
from fractions import Fraction

import mpmath
import pytest

from withinperfect.errors import InvalidProblemError
from withinperfect.exact import (DiophantineProblem, enumerate_perfect, gcd_sum,
                                 regular_family_anchor, series_partial_sums,
                                 solve_diophantine, wirsing_count_check)
from withinperfect.sieve import sigma_oracle
from withinperfect.types import RationalTarget

from conftest import brute_diophantine, trial_is_prime


def test_classical_perfect_census():
    census = enumerate_perfect("2", 10**4)
    assert census.members == [6, 28, 496, 8128]
    for m in census.members:
        assert sigma_oracle(m) == 2 * m


def test_triperfect_census():
    assert enumerate_perfect("3", 10**3).members == [120, 672]


def test_fractional_target_census():
    assert enumerate_perfect("3/2", 10).members == [2]  # sigma(2) = 3 = (3/2)*2


def test_census_counting_function():
    census = enumerate_perfect("2", 10**4, checkpoints=[5, 10, 100, 500, 10**4])
    assert census.counting.counts == [0, 1, 2, 3, 4]
    assert 28 in census and 29 not in census


def test_rational_target_validation():
    with pytest.raises(ValueError):
        RationalTarget(2, 2)
    with pytest.raises(ValueError):
        RationalTarget(4, 2)
    with pytest.raises(TypeError):
        RationalTarget.parse(1.5)  # floats are rejected, pass "3/2"
    assert RationalTarget.parse("1.25") == RationalTarget(5, 4)


def test_wirsing_small_counts():
    assert wirsing_count_check("2", [5]).series.counts == [0]
    assert wirsing_count_check("5/4", [10]).series.counts == [0]
    report = wirsing_count_check("2", [10**3, 10**4])
    assert report.series.counts == [3, 4]
    assert report.ratios[0] == pytest.approx(
        math.log(3) / (math.log(10**3) / math.log(math.log(10**3))))
    assert not math.isnan(report.ratios[1])


def test_series_partial_sums_small():
    empty = series_partial_sums("2", 5)
    assert empty.reciprocal == 0
    two = series_partial_sums("2", 30)
    assert two.reciprocal == Fraction(1, 6) + Fraction(1, 28) == Fraction(17, 84)
    with mpmath.workdps(50):
        expected = mpmath.log(6) / 6 + mpmath.log(28) / 28
        assert abs(two.log_weighted - expected) < mpmath.mpf(10) ** -40


def test_gcd_sum_smallest():
    report = gcd_sum(8)  # m in {3, 4}: gcd(3,4)/9 + gcd(4,7)/16
    assert report.value == Fraction(1, 9) + Fraction(1, 16) == Fraction(25, 144)
    assert (report.m_lo, report.m_hi) == (3, 4)


def test_gcd_sum_matches_oracle():
    report = gcd_sum(27)
    assert (report.m_lo, report.m_hi) == (4, 9)
    expected = sum((Fraction(math.gcd(m, sigma_oracle(m)), m * m) for m in range(4, 10)),
                   Fraction(0))
    assert report.value == expected


def test_gcd_sum_scaled_stays_bounded():
    for x in (10**3, 10**4, 10**5, 10**6):
        assert gcd_sum(x).scaled <= 10.0


def test_diophantine_regular_family(oracle_sigma):
    problem = DiophantineProblem(2, 1, 12, 10**3)
    solution = solve_diophantine(problem)
    assert solution.regular_family and solution.family_anchor == 6
    assert solution.predicted_density == Fraction(2, 12)
    regular = {r.n for r in solution.records if r.classification == "regular"}
    expected = {6 * p for p in range(2, 10**3 // 6 + 1)
                if trial_is_prime(p) and p not in (2, 3)}
    assert regular == expected
    for r in solution.records:
        assert 1 * oracle_sigma[r.n] == 2 * r.n + 12
        assert r.q == 2
        if r.classification == "regular":
            p, m = r.witnesses[0]
            assert r.n == p * m and m == 6 and trial_is_prime(p) and m % p != 0


def test_diophantine_all_sporadic_when_a_misses_k(oracle_sigma):
    solution = solve_diophantine(DiophantineProblem(2, 1, 1, 10**4))
    assert not solution.regular_family
    assert all(r.classification == "sporadic" for r in solution.records)
    brute = brute_diophantine(2, 1, 1, 10**4, oracle_sigma)
    assert {r.n for r in solution.records} == set(brute)


def test_diophantine_b_greater_one(oracle_sigma):
    solution = solve_diophantine(DiophantineProblem(3, 2, 6, 10**3))
    # 2*sigma(2p) = 6(p+1) = 3*(2p) + 6, so the family is n = 2p
    assert solution.regular_family and solution.family_anchor == 2
    brute = brute_diophantine(3, 2, 6, 10**3, oracle_sigma)
    assert {r.n: r.classification for r in solution.records} == brute


def test_diophantine_brute_equality(oracle_sigma):
    for a, b, k in ((2, 1, 12), (2, 1, -1), (5, 2, 10)):
        got = {r.n: r.classification
               for r in solve_diophantine(DiophantineProblem(a, b, k, 10**4)).records}
        assert got == brute_diophantine(a, b, k, 10**4, oracle_sigma)


def test_diophantine_checkpoints():
    solution = solve_diophantine(DiophantineProblem(2, 1, 12, 10**3),
                                 checkpoints=[50, 100, 10**3])
    assert solution.series.counts == [3, 6, 39]  # 24,30,42 then 54,66,78 ...
    assert solution.series.quotients[-1] == pytest.approx(39 / (10**3 / math.log(10**3)))


def test_invalid_problems():
    with pytest.raises(InvalidProblemError):
        DiophantineProblem(3, 2, 0, 100)  # k = 0 is the perfect census
    with pytest.raises(InvalidProblemError):
        DiophantineProblem(4, 2, 12, 100)  # not coprime
    with pytest.raises(InvalidProblemError):
        DiophantineProblem(2, 3, 12, 100)  # a <= b


def test_regular_family_anchor_conditions():
    assert regular_family_anchor(2, 1, 12) == 6
    assert regular_family_anchor(2, 1, 11) is None   # a does not divide k
    assert regular_family_anchor(2, 1, -12) is None  # negative k
    assert regular_family_anchor(2, 1, 16) is None   # sigma(8) = 15 != 16
    assert regular_family_anchor(3, 2, 6) == 2
