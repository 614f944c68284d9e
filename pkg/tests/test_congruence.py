import pytest

from withinperfect.congruence import (CongruenceProblem, census,
                                      sporadic_growth_report, witness_anchors)
from withinperfect.exact import enumerate_perfect
from withinperfect.sieve import sigma_oracle

from conftest import brute_census, trial_is_prime


def test_census_frozen_small_case():
    records = {r.n: r for r in census(CongruenceProblem(1, 12, 50))}
    assert sorted(records) == [1, 6, 11, 24, 30, 42]
    assert records[42].classification == "regular"
    assert records[42].witnesses == ((7, 6),)
    assert records[24].classification == "sporadic"  # 24 = 3*8 fails sigma(8)=15
    assert records[30].witnesses == ((5, 6),)
    assert records[1].classification == "sporadic"
    assert records[1].q is None  # (sigma(1) - 12)/1 < 0
    assert records[6].q == 0 and records[42].q == 2


def test_census_all_sporadic_when_b_misses_k():
    records = census(CongruenceProblem(2, 1, 100))
    assert records and all(r.classification == "sporadic" for r in records)


def test_census_primes_regular_for_k_equal_one():
    records = {r.n: r for r in census(CongruenceProblem(1, 1, 10**3))}
    primes = [n for n in range(2, 10**3 + 1) if trial_is_prime(n)]
    assert sorted(records) == [1] + primes  # only quasiperfects could join, none exist
    assert records[1].classification == "sporadic"
    for p in primes:
        assert records[p].classification == "regular"
        assert records[p].witnesses == ((p, 1),)


def test_census_matches_brute_force(oracle_sigma):
    for b, k in ((1, 12), (2, 2), (3, 6), (1, -6)):
        got = {r.n: (r.classification, r.witnesses)
               for r in census(CongruenceProblem(b, k, 10**4))}
        assert got == brute_census(b, k, 10**4, oracle_sigma)


def test_regular_witnesses_reverify_all_clauses():
    for b, k, limit in ((1, 12, 10**4), (2, 6, 10**4)):
        for r in census(CongruenceProblem(b, k, limit)):
            assert (b * r.sigma_n - k) % r.n == 0
            if r.classification != "regular":
                continue
            for p, m in r.witnesses:
                assert r.n == p * m
                assert trial_is_prime(p)
                assert m % p != 0
                assert (b * sigma_oracle(m)) % m == 0
                assert sigma_oracle(m) == k // b


def test_census_monotone_in_limit():
    small = [r.n for r in census(CongruenceProblem(1, 12, 50))]
    large = [r.n for r in census(CongruenceProblem(1, 12, 500))]
    assert large[: len(small)] == small


def test_multiply_perfect_cross_module():
    records = census(CongruenceProblem(1, 0, 10**5))
    assert all(r.classification == "sporadic" for r in records)  # sigma(m) = 0 impossible
    union = {1}
    for ell in (2, 3, 4, 5, 6):
        union |= set(enumerate_perfect(str(ell), 10**5).members)
    assert [r.n for r in records] == sorted(union)
    assert [r.n for r in records] == [1, 6, 28, 120, 496, 672, 8128, 30240, 32760]


def test_diophantine_solutions_appear_in_census():
    # a solution of b*sigma(n) = a*n + k also solves the congruence, and under
    # the regular-family conditions the classifications coincide
    from withinperfect.exact import DiophantineProblem, solve_diophantine

    dioph = solve_diophantine(DiophantineProblem(2, 1, 12, 10**4))
    cong = {r.n: r.classification for r in census(CongruenceProblem(1, 12, 10**4))}
    for r in dioph.records:
        assert cong[r.n] == r.classification


def test_witness_anchors():
    assert witness_anchors(1, 12) == (6,)   # sigma(6)=12, 6 | 12; sigma(11)=12 but 11 does not divide 12
    assert witness_anchors(1, 1) == (1,)
    assert witness_anchors(2, 1) == ()      # b does not divide k
    assert witness_anchors(1, 0) == ()
    assert witness_anchors(2, 6) == (2,)    # sigma(2)=3=6/2, 2 | 2*3
    assert witness_anchors(1, -5) == ()


def test_uniform_range_flag():
    assert CongruenceProblem(1, 12, 10**4).in_uniform_range
    assert not CongruenceProblem(1, 10**6, 10**4).in_uniform_range


def test_problem_validation():
    with pytest.raises(ValueError):
        CongruenceProblem(0, 12, 100)
    with pytest.raises(ValueError):
        CongruenceProblem(1, 12, 0)


def test_sporadic_growth_report():
    report = sporadic_growth_report(1, 12, [10**3, 10**4])
    records = census(CongruenceProblem(1, 12, 10**4))
    expected = [sum(1 for r in records if r.classification == "sporadic" and r.n <= x)
                for x in (10**3, 10**4)]
    assert report.series.counts == expected
    for x, count, ratio, slack in zip(report.series.checkpoints, report.series.counts,
                                      report.ratios, report.slack_ratios):
        assert ratio == pytest.approx(count / x ** (2 / 3))
        assert slack == pytest.approx(count / x ** (2 / 3 + 0.05))
    assert isinstance(report.bounded, bool)
    assert len(report.sqrt_shape_ratios) == 2
