"""Smith normal form against brute-force oracles."""

import math
import random

from qbs.snf import smith_normal_form

from helpers import (
    det_permutation_sum,
    minor_gcd,
    random_int_matrix,
    unimodular_shuffle,
)


def test_identity():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]


def test_gcd_row():
    assert smith_normal_form([[2, -2]]) == [2]


def test_two_by_two():
    # d1 = gcd of entries = 2, d1*d2 = |det| = 8
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]


def test_zero_and_empty():
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form([]) == []


def test_divisibility_chain_holds():
    rng = random.Random(1)
    for _ in range(200):
        factors = smith_normal_form(random_int_matrix(rng))
        assert all(d > 0 for d in factors)
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0


def test_invariant_under_unimodular_ops():
    rng = random.Random(2)
    for _ in range(200):
        m = random_int_matrix(rng)
        assert smith_normal_form(m) == smith_normal_form(unimodular_shuffle(rng, m))


def test_products_match_minor_gcds():
    rng = random.Random(3)
    for _ in range(120):
        m = random_int_matrix(rng, max_dim=4, bound=9)
        factors = smith_normal_form(m)
        prod = 1
        for k, d in enumerate(factors, start=1):
            prod *= d
            assert prod == minor_gcd(m, k)
        if len(factors) < min(len(m), len(m[0])):
            assert minor_gcd(m, len(factors) + 1) == 0


def test_huge_entries_stay_exact():
    # Entries chosen so naive 64-bit arithmetic would overflow mid-run.
    big = 10**30
    m = [[big, big + 2], [big - 2, big]]
    det = abs(det_permutation_sum(m))
    factors = smith_normal_form(m)
    assert math.prod(factors) == det
    assert factors[0] == 2  # gcd of all entries


def test_rank_matches_permutation_determinants():
    rng = random.Random(4)
    for _ in range(60):
        m = random_int_matrix(rng, max_dim=4, bound=6)
        factors = smith_normal_form(m)
        # rank = largest k with a nonvanishing k x k minor
        k_max = 0
        for k in range(1, min(len(m), len(m[0])) + 1):
            if minor_gcd(m, k) != 0:
                k_max = k
        assert len(factors) == k_max
