"""Point counting, reduction classification, and coefficient expansion."""

import math

import pytest

from newform_products.arith import primes_upto, is_prime
from newform_products.elliptic import (
    ADDITIVE,
    GOOD,
    MULT_NONSPLIT,
    MULT_SPLIT,
    an_expansion,
    count_points,
    count_points_naive,
    curve_from_quintuple,
    reduction_at,
)
from newform_products.errors import SingularCurve, UnsupportedReduction
from newform_products.registry import builtin_table1


ALL_CURVES = [c for rec in builtin_table1() for c in rec.curves]


class TestInvariants:
    def test_known_invariants(self):
        c = curve_from_quintuple((0, 0, 1, -1, 0))
        assert c.disc == 37
        assert c.c4 == 48
        assert c.c6 == -216

    def test_invariant_relation_all_curves(self):
        for quint in ALL_CURVES:
            c = curve_from_quintuple(quint)
            assert 1728 * c.disc == c.c4**3 - c.c6**2
            assert c.b8 * 4 == c.b2 * c.b6 - c.b4**2

    def test_singular_rejected(self):
        with pytest.raises(SingularCurve):
            curve_from_quintuple((0, 0, 0, 0, 0))
        with pytest.raises(SingularCurve):
            curve_from_quintuple((1, 0, 0, 0, 0))


class TestCounting:
    def test_char_sum_matches_naive(self):
        # exhaustive double loop as independent oracle
        for quint in ALL_CURVES:
            c = curve_from_quintuple(quint)
            for p in primes_upto(50):
                assert count_points(c, p) == count_points_naive(c, p), (quint, p)

    def test_hasse_bound(self):
        for quint in ALL_CURVES:
            c = curve_from_quintuple(quint)
            for p in primes_upto(500):
                info = reduction_at(c, p)
                assert info.ap * info.ap <= 4 * p, (quint, p)


class TestReduction:
    def test_good_reduction_values(self):
        c = curve_from_quintuple((0, 0, 1, -1, 0))
        info = reduction_at(c, 2)
        assert info.kind == GOOD and info.ap == -2
        info = reduction_at(c, 3)
        assert info.kind == GOOD and info.ap == -3

    def test_additive(self):
        c = curve_from_quintuple((0, 0, 0, 0, 1))  # disc = -432, c4 = 0
        for p in (2, 3):
            info = reduction_at(c, p)
            assert info.kind == ADDITIVE and info.ap == 0

    def test_multiplicative_split_and_nonsplit(self):
        c = curve_from_quintuple((0, 0, 1, -1, 0))  # disc 37
        info = reduction_at(c, 37)
        assert info.kind in (MULT_SPLIT, MULT_NONSPLIT)
        assert info.ap in (1, -1)
        # split iff -c6 is a square mod p; ap from counting must agree
        n = count_points(c, 37)
        assert 37 + 1 - n == info.ap

    def test_multiplicative_at_2_or_3_unsupported(self):
        c = curve_from_quintuple((0, -1, 0, 1, 0))  # disc = -48, c4 = -32
        assert c.disc % 3 == 0 and c.c4 % 3 != 0
        with pytest.raises(UnsupportedReduction):
            reduction_at(c, 3)


class TestExpansion:
    def test_first_coefficients_37(self):
        f = an_expansion(curve_from_quintuple((0, 0, 1, -1, 0)), 11)
        assert f.coeffs[1:] == (1, -2, -3, 2, -2, 6, -1, 0, 6, 4)

    def test_multiplicativity(self):
        for quint in [(0, 0, 1, -1, 0), (0, 0, 0, 0, 1), (0, 1, 1, 0, 0)]:
            f = an_expansion(curve_from_quintuple(quint), 201)
            for m in range(2, 200):
                for n in range(2, 200 // m + 1):
                    if math.gcd(m, n) == 1:
                        assert f.coeffs[m * n] == f.coeffs[m] * f.coeffs[n]

    def test_prime_power_recurrence_good(self):
        c = curve_from_quintuple((0, 0, 1, -1, 0))
        f = an_expansion(c, 130)
        for p in (2, 3, 5, 11):
            assert is_prime(p)
            k = 2
            while p**k < 130:
                lhs = f.coeffs[p**k]
                rhs = f.coeffs[p] * f.coeffs[p ** (k - 1)] - p * f.coeffs[p ** (k - 2)]
                assert lhs == rhs, (p, k)
                k += 1

    def test_bad_prime_powers(self):
        c = curve_from_quintuple((0, 0, 1, -1, 0))  # multiplicative at 37
        f = an_expansion(c, 37**2 + 1)
        assert f.coeffs[37**2] == f.coeffs[37] ** 2

    def test_two_curve_rows_agree(self):
        for rec in builtin_table1():
            if len(rec.curves) > 1:
                series = [
                    an_expansion(curve_from_quintuple(c), 101).coeffs
                    for c in rec.curves
                ]
                assert series[0] == series[1], rec.conductor
