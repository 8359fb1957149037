import random
from fractions import Fraction

import pytest

from newform_products.arith import binomial_int
from newform_products.errors import (
    IncompatibleExponent,
    NonUnitConstantTerm,
    PrecisionExceeded,
)
from newform_products.qseries import (
    FracSeries,
    PowerSeries,
    frac_equal_to,
    frac_monomial,
    frac_mul,
    frac_pow,
    frac_shift,
    frac_subst_scale,
)


def series(*coeffs):
    return PowerSeries(tuple(coeffs))


def rand_series(rng, order, bound=9):
    return PowerSeries(tuple(rng.randint(-bound, bound) for _ in range(order)))


class TestAddMul:
    def test_add_examples(self):
        a = PowerSeries.from_terms({0: 1, 1: 1}, 10)
        b = PowerSeries.from_terms({0: 1, 1: -1}, 10)
        assert (a + b).coeffs == (2,) + (0,) * 9
        z = PowerSeries.zero(10)
        assert (a + z).coeffs == a.coeffs

    def test_add_truncates_to_min_order(self):
        a = PowerSeries.one(5)
        b = PowerSeries.one(8)
        assert (a + b).order == 5

    def test_mul_geometric(self):
        one_minus_q = PowerSeries.from_terms({0: 1, 1: -1}, 12)
        geo = PowerSeries((1,) * 12)
        assert (one_minus_q * geo).coeffs == PowerSeries.one(12).coeffs

    def test_mul_square(self):
        a = PowerSeries.from_terms({0: 1, 1: 1}, 6)
        assert (a * a).coeffs == (1, 2, 1, 0, 0, 0)

    def test_mul_identity(self):
        rng = random.Random(7)
        a = rand_series(rng, 9)
        assert (a * PowerSeries.one(9)).coeffs == a.coeffs


class TestInverse:
    def test_geometric(self):
        a = PowerSeries.from_terms({0: 1, 1: -1}, 8)
        assert a.inverse().coeffs == (1,) * 8

    def test_one(self):
        assert PowerSeries.one(5).inverse().coeffs == PowerSeries.one(5).coeffs

    def test_fibonacci(self):
        a = PowerSeries.from_terms({0: 1, 1: -1, 2: -1}, 8)
        assert a.inverse().coeffs == (1, 1, 2, 3, 5, 8, 13, 21)

    def test_two_sided(self):
        rng = random.Random(21)
        for _ in range(20):
            a = rand_series(rng, 16)
            a = PowerSeries((rng.choice([1, -1]),) + a.coeffs[1:])
            assert (a * a.inverse()).coeffs == PowerSeries.one(16).coeffs
            assert (a.inverse() * a).coeffs == PowerSeries.one(16).coeffs

    def test_rejects_non_unit(self):
        with pytest.raises(NonUnitConstantTerm):
            series(2, 1, 1).inverse()

    def test_rational_inverse_allows_any_nonzero(self):
        a = PowerSeries((Fraction(2), Fraction(1)))
        assert (a * a.inverse()).coeffs == (Fraction(1), Fraction(0))


class TestPow:
    def test_binomial_cases(self):
        a = PowerSeries.from_terms({0: 1, 1: -1}, 6)
        assert a.pow_int(4).coeffs == (1, -4, 6, -4, 1, 0)
        assert a.pow_int(-2).coeffs == (1, 2, 3, 4, 5, 6)
        assert a.pow_int(0).coeffs == PowerSeries.one(6).coeffs

    def test_negative_power_needs_unit(self):
        with pytest.raises(NonUnitConstantTerm):
            series(3, 1).pow_int(-1)

    def test_binomial_shortcut_matches_series_power(self):
        # sum_k C(g,k)(-x)^k truncated equals the pow/inverse route
        T = 20
        for g in range(-5, 6):
            for n in (1, 2, 3):
                base = PowerSeries.from_terms({0: 1, n: -1}, T)
                direct = base.pow_int(g)
                expected = [0] * T
                k = 0
                while k * n < T:
                    expected[k * n] = binomial_int(g, k) * (-1) ** k
                    if g >= 0 and k == g:
                        break
                    k += 1
                assert direct.coeffs == tuple(expected), (g, n)

    def test_exponent_addition(self):
        rng = random.Random(5)
        a = PowerSeries((1,) + tuple(rng.randint(-3, 3) for _ in range(11)))
        for x in range(-3, 4):
            for y in range(-3, 4):
                lhs = a.pow_int(x + y)
                rhs = a.pow_int(x) * a.pow_int(y)
                assert lhs.coeffs == rhs.coeffs


class TestDerivationAndSubst:
    def test_q_d_dq_examples(self):
        assert series(1, 1, 1).q_d_dq().coeffs == (0, 1, 2)
        assert series(5).q_d_dq().coeffs == (0,)
        geo_q = PowerSeries.from_terms({n: 1 for n in range(1, 6)}, 6)
        assert geo_q.q_d_dq().coeffs == (0, 1, 2, 3, 4, 5)

    def test_derivation_rule(self):
        rng = random.Random(11)
        for _ in range(25):
            a, b = rand_series(rng, 12), rand_series(rng, 12)
            lhs = (a * b).q_d_dq()
            rhs = a.q_d_dq() * b + a * b.q_d_dq()
            assert lhs.coeffs == rhs.coeffs

    def test_subst_examples(self):
        assert series(1, 1, 1).subst_monomial(-1, 2).coeffs == (1, 0, -1, 0, 1, 0)
        a = series(3, -2, 5)
        assert a.subst_monomial(1, 1).coeffs == a.coeffs
        assert series(1, 1).subst_monomial(-1, 3).coeffs == (1, 0, 0, -1, 0, 0)

    def test_subst_is_ring_morphism(self):
        rng = random.Random(13)
        for sign, t in [(1, 2), (-1, 2), (-1, 3)]:
            a, b = rand_series(rng, 10), rand_series(rng, 10)
            lhs = (a * b).subst_monomial(sign, t)
            rhs = a.subst_monomial(sign, t) * b.subst_monomial(sign, t)
            assert lhs.coeffs == rhs.coeffs


class TestRingAxioms:
    def test_randomized_axioms(self):
        rng = random.Random(2024)
        T = 32
        for _ in range(100):
            a, b, c = (rand_series(rng, T) for _ in range(3))
            assert ((a * b) * c).coeffs == (a * (b * c)).coeffs
            assert (a * (b + c)).coeffs == (a * b + a * c).coeffs
            assert (a * b).coeffs == (b * a).coeffs
            assert (a + b).coeffs == (b + a).coeffs

    def test_truncation_monotone(self):
        # recomputing at higher order reproduces lower-order coefficients
        rng = random.Random(3)
        a_hi, b_hi = rand_series(rng, 40), rand_series(rng, 40)
        a_lo, b_lo = a_hi.truncate(20), b_hi.truncate(20)
        assert (a_lo * b_lo).coeffs == (a_hi * b_hi).coeffs[:20]


class TestFracSeries:
    def test_frac_mul_offsets_add(self):
        a = frac_monomial(Fraction(1, 24), 4)
        b = frac_monomial(Fraction(1, 24), 4)
        prod = frac_mul(a, b)
        assert prod.leading_exponent == Fraction(1, 12)

    def test_inverse_cancels(self):
        eta_like = FracSeries.make(
            24, 1, PowerSeries.from_terms({0: 1, 24: -1, 48: -1}, 24 * 6)
        )
        prod = frac_mul(eta_like, frac_pow(eta_like, -1))
        assert prod.leading_exponent == 0
        assert prod.support() == [(Fraction(0), 1)]

    def test_denominator_normalizes_away(self):
        a = FracSeries.make(4, 1, PowerSeries.from_terms({0: 1, 4: 2}, 12))
        b = FracSeries.make(4, 3, PowerSeries.from_terms({0: 1, 4: 5}, 12))
        prod = frac_mul(a, b)
        assert prod.denom == 1
        assert prod.leading_exponent == 1

    def test_frac_pow_zero_and_inverse_pair(self):
        a = FracSeries.make(24, 1, PowerSeries.from_terms({0: 1, 24: -1}, 72))
        assert frac_pow(a, 0).support() == [(Fraction(0), 1)]
        ident = frac_mul(frac_pow(a, -1), frac_pow(a, 1))
        assert ident.support() == [(Fraction(0), 1)]

    def test_frac_pow_scales_leading_exponent(self):
        # eta-shaped block at scale 6 raised to the 4th: leading exponent 1
        eta = FracSeries.make(24, 1, PowerSeries.from_terms({0: 1, 24: -1}, 24 * 30))
        scaled = frac_subst_scale(eta, 6)
        assert frac_pow(scaled, 4).leading_exponent == 1

    def test_coeff_at(self):
        a = FracSeries.make(4, 1, PowerSeries.from_terms({0: 1, 4: -4}, 20))
        assert a.coeff_at(Fraction(1, 4)) == 1
        assert a.coeff_at(Fraction(5, 4)) == -4
        assert a.coeff_at(Fraction(3, 4)) == 0
        with pytest.raises(IncompatibleExponent):
            a.coeff_at(Fraction(1, 3))
        with pytest.raises(PrecisionExceeded):
            a.coeff_at(100)

    def test_frac_shift_is_exact(self):
        a = FracSeries.make(1, 0, PowerSeries((1, 2, 3, 4)))
        shifted = frac_shift(a, Fraction(-1, 2))
        assert shifted.coeff_at(Fraction(-1, 2)) == 1
        assert shifted.coeff_at(Fraction(5, 2)) == 4
        assert shifted.exponent_bound() == Fraction(7, 2)

    def test_equal_objects_equal_representations(self):
        a = FracSeries.make(8, 2, PowerSeries.from_terms({0: 1, 4: 7}, 16))
        b = FracSeries.make(4, 1, PowerSeries.from_terms({0: 1, 2: 7}, 8))
        assert (a.denom, a.offset, a.series.coeffs) == (b.denom, b.offset, b.series.coeffs)

    def test_frac_equal_to_reports_first_mismatch(self):
        a = FracSeries.make(2, 1, PowerSeries((1, 0, 2, 0, 3)))
        b = FracSeries.make(2, 1, PowerSeries((1, 0, 2, 0, 4)))
        ok, at = frac_equal_to(a, b, 3)
        assert not ok and at == Fraction(5, 2)
