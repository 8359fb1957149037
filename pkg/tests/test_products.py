"""Infinite-product exponent extraction and block reading."""

import random

import pytest

from newform_products.elliptic import an_expansion, curve_from_quintuple
from newform_products.errors import NonMonicSeries, PrecisionExceeded
from newform_products.products import (
    ExponentSequence,
    block_profile,
    extract_exponents,
    extract_exponents_peeling,
    generalized_logder_check,
    infer_block,
    log_derivative_quotient,
    reconstruct,
    unit_product,
)
from newform_products.qseries import PowerSeries
from newform_products.registry import builtin_table1, record_for


def f37(order: int) -> PowerSeries:
    return an_expansion(curve_from_quintuple((0, 0, 1, -1, 0)), order)


class TestLogDerivative:
    def test_geometric_series(self):
        # f = q/(1-q): E_f = 1 + q*(1/(1-q))'/(1/(1-q)) = 1 + q/(1-q)
        f = PowerSeries.from_terms({n: 1 for n in range(1, 12)}, 12)
        e = log_derivative_quotient(f)
        assert e.coeffs == (1,) + (1,) * 10

    def test_requires_monic(self):
        with pytest.raises(NonMonicSeries):
            log_derivative_quotient(PowerSeries.from_terms({0: 1, 1: 1}, 5))
        with pytest.raises(NonMonicSeries):
            log_derivative_quotient(PowerSeries.from_terms({1: 2}, 5))


class TestRoundTrip:
    def test_random_exponents_roundtrip(self):
        rng = random.Random(7)
        for _ in range(100):
            g = ExponentSequence(tuple(rng.randint(-10, 10) for _ in range(24)))
            f = reconstruct(g, 25)
            back = extract_exponents(f)
            assert back.upto == 23
            assert back.g == g.g[: back.upto]

    def test_integrality_of_extraction(self):
        # coefficient sequences of curve expansions always invert to integers
        rng = random.Random(11)
        quintuples = [rec.curves[0] for rec in builtin_table1()]
        for _ in range(200):
            quint = rng.choice(quintuples)
            f = an_expansion(curve_from_quintuple(quint), 41)
            g = extract_exponents(f)
            assert all(isinstance(v, int) for v in g.g)

    def test_peeling_oracle_agrees(self):
        for rec in builtin_table1():
            f = an_expansion(curve_from_quintuple(rec.curves[0]), 41)
            assert extract_exponents(f).g == extract_exponents_peeling(f).g

    def test_reconstruct_precision_guard(self):
        g = ExponentSequence((1, 1, 1))
        with pytest.raises(PrecisionExceeded):
            reconstruct(g, 6)

    def test_unit_product_matches_reconstruct(self):
        g = ExponentSequence((2, -1, 3, 0, -2))
        u = unit_product(g, 6)
        f = reconstruct(g, 6)
        assert f.coeffs[1:] == u.coeffs[:5]


class TestKnownBlocks:
    def test_f37_exponents(self):
        g = extract_exponents(f37(14))
        assert g.g[:12] == tuple(2 * a for a in record_for(37).a_printed)

    def test_row36_reconstructs(self):
        rec = record_for(36)
        # g_{6n} = 4, else 0, out to 30 terms
        g = ExponentSequence(tuple(4 if n % 6 == 0 else 0 for n in range(1, 31)))
        f = reconstruct(g, 31)
        target = an_expansion(curve_from_quintuple(rec.curves[0]), 31)
        assert f.coeffs == target.coeffs

    def test_block_profile_grid(self):
        rec = record_for(88)  # r=1, t=2
        f = an_expansion(curve_from_quintuple(rec.curves[0]), 2 * 12 + 2)
        profile = block_profile(extract_exponents(f), 1, 2)
        assert profile.a[:12] == rec.a_printed

    def test_block_profile_detects_off_grid(self):
        g = ExponentSequence((0, 4, 1, 0, 0, 4))  # support {2, 3, 6}, not 2-grid
        from newform_products.errors import BlockMismatch

        with pytest.raises(BlockMismatch):
            block_profile(g, 4, 2)

    def test_infer_block(self):
        g = ExponentSequence((0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 4))
        assert infer_block(g) == (4, 6)
        g = extract_exponents(f37(14))
        assert infer_block(g) == (2, 1)

    def test_monotone_report_row_101(self):
        rec = record_for(101)
        f = an_expansion(curve_from_quintuple(rec.curves[0]), 14)
        profile = block_profile(extract_exponents(f), 1, 1)
        # a_1 = 0 and the early plateau are reported, never raised
        assert 1 in profile.monotone_report


class TestGeneralizedCheck:
    def test_single_block_consistency(self):
        f = f37(41)
        a = extract_exponents(f)
        half = tuple(v // 2 for v in a.g)
        ok, where = generalized_logder_check([(half, 2, 1)], f, 41)
        assert ok and where is None

    def test_perturbation_located(self):
        f = f37(41)
        a = extract_exponents(f)
        half = list(v // 2 for v in a.g)
        half[2] += 1  # perturb a_3
        ok, where = generalized_logder_check([(tuple(half), 2, 1)], f, 41)
        assert not ok and where == 3

    def test_block_splitting_linearity(self):
        # r*a on grid t  ==  sum of two blocks (r-1)*a and 1*a on the same grid
        f = f37(41)
        a = extract_exponents(f)
        half = tuple(v // 2 for v in a.g)
        ok, _ = generalized_logder_check([(half, 1, 1), (half, 1, 1)], f, 41)
        assert ok

    def test_insufficient_terms(self):
        f = f37(41)
        with pytest.raises(PrecisionExceeded):
            generalized_logder_check([((1, 2, 3), 2, 1)], f, 41)
