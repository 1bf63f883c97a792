import pytest

from digitfract import (BudgetExceeded, ComplementFinite, DigitSystem,
                        ExplicitTruncated, InvalidParams, NaturalMeasure,
                        depth_for_tolerance, digit_factor,
                        fourier_coefficient, nondecay_scan)
from conftest import direct_transform

# regression constants from a first run of the direct-sum oracle
ODDS_B2_NONZERO = 0.692628912699446
ODDS_B3_NONZERO = 0.409667168471023


class TestDigitFactor:
    def test_zero_frequency(self, sys2, sys3, odds):
        for system in (sys2, sys3):
            measure = NaturalMeasure(system, odds)
            assert digit_factor(measure, 5, 0) == 1.0

    def test_exact_cancellation_at_free_position(self, sys2, odds):
        measure = NaturalMeasure(sys2, odds)
        for n in (1, 3, 5, 9):
            assert abs(digit_factor(measure, n, 2**(n - 1))) < 1e-15

    def test_single_digit_restriction_gives_one(self, sys2, odds):
        measure = NaturalMeasure(sys2, odds)
        for m in (1, 7, 12345):
            assert digit_factor(measure, 2, m) == 1.0  # position 2 carries 0

    def test_modulus_bounded(self, sys3, cube):
        measure = NaturalMeasure(sys3, cube)
        for n in range(1, 12):
            for m in (1, 5, 100, 10**6):
                assert abs(digit_factor(measure, n, m)) <= 1.0 + 1e-15


class TestCoefficient:
    def test_normalization(self, sys2, odds):
        fv = fourier_coefficient(NaturalMeasure(sys2, odds), 0, 10)
        assert fv.value == 1.0
        assert fv.tail_bound == 0.0

    def test_conjugate_symmetry(self, sys3, cube):
        measure = NaturalMeasure(sys3, cube)
        for m in (1, 2, 17, 500):
            plus = fourier_coefficient(measure, m, 15).value
            minus = fourier_coefficient(measure, -m, 15).value
            assert abs(plus - minus.conjugate()) < 1e-13

    def test_modulus_at_most_one(self, sys2, cube):
        measure = NaturalMeasure(sys2, cube)
        for m in range(-20, 21):
            fv = fourier_coefficient(measure, m, 12)
            assert abs(fv.value) <= 1.0 + 1e-12

    def test_direct_sum_agreement_spec_case(self, sys2, odds):
        measure = NaturalMeasure(sys2, odds)
        product = fourier_coefficient(measure, 2, 12).value
        direct = direct_transform(sys2, odds, 12, 2)
        assert abs(product - direct) < 1e-12

    @pytest.mark.parametrize("base,digits,ps_name", [
        (2, (0,), "odds"), (2, (0,), "cube"), (2, (1,), "odds"),
        (3, (0, 2), "odds"), (3, (0, 2), "cube"), (3, (1, 2), "cube"),
    ])
    def test_product_equals_direct_sum(self, base, digits, ps_name, odds,
                                       cube):
        system = DigitSystem(base, digits)
        positions = odds if ps_name == "odds" else cube
        depth = 10 if base == 2 else 7
        measure = NaturalMeasure(system, positions)
        for m in (1, 3, 17, 101, 9999, -256):
            product = fourier_coefficient(measure, m, depth).value
            direct = direct_transform(system, positions, depth, m)
            assert abs(product - direct) < 1e-12

    def test_depth_stability_within_tail_bound(self, sys2, odds):
        measure = NaturalMeasure(sys2, odds)
        for m in (3, 10, 77):
            shallow = fourier_coefficient(measure, m, 20)
            deep = fourier_coefficient(measure, m, 25)
            assert abs(shallow.value - deep.value) <= shallow.tail_bound

    def test_tail_bound_shrinks_to_tolerance(self, sys2, odds):
        depth = depth_for_tolerance(DigitSystem(2, (0,)), 2**15, 1e-12)
        fv = fourier_coefficient(NaturalMeasure(sys2, odds), 2**15, depth)
        assert fv.tail_bound <= 1e-12


class TestNondecayScan:
    def test_odds_b2(self, sys2, odds):
        measure = NaturalMeasure(sys2, odds)
        rows = nondecay_scan(measure, range(2, 16))
        for row in rows:
            if row["next_position_free"]:
                assert row["abs"] <= 1e-12
            else:
                assert abs(row["abs"] - ODDS_B2_NONZERO) < 1e-12

    def test_odds_b3(self, sys3, odds):
        measure = NaturalMeasure(sys3, odds)
        rows = nondecay_scan(measure, range(2, 11))
        for row in rows:
            if row["next_position_free"]:
                assert row["abs"] <= 1e-12
            else:
                assert abs(row["abs"] - ODDS_B3_NONZERO) < 1e-12

    def test_cube_blocks_scan_stays_positive_off_blocks(self, sys2, cube):
        measure = NaturalMeasure(sys2, cube)
        rows = nondecay_scan(measure, [k for k in range(3, 12)
                                       if not cube.contains(k + 1)])
        assert all(row["abs"] > 0.25 for row in rows)

    def test_complement_finite_rejected(self, sys2):
        everything = ExplicitTruncated(list(range(1, 31)), horizon=30)
        with pytest.raises(ComplementFinite):
            nondecay_scan(NaturalMeasure(sys2, everything), [2, 3])

    def test_block_maxima(self, sys2, odds):
        measure = NaturalMeasure(sys2, odds)
        rows = nondecay_scan(measure, [3, 4], block_maxima=True)
        for row in rows:
            assert row["block_max_abs"] >= row["abs"] - 1e-15
            assert row["frequency"] <= row["block_max_frequency"] \
                < row["frequency"] * 2

    def test_block_budget(self, sys2, odds):
        measure = NaturalMeasure(sys2, odds)
        with pytest.raises(BudgetExceeded):
            nondecay_scan(measure, [12], block_maxima=True, block_budget=100)

    def test_bad_exponents(self, sys2, odds):
        with pytest.raises(InvalidParams):
            nondecay_scan(NaturalMeasure(sys2, odds), [])
