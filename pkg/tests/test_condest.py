"""Conditionality-constant tests for dkk-lab."""

import math

import numpy as np
import pytest

from dkk_lab.bases import (
    block_repeat,
    difference_basis,
    direct_sum,
    summing_basis,
    unit_vector_basis,
)
from dkk_lab.condest import (
    MAX_EXACT_M,
    Witness,
    block_repeat_witness,
    compute_k_m,
    compute_L_m,
    direct_sum_witness,
    dkk_witness_lb,
    growth_check,
    log_growth_fit,
    proj_operator_norm,
)
from dkk_lab.error import BudgetError, DomainError, ErrorCode, FitError


class TestProjectionNorms:
    """Tests for single coordinate projections."""

    def test_summing_first_coordinate(self):
        """S_{0} on two summing vectors is [[1, -1], [0, 0]] in c0."""
        result = proj_operator_norm(summing_basis(), [0], dim=2)
        assert result.exact
        assert result.value == pytest.approx(2.0)

    def test_witness_attains_value(self):
        result = proj_operator_norm(summing_basis(), [0, 2, 4], dim=6)
        trunc = summing_basis().truncate(6)
        assert result.witness.ratio(trunc) == pytest.approx(result.value, rel=1e-9)

    def test_empty_subset(self):
        assert proj_operator_norm(summing_basis(), [], dim=4).value == 0.0

    def test_subset_out_of_range(self):
        with pytest.raises(DomainError) as exc_info:
            proj_operator_norm(summing_basis(), [0, 7], dim=4)
        assert exc_info.value.code == ErrorCode.INDEX_OUT_OF_RANGE

    def test_unconditional_basis(self, l2):
        result = proj_operator_norm(unit_vector_basis(l2), [1, 3], dim=5)
        assert result.exact
        assert result.value == 1.0


class TestConditionalityConstants:
    """Tests for L_m and k_m."""

    def test_first_values_of_summing(self):
        assert compute_L_m(summing_basis(), 1).value == pytest.approx(1.0)
        assert compute_L_m(summing_basis(), 2).value == pytest.approx(2.0)

    def test_summing_l4_at_least_two(self):
        result = compute_L_m(summing_basis(), 4)
        assert result.exact
        assert result.value >= 2.0 - 1e-12

    def test_non_decreasing_in_m(self):
        values = [compute_L_m(summing_basis(), m).value for m in range(1, 9)]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:], strict=False))

    @pytest.mark.parametrize("m", [2, 5, 8])
    def test_difference_matches_summing(self, m):
        left = compute_L_m(difference_basis(), m).value
        right = compute_L_m(summing_basis(), m).value
        assert left == pytest.approx(right, rel=1e-9)

    def test_exact_witness_reproduces(self):
        result = compute_L_m(summing_basis(), 6)
        assert result.witness.ratio(summing_basis().truncate(6)) == pytest.approx(
            result.value, rel=1e-9
        )

    def test_search_is_lower_bound(self):
        exact = compute_L_m(summing_basis(), 7, mode="exact").value
        found = compute_L_m(summing_basis(), 7, mode="search", budget=16, seed=3)
        assert not found.exact
        assert found.value <= exact + 1e-9

    def test_extra_candidates_floor_search(self):
        exact = compute_L_m(summing_basis(), 5)
        found = compute_L_m(
            summing_basis(), 5, mode="search", budget=0, extra_candidates=[exact.witness]
        )
        assert found.value >= exact.value - 1e-9

    def test_unconditional_is_one(self, l2):
        result = compute_L_m(unit_vector_basis(l2), 12)
        assert result.exact
        assert result.value == 1.0

    def test_exact_cap(self):
        with pytest.raises(BudgetError) as exc_info:
            compute_L_m(summing_basis(), MAX_EXACT_M + 1, mode="exact")
        assert exc_info.value.code == ErrorCode.EXACT_CAP_EXCEEDED

    def test_m_must_be_positive(self):
        with pytest.raises(DomainError):
            compute_L_m(summing_basis(), 0)

    def test_k_m_full_size_equals_l_m(self):
        k = compute_k_m(summing_basis(), 4, dim=4).value
        assert k == pytest.approx(compute_L_m(summing_basis(), 4).value, rel=1e-9)

    def test_k_m_non_decreasing(self):
        values = [compute_k_m(summing_basis(), m, dim=8).value for m in (1, 2, 3)]
        assert values[1] >= values[0] - 1e-12
        assert values[2] >= values[1] - 1e-12

    def test_k_m_above_dimension(self):
        with pytest.raises(DomainError):
            compute_k_m(summing_basis(), 5, dim=4)


class TestWitnessTransfers:
    """Tests for moving witnesses between bases."""

    def test_dkk_lower_bound_dominates_seed(self, summing_dkk):
        for r in (2, 3, 4):
            seed_value = compute_L_m(summing_basis(), r).value
            lifted = dkk_witness_lb(summing_dkk, r, budget=4, seed=1)
            assert not lifted.exact
            assert lifted.value >= seed_value - 1e-9
            assert lifted.witness.ratio(summing_dkk) == pytest.approx(lifted.value, rel=1e-9)

    def test_dkk_witness_range(self, summing_dkk):
        with pytest.raises(DomainError):
            dkk_witness_lb(summing_dkk, 6)

    def test_direct_sum_witness_keeps_ratio(self):
        seed = compute_L_m(summing_basis(), 4)
        moved = direct_sum_witness(seed.witness)
        trunc = direct_sum(summing_basis(), difference_basis()).truncate(len(moved.f))
        assert moved.ratio(trunc) == pytest.approx(seed.value, rel=1e-9)
        assert moved.subset == tuple(2 * j for j in seed.witness.subset)

    def test_block_repeat_witness_keeps_ratio(self):
        sizes = [1, 3, 7]
        seed = compute_L_m(summing_basis(), 3)
        moved = block_repeat_witness(seed.witness, sizes, copy=1)
        trunc = block_repeat(summing_basis(), sizes).truncate(len(moved.f))
        assert len(moved.f) == 4
        assert moved.ratio(trunc) == pytest.approx(seed.value, rel=1e-9)

    def test_block_repeat_witness_too_long(self):
        witness = Witness.of(np.ones(4), [0])
        with pytest.raises(DomainError):
            block_repeat_witness(witness, [1, 3], copy=1)

    def test_witness_dict_round_trip(self):
        witness = Witness.of([1.0, -1.0, 0.5], [2, 0])
        assert witness.subset == (0, 2)
        assert Witness.from_dict(witness.to_dict()) == witness


class TestGrowth:
    """Tests for growth fits and the growth condition."""

    def test_exact_log_fit(self):
        points = [(m, 2.0 * math.log(m) + 1.0) for m in (2, 4, 8, 16, 32)]
        fit = log_growth_fit(points)
        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(1.0)
        assert fit.residual == pytest.approx(0.0, abs=1e-18)
        assert fit.points == 5

    def test_base_two_power_two(self):
        points = [(m, math.log2(m) ** 2) for m in (2, 4, 8, 16)]
        fit = log_growth_fit(points, power=2.0, base=2.0)
        assert fit.slope == pytest.approx(1.0)

    def test_too_few_points(self):
        with pytest.raises(FitError) as exc_info:
            log_growth_fit([(2, 1.0), (4, 2.0)])
        assert exc_info.value.code == ErrorCode.TOO_FEW_POINTS

    def test_degenerate_abscissas(self):
        with pytest.raises(FitError) as exc_info:
            log_growth_fit([(3, 1.0), (3, 2.0), (3, 3.0)])
        assert exc_info.value.code == ErrorCode.DEGENERATE_ABSCISSAS

    def test_growth_condition(self):
        assert growth_check([1, 3, 7]) == pytest.approx(4 / 7)
        assert growth_check([5]) == 0.0
