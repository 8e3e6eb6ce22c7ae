"""Sequence-space norm tests for dkk-lab."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from dkk_lab.error import ConfigurationError, DomainError
from dkk_lab.seqspace import (
    ClassicalLorentzWeight,
    as_sequence,
    bidemocracy_product,
    c0,
    dual_norm_lb,
    eval_norm,
    explicit_weight,
    fit_length,
    fundamental_lambda,
    indicator,
    lambda_star,
    lifting_L,
    lorentz,
    lp,
    power_weight,
    rearrange_nonincreasing,
    retraction_T,
    variation,
    weak_lorentz,
)


class TestFiniteSequences:
    """Tests for finite sequence helpers."""

    def test_rearrange_examples(self):
        """Test the non-increasing rearrangement."""
        assert_array_equal(rearrange_nonincreasing([0, -2, 1]), [2, 1, 0])
        assert_array_equal(rearrange_nonincreasing([1, 1, 1]), [1, 1, 1])
        assert_array_equal(rearrange_nonincreasing([5]), [5])

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            as_sequence([1.0, math.nan])

    def test_fit_length_pads_and_trims(self):
        assert_array_equal(fit_length([1, 2], 4), [1, 2, 0, 0])
        assert_array_equal(fit_length([1, 2, 0, 0], 2), [1, 2])

    def test_fit_length_refuses_to_drop_support(self):
        with pytest.raises(DomainError):
            fit_length([1, 2, 3], 2)

    def test_indicator_out_of_range(self):
        with pytest.raises(DomainError):
            indicator([0, 5], 3)


class TestNorms:
    """Tests for eval_norm on every space family."""

    def test_l2_pythagoras(self, l2):
        assert eval_norm(l2, [3, 4]) == pytest.approx(5.0)

    def test_lorentz_example(self):
        """Rearranged (3, 2, 1) against w = (1, 1/2, 1/3)."""
        space = lorentz(explicit_weight([1.0, 0.5, 1.0 / 3.0]))
        assert eval_norm(space, [3, 1, 2]) == pytest.approx(13.0 / 3.0, rel=1e-12)

    def test_weak_lorentz_example(self):
        space = weak_lorentz(explicit_weight([1.0, 1.0, 1.0]))
        assert eval_norm(space, [3, 1, 2]) == pytest.approx(4.0)

    def test_variation_example(self):
        assert eval_norm(variation(), [1, 3, 2]) == pytest.approx(4.0)

    def test_closed_variation_adds_return_to_zero(self):
        assert eval_norm(variation(closed=True), [1, 3, 2]) == pytest.approx(6.0)

    def test_c0_is_max_norm(self):
        assert eval_norm(c0(), [1, -7, 3]) == pytest.approx(7.0)
        assert eval_norm(lp("inf"), [2, -1]) == pytest.approx(2.0)

    def test_empty_sequence_has_norm_zero(self, l2):
        assert eval_norm(l2, []) == 0.0

    def test_zero_iff_zero(self, sqrt_lorentz):
        assert eval_norm(sqrt_lorentz, np.zeros(5)) == 0.0
        assert eval_norm(sqrt_lorentz, [0, 0, 1e-9]) > 0.0

    def test_p_below_one_is_configuration_error(self):
        with pytest.raises(ConfigurationError):
            lp(0.5)

    def test_lorentz_needs_non_increasing_weight(self):
        with pytest.raises(ConfigurationError):
            lorentz(power_weight(0.5))

    @pytest.mark.parametrize("space", [lp(1), lp(1.5), lp(3), lorentz(power_weight(-0.5))])
    def test_symmetric_under_permutation_and_signs(self, space, rng):
        """Permuting or re-signing gives bit-identical values."""
        f = rng.standard_normal(12)
        g = -f[rng.permutation(12)]
        assert space.norm(f) == space.norm(g)

    def test_batched_norms_match_single(self, sqrt_lorentz, rng):
        X = rng.standard_normal((6, 9))
        assert_allclose(sqrt_lorentz.norms(X), [sqrt_lorentz.norm(row) for row in X], rtol=1e-12)

    @pytest.mark.parametrize(
        "space",
        [
            lp(1),
            lp(1.5),
            lp(2),
            c0(),
            lorentz(power_weight(-0.5)),
            lorentz(explicit_weight([1.0, 0.5, 1.0 / 3.0])),
            lorentz(explicit_weight([1.0, 0.5, 1.0 / 3.0]), q=2.0),
            weak_lorentz(power_weight(-0.5)),
            weak_lorentz(explicit_weight([1.0, 1.0, 1.0])),
            variation(closed=True),
        ],
        ids=lambda s: s.label,
    )
    @pytest.mark.parametrize("pad", [1, 2, 9])
    def test_trailing_zeros_leave_norm_unchanged(self, space, pad):
        f = [3.0, -1.0, 2.0]
        assert space.norm(f + [0.0] * pad) == pytest.approx(space.norm(f), rel=1e-12)

    def test_explicit_weight_on_padded_vectors(self):
        space = lorentz(explicit_weight([1.0, 0.5, 1.0 / 3.0]))
        assert space.norm([3, 1, 2, 0]) == pytest.approx(13.0 / 3.0, rel=1e-12)
        assert_allclose(space.norms([[3, 1, 2, 0, 0], [0, 0, 0, 1, 0]]), [13.0 / 3.0, 1.0], rtol=1e-12)
        weak = weak_lorentz(explicit_weight([1.0, 1.0, 1.0]))
        assert weak.norm([3, 1, 2, 0, 0]) == pytest.approx(4.0)

    def test_window_variation_counts_padding(self):
        """The window form measures a padded zero as a return to zero, like the closed form."""
        assert eval_norm(variation(), [1, 3, 2, 0]) == pytest.approx(6.0)
        assert eval_norm(variation(), [1, 3, 2, 0]) == eval_norm(variation(closed=True), [1, 3, 2])

    def test_explicit_weight_too_short(self):
        space = lorentz(explicit_weight([1.0, 0.5]))
        with pytest.raises(DomainError):
            space.norm([1, 2, 3])

    def test_classical_lorentz_weight(self):
        weight = ClassicalLorentzWeight(p=2.0, q=1.0)
        assert_allclose(weight.values(4), np.arange(1, 5) ** -0.5)
        assert weight.is_non_increasing()


class TestFundamentalFunction:
    """Tests for Lambda_m and Lambda*_m."""

    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0])
    def test_lp_lambda(self, p):
        for m in (1, 4, 9, 100):
            assert fundamental_lambda(lp(p), m) == pytest.approx(m ** (1.0 / p), rel=1e-12)
            assert lambda_star(lp(p), m) == pytest.approx(m ** (1.0 - 1.0 / p), rel=1e-12)

    def test_lambda_matches_indicator_norm(self, sqrt_lorentz):
        for m in (1, 5, 17):
            assert fundamental_lambda(sqrt_lorentz, m) == pytest.approx(sqrt_lorentz.norm(np.ones(m)))

    def test_lorentz_lambda_star(self):
        space = lorentz(explicit_weight([1.0, 0.5, 0.25]))
        assert lambda_star(space, 3) == pytest.approx(3.0 / 1.75)

    def test_lambda_one_is_unit_norm(self, sqrt_lorentz):
        assert fundamental_lambda(sqrt_lorentz, 1) == pytest.approx(sqrt_lorentz.norm([1.0]))

    def test_not_subsymmetric(self):
        with pytest.raises(DomainError):
            fundamental_lambda(variation(), 3)

    def test_m_must_be_positive(self, l2):
        with pytest.raises(DomainError):
            fundamental_lambda(l2, 0)


class TestDuality:
    """Tests for dual norms and bidemocracy products."""

    def test_l2_self_dual(self, l2):
        bound = dual_norm_lb(l2, [3, 4])
        assert bound.exact
        assert bound.value == pytest.approx(5.0)
        assert bound.recheck(l2, [3, 4]) == pytest.approx(5.0)

    def test_l1_dual_is_sup(self, l1):
        bound = dual_norm_lb(l1, [2, -5])
        assert bound.exact
        assert bound.value == pytest.approx(5.0)
        assert bound.recheck(l1, [2, -5]) == pytest.approx(5.0)

    def test_lorentz_flat_indicator(self):
        space = lorentz(explicit_weight([1.0, 0.5]))
        bound = dual_norm_lb(space, [1, 1], budget=0)
        assert bound.value >= 4.0 / 3.0 - 1e-12

    def test_lorentz_flat_indicator_beats_grid(self):
        """No point of a dense grid on the unit sphere pairs better than the exact value."""
        space = lorentz(explicit_weight([1.0, 0.5]))
        bound = dual_norm_lb(space, [1, 1])
        t = np.linspace(0.0, 2.0 * np.pi, 2001)
        F = np.column_stack([np.cos(t), np.sin(t)])
        values = F.sum(axis=1) / space.norms(F)
        assert values.max() <= bound.value * (1.0 + 1e-9)

    def test_padded_functional_with_explicit_weight(self):
        space = lorentz(explicit_weight([1.0, 0.5]))
        bound = dual_norm_lb(space, [1, 1, 0, 0], budget=0)
        assert bound.exact
        assert bound.value == pytest.approx(4.0 / 3.0, rel=1e-12)

    def test_search_witness_reproduces(self):
        space = lorentz(power_weight(-0.5), q=2.0)
        g = np.array([3.0, 1.0, 2.0, 0.5])
        bound = dual_norm_lb(space, g, budget=4, seed=1, sweeps=10)
        assert not bound.exact
        assert bound.recheck(space, g) == pytest.approx(bound.value, rel=1e-9)

    def test_zero_functional(self, l2):
        assert dual_norm_lb(l2, [0, 0]).value == 0.0

    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0])
    def test_bidemocracy_lp(self, p):
        for m in (1, 7, 250):
            product = bidemocracy_product(lp(p), m)
            assert product.exact
            assert product.value == pytest.approx(m, rel=1e-9)


class TestOperators:
    """Tests for the lifting L and retraction T."""

    def test_lift_and_retract(self):
        assert_array_equal(lifting_L([1, 2]), [1, 0, 2, 0])
        assert_array_equal(retraction_T([1, 0, 2, 0]), [1, 2])

    def test_retract_odd_length(self):
        assert_array_equal(retraction_T([1, 2, 3]), [-1, 3])

    def test_norm_bounds(self):
        f = np.array([1.0, -1.0, 1.0])
        v1, l1, sup = variation(), lp(1), c0()
        assert v1.norm(lifting_L(f)) <= 2.0 * l1.norm(f)
        assert l1.norm(retraction_T(f)) <= v1.norm(f)
        assert sup.norm(retraction_T(f)) <= 2.0 * sup.norm(f)

    def test_lifting_bound_is_attained(self):
        """L(e_1) = (1, 0) has variation 2."""
        assert variation().norm(lifting_L([1.0])) == pytest.approx(2.0)
