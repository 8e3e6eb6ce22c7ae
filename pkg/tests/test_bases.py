"""Basis representation tests for dkk-lab."""

import dataclasses

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from dkk_lab.bases import (
    LpCombination,
    block_repeat,
    copy_offsets,
    difference_basis,
    direct_sum,
    growth_table,
    project,
    summing_basis,
    unit_vector_basis,
)
from dkk_lab.error import ConfigurationError, DomainError
from dkk_lab.execution import RowJob, RowRunner
from dkk_lab.seqspace import c0, explicit_weight, lorentz, lp


class TestUnitVectorBasis:
    """Tests for the unit-vector system of a space."""

    def test_l2_norm(self, l2):
        basis = unit_vector_basis(l2)
        assert basis.norm([3, 4]) == pytest.approx(5.0)
        assert basis.unconditional

    def test_projection_commutes_with_to_ambient(self, l2, rng):
        trunc = unit_vector_basis(l2).truncate(6)
        f = rng.standard_normal(6)
        A = [1, 4]
        assert_array_equal(trunc.to_ambient(project(f, A)), project(trunc.to_ambient(f), A))

    def test_lorentz_vectors_have_norm_w1(self):
        space = lorentz(explicit_weight([2.0, 1.0, 0.5, 0.25]))
        assert_allclose(unit_vector_basis(space).norm_x(4), [2.0, 2.0, 2.0, 2.0])

    def test_functional_norms(self, l2):
        trunc = unit_vector_basis(l2).truncate(5)
        assert_allclose(trunc.coordinate_functional_norms(), np.ones(5))


class TestSummingBasis:
    """Tests for the summing basis of c0."""

    def test_alternating_coefficients(self):
        basis = summing_basis()
        assert_array_equal(basis.to_ambient([1, -1, 1, -1]), [0, -1, 0, -1])
        assert basis.norm([1, -1, 1, -1]) == pytest.approx(1.0)

    def test_normalized(self):
        assert summing_basis().norm([1]) == pytest.approx(1.0)
        assert_allclose(summing_basis().norm_x(6), np.ones(6))

    def test_two_vectors(self):
        assert_array_equal(summing_basis().to_ambient([1, 1]), [2, 1])
        assert summing_basis().norm([1, 1]) == pytest.approx(2.0)

    def test_exact_kind_and_functionals(self):
        trunc = summing_basis().truncate(4)
        assert trunc.exact_kind == "linf"
        # x_k* = e_k* - e_(k+1)* in l_1, so norms 2, 2, 2, 1
        assert_allclose(trunc.coordinate_functional_norms(), [2.0, 2.0, 2.0, 1.0])


class TestDifferenceBasis:
    """Tests for the difference basis of l_1."""

    def test_telescoping(self):
        basis = difference_basis()
        assert_array_equal(basis.to_ambient([1, 1]), [0, 1])
        assert basis.norm([1, 1]) == pytest.approx(1.0)

    def test_second_vector(self):
        assert_array_equal(difference_basis().to_ambient([0, 1]), [-1, 1])
        assert difference_basis().norm([0, 1]) == pytest.approx(2.0)

    def test_first_vector(self):
        assert difference_basis().norm([1, 0]) == pytest.approx(1.0)


class TestCombinators:
    """Tests for direct sums and repeated copies."""

    def test_direct_sum_odd_positions(self, rng):
        """Vectors on the B0 positions have the B0 norm of the deinterleaved coefficients."""
        b0, b1 = summing_basis(), difference_basis()
        combined = direct_sum(b0, b1)
        a = rng.standard_normal(4)
        f = np.zeros(7)
        f[0::2] = a
        assert combined.norm(f) == pytest.approx(b0.norm(a), rel=1e-12)

    def test_direct_sum_is_sum_norm(self, rng):
        b0, b1 = summing_basis(), difference_basis()
        combined = direct_sum(b0, b1)
        f = rng.standard_normal(8)
        expected = b0.norm(f[0::2]) + b1.norm(f[1::2])
        assert combined.norm(f) == pytest.approx(expected, rel=1e-12)

    def test_direct_sum_exact_kind_needs_matching_ambients(self):
        assert direct_sum(difference_basis(), difference_basis()).truncate(6).exact_kind == "l1"
        assert direct_sum(summing_basis(), difference_basis()).truncate(6).exact_kind is None

    def test_single_copy_matches_seed(self, rng):
        f = rng.standard_normal(5)
        repeated = block_repeat(summing_basis(), [5])
        assert repeated.norm(f) == pytest.approx(summing_basis().norm(f), rel=1e-12)

    def test_copies_combined_in_lp(self, rng):
        sizes = [1, 3, 7]
        f = rng.standard_normal(11)
        seed = summing_basis()
        parts = [seed.norm(f[0:1]), seed.norm(f[1:4]), seed.norm(f[4:11])]
        assert block_repeat(seed, sizes, p=1.0).norm(f) == pytest.approx(sum(parts), rel=1e-12)
        assert block_repeat(seed, sizes, p=0.0).norm(f) == pytest.approx(max(parts), rel=1e-12)
        assert block_repeat(seed, sizes, p=2.0).norm(f) == pytest.approx(
            np.sqrt(np.sum(np.square(parts))), rel=1e-12
        )

    def test_index_beyond_copies(self):
        with pytest.raises(DomainError):
            block_repeat(summing_basis(), [1, 3]).truncate(5)

    def test_invalid_sizes(self):
        with pytest.raises(ConfigurationError):
            block_repeat(summing_basis(), [])
        with pytest.raises(ConfigurationError):
            block_repeat(summing_basis(), [2], p=0.5)

    def test_offsets_and_growth(self):
        assert copy_offsets([1, 3, 7]) == [0, 1, 4]
        assert growth_table([1, 3, 7]) == pytest.approx([1 / 3, 4 / 7])

    def test_lp_combination_label_and_size(self):
        combo = LpCombination(p=0.0, parts=((c0(), 2), (lp(1), 3)))
        assert combo.size == 5
        assert combo.label == "max(c0,l1)"
        assert combo.exact_kind is None


class TestTruncationCache:
    """Tests for shared truncations of a frozen basis."""

    def test_same_dim_returns_same_truncation(self):
        basis = summing_basis()
        assert basis.truncate(6) is basis.truncate(6)
        assert basis.truncate(5) is not basis.truncate(6)

    def test_basis_carries_no_mutable_state(self):
        basis = summing_basis()
        assert all(
            not isinstance(getattr(basis, f.name), dict | list | set) for f in dataclasses.fields(basis)
        )

    def test_concurrent_truncation(self):
        basis = difference_basis()
        jobs = [RowJob(key=str(i), func=basis.truncate, args=(9,)) for i in range(16)]
        results = [r.unwrap() for r in RowRunner(max_workers=8).run_sync(jobs)]
        for trunc in results:
            assert_array_equal(trunc.matrix, results[0].matrix)
        assert basis.truncate(9).norm(np.ones(9)) == pytest.approx(1.0)
