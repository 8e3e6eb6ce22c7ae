"""Partition, averaging and DKK gauge tests for dkk-lab."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from dkk_lab.bases import summing_basis, unit_vector_basis
from dkk_lab.dkk import (
    DkkSpace,
    Partition,
    avg_projection,
    dkk_norm,
    dkk_of_repeated,
    g_map,
    h_map,
    q_projection,
    q_rows,
    v_coeffs,
)
from dkk_lab.error import ConfigurationError, DomainError, ErrorCode
from dkk_lab.seqspace import explicit_weight, lorentz, lp, power_weight, variation, weak_lorentz


class TestPartition:
    """Tests for ordered block partitions."""

    def test_dyadic_layout(self):
        partition = Partition.dyadic(3)
        assert partition.block_sizes == (1, 2, 4)
        assert_array_equal(partition.partial_sums, [1, 3, 7])
        assert_array_equal(partition.offsets, [0, 1, 3])
        assert partition.total == 7
        assert partition.block(1) == range(1, 3)
        assert_array_equal(partition.labels, [0, 1, 1, 2, 2, 2, 2])

    def test_validators(self):
        partition = Partition.dyadic(3)
        assert partition.c_sigma == pytest.approx(1.75)
        assert partition.growth_ratio == pytest.approx(0.75)
        assert partition.log_growth == pytest.approx(max(math.log(3) / 2, math.log(7) / 3))
        assert Partition.explicit([4]).growth_ratio == 0.0

    def test_block_unions(self):
        partition = Partition.dyadic(3)
        assert_array_equal(partition.block_union([2, 0]), [0, 3, 4, 5, 6])
        assert partition.blocks_of([2, 1]) == [1]
        assert partition.blocks_of([]) == []

    def test_not_block_aligned(self):
        with pytest.raises(DomainError) as exc_info:
            Partition.dyadic(3).blocks_of([1])
        assert exc_info.value.code == ErrorCode.NOT_BLOCK_ALIGNED

    def test_position_out_of_range(self):
        with pytest.raises(DomainError):
            Partition.dyadic(3).block_of(7)

    @pytest.mark.parametrize("sizes", [[], [2, 0], [3, -1]])
    def test_invalid_sizes(self, sizes):
        with pytest.raises(ConfigurationError) as exc_info:
            Partition.explicit(sizes)
        assert exc_info.value.code == ErrorCode.INVALID_PARTITION

    def test_dyadic_horizon_cap(self):
        with pytest.raises(ConfigurationError):
            Partition.dyadic(13)
        with pytest.raises(ConfigurationError):
            Partition.dyadic(0)


class TestAveraging:
    """Tests for P and Q."""

    def test_block_means(self):
        partition = Partition.dyadic(2)
        assert_allclose(avg_projection([5, 1, 3], partition), [5, 2, 2])
        assert_allclose(q_projection([5, 1, 3], partition), [0, -1, 1])

    def test_short_rows_are_padded(self):
        assert_allclose(avg_projection([4], Partition.dyadic(2)), [4, 0, 0])

    def test_q_is_idempotent(self, rng):
        partition = Partition.dyadic(4)
        X = rng.standard_normal((5, partition.total))
        once = q_rows(X, partition)
        assert_allclose(q_rows(once, partition), once, atol=1e-12)

    def test_support_beyond_partition(self):
        with pytest.raises(DomainError):
            avg_projection([1, 2, 3, 4], Partition.dyadic(2))


class TestDkkSpace:
    """Tests for the DKK gauge and the maps H and G."""

    def test_first_unit_vector(self, summing_dkk):
        assert dkk_norm(np.eye(summing_dkk.dim)[0], summing_dkk) == pytest.approx(1.0)

    def test_second_unit_vector(self, summing_dkk):
        """Q e_1 has l_2 norm 1/sqrt 2 and v_1*(e_1) = sqrt 2 / 2."""
        e = np.eye(summing_dkk.dim)[1]
        q_part, x_part = summing_dkk.parts(e)
        assert q_part[0] == pytest.approx(1 / math.sqrt(2))
        assert x_part[0] == pytest.approx(1 / math.sqrt(2))
        assert summing_dkk.norm(e) == pytest.approx(math.sqrt(2))

    def test_block_vectors_have_basis_norm(self, summing_dkk):
        for n in range(summing_dkk.horizon):
            v = summing_dkk.v_vector(n)
            expected = np.zeros(summing_dkk.horizon)
            expected[n] = 1.0
            assert_allclose(v_coeffs(v, summing_dkk), expected, atol=1e-12)
            assert summing_dkk.norm(v) == pytest.approx(1.0)

    def test_lift_block_coefficients(self, summing_dkk, rng):
        a = rng.standard_normal(summing_dkk.horizon)
        f = summing_dkk.lift_block_coefficients(a)
        assert_allclose(q_projection(f, summing_dkk.partition), 0.0, atol=1e-12)
        assert_allclose(summing_dkk.v_coeffs(f), a, rtol=1e-12)
        assert summing_dkk.norm(f) == pytest.approx(summing_basis().norm(a), rel=1e-12)

    def test_h_then_g(self, summing_dkk, rng):
        f = rng.standard_normal(summing_dkk.dim)
        assert_allclose(g_map(*h_map(f, summing_dkk), summing_dkk), f, atol=1e-12)

    def test_g_outside_range_of_q(self, summing_dkk):
        g = np.zeros(summing_dkk.dim)
        g[1] = 1.0
        with pytest.raises(DomainError) as exc_info:
            g_map(g, np.zeros(summing_dkk.horizon), summing_dkk)
        assert exc_info.value.code == ErrorCode.NOT_IN_RANGE_OF_Q

    def test_triangle_inequality(self, summing_dkk, rng):
        f, g = rng.standard_normal((2, summing_dkk.dim))
        assert summing_dkk.norm(f + g) <= summing_dkk.norm(f) + summing_dkk.norm(g) + 1e-12

    def test_padding_leaves_gauge_unchanged(self, summing_dkk):
        f = np.array([1.0, -2.0, 0.5])
        padded = np.zeros(summing_dkk.dim)
        padded[:3] = f
        assert summing_dkk.norm(padded) == pytest.approx(summing_dkk.norm(f), rel=1e-12)

    def test_gauge_with_weight_shorter_than_dim(self):
        """16 explicit weights, 31 coordinates; Q f = (0, -5/4, 5/4) and v*(f) = (1, -3/4 Lambda_2)."""
        space = lorentz(explicit_weight((1.0 / np.sqrt(np.arange(1, 17))).tolist()))
        Y = DkkSpace(basis=unit_vector_basis(space), space=space, partition=Partition.dyadic(5))
        padded = np.zeros(Y.dim)
        padded[:3] = [1.0, -2.0, 0.5]
        assert Y.norm(padded) == pytest.approx(2.0 + 3.0 / math.sqrt(2.0), rel=1e-12)

    def test_needs_subsymmetric_space(self):
        with pytest.raises(DomainError) as exc_info:
            DkkSpace(basis=summing_basis(), space=variation(), partition=Partition.dyadic(3))
        assert exc_info.value.code == ErrorCode.NOT_SUBSYMMETRIC
        with pytest.raises(DomainError):
            DkkSpace(
                basis=summing_basis(),
                space=weak_lorentz(power_weight(-0.5)),
                partition=Partition.dyadic(3),
            )

    def test_unit_vector_system(self, summing_dkk):
        trunc = summing_dkk.unit_vector_basis().truncate(summing_dkk.dim)
        e = np.eye(summing_dkk.dim)[1]
        assert trunc.norm(e) == pytest.approx(summing_dkk.norm(e))

    def test_label(self, summing_dkk):
        assert summing_dkk.label.startswith("Y[")
        assert summing_dkk.dim == 31

    def test_repeated_seed(self):
        space = dkk_of_repeated(summing_basis(), lp(2), 3)
        assert space.dim == 7
        assert space.norm(space.v_vector(0)) == pytest.approx(1.0)
