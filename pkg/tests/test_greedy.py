"""Greedy algorithm and greedy-constant estimate tests for dkk-lab."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dkk_lab.bases import summing_basis
from dkk_lab.error import BudgetError, DomainError
from dkk_lab.greedy import (
    Normer,
    admissible_greedy_sets,
    almost_greedy_ratio_smallcase,
    fundamental_phi,
    greedy_order,
    greedy_set,
    greedy_trace,
    is_greedy_set,
    partial_sum_ratio,
    qg_ratio_estimate,
    superdemocracy_ratio,
)
from dkk_lab.seqspace import lp


class TestGreedySets:
    """Tests for greedy orderings and sets."""

    def test_order_breaks_ties_by_index(self):
        assert list(greedy_order([0, -3, 3, 1])) == [1, 2, 3]

    def test_greedy_set(self):
        assert greedy_set([0, -3, 3, 1], 1) == (1,)
        assert greedy_set([0, -3, 3, 1], 10) == (1, 2, 3)
        assert greedy_set([0, -3, 3, 1], 0) == ()

    def test_negative_size(self):
        with pytest.raises(DomainError):
            greedy_set([1, 2], -1)

    def test_is_greedy_set(self):
        assert is_greedy_set([0, -3, 3, 1], (2,))
        assert not is_greedy_set([0, -3, 3, 1], (3,))

    def test_admissible_sets_cover_ties(self):
        assert admissible_greedy_sets([0, -3, 3, 1], 1) == [(1,), (2,)]
        assert admissible_greedy_sets([0, -3, 3, 1], 0) == [()]

    def test_admissible_sets_beyond_support(self):
        with pytest.raises(DomainError):
            admissible_greedy_sets([0, -3, 3, 1], 4)

    def test_admissible_sets_budget(self):
        with pytest.raises(BudgetError):
            admissible_greedy_sets(np.ones(16), 8)

    def test_trace_in_l1(self):
        trace = greedy_trace([3, 1, 2], lp(1))
        assert trace.ordering == (0, 2, 1)
        assert_allclose(trace.errors, [6.0, 3.0, 1.0, 0.0])
        assert trace.sets[2] == (0, 2)

    def test_normer_protocol(self, summing_dkk):
        assert isinstance(lp(2), Normer)
        assert isinstance(summing_dkk, Normer)


class TestQuasiGreedy:
    """Tests for the sampled quasi-greedy ratios."""

    def test_unconditional_space(self):
        estimate = qg_ratio_estimate(lp(2), 8, trials=50, seed=3)
        assert estimate.remainder_ratio <= 1.0 + 1e-12
        assert estimate.projection_ratio == pytest.approx(1.0)
        assert estimate.partial_sum_ratio <= 1.0 + 1e-12

    def test_witnesses_reproduce(self, summing_dkk):
        estimate = qg_ratio_estimate(summing_dkk, summing_dkk.dim, trials=40, seed=5)
        assert estimate.projection_ratio >= 1.0 - 1e-12
        for value, witness in (
            (estimate.remainder_ratio, estimate.remainder_witness),
            (estimate.projection_ratio, estimate.projection_witness),
            (estimate.partial_sum_ratio, estimate.partial_sum_witness),
        ):
            assert witness.ratio(summing_dkk) == pytest.approx(value, rel=1e-9)

    def test_seeded(self, summing_dkk):
        first = qg_ratio_estimate(summing_dkk, summing_dkk.dim, trials=20, seed=9)
        second = qg_ratio_estimate(summing_dkk, summing_dkk.dim, trials=20, seed=9)
        assert first == second

    def test_explicit_samples_are_included(self):
        trunc = summing_basis().truncate(4)
        estimate = qg_ratio_estimate(trunc, 4, trials=10, samples=[[1, -1, 1, -1]])
        assert estimate.samples == 10 + 1 + 1

    def test_all_ties_never_lowers(self):
        trunc = summing_basis().truncate(6)
        plain = qg_ratio_estimate(trunc, 6, trials=30, seed=1)
        tied = qg_ratio_estimate(trunc, 6, trials=30, seed=1, all_ties=True)
        assert tied.remainder_ratio >= plain.remainder_ratio - 1e-12

    def test_partial_sum_ratio(self):
        assert partial_sum_ratio(lp(1), 6, trials=20) <= 1.0 + 1e-12


class TestDemocracy:
    """Tests for phi_m and super-democracy."""

    def test_phi_subsymmetric_is_lambda(self):
        estimate = fundamental_phi(lp(2), 4, dim=10)
        assert estimate.exact
        assert estimate.value == pytest.approx(2.0)
        assert estimate.subset == (0, 1, 2, 3)

    def test_phi_dkk_within_bracket(self, summing_dkk):
        estimate = fundamental_phi(summing_dkk, 5, dim=summing_dkk.dim, budget=32, seed=2)
        assert not estimate.exact
        assert estimate.lower <= estimate.value * (1.0 + 1e-9)
        assert estimate.value <= estimate.upper * (1.0 + 1e-9)
        rows = np.zeros(summing_dkk.dim)
        rows[list(estimate.subset)] = 1.0
        assert summing_dkk.norm(rows) == pytest.approx(estimate.value)

    def test_phi_exact_dominates_search(self, summing_dkk):
        exact = fundamental_phi(summing_dkk, 2, dim=summing_dkk.dim, mode="exact")
        found = fundamental_phi(summing_dkk, 2, dim=summing_dkk.dim, budget=16)
        assert exact.exact
        assert exact.value >= found.value - 1e-12

    def test_phi_range(self, l2):
        with pytest.raises(DomainError):
            fundamental_phi(l2, 0, dim=4)
        with pytest.raises(DomainError):
            fundamental_phi(l2, 5, dim=4)

    def test_superdemocracy_subsymmetric(self):
        estimate = superdemocracy_ratio(lp(3), 4, dim=10)
        assert estimate.exact
        assert estimate.ratio == 1.0

    def test_superdemocracy_dkk(self, summing_dkk):
        estimate = superdemocracy_ratio(summing_dkk, 3, dim=summing_dkk.dim, budget=64, seed=4)
        assert estimate.ratio >= 1.0
        assert estimate.cap is not None
        assert estimate.within_cap
        assert summing_dkk.norm(estimate.largest_row) == pytest.approx(estimate.largest)
        assert summing_dkk.norm(estimate.smallest_row) == pytest.approx(estimate.smallest)


class TestAlmostGreedy:
    """Tests for the exhaustive small-case almost-greedy ratio."""

    def test_symmetric_space_is_one(self):
        estimate = almost_greedy_ratio_smallcase(lp(1), 6, trials=20, seed=1)
        assert estimate.ratio == pytest.approx(1.0, rel=1e-9)

    def test_dimension_cap(self):
        with pytest.raises(BudgetError):
            almost_greedy_ratio_smallcase(lp(1), 13)

    def test_witness_reproduces(self):
        trunc = summing_basis().truncate(6)
        estimate = almost_greedy_ratio_smallcase(trunc, 6, trials=30, seed=2)
        assert estimate.ratio >= 1.0
        if estimate.m:
            f = np.asarray(estimate.witness)
            greedy_rest = f.copy()
            greedy_rest[list(estimate.greedy_set)] = 0.0
            best_rest = f.copy()
            best_rest[list(estimate.subset)] = 0.0
            assert len(estimate.subset) <= estimate.m
            assert trunc.norm(greedy_rest) / trunc.norm(best_rest) == pytest.approx(
                estimate.ratio, rel=1e-9
            )
