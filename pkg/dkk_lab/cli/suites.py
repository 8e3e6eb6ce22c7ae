"""
Verification suites run by the verify command.

A suite draws its own seeded samples, runs the per-vector checks of one
family and returns InequalityCheck objects. Suites whose hypotheses fail
for the configured space raise HypothesisError or DomainError and are
reported as skipped.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from dkk_lab.cli.factory import Lab
from dkk_lab.cli.router import register_suite
from dkk_lab.dkk import (
    DkkSpace,
    InequalityCheck,
    LemmaConstants,
    averaging_bound_check,
    commuting_check,
    coordinate_bound_check,
    embedding_check,
    equivalent_norm_check,
    identity_check,
    inverse_round_trip_check,
    lemma_constants,
    partial_sum_identity_check,
    q_rows,
    round_trip_check,
    sandwich_check,
    tail_projection_check,
)
from dkk_lab.error import ErrorContext, HypothesisError
from dkk_lab.sampling import block_sets, block_supported, derive_rng, heavy_tailed, tail_subset
from dkk_lab.seqspace import bidemocracy_product, lifting_L, lp, retraction_T, variation

# Sample groups sharing one random block set or tail set.
GROUPS = 16
BIDEMOCRACY_RTOL = 1e-9


@dataclass
class SuiteContext:
    lab: Lab
    trials: int
    seed: int

    @property
    def dkk(self) -> DkkSpace:
        return self.lab.dkk

    @cached_property
    def constants(self) -> LemmaConstants:
        return lemma_constants(self.dkk)

    def rng(self, suite: str) -> np.random.Generator:
        return derive_rng(self.seed, "verify", suite)

    def samples(self, suite: str, dim: int | None = None) -> np.ndarray:
        return heavy_tailed(self.rng(suite), self.trials, dim or self.dkk.dim)


def merge(name: str, checks: Sequence[InequalityCheck]) -> InequalityCheck:
    """One check over the concatenated rows of several."""
    return InequalityCheck(
        name,
        np.concatenate([c.lhs for c in checks]),
        np.concatenate([c.rhs for c in checks]),
    )


@register_suite("averaging")
def averaging_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    Y = ctx.dkk
    return list(averaging_bound_check(ctx.samples("averaging"), Y.partition, Y.space))


@register_suite("equivalent_norm")
def equivalent_norm_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    return list(equivalent_norm_check(ctx.samples("equivalent_norm"), ctx.dkk))


@register_suite("sandwich")
def sandwich_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    X = block_supported(ctx.rng("sandwich"), ctx.trials, ctx.dkk.partition)
    return list(sandwich_check(X, ctx.dkk))


@register_suite("coordinate")
def coordinate_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    return [coordinate_bound_check(ctx.samples("coordinate"), ctx.dkk)]


@register_suite("embedding")
def embedding_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    return embedding_check(ctx.samples("embedding"), ctx.dkk, ctx.constants).checks


@register_suite("commuting")
def commuting_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    Y = ctx.dkk
    rng = ctx.rng("commuting")
    X = heavy_tailed(rng, ctx.trials, Y.dim)
    sets = block_sets(rng, Y.horizon, GROUPS)
    checks = [
        commuting_check(chunk, Y.partition.block_union(blocks), Y)
        for chunk, blocks in zip(np.array_split(X, GROUPS), sets, strict=True)
        if chunk.size
    ]
    return [merge("commuting", checks)]


@register_suite("partial_sums")
def partial_sums_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    Y = ctx.dkk
    X = ctx.samples("partial_sums")
    checks = [partial_sum_identity_check(X, r, Y) for r in range(1, Y.horizon + 1)]
    return [merge("partial_sum_identity", checks)]


@register_suite("round_trip")
def round_trip_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    Y = ctx.dkk
    rng = ctx.rng("round_trip")
    X = heavy_tailed(rng, ctx.trials, Y.dim)
    H = rng.standard_normal((ctx.trials, Y.horizon))
    return [round_trip_check(X, Y), inverse_round_trip_check(q_rows(X, Y.partition), H, Y)]


@register_suite("tail_projection")
def tail_projection_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    Y = ctx.dkk
    consts = ctx.constants
    rng = ctx.rng("tail_projection")
    X = heavy_tailed(rng, ctx.trials, Y.dim)
    grouped: dict[str, list[InequalityCheck]] = {}
    for chunk in np.array_split(X, GROUPS):
        if not chunk.size:
            continue
        result = tail_projection_check(chunk, tail_subset(rng, Y.partition), Y, consts)
        for name, check in result.checks.items():
            grouped.setdefault(name, []).append(check)
    return [merge(name, checks) for name, checks in grouped.items()]


@register_suite("operators")
def operators_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    """T(L f) = f, ||L f||_v1 <= 2||f||_1, ||T f||_1 <= ||f||_v1, ||T f||_inf <= 2||f||_inf."""
    X = heavy_tailed(ctx.rng("operators"), ctx.trials, ctx.lab.config.run.dim or 64)
    v1, l1, c0 = variation(), lp(1), lp("inf")
    lifted = np.vstack([lifting_L(f) for f in X])
    retracted = np.vstack([retraction_T(f) for f in X])
    back = np.vstack([retraction_T(g) for g in lifted])
    return [
        identity_check("operators.retract_lift", back, X, np.abs(X).max(axis=1)),
        InequalityCheck("operators.lift_bound", v1.norms(lifted), 2.0 * l1.norms(X)),
        InequalityCheck("operators.retract_l1", l1.norms(retracted), v1.norms(X)),
        InequalityCheck("operators.retract_sup", c0.norms(retracted), 2.0 * c0.norms(X)),
    ]


@register_suite("bidemocracy")
def bidemocracy_suite(ctx: SuiteContext) -> list[InequalityCheck]:
    """Lambda_m times the dual norm of the m-indicator equals m."""
    space = ctx.lab.space
    ms = ctx.lab.config.range.as_list()
    products = [bidemocracy_product(space, m) for m in ms]
    if not all(p.exact for p in products):
        raise HypothesisError(
            "duality",
            f"No exact dual norm for {space.label}",
            context=ErrorContext(operation="bidemocracy_suite"),
        )
    m = np.asarray(ms, dtype=np.float64)
    values = np.asarray([p.value for p in products])
    return [InequalityCheck("bidemocracy", np.abs(values - m), BIDEMOCRACY_RTOL * m)]
