"""
Command handlers: each turns an experiment config into a ConstantsReport.
"""

from collections.abc import Callable
from dataclasses import replace
from pathlib import Path
from typing import Any

import numpy as np
from loguru import logger

from dkk_lab import __version__
from dkk_lab.cli.factory import Lab
from dkk_lab.cli.router import SUITES, register_command
from dkk_lab.cli.suites import SuiteContext
from dkk_lab.condest import compute_k_m, compute_L_m, dkk_witness_lb, log_growth_fit
from dkk_lab.config import MAX_SMALLCASE_DIM, ExperimentConfig
from dkk_lab.dkk import DkkSpace, lemma_constants, quasi_greedy_constant
from dkk_lab.error import (
    ConfigurationError,
    DkkLabError,
    DomainError,
    ErrorCode,
    FitError,
    HypothesisError,
)
from dkk_lab.execution import RowJob, RowRunner
from dkk_lab.greedy import (
    almost_greedy_ratio_smallcase,
    fundamental_phi,
    qg_ratio_estimate,
    superdemocracy_ratio,
)
from dkk_lab.metrics import metrics
from dkk_lab.reports import ConstantsReport, RecheckResult, Row, StoredReport, WitnessRecord, recheck
from dkk_lab.sampling import row_seed
from dkk_lab.seqspace import (
    bidemocracy_product,
    check_lrp,
    check_urp,
    dini_constant,
    lambda_shape_check,
    monotone_sequence_check,
)

CONSTANT_KINDS = ("L_m", "k_m", "witness")
WEIGHT_SCAN_M = 10_000
# Each small-case sample enumerates every subset of the coordinates.
SMALLCASE_TRIALS = 500


def _new_report(command: str, cfg: ExperimentConfig) -> ConstantsReport:
    return ConstantsReport(command=command, version=__version__, seed=cfg.run.seed, config=cfg.echo())


def _runtime(cfg: ExperimentConfig, elapsed_ms: float) -> float | None:
    return elapsed_ms if cfg.run.timings else None


def _run_rows(runner: RowRunner | None, jobs: list[RowJob]) -> list[tuple[Any, float]]:
    """Run jobs and return (value, elapsed_ms) in job order; the first failure is re-raised."""
    active = runner or RowRunner(max_workers=1)
    return [(r.unwrap(), r.elapsed_ms) for r in active.run_sync(jobs)]


@register_command("norm")
def cmd_norm(cfg: ExperimentConfig, runner: RowRunner | None = None) -> ConstantsReport:
    """Evaluate the configured norm on every explicit vector."""
    lab = Lab(cfg)
    report = _new_report("norm", cfg)
    target = cfg.norm.target
    if not cfg.norm.vectors:
        raise ConfigurationError("The norm command needs [norm] vectors", suggestion="Add vectors to [norm]")

    for i, vector in enumerate(cfg.norm.vectors):
        f = np.asarray(vector, dtype=np.float64)
        normer = lab.normer(target, dim=f.size)
        report.add(Row(key=f"norm.{i}", value=float(normer.norms(f[None, :])[0]), exact=True, index=i))
        if target == "dkk":
            q_part, x_part = lab.dkk.parts(f[None, :])
            report.add(Row(key=f"norm.{i}.q_part", value=float(q_part[0]), exact=True, index=i))
            report.add(Row(key=f"norm.{i}.x_part", value=float(x_part[0]), exact=True, index=i))
    return report


def _constant_job(lab: Lab, kind: str, m: int, seed: int) -> tuple[Row, tuple[float, float]]:
    cfg = lab.config
    run = cfg.run
    if kind == "L_m":
        result = compute_L_m(lab.basis, m, mode=run.mode, budget=run.budget, seed=seed, sweeps=run.sweeps)
        record = WitnessRecord.projection(result.witness, "basis", dim=m) if result.witness else None
        abscissa = m
    elif kind == "k_m":
        dim = run.dim or max(cfg.range.as_list())
        result = compute_k_m(lab.basis, m, dim, mode=run.mode, budget=run.budget, seed=seed, sweeps=run.sweeps)
        record = WitnessRecord.projection(result.witness, "basis", dim=dim) if result.witness else None
        abscissa = m
    else:
        result = dkk_witness_lb(lab.dkk, m, inner_dim_cap=run.inner_dim_cap, budget=run.budget, seed=seed)
        record = WitnessRecord.projection(result.witness, "dkk") if result.witness else None
        abscissa = int(lab.partition.partial_sums[m - 1])
    row = Row(key=f"{kind}.{m}", value=result.value, exact=result.exact, witness=record, index=m)
    return row, (float(abscissa), result.value)


def _growth_summary(points: list[tuple[float, float]], power: float) -> dict[str, Any]:
    try:
        return log_growth_fit(points, power=power).to_dict()
    except FitError as e:
        return {"error": e.message}


@register_command("constants")
def cmd_constants(cfg: ExperimentConfig, runner: RowRunner | None = None) -> ConstantsReport:
    """L_m, k_m and DKK witness bounds over the configured range, with growth fits."""
    lab = Lab(cfg)
    report = _new_report("constants", cfg)
    kinds = [k for k in cfg.run.kinds if k in CONSTANT_KINDS]
    unknown = sorted(set(cfg.run.kinds) - set(CONSTANT_KINDS))
    if unknown:
        raise ConfigurationError(f"Unknown constant kinds {unknown}", suggestion=f"Use {list(CONSTANT_KINDS)}")
    randomized = cfg.run.mode == "search" or "witness" in kinds
    seed = cfg.require_seed("constants") if randomized else (cfg.run.seed or 0)

    jobs = []
    for m in cfg.range.as_list():
        for kind in kinds:
            if kind == "witness" and m > lab.partition.horizon:
                raise DomainError(
                    f"witness rows need r <= {lab.partition.horizon}, got {m}",
                    code=ErrorCode.INDEX_OUT_OF_RANGE,
                )
            jobs.append(RowJob(key=f"{kind}.{m}", func=_constant_job, args=(lab, kind, m, row_seed(seed, kind, m))))

    logger.info("Computing constants", rows=len(jobs), kinds=kinds, mode=cfg.run.mode)
    points: dict[str, list[tuple[float, float]]] = {k: [] for k in kinds}
    for job, ((row, point), elapsed) in zip(jobs, _run_rows(runner, jobs), strict=True):
        report.add(replace(row, runtime_ms=_runtime(cfg, elapsed)))
        points[job.args[1]].append(point)

    report.summary["growth"] = {k: _growth_summary(p, cfg.run.growth_power) for k, p in points.items()}
    return report


def _greedy_dim(lab: Lab) -> int:
    run = lab.config.run
    if run.target == "dkk":
        return run.dim or lab.dkk.dim
    return run.dim or max(lab.config.range.as_list())


@register_command("greedy")
def cmd_greedy(cfg: ExperimentConfig, runner: RowRunner | None = None) -> ConstantsReport:
    """Quasi-greedy, fundamental-function, democracy and small-case almost-greedy estimates."""
    lab = Lab(cfg)
    report = _new_report("greedy", cfg)
    seed = cfg.require_seed("greedy")
    target, dim = cfg.run.target, _greedy_dim(lab)
    normer = lab.normer(target, dim=dim)

    qg = qg_ratio_estimate(normer, dim, trials=cfg.run.trials, seed=seed)
    for key, value, witness in (
        ("qg.remainder", qg.remainder_ratio, qg.remainder_witness),
        ("qg.projection", qg.projection_ratio, qg.projection_witness),
        ("qg.partial_sum", qg.partial_sum_ratio, qg.partial_sum_witness),
    ):
        record = WitnessRecord.projection(witness, target, dim=dim) if witness else None
        report.add(Row(key=key, value=value, exact=False, witness=record))

    if isinstance(normer, DkkSpace):
        consts = lemma_constants(normer)
        report.summary["constants"] = consts.to_dict()
        try:
            bound = quasi_greedy_constant(consts, qg.partial_sum_ratio)
        except HypothesisError as e:
            report.summary["qg_bound"] = {"skipped": e.message}
        else:
            report.summary["qg_bound"] = {"c_b": qg.partial_sum_ratio, "bound": bound}
            over = int(qg.remainder_ratio > bound * (1.0 + 1e-9))
            report.add(Row(key="qg.bound_violations", value=over, exact=True))
            report.failed = report.failed or bool(over)

    caps: dict[str, float | None] = {}
    for m in cfg.range.as_list():
        if m > dim:
            break
        phi = fundamental_phi(normer, m, dim, budget=cfg.run.budget, seed=row_seed(seed, "phi", m))
        indicator = np.zeros(dim)
        indicator[list(phi.subset)] = 1.0
        record = None if phi.exact else WitnessRecord.norm(indicator, target, dim=dim)
        report.add(Row(key=f"phi.{m}", value=phi.value, exact=phi.exact, witness=record, index=m))

        demo = superdemocracy_ratio(normer, m, dim, budget=cfg.run.budget, seed=row_seed(seed, "democracy", m))
        record = (
            None
            if demo.exact
            else WitnessRecord.quotient(demo.largest_row, demo.smallest_row, target, dim=dim)
        )
        report.add(Row(key=f"democracy.{m}", value=demo.ratio, exact=demo.exact, witness=record, index=m))
        caps[str(m)] = demo.cap
    if any(c is not None for c in caps.values()):
        report.summary["democracy_caps"] = caps

    if dim <= MAX_SMALLCASE_DIM:
        ag = almost_greedy_ratio_smallcase(
            normer, dim, trials=min(cfg.run.trials, SMALLCASE_TRIALS), seed=seed
        )
        f = np.asarray(ag.witness)
        greedy_rest = f.copy()
        greedy_rest[list(ag.greedy_set)] = 0.0
        competing = f.copy()
        competing[list(ag.subset)] = 0.0
        record = WitnessRecord.quotient(greedy_rest, competing, target, dim=dim)
        report.add(Row(key="almost_greedy", value=ag.ratio, exact=False, witness=record))
    return report


@register_command("weights")
def cmd_weights(cfg: ExperimentConfig, runner: RowRunner | None = None) -> ConstantsReport:
    """Regularity of Lambda, partition validators, lemma constants and bidemocracy."""
    lab = Lab(cfg)
    report = _new_report("weights", cfg)
    space, partition = lab.space, lab.partition

    for key, value in partition.validators().items():
        report.add(Row(key=f"partition.{key}", value=value, exact=True))

    if not space.subsymmetric:
        report.summary["skipped"] = f"{space.label} has no fundamental function"
        return report

    m_max = cfg.run.dim or WEIGHT_SCAN_M
    lrp, urp = check_lrp(space, m_max=m_max), check_urp(space, m_max=m_max)
    shape = lambda_shape_check(space, m_max=m_max)
    report.extend(
        [
            Row(key="lrp.b", value=lrp.b, exact=True),
            Row(key="urp.b", value=urp.b, exact=True),
            Row(key="dini", value=dini_constant(space, m_max=m_max), exact=True),
            Row(key="lambda_shape.ok", value=int(shape.ok), exact=True),
            Row(key="monotone_sequence.worst", value=monotone_sequence_check(space), exact=True),
        ]
    )
    report.summary["regularity"] = {"lrp": lrp.to_dict(), "urp": urp.to_dict()}

    try:
        consts = lemma_constants(lab.dkk)
    except DkkLabError as e:
        report.summary["constants"] = {"skipped": e.message}
    else:
        for key in ("c1", "c2", "c3", "c4", "c_sigma", "c_d", "c_a", "c_low", "c_up"):
            report.add(Row(key=f"constants.{key}", value=getattr(consts, key), exact=True))
        report.summary["constants"] = {"branch": consts.branch, "notes": consts.notes}

    for m in cfg.range.as_list():
        product = bidemocracy_product(space, m, budget=cfg.run.budget, seed=cfg.run.seed or 0)
        record = None
        if not product.exact:
            lam = float(space.lambdas([m])[0])
            record = WitnessRecord.pairing(product.witness, np.ones(m), lam, "space")
        report.add(Row(key=f"bidemocracy.{m}", value=product.value, exact=product.exact, witness=record, index=m))
    return report


def _suite_key(suite: str, name: str) -> str:
    return name if name == suite or name.startswith(f"{suite}.") else f"{suite}.{name}"


@register_command("verify")
def cmd_verify(cfg: ExperimentConfig, runner: RowRunner | None = None) -> ConstantsReport:
    """Run the inequality suites; the report fails when any check has a violation."""
    lab = Lab(cfg)
    report = _new_report("verify", cfg)
    seed = cfg.require_seed("verify")
    names = cfg.run.suites or list(SUITES)
    unknown = sorted(set(names) - set(SUITES))
    if unknown:
        raise ConfigurationError(f"Unknown suites {unknown}", suggestion=f"Use {list(SUITES)}")

    ctx = SuiteContext(lab=lab, trials=cfg.run.trials, seed=seed)
    skipped: dict[str, str] = {}

    def run_suite(name: str) -> list[Any] | str:
        try:
            return SUITES[name](ctx)
        except (HypothesisError, DomainError) as e:
            return e.message

    # constants are shared across suites; build them before fanning out
    try:
        _ = ctx.constants
    except DkkLabError as e:
        logger.debug("Lemma constants unavailable", reason=e.message)

    jobs = [RowJob(key=name, func=run_suite, args=(name,)) for name in names]
    for index, (job, (outcome, elapsed)) in enumerate(zip(jobs, _run_rows(runner, jobs), strict=True)):
        if isinstance(outcome, str):
            skipped[job.key] = outcome
            logger.info("Suite skipped", suite=job.key, reason=outcome)
            continue
        for check in outcome:
            key = _suite_key(job.key, check.name)
            metrics.record_check(job.key, check.ok, check.count)
            if not check.ok:
                report.failed = True
                logger.warning("Check failed", check=key, violations=check.violations, worst=check.worst_ratio)
            report.add(Row(key=f"{key}.violations", value=check.violations, exact=True, index=index))
            report.add(
                Row(
                    key=f"{key}.worst_ratio",
                    value=check.worst_ratio,
                    exact=True,
                    runtime_ms=_runtime(cfg, elapsed),
                    index=index,
                )
            )
            report.summary.setdefault("counts", {})[key] = check.count
    if skipped:
        report.summary["skipped"] = skipped
    return report


def cmd_recheck(path: Path) -> RecheckResult:
    """Re-evaluate every witness of a stored report against a rebuilt lab."""

    def resolver(stored: StoredReport) -> Callable[[WitnessRecord], Any]:
        lab = Lab(ExperimentConfig.model_validate(stored.config))
        return lab.resolve

    return recheck(Path(path), resolver)
