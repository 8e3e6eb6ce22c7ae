"""
Metrics and monitoring module for dkk-lab.

Provides Prometheus-compatible metrics for norm evaluations, inequality
checks and report rows. Metrics live in a private registry and can be
written to a node-exporter textfile at the end of a run.
"""

import time
from pathlib import Path

from loguru import logger
from prometheus_client import (
    CollectorRegistry,
    Counter,
    Gauge,
    Histogram,
    Info,
    write_to_textfile,
)

REGISTRY = CollectorRegistry()

# Evaluation metrics
NORM_EVALUATIONS = Counter(
    "dkk_lab_norm_evaluations_total",
    "Total number of norm evaluations",
    ["kind"],
    registry=REGISTRY,
)

# Check metrics
CHECKS_TOTAL = Counter(
    "dkk_lab_checks_total",
    "Per-vector inequality checks by suite and outcome",
    ["suite", "status"],
    registry=REGISTRY,
)

# Row metrics
ROWS_TOTAL = Counter(
    "dkk_lab_rows_total",
    "Report rows computed",
    ["command", "status"],
    registry=REGISTRY,
)

ROW_DURATION = Histogram(
    "dkk_lab_row_duration_seconds",
    "Row computation duration in seconds",
    ["command"],
    buckets=[0.001, 0.01, 0.1, 0.5, 1, 5, 10, 30, 60, 120, 300],
    registry=REGISTRY,
)

ACTIVE_ROWS = Gauge("dkk_lab_active_rows", "Rows currently being computed", registry=REGISTRY)

RUN_INFO = Info("dkk_lab_run", "Information about the dkk-lab run", registry=REGISTRY)


class MetricsCollector:
    """Collector for dkk-lab metrics."""

    def __init__(self) -> None:
        self._row_start_times: dict[str, tuple[str, float]] = {}

    def record_norm_evaluations(self, kind: str, count: int = 1) -> None:
        """Record a batch of norm evaluations."""
        NORM_EVALUATIONS.labels(kind=kind).inc(count)

    def record_check(self, suite: str, passed: bool, count: int = 1) -> None:
        """Record inequality check outcomes."""
        CHECKS_TOTAL.labels(suite=suite, status="pass" if passed else "fail").inc(count)

    def record_row_start(self, row_id: str, command: str) -> None:
        """Record the start of a row computation."""
        self._row_start_times[row_id] = (command, time.perf_counter())
        ACTIVE_ROWS.inc()

    def record_row_complete(self, row_id: str, status: str = "success") -> float:
        """Record the completion of a row; returns elapsed seconds."""
        elapsed = 0.0
        if row_id in self._row_start_times:
            command, start_time = self._row_start_times.pop(row_id)
            elapsed = time.perf_counter() - start_time

            ROWS_TOTAL.labels(command=command, status=status).inc()
            ROW_DURATION.labels(command=command).observe(elapsed)

        ACTIVE_ROWS.dec()
        return elapsed

    def set_run_info(self, version: str, command: str) -> None:
        """Set run information."""
        RUN_INFO.info({"version": version, "command": command})

    def write_textfile(self, path: Path) -> None:
        """Write all metrics in the Prometheus text format."""
        path.parent.mkdir(parents=True, exist_ok=True)
        write_to_textfile(str(path), REGISTRY)
        logger.info("Metrics written", path=str(path))


# Global metrics collector
metrics = MetricsCollector()
