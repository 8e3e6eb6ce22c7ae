"""
Row runner for dkk-lab.

Report rows are independent computations (one m, one r, one suite). The
runner executes them on worker threads under a capacity limit and hands
the results back in submission order, so output assembly stays
single-threaded and deterministic.
"""

import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import anyio
import anyio.to_thread
from loguru import logger

from dkk_lab.metrics import metrics


class RowStatus(Enum):
    """Row status."""

    PENDING = "pending"
    SUCCESS = "success"
    FAILED = "failed"


@dataclass
class RowJob:
    """One independent row computation."""

    key: str
    func: Callable[..., Any]
    args: tuple[Any, ...] = ()
    kwargs: dict[str, Any] = field(default_factory=dict)


@dataclass
class RowResult:
    """Outcome of a row job."""

    key: str
    status: RowStatus = RowStatus.PENDING
    value: Any = None
    error: BaseException | None = None
    elapsed_ms: float = 0.0

    def unwrap(self) -> Any:
        """Return the value, re-raising the row's error if it failed."""
        if self.error is not None:
            raise self.error
        return self.value


class RowRunner:
    """
    Runs row jobs concurrently and returns results in submission order.

    Per-row randomness must come from the job's own arguments (seeds are
    derived from the master seed and the row key), never from shared state,
    so the worker count does not change any value.
    """

    def __init__(self, max_workers: int = 4, command: str = "run"):
        """
        Initialize the runner.

        Args:
            max_workers: Maximum number of rows computed at once
            command: Command label for metrics
        """
        self.max_workers = max_workers
        self.command = command
        self._metrics = {
            "total_rows": 0,
            "completed_rows": 0,
            "failed_rows": 0,
        }

    async def _run_one(
        self,
        index: int,
        job: RowJob,
        results: list[RowResult],
        limiter: anyio.CapacityLimiter,
    ) -> None:
        row_id = f"{self.command}-{index}-{job.key}"
        metrics.record_row_start(row_id, self.command)
        start = time.perf_counter()
        result = results[index]
        try:
            result.value = await anyio.to_thread.run_sync(
                lambda: job.func(*job.args, **job.kwargs), limiter=limiter
            )
            result.status = RowStatus.SUCCESS
            self._metrics["completed_rows"] += 1
        except Exception as e:
            result.error = e
            result.status = RowStatus.FAILED
            self._metrics["failed_rows"] += 1
            logger.warning("Row failed", key=job.key, error=str(e))
        finally:
            result.elapsed_ms = (time.perf_counter() - start) * 1000.0
            metrics.record_row_complete(row_id, result.status.value)

    async def run(self, jobs: Sequence[RowJob]) -> list[RowResult]:
        """
        Run all jobs.

        Args:
            jobs: Row jobs in output order

        Returns:
            One RowResult per job, in the order given
        """
        results = [RowResult(key=job.key) for job in jobs]
        self._metrics["total_rows"] += len(jobs)
        limiter = anyio.CapacityLimiter(self.max_workers)

        logger.debug("Running rows", command=self.command, rows=len(jobs), workers=self.max_workers)
        async with anyio.create_task_group() as tg:
            for index, job in enumerate(jobs):
                tg.start_soon(self._run_one, index, job, results, limiter)

        logger.debug(
            "Rows finished",
            command=self.command,
            failed=sum(r.status is RowStatus.FAILED for r in results),
        )
        return results

    def run_sync(self, jobs: Sequence[RowJob]) -> list[RowResult]:
        """Blocking wrapper around run() for synchronous callers."""
        return anyio.run(self.run, jobs)

    def get_metrics(self) -> dict[str, Any]:
        """
        Get runner metrics.

        Returns:
            Metrics dictionary
        """
        total = self._metrics["total_rows"]
        return {
            **self._metrics,
            "success_rate": self._metrics["completed_rows"] / total if total > 0 else 0.0,
            "max_workers": self.max_workers,
        }
