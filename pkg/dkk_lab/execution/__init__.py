"""Execution module for dkk-lab."""

from .runner import RowJob, RowResult, RowRunner, RowStatus

__all__ = [
    "RowJob",
    "RowResult",
    "RowRunner",
    "RowStatus",
]
