"""
Regularity of fundamental sequences: lower/upper regularity, the Dini
condition and the shape conditions on Lambda. All verdicts are finite-horizon.
"""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from loguru import logger
from pydantic import BaseModel

from dkk_lab.error import DomainError, ErrorCode
from dkk_lab.seqspace.spaces import SequenceSpace
from dkk_lab.seqspace.weights import cumulative_weights

LambdaFn = Callable[[npt.NDArray[np.int64]], npt.NDArray[np.float64]]
LambdaLike = LambdaFn | SequenceSpace | BaseModel | npt.ArrayLike

# Relative slack for equality cases such as 2*sqrt(m) = sqrt(4m).
RTOL = 1e-12


def as_lambda_fn(source: LambdaLike) -> LambdaFn:
    """Normalize a space, a weight, an explicit array or a callable into m -> Lambda_m.

    A weight w is read as the increments of Lambda, so Lambda_m = w_1 + ... + w_m.
    Explicit arrays hold Lambda_1, Lambda_2, ...
    """
    if isinstance(source, SequenceSpace):
        return lambda m: source.lambdas(m)
    if isinstance(source, BaseModel) and hasattr(source, "values"):
        weight = source

        def from_weight(m: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]:
            W = cumulative_weights(weight, int(np.max(m)))  # type: ignore[arg-type]
            return W[np.asarray(m) - 1]

        return from_weight
    if callable(source):
        return lambda m: np.asarray(source(np.asarray(m)), dtype=np.float64)

    table = np.asarray(source, dtype=np.float64)

    def from_table(m: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]:
        mm = np.asarray(m)
        if mm.size and int(mm.max()) > table.size:
            raise DomainError(
                f"Lambda table has {table.size} entries, index {int(mm.max())} requested",
                code=ErrorCode.INDEX_OUT_OF_RANGE,
            )
        return table[mm - 1]

    return from_table


@dataclass(frozen=True)
class RegularityVerdict:
    """Outcome of a finite-horizon regularity scan."""

    prop: str
    b: int | None
    b_max: int
    m_max: int

    @property
    def holds(self) -> bool:
        return self.b is not None

    def to_dict(self) -> dict[str, object]:
        return {"property": self.prop, "b": self.b, "b_max": self.b_max, "m_max": self.m_max}


def _positive(values: npt.NDArray[np.float64]) -> None:
    if np.any(values <= 0.0):
        raise DomainError("Lambda must be strictly positive on the scanned horizon")


def check_lrp(source: LambdaLike, b_max: int = 64, m_max: int = 10_000) -> RegularityVerdict:
    """Smallest b <= b_max with 2 Lambda_m <= Lambda_(bm) for all m <= m_max."""
    lam = as_lambda_fn(source)
    m = np.arange(1, m_max + 1)
    base = lam(m)
    _positive(base)
    for b in range(2, b_max + 1):
        if np.all(2.0 * base <= lam(b * m) * (1.0 + RTOL)):
            logger.debug("LRP verified", b=b, m_max=m_max)
            return RegularityVerdict("lrp", b, b_max, m_max)
    return RegularityVerdict("lrp", None, b_max, m_max)


def check_urp(source: LambdaLike, b_max: int = 64, m_max: int = 10_000) -> RegularityVerdict:
    """Smallest b >= 3 with Lambda_(bm) <= (b/2) Lambda_m for all m <= m_max."""
    lam = as_lambda_fn(source)
    m = np.arange(1, m_max + 1)
    base = lam(m)
    _positive(base)
    for b in range(3, b_max + 1):
        if np.all(lam(b * m) <= 0.5 * b * base * (1.0 + RTOL)):
            logger.debug("URP verified", b=b, m_max=m_max)
            return RegularityVerdict("urp", b, b_max, m_max)
    return RegularityVerdict("urp", None, b_max, m_max)


def dini_constant(source: LambdaLike, m_max: int = 10_000) -> float:
    """Best finite-horizon C_d with sum_(n<=m) Lambda_n/n <= C_d Lambda_m."""
    lam = as_lambda_fn(source)
    m = np.arange(1, m_max + 1)
    values = lam(m)
    _positive(values)
    partial = np.cumsum(values / m)
    return float(np.max(partial / values))


@dataclass(frozen=True)
class LambdaShape:
    """Shape conditions: Lambda non-decreasing and Lambda_m/m non-increasing."""

    non_decreasing: bool
    ratio_non_increasing: bool
    m_max: int

    @property
    def ok(self) -> bool:
        return self.non_decreasing and self.ratio_non_increasing


def lambda_shape_check(source: LambdaLike, m_max: int = 10_000) -> LambdaShape:
    lam = as_lambda_fn(source)
    m = np.arange(1, m_max + 1)
    values = lam(m)
    ratio = values / m
    return LambdaShape(
        non_decreasing=bool(np.all(np.diff(values) >= -RTOL * values[1:])),
        ratio_non_increasing=bool(np.all(np.diff(ratio) <= RTOL * ratio[:-1])),
        m_max=m_max,
    )


def monotone_sequence_check(source: LambdaLike, m_max: int = 200) -> float:
    """Worst ratio of (k/(k+n)) Lambda_n + (n/(k+n)) Lambda_k to 2 Lambda_k over k, n <= m_max.

    Any non-decreasing positive sequence keeps this ratio at most 1.
    """
    lam = as_lambda_fn(source)
    idx = np.arange(1, m_max + 1)
    values = lam(idx)
    k = idx[:, None].astype(np.float64)
    n = idx[None, :].astype(np.float64)
    lhs = (k / (k + n)) * values[None, :] + (n / (k + n)) * values[:, None]
    return float(np.max(lhs / (2.0 * values[:, None])))
