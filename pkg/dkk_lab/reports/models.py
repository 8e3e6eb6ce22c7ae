"""
Data models for dkk-lab reports.
"""

import hashlib
import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any

import numpy as np
import numpy.typing as npt
from uuid6 import uuid7

from dkk_lab.condest import Witness
from dkk_lab.greedy import Normer

# Compatibility with Python 3.10
UTC = timezone.utc

SCHEMA_VERSION = 1

CSV_COLUMNS = ("key", "value", "exact", "witness", "runtime_ms")


class Measure(str, Enum):
    """How a witness reproduces its value."""

    PROJECTION = "projection"  # ||S_A f|| / ||f||
    NORM = "norm"  # ||f||
    QUOTIENT = "quotient"  # ||f|| / ||g||
    PAIRING = "pairing"  # scale * <f, g> / ||f||


def _floats(values: npt.ArrayLike) -> tuple[float, ...]:
    return tuple(float(x) for x in np.asarray(values, dtype=np.float64).ravel())


@dataclass(frozen=True)
class WitnessRecord:
    """
    A stored witness: enough data to re-evaluate a reported value.

    ``target`` names the norm the value was measured in ("basis", "dkk" or
    "space"); ``dim`` is the truncation dimension for basis targets.
    """

    target: str
    measure: Measure
    f: tuple[float, ...]
    subset: tuple[int, ...] | None = None
    g: tuple[float, ...] | None = None
    dim: int | None = None
    scale: float = 1.0

    @classmethod
    def projection(cls, witness: Witness, target: str, dim: int | None = None) -> "WitnessRecord":
        return cls(
            target=target,
            measure=Measure.PROJECTION,
            f=witness.f,
            subset=witness.subset,
            dim=dim if dim is not None else len(witness.f),
        )

    @classmethod
    def norm(cls, f: npt.ArrayLike, target: str, dim: int | None = None) -> "WitnessRecord":
        vec = _floats(f)
        return cls(target=target, measure=Measure.NORM, f=vec, dim=dim if dim is not None else len(vec))

    @classmethod
    def quotient(
        cls, f: npt.ArrayLike, g: npt.ArrayLike, target: str, dim: int | None = None
    ) -> "WitnessRecord":
        vec = _floats(f)
        return cls(
            target=target,
            measure=Measure.QUOTIENT,
            f=vec,
            g=_floats(g),
            dim=dim if dim is not None else len(vec),
        )

    @classmethod
    def pairing(
        cls, f: npt.ArrayLike, g: npt.ArrayLike, scale: float, target: str
    ) -> "WitnessRecord":
        vec = _floats(f)
        return cls(
            target=target, measure=Measure.PAIRING, f=vec, g=_floats(g), dim=len(vec), scale=float(scale)
        )

    def evaluate(self, normer: Normer) -> float:
        """Recompute the value in ``normer``."""
        if self.measure is Measure.PROJECTION:
            return Witness.of(self.f, self.subset or ()).ratio(normer)
        if self.measure is Measure.NORM:
            return float(normer.norms(np.asarray([self.f]))[0])
        if self.measure is Measure.PAIRING:
            f = np.asarray(self.f)
            denom = float(normer.norms(f[None, :])[0])
            return self.scale * float(f @ np.asarray(self.g)) / denom if denom > 0.0 else 0.0
        values = normer.norms(np.vstack([self.f, self.g or ()]))
        return float(values[0] / values[1]) if values[1] > 0.0 else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "target": self.target,
            "measure": self.measure.value,
            "f": list(self.f),
            "subset": list(self.subset) if self.subset is not None else None,
            "g": list(self.g) if self.g is not None else None,
            "dim": self.dim,
            "scale": self.scale,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "WitnessRecord":
        return cls(
            target=data["target"],
            measure=Measure(data["measure"]),
            f=_floats(data["f"]),
            subset=tuple(int(j) for j in data["subset"]) if data.get("subset") is not None else None,
            g=_floats(data["g"]) if data.get("g") is not None else None,
            dim=data.get("dim"),
            scale=float(data.get("scale", 1.0)),
        )

    @property
    def digest(self) -> str:
        """sha256 of the canonical JSON form, shortened to 16 hex digits."""
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class Row:
    """One report row; ``index`` (m, r or 0) orders rows, ties keep insertion order."""

    key: str
    value: float | int | None
    exact: bool
    witness: WitnessRecord | None = None
    runtime_ms: float | None = None
    index: int = 0

    def csv_fields(self) -> list[str]:
        return [
            self.key,
            format_value(self.value),
            "true" if self.exact else "false",
            self.witness.digest if self.witness else "",
            f"{self.runtime_ms:.3f}" if self.runtime_ms is not None else "",
        ]

    def to_dict(self) -> dict[str, Any]:
        return {
            "key": self.key,
            "value": self.value,
            "exact": self.exact,
            "witness": self.witness.digest if self.witness else None,
            "runtime_ms": self.runtime_ms,
        }


def format_value(value: float | int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


@dataclass(frozen=True)
class ReportMetadata:
    """Run identity; the only non-deterministic part of a report."""

    run_id: str = field(default_factory=lambda: str(uuid7()))
    created_at: str = field(default_factory=lambda: datetime.now(UTC).isoformat())

    def to_dict(self) -> dict[str, Any]:
        return {"run_id": self.run_id, "created_at": self.created_at}


@dataclass
class ConstantsReport:
    """Rows of one command plus the data needed to reproduce them."""

    command: str
    version: str
    seed: int | None
    config: dict[str, Any]
    rows: list[Row] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    metadata: ReportMetadata = field(default_factory=ReportMetadata)
    failed: bool = False

    def add(self, row: Row) -> None:
        self.rows.append(row)

    def extend(self, rows: Iterable[Row]) -> None:
        self.rows.extend(rows)

    def sorted_rows(self) -> list[Row]:
        return sorted(self.rows, key=lambda r: r.index)

    def witnesses(self) -> dict[str, WitnessRecord]:
        return {r.witness.digest: r.witness for r in self.sorted_rows() if r.witness is not None}

    def data_dict(self) -> dict[str, Any]:
        """Everything except metadata; byte-stable for a fixed config and seed."""
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "version": self.version,
            "seed": self.seed,
            "config": self.config,
            "rows": [r.to_dict() for r in self.sorted_rows()],
            "summary": self.summary,
            "witnesses": {k: w.to_dict() for k, w in self.witnesses().items()},
        }

    def to_dict(self) -> dict[str, Any]:
        return {**self.data_dict(), "metadata": self.metadata.to_dict()}
