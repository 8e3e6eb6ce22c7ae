"""
Report serialization: CSV with a JSON sidecar, or a single JSON document,
and re-verification of stored witnesses.
"""

import csv
import io
import json
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from loguru import logger

from dkk_lab.error import ConfigParseError, VerificationError
from dkk_lab.greedy import Normer
from dkk_lab.reports.models import CSV_COLUMNS, SCHEMA_VERSION, ConstantsReport, WitnessRecord

Format = Literal["csv", "json"]

# Relative slack for a recomputed witness value.
RECHECK_RTOL = 1e-9


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


def render_csv(report: ConstantsReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.sorted_rows():
        writer.writerow(row.csv_fields())
    return buffer.getvalue()


def _dumps(data: dict[str, Any]) -> str:
    return json.dumps(data, indent=2, sort_keys=False, allow_nan=True) + "\n"


def render_json(report: ConstantsReport) -> str:
    return _dumps(report.to_dict())


def render(report: ConstantsReport, fmt: Format) -> str:
    return render_csv(report) if fmt == "csv" else render_json(report)


def write_report(report: ConstantsReport, path: Path, fmt: Format) -> list[Path]:
    """
    Write a report.

    Args:
        report: Report to write
        path: Output path
        fmt: "csv" (data plus ``<path>.meta.json`` sidecar) or "json"

    Returns:
        Paths written
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path.write_text(render_json(report), encoding="utf-8")
        written = [path]
    else:
        path.write_text(render_csv(report), encoding="utf-8")
        meta = report.to_dict()
        meta.pop("rows")
        sidecar = sidecar_path(path)
        sidecar.write_text(_dumps(meta), encoding="utf-8")
        written = [path, sidecar]
    logger.info("Report written", path=str(path), rows=len(report.rows), format=fmt)
    return written


@dataclass
class StoredReport:
    """A report read back from disk."""

    rows: list[dict[str, Any]]
    witnesses: dict[str, WitnessRecord]
    config: dict[str, Any]
    seed: int | None
    command: str


def _parse_bool(text: str) -> bool:
    return text.strip().lower() == "true"


def _parse_value(text: str) -> float | None:
    return float(text) if text.strip() else None


def read_report(path: Path) -> StoredReport:
    """Read a JSON report or a CSV report with its sidecar."""
    path = Path(path)
    try:
        if path.suffix.lower() == ".json":
            data = json.loads(path.read_text(encoding="utf-8"))
            rows = data["rows"]
        else:
            data = json.loads(sidecar_path(path).read_text(encoding="utf-8"))
            with path.open(newline="", encoding="utf-8") as handle:
                rows = [
                    {
                        "key": r["key"],
                        "value": _parse_value(r["value"]),
                        "exact": _parse_bool(r["exact"]),
                        "witness": r["witness"] or None,
                    }
                    for r in csv.DictReader(handle)
                ]
    except (OSError, ValueError, KeyError) as e:
        raise ConfigParseError(f"Cannot read report {path}", details=str(e)) from e

    if data.get("schema_version") != SCHEMA_VERSION:
        raise ConfigParseError(
            f"Unsupported report schema {data.get('schema_version')!r}",
            field="schema_version",
        )
    witnesses = {k: WitnessRecord.from_dict(v) for k, v in data.get("witnesses", {}).items()}
    return StoredReport(
        rows=rows,
        witnesses=witnesses,
        config=data.get("config", {}),
        seed=data.get("seed"),
        command=data.get("command", ""),
    )


@dataclass
class RecheckResult:
    """Outcome of re-evaluating every stored witness."""

    checked: int = 0
    mismatches: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict[str, Any]:
        return {"checked": self.checked, "mismatches": self.mismatches, "ok": self.ok}


Resolver = Callable[[WitnessRecord], Normer]


def recheck(path: Path, resolve: Callable[[StoredReport], Resolver]) -> RecheckResult:
    """
    Re-evaluate every witness in a report.

    Args:
        path: Report path (CSV or JSON)
        resolve: Builds, from the stored report, a function mapping each
            witness to the norm it was measured in

    Returns:
        RecheckResult listing rows whose witness no longer reproduces the value
    """
    stored = read_report(path)
    normer_for = resolve(stored)
    result = RecheckResult()

    for row in stored.rows:
        digest = row.get("witness")
        if not digest:
            continue
        record = stored.witnesses.get(digest)
        if record is None:
            raise VerificationError(f"Row {row['key']} references unknown witness {digest}")
        if record.digest != digest:
            raise VerificationError(
                f"Witness {digest} of row {row['key']} does not match its digest",
                details=f"recomputed digest {record.digest}",
            )
        value = row["value"]
        recomputed = record.evaluate(normer_for(record))
        result.checked += 1
        if value is None or abs(recomputed - value) > RECHECK_RTOL * max(1.0, abs(value)):
            result.mismatches.append({"key": row["key"], "value": value, "recomputed": recomputed})
            logger.warning("Witness mismatch", key=row["key"], value=value, recomputed=recomputed)

    logger.info("Recheck finished", checked=result.checked, mismatches=len(result.mismatches))
    return result
