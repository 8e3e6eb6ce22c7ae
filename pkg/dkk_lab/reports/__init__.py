"""Report models, CSV/JSON writers and witness re-verification."""

from .models import (
    CSV_COLUMNS,
    SCHEMA_VERSION,
    ConstantsReport,
    Measure,
    ReportMetadata,
    Row,
    WitnessRecord,
    format_value,
)
from .writer import (
    RecheckResult,
    StoredReport,
    read_report,
    recheck,
    render,
    render_csv,
    render_json,
    sidecar_path,
    write_report,
)

__all__ = [
    "CSV_COLUMNS",
    "SCHEMA_VERSION",
    "ConstantsReport",
    "Measure",
    "ReportMetadata",
    "Row",
    "WitnessRecord",
    "format_value",
    "RecheckResult",
    "StoredReport",
    "read_report",
    "recheck",
    "render",
    "render_csv",
    "render_json",
    "sidecar_path",
    "write_report",
]
