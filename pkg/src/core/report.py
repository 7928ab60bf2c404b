"""
Report writers
Deterministic CSV and JSON rendering: fixed column order, fixed float
formatting at the configured precision, no locale dependence.
"""
import csv
import io
import json
import math
import os
import sys
from typing import Any, Dict, Iterable, List, Optional

from pydantic import BaseModel

from src.core.schemas import CutoffRow, ScanRecord

SCAN_HEADER = ["t", "r", "regime", "re", "im", "method", "basis"]
CUTOFF_HEADER = ["r", "s", "omega", "is_lowest"]


def format_float(x: Optional[float], precision: int) -> str:
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"  # also folds -0
    return format(x, f".{precision}g")


def round_float(x: float, precision: int) -> Optional[float]:
    """Float rounded to precision significant digits; non-finite values become None (JSON null)."""
    if not math.isfinite(x):
        return None
    if x == 0.0:
        return 0.0
    return float(format(x, f".{precision}g"))


def round_floats(obj: Any, precision: int) -> Any:
    """Round every float in a JSON-like structure."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return round_float(obj, precision)
    if isinstance(obj, dict):
        return {k: round_floats(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, precision) for v in obj]
    return obj


def render_json(obj: Any, precision: int) -> str:
    if isinstance(obj, BaseModel):
        obj = obj.model_dump(mode="json")
    return json.dumps(round_floats(obj, precision), indent=2, allow_nan=False) + "\n"


def _csv_text(header: List[str], rows: Iterable[List[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def render_scan_csv(records: Iterable[ScanRecord], precision: int) -> str:
    rows = []
    for rec in records:
        if rec.status == "ok":
            re, im = format_float(rec.re, precision), format_float(rec.im, precision)
        else:
            re = im = rec.status
        rows.append([
            format_float(rec.t, precision),
            format_float(rec.r, precision),
            rec.regime,
            re,
            im,
            rec.method,
            rec.basis,
        ])
    return _csv_text(SCAN_HEADER, rows)


def render_scan_json(records: Iterable[ScanRecord], metadata: Dict[str, Any], precision: int) -> str:
    payload = {
        "metadata": metadata,
        "records": [rec.model_dump(mode="json") for rec in records],
    }
    return render_json(payload, precision)


def render_cutoff_csv(rows: Iterable[CutoffRow], precision: int) -> str:
    return _csv_text(
        CUTOFF_HEADER,
        ([str(row.r), str(row.s), format_float(row.omega, precision), str(row.is_lowest).lower()] for row in rows),
    )


def write_output(text: str, path: Optional[str] = None) -> None:
    """Write to path, or stdout when no path is given."""
    if not path:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
