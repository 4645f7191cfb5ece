"""
Formatting and emission of HardyBench reports.

JSON output is byte-stable: keys are sorted and every float is written with
17 significant digits (``Infinity`` and ``NaN`` for non-finite values).
CSV output uses ``,`` separators, ``.`` decimals and a header row.
"""

import json
import logging
import math
import re
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Sequence, Union

import numpy as np
import pandas as pd

from .exceptions import ReportError
from .validators import validate_choice

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "both")
FLOAT_FORMAT = "%.17g"

_SENTINEL = re.compile(r'"__F17__(.*?)__"')


def format_float(value: float) -> str:
    """
    Format a float with 17 significant digits, JSON style.

    Example:
        >>> format_float(0.5), format_float(float("inf")), format_float(float("nan"))
        ('0.5', 'Infinity', 'NaN')
    """
    value = float(value)
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    return FLOAT_FORMAT % value


def _plain(value: Any) -> Any:
    """Convert to JSON-compatible types, marking floats for fixed formatting."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    if value is None or isinstance(value, (bool, np.bool_)):
        return None if value is None else bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating, Fraction)):
        return f"__F17__{format_float(value)}__"
    if hasattr(value, "to_dict"):
        return _plain(value.to_dict())
    return value


def to_json(data: Any) -> str:
    """
    Serialize to byte-stable JSON.

    Args:
        data: Mapping, sequence or object with a ``to_dict`` method

    Returns:
        JSON text with sorted keys and a trailing newline
    """
    text = json.dumps(_plain(data), sort_keys=True, indent=2)
    return _SENTINEL.sub(lambda match: match.group(1), text) + "\n"


def reports_frame(reports: Sequence[Any]) -> pd.DataFrame:
    """One row per report (``to_row``) as a DataFrame."""
    return pd.DataFrame([report.to_row() for report in reports])


def _as_frame(report: Any) -> pd.DataFrame:
    if isinstance(report, pd.DataFrame):
        return report
    if isinstance(report, (list, tuple)):
        return reports_frame(report)
    if hasattr(report, "distance_frame"):
        return report.distance_frame()
    if hasattr(report, "trace_frame"):
        return report.trace_frame()
    raise ReportError(f"Cannot write {type(report).__name__} as CSV")


def _as_json(report: Any) -> str:
    if isinstance(report, pd.DataFrame):
        return to_json(report.to_dict(orient="records"))
    if isinstance(report, (list, tuple)):
        return to_json([r.to_dict() for r in report])
    return to_json(report)


def _write(path: Path, write) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        write(path)
    except OSError as exc:
        raise ReportError(f"Cannot write report to {path}: {exc}")
    logger.info("wrote %s", path)
    return path


def emit_report(report: Any, format: str = "json", path: Union[str, Path] = "report") -> List[Path]:
    """
    Write a report to disk.

    ``report`` may be a DeficitReport (CSV: its distance grid), a list of
    reports (CSV: one row each), a ProbeResult (CSV: its convergence trace)
    or a DataFrame. With ``both`` the JSON and CSV files share the path stem.

    Args:
        report: Report to write
        format: ``json``, ``csv`` or ``both``
        path: Target file; the suffix is replaced by .json / .csv

    Returns:
        Paths written

    Raises:
        ReportError: If a file cannot be written (the message names the path)
        ValidationError: For an unknown format
    """
    format = validate_choice(format, FORMATS, "format")
    path = Path(path)
    written = []
    if format in ("json", "both"):
        text = _as_json(report)
        written.append(_write(path.with_suffix(".json"),
                              lambda p: p.write_text(text, encoding="utf-8")))
    if format in ("csv", "both"):
        frame = _as_frame(report)
        written.append(_write(path.with_suffix(".csv"), lambda p: frame.to_csv(
            p, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")))
    return written
