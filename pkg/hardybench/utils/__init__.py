"""Utility functions and helpers for HardyBench."""

from .formatters import emit_report, format_float, reports_frame, to_json

__all__ = [
    'emit_report',
    'format_float',
    'reports_frame',
    'to_json',
]
