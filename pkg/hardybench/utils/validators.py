"""
Input validation utilities for HardyBench.
"""

import math
from typing import Iterable, Optional

from .exceptions import ValidationError


def validate_finite(value: float, name: str) -> float:
    """
    Validate that a value is a finite real number.

    Args:
        value: Value to check
        name: Parameter name (for error messages)

    Returns:
        The value as float

    Raises:
        ValidationError: If value is not a finite number
    """
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{name} must be a real number, got {value!r}")

    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value}")

    return value


def validate_positive_number(value: float, name: str, allow_zero: bool = False) -> float:
    """
    Validate that a value is a positive number.

    Args:
        value: Value to check
        name: Parameter name (for error messages)
        allow_zero: Whether zero is acceptable

    Returns:
        The value as float

    Raises:
        ValidationError: If value is not positive
    """
    value = validate_finite(value, name)

    if value < 0 or (value == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise ValidationError(f"{name} must be {bound}, got {value}")

    return value


def validate_integer(value, name: str, minimum: Optional[int] = None) -> int:
    """
    Validate an integer parameter.

    Args:
        value: Value to check (integral floats are accepted)
        name: Parameter name (for error messages)
        minimum: Smallest admissible value

    Returns:
        The value as int

    Raises:
        ValidationError: If value is not an integer or below minimum
    """
    if isinstance(value, bool):
        raise ValidationError(f"{name} must be an integer, got {value!r}")

    try:
        as_float = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{name} must be an integer, got {value!r}")

    if not as_float.is_integer():
        raise ValidationError(f"{name} must be an integer, got {value}")

    value = int(as_float)
    if minimum is not None and value < minimum:
        raise ValidationError(f"{name} must be >= {minimum}, got {value}")

    return value


def validate_exponent_range(
    value: float,
    name: str,
    lower: Optional[float] = None,
    upper: Optional[float] = None,
    lower_inclusive: bool = True,
    upper_inclusive: bool = False,
) -> float:
    """
    Validate that an exponent lies in an interval.

    Args:
        value: Exponent to check
        name: Parameter name (for error messages)
        lower: Lower bound (None for unbounded)
        upper: Upper bound (None for unbounded)
        lower_inclusive: Whether the lower bound is admissible
        upper_inclusive: Whether the upper bound is admissible

    Returns:
        The exponent as float

    Raises:
        ValidationError: If the exponent is outside the interval
    """
    value = validate_finite(value, name)

    if lower is not None:
        if value < lower or (value == lower and not lower_inclusive):
            op = ">=" if lower_inclusive else ">"
            raise ValidationError(f"{name} must be {op} {lower}, got {value}")

    if upper is not None:
        if value > upper or (value == upper and not upper_inclusive):
            op = "<=" if upper_inclusive else "<"
            raise ValidationError(f"{name} must be {op} {upper}, got {value}")

    return value


def validate_choice(value: str, choices: Iterable[str], name: str) -> str:
    """
    Validate that a string is one of the allowed choices.

    Args:
        value: String to check (case-insensitive)
        choices: Allowed values
        name: Parameter name (for error messages)

    Returns:
        Normalized lowercase choice

    Raises:
        ValidationError: If value is not an allowed choice
    """
    choices = list(choices)
    normalized = str(value).strip().lower()

    if normalized not in choices:
        raise ValidationError(f"Invalid {name}: {value}. Must be one of {choices}")

    return normalized
