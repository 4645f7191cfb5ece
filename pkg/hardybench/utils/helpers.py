"""
Helper utilities for HardyBench.
"""

from typing import Optional

import numpy as np


def safe_divide(numerator: Optional[float], denominator: Optional[float],
                default: Optional[float] = None) -> Optional[float]:
    """
    Safely divide two numbers.

    Args:
        numerator: Top number
        denominator: Bottom number
        default: Default value if division fails

    Returns:
        Result of division or default
    """
    if numerator is None or denominator is None:
        return default

    if denominator == 0:
        return default

    try:
        return numerator / denominator
    except (TypeError, ZeroDivisionError, OverflowError):
        return default


def signed_power(x, exponent: float) -> np.ndarray:
    """
    Odd power extension sign(x)|x|^exponent.

    This is the reading of |x|^(exponent - 1) x used throughout; at x = 0 it
    is 0 for every exponent.

    Args:
        x: Scalar or array
        exponent: Power applied to |x|

    Returns:
        Array of the same shape as x
    """
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sign(x) * np.abs(x) ** exponent
    return np.where(x == 0, 0.0, out)


def abs_power(x, exponent: float) -> np.ndarray:
    """
    |x|^exponent extended to x = 0 by its limit.

    0^exponent is 0 for positive exponents, inf for negative ones and 1 for
    exponent 0, so 0 * |0|^0 stays 0 in p = 2 integrands.
    """
    x = np.abs(np.asarray(x, dtype=float))
    at_zero = 0.0 if exponent > 0 else (1.0 if exponent == 0 else np.inf)
    with np.errstate(divide="ignore"):
        return np.where(x == 0, at_zero, x ** exponent)


def log_grid(center: float, lower_factor: float = 1e-2, upper_factor: float = 1e2,
             points: int = 33) -> np.ndarray:
    """
    Logarithmically spaced grid around a natural scale.

    Args:
        center: Natural scale of the problem
        lower_factor: Grid starts at center * lower_factor
        upper_factor: Grid ends at center * upper_factor
        points: Number of grid points

    Returns:
        Array of grid values
    """
    return center * np.logspace(np.log10(lower_factor), np.log10(upper_factor), points)
