"""
Grid-and-refine supremum of a distance over a scale parameter.

The supremum over R (or T) is taken on a logarithmic grid around a natural
scale and refined by golden-section search between the neighbours of the
grid maximum. The result is a lower bound of the true supremum.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..utils.helpers import log_grid

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 33
DEFAULT_LOWER_FACTOR = 1e-2
DEFAULT_UPPER_FACTOR = 1e2
REFINE_XATOL = 1e-5
REFINE_XTOL = 1e-6


@dataclass
class SupremumResult:
    """Grid values and the refined supremum (parameter, value)."""

    grid: List[Tuple[float, float]] = field(default_factory=list)
    argmax: float = math.nan
    value: float = 0.0
    refined: bool = False


def grid_supremum(func: Callable[[float], float], center: float,
                  points: int = DEFAULT_GRID_POINTS,
                  lower_factor: float = DEFAULT_LOWER_FACTOR,
                  upper_factor: float = DEFAULT_UPPER_FACTOR,
                  grid: Optional[Sequence[float]] = None) -> SupremumResult:
    """
    Lower bound of sup func over a logarithmic range.

    Args:
        func: Scalar function of the scale parameter (may return inf)
        center: Natural scale the grid is centred on
        points: Grid size
        lower_factor: Grid starts at center * lower_factor
        upper_factor: Grid ends at center * upper_factor
        grid: Explicit grid overriding the logarithmic one

    Returns:
        SupremumResult whose value is at least every grid entry
    """
    xs = np.asarray(grid, dtype=float) if grid is not None else log_grid(
        center, lower_factor, upper_factor, points)
    values = [float(func(float(x))) for x in xs]
    result = SupremumResult(grid=[(float(x), v) for x, v in zip(xs, values)])
    if not values:
        return result

    i = int(np.argmax(values))
    result.argmax, result.value = float(xs[i]), values[i]
    if not math.isfinite(result.value) or len(xs) < 3 or result.value <= 0.0:
        return result

    lo = math.log(xs[max(i - 1, 0)])
    hi = math.log(xs[min(i + 1, len(xs) - 1)])

    def objective(ell):
        return -float(func(math.exp(ell)))

    if 0 < i < len(xs) - 1 and values[i] > max(values[i - 1], values[i + 1]):
        res = minimize_scalar(objective, bracket=(lo, math.log(xs[i]), hi),
                              method="golden", options={"xtol": REFINE_XTOL})
    else:
        # maximum at a grid end or tied with a neighbour: no strict bracket
        res = minimize_scalar(objective, bounds=(lo, hi), method="bounded",
                              options={"xatol": REFINE_XATOL})
    if getattr(res, "success", True) and -res.fun > result.value:
        result.argmax, result.value = float(math.exp(res.x)), float(-res.fun)
        result.refined = True
    logger.debug("grid_supremum: argmax=%.6g value=%.17g refined=%s",
                 result.argmax, result.value, result.refined)
    return result
