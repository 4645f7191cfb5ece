"""
Result containers for the inequality functionals.
"""

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import pandas as pd

from ..utils.exceptions import ValidationError
from ..utils.helpers import safe_divide

# Tolerance for "deficit >= 0" relative to 1 + lhs.
DEFICIT_TOLERANCE = 1e-9
# Relative slack for the CKN ratio against p/(p - 1).
CKN_TOLERANCE = 1e-6
# A measured stability ratio may undershoot the asserted floor by this fraction.
FLOOR_SLACK = 1e-2


class Inequality(Enum):
    """Inequality identifiers used in reports, configs and on the command line."""

    LP_HARDY = "lp-hardy"
    CKN = "ckn"
    CRITICAL_HARDY = "critical-hardy"
    RADIAL_IMPROVED = "radial-improved"
    RELLICH = "rellich"
    ELEMENTARY = "elementary"

    @classmethod
    def parse(cls, value) -> "Inequality":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValidationError(
                f"Unknown inequality '{value}'. Must be one of {[i.value for i in cls]}"
            )


@dataclass(frozen=True)
class ExponentParams:
    """
    Exponents and radii shared by the inequalities.

    Only the fields an inequality uses are checked, by the ``check_*`` methods.
    """

    p: float = 2.0
    q: float = 2.0
    L: float = 0.0
    k: int = 2
    R: float = 1.0
    T: float = 1.0

    def alpha(self, Q: float) -> float:
        """alpha = (Q - 1) q / Q + L + 2."""
        return (Q - 1.0) * self.q / Q + self.L + 2.0

    def check_hardy(self, Q: float) -> None:
        if not 2.0 <= self.p < Q:
            raise ValidationError(f"L^p Hardy stability needs 2 <= p < Q, got p={self.p}, Q={Q}")

    def check_ckn(self) -> None:
        if not self.p > 1.0:
            raise ValidationError(f"Weighted Hardy inequality needs p > 1, got p={self.p}")

    def check_critical(self, Q: float) -> None:
        if Q < 2.0:
            raise ValidationError(f"Critical Hardy inequality needs Q >= 2, got Q={Q}")

    def check_radial_improved(self, Q: float) -> None:
        if self.q <= 0:
            raise ValidationError(f"q must be > 0, got {self.q}")
        if not -1.0 < self.L < Q - 2.0:
            raise ValidationError(f"Radial improvement needs -1 < L < Q - 2, got L={self.L}, Q={Q}")
        if self.alpha(Q) > Q:
            raise ValidationError(f"alpha = {self.alpha(Q)} exceeds Q = {Q}")

    def check_rellich(self, Q: float) -> None:
        if self.p < 1.0:
            raise ValidationError(f"Rellich inequality needs p >= 1, got p={self.p}")
        if int(self.k) != self.k or self.k < 2:
            raise ValidationError(f"Rellich inequality needs an integer k >= 2, got k={self.k}")
        if self.k * self.p >= Q:
            raise ValidationError(f"Rellich inequality needs k p < Q, got k p={self.k * self.p}, Q={Q}")

    def to_dict(self) -> dict:
        return asdict(self)


class CKNResult(NamedTuple):
    """Both sides of the weighted Hardy inequality and their ratio."""

    lhs: float
    rhs: float
    ratio: float

    def holds(self, p: float, tol: float = CKN_TOLERANCE) -> bool:
        """Whether lhs <= p/(p - 1) rhs up to the relative tolerance."""
        return self.ratio <= p / (p - 1.0) * (1.0 + tol)


@dataclass
class DeficitReport:
    """
    Sides, deficit and distance profile of one inequality evaluation.

    Attributes:
        inequality: Which inequality was evaluated
        lhs: Left-hand side
        rhs_constant_part: Sharp constant times the right-hand integral
        deficit: lhs - rhs_constant_part as computed
        distance_grid: (parameter, distance) pairs over the R or T grid
        sup_distance: (parameter, value) of the refined supremum, a lower
            bound of the true supremum
        empirical_C: deficit / sup_distance^distance_power, when defined
        quadrature_err: Accumulated quadrature error estimate
        inputs: Echo of group, norm, profile and exponent parameters
        distance_power: Power the distance enters the stability estimate with
        stability_floor: Constant the stability ratio is checked against
        margin: Inequality margin for checks without a distance
        passed: Whether every asserted inequality held
        notes: Extra diagnostics (flags, alternative distance forms)
        error: Failure message for rows of a sweep that could not be evaluated
    """

    inequality: Inequality
    lhs: float = math.nan
    rhs_constant_part: float = math.nan
    deficit: float = math.nan
    distance_grid: List[Tuple[float, float]] = field(default_factory=list)
    sup_distance: Tuple[float, float] = (math.nan, 0.0)
    empirical_C: Optional[float] = None
    quadrature_err: float = 0.0
    inputs: Dict[str, Any] = field(default_factory=dict)
    distance_power: float = 1.0
    stability_floor: Optional[float] = None
    margin: Optional[float] = None
    passed: Optional[bool] = None
    notes: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    @classmethod
    def failed(cls, inequality: Inequality, inputs: Dict[str, Any], error: str) -> "DeficitReport":
        """Row for an evaluation that raised."""
        return cls(inequality=inequality, inputs=dict(inputs), passed=False, error=error)

    def finalize(self, floor: Optional[float] = None) -> "DeficitReport":
        """
        Fill empirical_C and passed from the computed quantities.

        The deficit must be nonnegative up to 1e-9 (1 + lhs); with a floor,
        deficit >= floor * sup^power must also hold up to a 1% slack.
        """
        sup = self.sup_distance[1]
        if sup > 0 and math.isfinite(sup):
            self.empirical_C = safe_divide(self.deficit, sup ** self.distance_power)
        ok = self.deficit >= -DEFICIT_TOLERANCE * (1.0 + abs(self.lhs))
        if floor is not None:
            self.stability_floor = floor
            if self.empirical_C is not None:
                ok = ok and self.empirical_C >= floor * (1.0 - FLOOR_SLACK)
        self.passed = bool(ok)
        return self

    def distance_frame(self) -> pd.DataFrame:
        """distance_grid as a two-column DataFrame (parameter, distance)."""
        return pd.DataFrame(self.distance_grid, columns=["parameter", "distance"])

    def to_dict(self) -> Dict[str, Any]:
        """Flat JSON-ready mapping."""
        return {
            "inequality": self.inequality.value,
            "lhs": self.lhs,
            "rhs_constant_part": self.rhs_constant_part,
            "deficit": self.deficit,
            "distance_grid": [[x, v] for x, v in self.distance_grid],
            "sup_distance_parameter": self.sup_distance[0],
            "sup_distance": self.sup_distance[1],
            "empirical_C": self.empirical_C,
            "quadrature_err": self.quadrature_err,
            "distance_power": self.distance_power,
            "stability_floor": self.stability_floor,
            "margin": self.margin,
            "passed": self.passed,
            "notes": dict(self.notes),
            "error": self.error,
            "inputs": dict(self.inputs),
        }

    def to_row(self) -> Dict[str, Any]:
        """Single CSV row: scalar fields plus inputs prefixed with ``input.``."""
        row = {k: v for k, v in self.to_dict().items()
               if k not in ("distance_grid", "notes", "inputs")}
        for key, value in _flatten(self.inputs, "input").items():
            row[key] = value
        return row

    def summary(self) -> str:
        """
        Get formatted summary of the evaluation.

        Returns:
            Formatted string with the key quantities
        """
        if self.error:
            return f"\n{self.inequality.value}: FAILED ({self.error})\n"
        sup_param, sup_value = self.sup_distance
        empirical = "n/a" if self.empirical_C is None else f"{self.empirical_C:.6g}"
        floor = "n/a" if self.stability_floor is None else f"{self.stability_floor:.6g}"
        margin = "n/a" if self.margin is None else f"{self.margin:.6g}"
        return f"""
{self.inequality.value} Report
{'=' * 60}

Sides:
  LHS:                 {self.lhs:>16.10g}
  Constant x RHS:      {self.rhs_constant_part:>16.10g}
  Deficit:             {self.deficit:>16.10g}
  Margin:              {margin:>16}

Distance:
  Grid points:         {len(self.distance_grid):>16}
  Sup parameter:       {sup_param:>16.8g}
  Sup distance:        {sup_value:>16.10g}
  Power:               {self.distance_power:>16g}

Stability:
  Empirical C:         {empirical:>16}
  Asserted floor:      {floor:>16}
  Passed:              {str(self.passed):>16}

{'=' * 60}
"""

    def __repr__(self) -> str:
        return (f"DeficitReport({self.inequality.value}, deficit={self.deficit:.6g}, "
                f"sup={self.sup_distance[1]:.6g}, passed={self.passed})")


def _flatten(data: Dict[str, Any], prefix: str) -> Dict[str, Any]:
    flat = {}
    for key, value in data.items():
        name = f"{prefix}.{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name))
        elif isinstance(value, (list, tuple)):
            flat[name] = ";".join(str(v) for v in value)
        else:
            flat[name] = value
    return flat
