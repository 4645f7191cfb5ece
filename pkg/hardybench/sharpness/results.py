"""
Probe results with the convergence trace.
"""

import math
from typing import Dict, List, Optional, Tuple

import pandas as pd

from ..utils.helpers import safe_divide

SHARP_RATIO = "sharp-ratio"
STABILITY_CONSTANT = "stability-constant"

# Relative excess over the theoretical sharp constant that flags a bug.
SOUNDNESS_TOLERANCE = 1e-6


class ProbeResult:
    """
    Outcome of a sharp-constant probe or a stability-constant estimate.

    Provides:
    - Best value and the parameters that reached it
    - Evaluation count and convergence trace (best-so-far per evaluation)
    - The theoretical reference (sharp constant or proof-derived floor)
    """

    def __init__(self, results_dict: Dict, objective: str, inequality: str,
                 theoretical: Optional[float] = None):
        """
        Initialize from probe engine results.

        Args:
            results_dict: Results from ProbeEngine.run()
            objective: ``sharp-ratio`` or ``stability-constant``
            inequality: Inequality id
            theoretical: Sharp constant (sharp-ratio) or proof floor
                (stability-constant)
        """
        self._results = results_dict
        self.objective = objective
        self.inequality = inequality
        self.theoretical = theoretical
        self._trace_df = None

    @property
    def best_value(self) -> float:
        return self._results["best_value"]

    @property
    def best_params(self) -> Dict[str, float]:
        return dict(self._results["best_params"])

    @property
    def evaluations(self) -> int:
        return self._results["evaluations"]

    @property
    def trace(self) -> List[Tuple[int, float]]:
        return list(self._results["trace"])

    @property
    def fraction_of_theoretical(self) -> Optional[float]:
        """best_value / theoretical."""
        if self.theoretical is None:
            return None
        return safe_divide(self.best_value, self.theoretical)

    @property
    def sound(self) -> bool:
        """
        Whether the result is consistent with the theory.

        A sharp ratio may not exceed the sharp constant by more than 1e-6
        relative; a stability constant must be strictly positive.
        """
        if self.objective == SHARP_RATIO:
            return self.best_value <= self.theoretical * (1.0 + SOUNDNESS_TOLERANCE)
        return self.best_value > 0.0

    def trace_frame(self) -> pd.DataFrame:
        """Convergence trace as a DataFrame (evaluation, best_value)."""
        if self._trace_df is None:
            self._trace_df = pd.DataFrame(self.trace, columns=["evaluation", "best_value"])
        return self._trace_df

    def to_dict(self) -> Dict:
        """JSON-ready mapping."""
        return {
            "objective": self.objective,
            "inequality": self.inequality,
            "best_value": self.best_value,
            "best_params": self.best_params,
            "best_x": list(self._results["best_x"]),
            "evaluations": self.evaluations,
            "skipped": self._results["skipped"],
            "restarts": self._results["restarts"],
            "budget": self._results["budget"],
            "seed": self._results["seed"],
            "theoretical": self.theoretical,
            "fraction_of_theoretical": self.fraction_of_theoretical,
            "sound": self.sound,
            "space": self._results["space"],
            "trace": [[i, v] for i, v in self.trace],
        }

    def summary(self) -> str:
        """
        Get formatted summary of the probe.

        Returns:
            Formatted string with the best value and search statistics
        """
        theoretical = "n/a" if self.theoretical is None else f"{self.theoretical:.10g}"
        fraction = self.fraction_of_theoretical
        fraction = "n/a" if fraction is None or math.isnan(fraction) else f"{fraction:.6f}"
        params = ", ".join(f"{k}={v:.6g}" for k, v in sorted(self.best_params.items()))
        return f"""
{self.inequality} {self.objective} Probe
{'=' * 60}

Result:
  Best value:          {self.best_value:>16.10g}
  Theoretical:         {theoretical:>16}
  Fraction:            {fraction:>16}
  Sound:               {str(self.sound):>16}

Search:
  Space:               {self._results['space']['name']:>16}
  Evaluations:         {self.evaluations:>16}
  Skipped:             {self._results['skipped']:>16}
  Restarts:            {self._results['restarts']:>16}
  Seed:                {self._results['seed']:>16}

Best parameters:
  {params}

{'=' * 60}
"""

    def __repr__(self) -> str:
        return (f"ProbeResult({self.inequality}, {self.objective}, "
                f"best={self.best_value:.6g}, evaluations={self.evaluations})")
