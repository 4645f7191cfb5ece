"""
Probe engine: bounded Nelder-Mead with restarts from Halton seeds.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from .space import FamilySearchSpace, ParamDict
from ..utils.exceptions import HardyBenchError, OptimizationError
from ..utils.validators import validate_integer

logger = logging.getLogger(__name__)

# Initial simplex edge as a fraction of each box width.
SIMPLEX_STEP = 0.1
DEFAULT_RESTARTS = 8
SEEDS_PER_RESTART = 4


class InfeasiblePoint(Exception):
    """Raised by an objective for a point that must be skipped."""


class _BudgetExhausted(Exception):
    pass


class ProbeEngine:
    """
    Derivative-free search of one objective over a family search space.

    Handles:
    - Halton seeding of the box (evaluated in parallel up to ``jobs``)
    - Nelder-Mead restarts from the best seeds
    - The hard evaluation budget
    - Best-so-far tracking and the convergence trace

    Objectives return the value to optimize; points that violate a
    constraint, raise a HardyBenchError or :class:`InfeasiblePoint`, or give
    a non-finite value count against the budget and are skipped.
    """

    def __init__(
        self,
        objective: Callable[[ParamDict], float],
        space: FamilySearchSpace,
        budget: int,
        maximize: bool = True,
        restarts: int = DEFAULT_RESTARTS,
        seed: int = 0,
        jobs: int = 1,
    ):
        """
        Initialize probe engine.

        Args:
            objective: Function of the full profile parameter dict
            space: Search space
            budget: Maximum number of objective evaluations (>= 1)
            maximize: Maximize (True) or minimize the objective
            restarts: Number of Nelder-Mead restarts
            seed: Halton scrambling seed
            jobs: Worker threads for the seed evaluations
        """
        self.objective = objective
        self.space = space
        self.budget = validate_integer(budget, "budget", minimum=1)
        self.maximize = maximize
        self.restarts = validate_integer(restarts, "restarts", minimum=1)
        self.seed = int(seed)
        self.jobs = validate_integer(jobs, "jobs", minimum=1)

        bounds = space.bounds()
        self._free = bounds[:, 1] > bounds[:, 0]
        self._bounds = bounds

        # State
        self.evaluations = 0
        self.skipped = 0
        self.best_value = math.nan
        self.best_x: Optional[np.ndarray] = None
        self.trace: List[Tuple[int, float]] = []

    def _value(self, x: np.ndarray) -> float:
        """Objective at x, or nan for a skipped point."""
        params = self.space.to_params(x)
        failed = self.space.violated(params)
        if failed:
            logger.debug("skip %s: violates %s", params, failed)
            return math.nan
        try:
            value = float(self.objective(params))
        except InfeasiblePoint as exc:
            logger.debug("skip %s: %s", params, exc)
            return math.nan
        except HardyBenchError as exc:
            logger.debug("skip %s: %s: %s", params, type(exc).__name__, exc)
            return math.nan
        return value if math.isfinite(value) else math.nan

    def _record(self, x: np.ndarray, value: float) -> float:
        """Book one evaluation and return its loss for the minimizer."""
        self.evaluations += 1
        if math.isnan(value):
            self.skipped += 1
            return math.inf
        better = value > self.best_value if self.maximize else value < self.best_value
        if self.best_x is None or better:
            self.best_value = value
            self.best_x = np.array(x, dtype=float)
        self.trace.append((self.evaluations, self.best_value))
        return -value if self.maximize else value

    def _loss(self, free_x: np.ndarray, anchor: np.ndarray) -> float:
        if self.evaluations >= self.budget:
            raise _BudgetExhausted
        x = anchor.copy()
        x[self._free] = np.clip(free_x, self._bounds[self._free, 0], self._bounds[self._free, 1])
        return self._record(x, self._value(x))

    def _initial_simplex(self, x0: np.ndarray) -> np.ndarray:
        lo, hi = self._bounds[self._free, 0], self._bounds[self._free, 1]
        steps = SIMPLEX_STEP * (hi - lo)
        simplex = [x0.copy()]
        for i in range(len(x0)):
            vertex = x0.copy()
            vertex[i] = x0[i] + steps[i] if x0[i] + steps[i] <= hi[i] else x0[i] - steps[i]
            simplex.append(vertex)
        return np.array(simplex)

    def _seed_phase(self) -> List[Tuple[float, int, np.ndarray]]:
        n_seeds = min(self.budget, SEEDS_PER_RESTART * self.restarts)
        seeds = self.space.halton_seeds(n_seeds, seed=self.seed)
        if self.jobs > 1 and len(seeds) > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                values = list(pool.map(self._value, seeds))
        else:
            values = [self._value(x) for x in seeds]

        ranked = []
        for i, (x, value) in enumerate(zip(seeds, values)):
            loss = self._record(x, value)
            if math.isfinite(loss):
                ranked.append((loss, i, x))
        ranked.sort(key=lambda item: (item[0], item[1]))
        logger.info("%s: %d seeds, %d feasible", self.space.name, len(seeds), len(ranked))
        return ranked

    def run(self) -> Dict:
        """
        Run the probe.

        Returns:
            Dictionary with the best value, parameters, evaluation count and trace

        Raises:
            OptimizationError: If no evaluated point was feasible
        """
        ranked = self._seed_phase()
        restarts_run = 0
        if ranked and self._free.any():
            for _, _, x0 in ranked[:self.restarts]:
                if self.evaluations >= self.budget:
                    break
                restarts_run += 1
                anchor = np.array(x0, dtype=float)
                start = anchor[self._free]
                try:
                    minimize(
                        self._loss, start, args=(anchor,), method="Nelder-Mead",
                        bounds=list(map(tuple, self._bounds[self._free])),
                        options={
                            "initial_simplex": self._initial_simplex(start),
                            "maxfev": self.budget - self.evaluations,
                            "xatol": 1e-6,
                            "fatol": 1e-10,
                        },
                    )
                except _BudgetExhausted:
                    logger.debug("%s: budget exhausted in restart %d", self.space.name, restarts_run)
                    break
                logger.debug("%s: restart %d done, best=%.12g after %d evaluations",
                             self.space.name, restarts_run, self.best_value, self.evaluations)

        if self.best_x is None:
            raise OptimizationError(
                f"No feasible point in search space {self.space.name} "
                f"after {self.evaluations} evaluations"
            )
        if self.skipped:
            logger.info("%s: skipped %d infeasible or degenerate points",
                        self.space.name, self.skipped)

        return {
            "best_value": self.best_value,
            "best_params": self.space.to_params(self.best_x),
            "best_x": [float(v) for v in self.best_x],
            "evaluations": self.evaluations,
            "skipped": self.skipped,
            "restarts": restarts_run,
            "trace": list(self.trace),
            "budget": self.budget,
            "seed": self.seed,
            "space": self.space.to_dict(),
        }
