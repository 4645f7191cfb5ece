"""
Sharp-constant probes and stability-constant estimates over profile families.
"""

import logging
from typing import Optional, Union

from .engine import DEFAULT_RESTARTS, InfeasiblePoint, ProbeEngine
from .results import SHARP_RATIO, STABILITY_CONSTANT, ProbeResult
from .space import FamilySearchSpace, ParamDict
from ..analysis.constants import ckn_constant, hardy_constant, stability_floor
from ..analysis.functionals import ckn_check, evaluate_inequality, hardy_ratio
from ..analysis.report import Inequality
from ..core.quadrature import QuadratureSpec
from ..utils.exceptions import ValidationError

logger = logging.getLogger(__name__)

# Smallest sup distance a stability witness may have.
DISTANCE_FLOOR = 1e-10

_SHARP_PROBES = (Inequality.LP_HARDY, Inequality.CKN)
_STABILITY_PROBES = (Inequality.LP_HARDY, Inequality.CRITICAL_HARDY, Inequality.RELLICH)


def probe_sharp_constant(inequality: Union[str, Inequality], space: FamilySearchSpace,
                         budget: int = 200, restarts: int = DEFAULT_RESTARTS,
                         seed: int = 0, quad: Optional[QuadratureSpec] = None,
                         jobs: int = 1) -> ProbeResult:
    """
    Approach a sharp constant from below over a family search space.

    - ``lp-hardy`` maximizes integral |u|^p/|x|^p / integral |R u|^p, whose
      supremum is ((Q - p)/p)^(-p).
    - ``ckn`` maximizes lhs / rhs of the weighted Hardy inequality at the
      space's R, whose supremum is p/(p - 1).

    Args:
        inequality: ``lp-hardy`` or ``ckn``
        space: Family search space (its params hold p and R)
        budget: Maximum number of objective evaluations
        restarts: Nelder-Mead restarts
        seed: Halton scrambling seed
        quad: Quadrature configuration
        jobs: Worker threads for the seed evaluations

    Returns:
        ProbeResult with the theoretical sharp constant attached

    Raises:
        ValidationError: For other inequalities or inadmissible exponents
        OptimizationError: If no feasible point was evaluated

    Example:
        >>> space = FamilySearchSpace("log-power", {"t_min": (-10, -1), "t_max": (0.5, 2.7)},
        ...                           group="euclidean:3", log10_params=("t_min", "t_max"),
        ...                           fixed={"beta": 0.5, "R": 1, "m": 2, "ramp": 0.25},
        ...                           params={"p": 2, "R": 1})
        >>> probe_sharp_constant("ckn", space, budget=100).best_value > 1.9
        True
    """
    inequality = Inequality.parse(inequality)
    if inequality not in _SHARP_PROBES:
        raise ValidationError(f"No sharp-constant probe for {inequality.value}")
    quad = quad or QuadratureSpec()
    group, norm = space.setting()
    params = space.exponent_params()

    if inequality is Inequality.LP_HARDY:
        params.check_hardy(group.Q)
        theoretical = 1.0 / hardy_constant(group.Q, params.p)

        def objective(values: ParamDict) -> float:
            return hardy_ratio(space.profile(values), group, norm, params.p, quad)
    else:
        params.check_ckn()
        theoretical = ckn_constant(params.p)

        def objective(values: ParamDict) -> float:
            return ckn_check(space.profile(values), params.R, group, norm, params.p, quad).ratio

    engine = ProbeEngine(objective, space, budget, maximize=True,
                         restarts=restarts, seed=seed, jobs=jobs)
    result = ProbeResult(engine.run(), SHARP_RATIO, inequality.value, theoretical)
    if not result.sound:
        logger.error("%s probe exceeded the sharp constant: %.17g > %.17g",
                     inequality.value, result.best_value, theoretical)
    logger.info("%s sharp probe: best=%.12g (%.6f of %.12g) in %d evaluations",
                inequality.value, result.best_value, result.fraction_of_theoretical,
                theoretical, result.evaluations)
    return result


def estimate_stability_constant(inequality: Union[str, Inequality], space: FamilySearchSpace,
                                budget: int = 100, restarts: int = DEFAULT_RESTARTS,
                                seed: int = 0, quad: Optional[QuadratureSpec] = None,
                                jobs: int = 1) -> ProbeResult:
    """
    Smallest deficit / sup_distance^power found over a family search space.

    The power is p for ``lp-hardy``, Q for ``critical-hardy`` and 2 for
    ``rellich``. Points whose sup distance is below 1e-10 lie in the
    extremizer direction (0/0) and are skipped. The result is an upper
    bound of the best stability constant; it must be strictly positive.

    Args:
        inequality: ``lp-hardy``, ``critical-hardy`` or ``rellich``
        space: Family search space
        budget: Maximum number of objective evaluations
        restarts: Nelder-Mead restarts
        seed: Halton scrambling seed
        quad: Quadrature configuration
        jobs: Worker threads for the seed evaluations

    Returns:
        ProbeResult with the proof-derived floor as theoretical value

    Raises:
        ValidationError: For other inequalities or inadmissible exponents
        OptimizationError: If no feasible point was evaluated
    """
    inequality = Inequality.parse(inequality)
    if inequality not in _STABILITY_PROBES:
        raise ValidationError(f"No stability estimate for {inequality.value}")
    quad = quad or QuadratureSpec()
    group, norm = space.setting()
    params = space.exponent_params()
    if inequality is Inequality.LP_HARDY:
        params.check_hardy(group.Q)
    elif inequality is Inequality.CRITICAL_HARDY:
        params.check_critical(group.Q)
    else:
        params.check_rellich(group.Q)
    floor = stability_floor(inequality.value, p=params.p, Q=group.Q, k=params.k)

    def objective(values: ParamDict) -> float:
        report = evaluate_inequality(inequality, space.profile(values), group, norm,
                                     params, quad)
        sup = report.sup_distance[1]
        if not sup >= DISTANCE_FLOOR:
            raise InfeasiblePoint(f"sup distance {sup:.3g} below {DISTANCE_FLOOR:g}")
        return report.deficit / sup ** report.distance_power

    engine = ProbeEngine(objective, space, budget, maximize=False,
                         restarts=restarts, seed=seed, jobs=jobs)
    result = ProbeResult(engine.run(), STABILITY_CONSTANT, inequality.value, floor)
    if not result.sound:
        logger.error("%s stability estimate is not positive: %.17g",
                     inequality.value, result.best_value)
    logger.info("%s stability estimate: %.12g (proof floor %.6g) in %d evaluations",
                inequality.value, result.best_value, floor, result.evaluations)
    return result
