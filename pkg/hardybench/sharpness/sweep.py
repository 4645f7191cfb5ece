"""
Cross-product evaluation of an inequality over a parameter grid and a corpus.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from ..analysis.functionals import evaluate_inequality
from ..analysis.report import DeficitReport, ExponentParams, Inequality
from ..core.group import parse_group, parse_norm
from ..core.profiles import RadialProfile, SeparableFunction, parse_profile
from ..core.quadrature import QuadratureSpec
from ..data.constants import asserted_floor
from ..data.corpus import CorpusCase
from ..utils.exceptions import HardyBenchError, ValidationError
from ..utils.validators import validate_integer

logger = logging.getLogger(__name__)

GridPoint = Dict[str, Any]
CorpusEntry = Union[CorpusCase, str, dict, RadialProfile, SeparableFunction]

_SETTING_KEYS = ("group", "norm", "Q")
_EXPONENT_KEYS = ("p", "q", "L", "k", "R", "T")


def parameter_grid(**axes: Iterable) -> List[GridPoint]:
    """
    Cross product of named axes, last axis varying fastest.

    Example:
        >>> parameter_grid(p=[2, 3], Q=[4, 5])
        [{'p': 2, 'Q': 4}, {'p': 2, 'Q': 5}, {'p': 3, 'Q': 4}, {'p': 3, 'Q': 5}]
    """
    names = list(axes)
    return [dict(zip(names, values)) for values in itertools.product(*(list(axes[n]) for n in names))]


def _setting(point: GridPoint, case: Optional[CorpusCase]):
    if "group" in point:
        group_text, norm_text = point["group"], point.get("norm")
    elif "Q" in point:
        group_text = f"euclidean:{validate_integer(point['Q'], 'Q', minimum=1)}"
        norm_text = point.get("norm")
    elif case is not None:
        group_text, norm_text = case.group, point.get("norm", case.norm)
    else:
        raise ValidationError("Grid point needs a group or Q when the corpus holds bare profiles")
    group = parse_group(group_text)
    return group, parse_norm(norm_text, group)


def _evaluate(inequality: Inequality, point: GridPoint, entry: CorpusEntry,
              quad: Optional[QuadratureSpec], assert_floors: bool) -> DeficitReport:
    case = entry if isinstance(entry, CorpusCase) else None
    unknown = set(point) - set(_SETTING_KEYS) - set(_EXPONENT_KEYS)
    if unknown:
        raise ValidationError(f"Unknown grid parameters: {sorted(unknown)}")

    group, norm = _setting(point, case)
    exponents = dict(case.params) if case is not None else {}
    exponents.update({k: point[k] for k in _EXPONENT_KEYS if k in point})
    params = ExponentParams(**exponents)

    if case is not None:
        u = parse_profile(case.profile)
    elif isinstance(entry, (RadialProfile, SeparableFunction)):
        u = entry
    else:
        u = parse_profile(entry)

    floor = None
    if assert_floors:
        floor = asserted_floor(inequality.value, p=params.p, Q=group.Q, k=params.k)
    report = evaluate_inequality(inequality, u, group, norm, params, quad, floor=floor)
    report.inputs["grid"] = dict(point)
    if case is not None:
        report.inputs["case_id"] = case.case_id
    return report


def _label(entry: CorpusEntry) -> str:
    if isinstance(entry, CorpusCase):
        return entry.case_id
    if isinstance(entry, (RadialProfile, SeparableFunction)):
        return repr(entry)
    return str(entry)


def sweep(inequality: Union[str, Inequality], grid: Sequence[GridPoint],
          corpus: Sequence[CorpusEntry], jobs: int = 1,
          quad: Optional[QuadratureSpec] = None,
          assert_floors: bool = True) -> List[DeficitReport]:
    """
    Evaluate every (grid point, corpus entry) pair.

    Grid points are dicts of exponent parameters (p, q, L, k, R, T) and
    optionally ``group``/``norm`` or ``Q`` (which selects the Euclidean
    group of that dimension). A grid point overrides the corpus case's own
    setting. Rows come back in grid-major order whatever the execution
    order; a row that raises carries the error and the sweep continues.

    Args:
        inequality: Inequality id
        grid: Parameter grid (an empty grid gives an empty list)
        corpus: Corpus cases, profile specs or functions
        jobs: Worker threads
        quad: Quadrature configuration
        assert_floors: Check the stability ratios against the asserted floors

    Returns:
        One DeficitReport per pair

    Example:
        >>> rows = sweep("lp-hardy", parameter_grid(p=[2, 2.5, 3], Q=[4, 5]), ["gaussian:sigma=1"])
        >>> len(rows)
        6
    """
    inequality = Inequality.parse(inequality)
    jobs = validate_integer(jobs, "jobs", minimum=1)
    tasks = [(point, entry) for point in grid for entry in corpus]
    if not tasks:
        return []

    def run(task) -> DeficitReport:
        point, entry = task
        try:
            return _evaluate(inequality, point, entry, quad, assert_floors)
        except HardyBenchError as exc:
            logger.warning("sweep row %s / %s failed: %s", point, _label(entry), exc)
            return DeficitReport.failed(
                inequality, {"grid": dict(point), "case": _label(entry)},
                f"{type(exc).__name__}: {exc}",
            )

    if jobs == 1:
        rows = [run(task) for task in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run, tasks))
    failed = sum(1 for row in rows if row.error)
    logger.info("sweep %s: %d rows, %d failed", inequality.value, len(rows), failed)
    return rows
