"""
Full invariant suite behind ``hardybench selftest``.

Closed-form constants, quadrature oracles, proof identities, the sampled
elementary inequalities and the shipped corpus of every inequality.
"""

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

import numpy as np

from .analysis.constants import K_constant, constant_CLQq, estimate_Cp
from .analysis.functionals import (
    elementary_report,
    hardy_deficit,
    rellich_expansion_residual,
    rellich_parts_residual,
    vanishing_flux_integral,
)
from .core.group import parse_group, parse_norm, sphere_measure
from .core.profiles import hardy_transform, make_profile, parse_profile
from .core.quadrature import QuadratureSpec
from .data.constants import CP_DOUBLING_TOLERANCE, ELEMENTARY_SAMPLES
from .data.corpus import CATALOG_PROFILES, CORPUS, get_corpus
from .data.oracle_profiles import ORACLE_SETTINGS, ORACLE_TOLERANCE, oracle_gap, oracle_profiles
from .utils.exceptions import HardyBenchError

logger = logging.getLogger(__name__)

Check = Tuple[str, Callable[[QuadratureSpec], Tuple[bool, str]]]


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    detail: str
    seconds: float

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


@dataclass
class SelftestResult:
    """Outcomes of every check plus pass / fail counts."""

    outcomes: List[CheckOutcome] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for o in self.outcomes if o.passed)

    @property
    def failed(self) -> int:
        return len(self.outcomes) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        # Timings vary between runs and stay out of the JSON report.
        return {
            "passed": self.passed,
            "failed": self.failed,
            "checks": [{k: v for k, v in o.to_dict().items() if k != "seconds"}
                       for o in self.outcomes],
        }

    def summary(self) -> str:
        lines = [f"  {'PASS' if o.passed else 'FAIL'}  {o.name:<32} {o.detail}"
                 for o in self.outcomes]
        body = "\n".join(lines)
        return f"""
Selftest
{'=' * 60}

{body}

  Passed: {self.passed}   Failed: {self.failed}

{'=' * 60}
"""


def _rellich_constant(quad: QuadratureSpec):
    mismatches = [
        (k, p, Q)
        for k, p, Q in itertools.product((2, 3, 4), (1, 2, 3), (5, 7, 9))
        if K_constant(k, p, Q) != Fraction(Q - k * p, p) * Fraction((k - 2) * p + (p - 1) * Q, p)
    ]
    return not mismatches, f"{27 - len(mismatches)}/27 exact, K(2, 2, 5) = {K_constant(2, 2, 5)}"


def _clqq_integral(quad: QuadratureSpec):
    grid = list(itertools.product((-0.5, 0.0, 1.0), (3.0, 4.0, 5.0), (1.0, 2.0, 3.0)))
    for L, Q, q in grid:
        constant_CLQq(L, Q, q, verify=True, quad=quad)
    return True, f"{len(grid)} points match their defining integral"


def _gaussian_deficit(quad: QuadratureSpec):
    group = parse_group("euclidean:3")
    report = hardy_deficit(make_profile("gaussian"), group, parse_norm(None, group), 2.0,
                           quad, r_grid=[1.0])
    error = abs(report.deficit - math.pi ** 1.5)
    return error <= 1e-7, f"|deficit - pi^1.5| = {error:.3g}"


def _koranyi_sphere(quad: QuadratureSpec):
    group = parse_group("heisenberg")
    value = sphere_measure(group, parse_norm("koranyi", group))
    error = abs(value - 2.0 * math.pi ** 2)
    return error <= 1e-5, f"|sigma - 2 pi^2| = {error:.3g}"


def _polar_vs_ambient(quad: QuadratureSpec):
    gaps = [oracle_gap(setting, entry, quad)
            for setting in ORACLE_SETTINGS for entry in oracle_profiles()]
    worst = max(gaps)
    return worst <= ORACLE_TOLERANCE, f"{len(gaps)} pairs, worst relative difference {worst:.3g}"


def _norm_independence(quad: QuadratureSpec):
    settings = (("euclidean:4", None), ("heisenberg", "koranyi"), ("abelian:1,1,2", "power:4"))
    values = []
    for group_text, norm_text in settings:
        group = parse_group(group_text)
        norm = parse_norm(norm_text, group)
        report = hardy_deficit(make_profile("gaussian"), group, norm, 2.0, quad, r_grid=[1.0])
        values.append(report.deficit / sphere_measure(group, norm))
    spread = (max(values) - min(values)) / abs(values[0])
    return spread <= 1e-8, f"relative spread {spread:.3g}"


def _expansion_grid(phi) -> np.ndarray:
    lo, hi = phi.support
    if not math.isfinite(hi):
        hi = lo + 5.0 * phi.scale
    return np.geomspace(max(1.05 * lo, 1e-4 * hi), 0.95 * hi, 25)


def _expansion_identity(quad: QuadratureSpec):
    worst = max(
        rellich_expansion_residual(phi, k, p, Q, _expansion_grid(phi))
        for phi in (parse_profile(text) for text in CATALOG_PROFILES)
        for k, p, Q in ((2, 2.0, 5.0), (2, 3.0, 7.0), (3, 2.0, 7.0))
    )
    return worst <= 1e-8, f"{len(CATALOG_PROFILES)} families, max residual {worst:.3g}"


def _parts_identities(quad: QuadratureSpec):
    v = hardy_transform(make_profile("bump", m=4, R=1.0), 5.0, 2.0, k=2, validate=False)
    flux = abs(vanishing_flux_integral(v, 2.0, quad))
    parts = max(rellich_parts_residual(v, p, quad) for p in (2.0, 3.0))
    return flux <= 1e-9 and parts <= 1e-8, f"flux {flux:.3g}, parts residual {parts:.3g}"


def _elementary_samples(quad: QuadratureSpec):
    violations = 0
    for variant in ("i", "ii", "iii"):
        for p in (2.0, 3.0):
            report = elementary_report(p, variant, samples=ELEMENTARY_SAMPLES, seed=0)
            violations += report.notes["violations"]
    return violations == 0, f"{violations} violations in {ELEMENTARY_SAMPLES:.0e} samples per run"


def _cp_at_two(quad: QuadratureSpec):
    value = estimate_Cp(2.0)
    return abs(value - 1.0) <= 1e-10, f"C(2) = {value:.17g}"


def _cp_grid_doubling(quad: QuadratureSpec):
    shifts = {p: abs(estimate_Cp(p, samples=8192) - estimate_Cp(p, samples=4096))
              for p in (3.0, 4.0)}
    worst = max(shifts.values())
    return worst <= CP_DOUBLING_TOLERANCE, ", ".join(f"C({p:g}) moves {d:.3g}" for p, d in shifts.items())


def _corpus_check(inequality: str) -> Callable[[QuadratureSpec], Tuple[bool, str]]:
    def check(quad: QuadratureSpec):
        cases = get_corpus(inequality)
        failed = [case.case_id for case in cases if not case.evaluate(quad).passed]
        detail = f"{len(cases) - len(failed)}/{len(cases)} cases pass"
        if failed:
            detail += f" (failed: {', '.join(failed[:3])}{', ...' if len(failed) > 3 else ''})"
        return not failed, detail
    return check


CHECKS: List[Check] = [
    ("rellich-constant", _rellich_constant),
    ("clqq-integral", _clqq_integral),
    ("gaussian-deficit", _gaussian_deficit),
    ("koranyi-sphere-measure", _koranyi_sphere),
    ("polar-vs-ambient", _polar_vs_ambient),
    ("norm-independence", _norm_independence),
    ("expansion-identity", _expansion_identity),
    ("parts-identities", _parts_identities),
    ("elementary-samples", _elementary_samples),
    ("elementary-constant", _cp_at_two),
    ("elementary-constant-doubling", _cp_grid_doubling),
] + [(f"corpus-{name}", _corpus_check(name)) for name in CORPUS]


def run_selftest(quad: Optional[QuadratureSpec] = None) -> SelftestResult:
    """
    Run every check; a check that raises counts as failed.

    Returns:
        SelftestResult
    """
    quad = quad or QuadratureSpec()
    result = SelftestResult()
    for name, check in CHECKS:
        start = time.perf_counter()
        try:
            passed, detail = check(quad)
        except HardyBenchError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        outcome = CheckOutcome(name, bool(passed), detail, time.perf_counter() - start)
        logger.info("selftest %s: %s (%s)", name, "pass" if passed else "FAIL", detail)
        result.outcomes.append(outcome)
    return result
