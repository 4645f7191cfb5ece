"""
Adaptive quadrature for radial integrals with singular weights.

Every one-dimensional integral in the package goes through
:func:`integrate_radial`: a global adaptive Gauss-Kronrod 7/15 scheme that
always bisects the panel with the largest error estimate. Pieces of the
integration interval are mapped by substitutions before the panel rule is
applied:

- ``EXP_TAIL``: r = a + s (e^w - 1) on infinite intervals, truncated where the
  mapped integrand falls below ``abs_tol`` times its peak.
- ``LOG_AT_R``: r = b exp(-t) near a right endpoint where the integrand
  vanishes like a power of log(b / r).
- ``POWER_AT_ZERO``: r = s^(1 / (1 + alpha)) near an origin where the
  integrand behaves like r^alpha.
- ``GEOMETRIC``: r = e^l on finite pieces spanning more than a factor two.
"""

import heapq
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.exceptions import QuadratureError, ValidationError
from ..utils.validators import validate_integer, validate_positive_number

logger = logging.getLogger(__name__)

# Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:7], [0.0], _XGK[:7][::-1]])
_KRONROD = np.concatenate([_WGK[:7], [_WGK[7]], _WGK[:7][::-1]])
_GAUSS = np.concatenate([_WG[:7], [_WG[7]], _WG[:7][::-1]])

_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny

SUPPORTED_RULES = (15,)

# Tail scans stop at r = a + s * e^W with s * e^W below this bound.
_TAIL_SCAN_LIMIT = 1e150
_TAIL_SCAN_POINTS = 4097

# |t| below this uses the derivative limit in removable-singularity quotients.
LOG_QUOTIENT_GUARD = 1e-6


class Substitution(Enum):
    """Per-piece variable changes applied before the panel rule."""

    NONE = "none"
    LOG_AT_R = "log_at_r"
    POWER_AT_ZERO = "power_at_zero"
    EXP_TAIL = "exp_tail"
    GEOMETRIC = "geometric"


ALL_SUBSTITUTIONS = frozenset(Substitution)


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Tolerances and panel configuration for radial integrals.

    Attributes:
        rel_tol: Target relative error
        abs_tol: Target absolute error (also the tail truncation threshold)
        max_panels: Panel budget per integral
        substitutions: Enabled substitutions
        panel_rule: Kronrod order of the panel rule
        min_panels: Initial panels per piece
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_panels: int = 4096
    substitutions: FrozenSet[Substitution] = field(default=ALL_SUBSTITUTIONS)
    panel_rule: int = 15
    min_panels: int = 2

    def __post_init__(self):
        validate_positive_number(self.rel_tol, "rel_tol")
        validate_positive_number(self.abs_tol, "abs_tol")
        validate_integer(self.max_panels, "max_panels", minimum=1)
        validate_integer(self.min_panels, "min_panels", minimum=1)
        if self.panel_rule not in SUPPORTED_RULES:
            raise ValidationError(
                f"Unsupported panel rule {self.panel_rule}. Must be one of {SUPPORTED_RULES}"
            )
        object.__setattr__(self, "substitutions", frozenset(self.substitutions))

    def refined(self, factor: float = 2.0) -> "QuadratureSpec":
        """Spec with tighter tolerances and a proportionally larger panel budget."""
        return replace(
            self,
            rel_tol=self.rel_tol / factor,
            abs_tol=self.abs_tol / factor,
            max_panels=int(self.max_panels * factor),
            min_panels=int(math.ceil(self.min_panels * factor)),
        )

    def enabled(self, substitution: Substitution) -> bool:
        return substitution in self.substitutions

    def to_dict(self) -> dict:
        return {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "max_panels": self.max_panels,
            "substitutions": sorted(s.value for s in self.substitutions),
            "panel_rule": self.panel_rule,
            "min_panels": self.min_panels,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QuadratureSpec":
        data = dict(data)
        if "substitutions" in data:
            data["substitutions"] = frozenset(Substitution(s) for s in data["substitutions"])
        return cls(**data)


@dataclass(frozen=True)
class Integrand1D:
    """
    A vectorized radial integrand with endpoint annotations.

    Attributes:
        func: Callable mapping an array of r values to integrand values
        a: Left endpoint (>= 0)
        b: Right endpoint (may be inf)
        power_at_a: Exponent alpha if the integrand behaves like r^alpha at a = 0
        log_at_b: Order kappa if the integrand vanishes like log(b/r)^kappa at b
        breakpoints: Interior points where the integrand is not smooth
        scale: Natural length scale, used to split [0, inf)
    """

    func: Callable[[np.ndarray], np.ndarray]
    a: float
    b: float
    power_at_a: Optional[float] = None
    log_at_b: Optional[float] = None
    breakpoints: Tuple[float, ...] = ()
    scale: float = 1.0

    def __post_init__(self):
        if not (0 <= self.a < self.b):
            raise ValidationError(f"Integration interval must satisfy 0 <= a < b, got ({self.a}, {self.b})")
        if self.power_at_a is not None and self.power_at_a <= -1:
            raise ValidationError(f"power_at_a must be > -1, got {self.power_at_a}")
        if self.log_at_b is not None and self.log_at_b <= -1:
            raise ValidationError(f"log_at_b must be > -1, got {self.log_at_b}")
        validate_positive_number(self.scale, "scale")


@dataclass
class _Chart:
    """A piece of the integration interval in its substituted variable."""

    lo: float
    hi: float
    integrand: Callable[[np.ndarray], np.ndarray]
    label: str


def _checked(values: np.ndarray, where: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        bad = where[~np.isfinite(values)][0]
        raise QuadratureError(f"Non-finite integrand value at {bad!r}")
    return values


def gauss_kronrod_panel(g: Callable[[np.ndarray], np.ndarray], lo: float,
                        hi: float) -> Tuple[float, float, float]:
    """
    Apply the 7/15 Gauss-Kronrod pair on one panel.

    Args:
        g: Vectorized integrand
        lo: Panel start
        hi: Panel end

    Returns:
        Tuple of (Kronrod value, error estimate, integral of |g|)

    Raises:
        QuadratureError: If the integrand is not finite at a node
    """
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center + half * _NODES
    fx = _checked(g(x), x)

    resk = float(np.dot(_KRONROD, fx))
    resg = float(np.dot(_GAUSS, fx))
    resabs = float(np.dot(_KRONROD, np.abs(fx)))
    reskh = 0.5 * resk
    resasc = float(np.dot(_KRONROD, np.abs(fx - reskh)))

    value = resk * half
    resabs *= abs(half)
    resasc *= abs(half)
    err = abs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPS):
        err = max(50.0 * _EPS * resabs, err)
    return value, err, resabs


def _tail_cutoff(g: Callable[[np.ndarray], np.ndarray], w_max: float,
                 threshold: float) -> float:
    """Find W such that |g(w)| < threshold * peak for all scanned w > W."""
    w = np.linspace(0.0, w_max, _TAIL_SCAN_POINTS)
    with np.errstate(all="ignore"):
        values = np.abs(np.asarray(g(w), dtype=float))
    finite = np.isfinite(values)
    if not np.all(finite):
        logger.debug("Ignoring %d non-finite tail scan values", int(np.sum(~finite)))
        values = np.where(finite, values, 0.0)

    peak = float(values.max())
    if peak == 0.0:
        return 0.0

    above = np.nonzero(values >= threshold * peak)[0]
    last = int(above[-1])
    if last >= len(w) - 2:
        raise QuadratureError(
            f"Integrand does not decay on the infinite tail (scanned to w = {w_max:.1f})"
        )
    return float(w[last + 1])


def _charts_for_piece(f: Integrand1D, lo: float, hi: float,
                      spec: QuadratureSpec) -> List[_Chart]:
    """Build substituted charts covering [lo, hi]."""
    func = f.func

    if math.isinf(hi):
        if not spec.enabled(Substitution.EXP_TAIL):
            raise ValidationError("Infinite intervals require the EXP_TAIL substitution")
        s = lo if lo > 0 else f.scale

        def tail(w, lo=lo, s=s):
            ew = np.exp(w)
            return func(lo + s * (ew - 1.0)) * s * ew

        w_max = math.log(_TAIL_SCAN_LIMIT / s)
        cutoff = _tail_cutoff(tail, w_max, spec.abs_tol)
        logger.debug("Tail from r=%g truncated at w=%.3f", lo, cutoff)
        if cutoff == 0.0:
            return []
        return [_Chart(0.0, cutoff, tail, "exp_tail")]

    if f.log_at_b is not None and hi == f.b and spec.enabled(Substitution.LOG_AT_R):
        split = max(lo, 0.5 * f.b)
        charts = []
        if split > lo:
            charts.extend(_charts_for_piece(
                replace(f, log_at_b=None, b=split), lo, split, spec))
        kappa = f.log_at_b
        b = f.b

        def near_b(tau, b=b, kappa=kappa):
            t = tau ** (1.0 / (1.0 + kappa))
            r = b * np.exp(-t)
            return func(r) * r * t / ((1.0 + kappa) * tau)

        upper = math.log(b / split) ** (1.0 + kappa)
        charts.append(_Chart(0.0, upper, near_b, "log_at_r"))
        return charts

    if lo == 0.0 and f.power_at_a is not None and spec.enabled(Substitution.POWER_AT_ZERO):
        alpha = f.power_at_a

        def near_zero(s, alpha=alpha):
            r = s ** (1.0 / (1.0 + alpha))
            return func(r) * r / ((1.0 + alpha) * s)

        return [_Chart(0.0, hi ** (1.0 + alpha), near_zero, "power_at_zero")]

    if lo > 0.0 and hi / lo > 2.0 and spec.enabled(Substitution.GEOMETRIC):
        def geometric(ell):
            r = np.exp(ell)
            return func(r) * r

        return [_Chart(math.log(lo), math.log(hi), geometric, "geometric")]

    return [_Chart(lo, hi, func, "none")]


def _pieces(f: Integrand1D) -> List[Tuple[float, float]]:
    points = sorted({p for p in f.breakpoints if f.a < p < f.b})
    if not points and f.a == 0.0 and math.isinf(f.b):
        points = [f.scale]
    edges = [f.a] + points + [f.b]
    return list(zip(edges[:-1], edges[1:]))


def integrate_radial(f: Integrand1D, spec: Optional[QuadratureSpec] = None) -> Tuple[float, float]:
    """
    Integrate a radial integrand with annotated endpoint singularities.

    Args:
        f: Integrand and its annotations
        spec: Quadrature configuration (defaults to QuadratureSpec())

    Returns:
        Tuple of (value, error estimate)

    Raises:
        QuadratureError: On non-finite integrand values or when max_panels is
            exhausted before the tolerance is met

    Example:
        >>> value, err = integrate_radial(Integrand1D(lambda r: r**3, 0.0, 1.0))
        >>> round(value, 12)
        0.25
    """
    spec = spec or QuadratureSpec()

    charts: List[_Chart] = []
    for lo, hi in _pieces(f):
        charts.extend(_charts_for_piece(f, lo, hi, spec))

    heap = []
    done = []
    seq = 0
    for index, chart in enumerate(charts):
        edges = np.linspace(chart.lo, chart.hi, spec.min_panels + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            value, err, resabs = gauss_kronrod_panel(chart.integrand, lo, hi)
            heapq.heappush(heap, (-err, seq, index, lo, hi, value, resabs))
            seq += 1

    def totals():
        entries = list(heap) + done
        return (
            math.fsum(e[5] for e in entries),
            math.fsum(-e[0] for e in entries),
            math.fsum(e[6] for e in entries),
        )

    total, total_err, total_abs = totals()
    n_panels = len(heap)
    while True:
        tolerance = max(spec.rel_tol * abs(total), spec.abs_tol, 100.0 * _EPS * total_abs)
        if total_err <= tolerance:
            total, total_err, total_abs = totals()
            tolerance = max(spec.rel_tol * abs(total), spec.abs_tol, 100.0 * _EPS * total_abs)
            if total_err <= tolerance:
                break

        if not heap:
            raise QuadratureError(
                f"Panels cannot be refined further (error {total_err:.3e} > {tolerance:.3e})"
            )
        if n_panels >= spec.max_panels:
            raise QuadratureError(
                f"No convergence after {n_panels} panels "
                f"(error {total_err:.3e} > tolerance {tolerance:.3e})"
            )

        neg_err, _, index, lo, hi, value, resabs = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            done.append((neg_err, seq, index, lo, hi, value, resabs))
            seq += 1
            continue

        integrand = charts[index].integrand
        left = gauss_kronrod_panel(integrand, lo, mid)
        right = gauss_kronrod_panel(integrand, mid, hi)
        for (a, b), (v, e, ra) in (((lo, mid), left), ((mid, hi), right)):
            heapq.heappush(heap, (-e, seq, index, a, b, v, ra))
            seq += 1
        n_panels += 1
        total += left[0] + right[0] - value
        total_err += left[1] + right[1] + neg_err
        total_abs += left[2] + right[2] - resabs

    entries = sorted(list(heap) + done, key=lambda e: (e[2], e[3]))
    value = math.fsum(e[5] for e in entries)
    err = math.fsum(-e[0] for e in entries)
    logger.debug("integrate_radial: %d panels over %d charts, value=%.17g err=%.3e",
                 len(entries), len(charts), value, err)
    return value, err


def integrate_log_line(func: Callable[[np.ndarray], np.ndarray],
                       breakpoints: Sequence[float] = (),
                       spec: Optional[QuadratureSpec] = None,
                       scale: float = 1.0) -> Tuple[float, float]:
    """
    Integrate over the whole real line, split at 0.

    Used for integrands in the logarithmic variable t = log(R / r), where
    t = 0 carries a removable singularity.

    Args:
        func: Vectorized integrand in t
        breakpoints: Points of reduced smoothness (either sign)
        spec: Quadrature configuration
        scale: Natural scale in t

    Returns:
        Tuple of (value, error estimate)
    """
    positive = tuple(float(t) for t in breakpoints if t > 0 and math.isfinite(t))
    negative = tuple(float(-t) for t in breakpoints if t < 0 and math.isfinite(t))

    right = integrate_radial(
        Integrand1D(func, 0.0, math.inf, breakpoints=positive, scale=scale), spec)
    left = integrate_radial(
        Integrand1D(lambda t: func(-t), 0.0, math.inf, breakpoints=negative, scale=scale), spec)
    return right[0] + left[0], right[1] + left[1]


def log_difference_quotient(g: Callable[[np.ndarray], np.ndarray],
                            dg: Callable[[np.ndarray], np.ndarray],
                            center: float) -> Callable[[np.ndarray], np.ndarray]:
    """
    Build t -> (g(center e^-t) - g(center)) / t with a guarded limit at t = 0.

    Args:
        g: Function of r
        dg: Its derivative in r
        center: Point the difference is taken against

    Returns:
        Vectorized quotient in the variable t
    """
    g_center = float(np.asarray(g(np.array([center])))[0])

    def quotient(t):
        t = np.asarray(t, dtype=float)
        r = center * np.exp(-t)
        small = np.abs(t) < LOG_QUOTIENT_GUARD
        safe_t = np.where(small, 1.0, t)
        with np.errstate(invalid="ignore"):
            direct = (g(r) - g_center) / safe_t
            limit = -r * dg(r)
        return np.where(small, limit, direct)

    return quotient


def integrate_ambient(f: Callable[[np.ndarray], np.ndarray],
                      half_widths: Sequence[float],
                      spec: Optional[QuadratureSpec] = None,
                      strict: bool = True,
                      nodes_per_panel: int = 16,
                      max_points: int = 2 ** 25) -> Tuple[float, float]:
    """
    Tensor-product Gauss-Legendre oracle over a centered box in R^n, n <= 3.

    Panels per axis are doubled until two successive estimates agree. Panel
    edges always include 0 on every axis.

    Args:
        f: Vectorized integrand taking an (N, n) array of points
        half_widths: Box half-width per axis
        spec: Quadrature configuration (only the tolerances are used)
        strict: Raise when the estimate does not settle within max_points
        nodes_per_panel: Gauss-Legendre nodes per panel
        max_points: Largest tensor grid evaluated

    Returns:
        Tuple of (value, difference of the last two estimates)

    Raises:
        ValidationError: If the dimension exceeds 3
        QuadratureError: If strict and the estimate does not settle
    """
    spec = spec or QuadratureSpec()
    widths = [validate_positive_number(w, "half_width") for w in half_widths]
    dim = len(widths)
    if not 1 <= dim <= 3:
        raise ValidationError(f"Ambient oracle supports dimensions 1 to 3, got {dim}")

    tolerance = max(100.0 * spec.rel_tol, 1e-12)
    base_x, base_w = np.polynomial.legendre.leggauss(nodes_per_panel)

    def axis_rule(width, panels):
        edges = np.linspace(-width, width, panels + 1)
        centers = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        x = (centers[:, None] + half[:, None] * base_x[None, :]).ravel()
        w = (half[:, None] * base_w[None, :]).ravel()
        return x, w

    def estimate(panels):
        rules = [axis_rule(width, panels) for width in widths]
        if dim == 1:
            x, w = rules[0]
            return math.fsum(w * f(x[:, None]))
        if dim == 2:
            (x0, w0), (x1, w1) = rules
            g0, g1 = np.meshgrid(x0, x1, indexing="ij")
            vals = f(np.stack([g0.ravel(), g1.ravel()], axis=1)).reshape(g0.shape)
            return math.fsum(w0 * (vals @ w1))
        (x0, w0), (x1, w1), (x2, w2) = rules
        g1, g2 = np.meshgrid(x1, x2, indexing="ij")
        plane = np.stack([g1.ravel(), g2.ravel()], axis=1)
        weights = np.outer(w1, w2).ravel()
        slices = []
        for xi in x0:
            pts = np.column_stack([np.full(len(plane), xi), plane])
            slices.append(float(np.dot(weights, f(pts))))
        return math.fsum(w0 * np.array(slices))

    panels = 2
    previous = estimate(panels)
    while True:
        panels *= 2
        if (panels * nodes_per_panel) ** dim > max_points:
            message = f"Ambient oracle did not settle within {max_points} points"
            if strict:
                raise QuadratureError(message)
            logger.warning(message)
            return previous, float("nan")
        current = estimate(panels)
        diff = abs(current - previous)
        if diff <= max(tolerance * abs(current), spec.abs_tol):
            logger.debug("integrate_ambient: %d panels per axis, value=%.17g", panels, current)
            return current, diff
        previous = current
