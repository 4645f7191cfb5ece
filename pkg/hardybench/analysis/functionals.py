"""
Sides, deficits and distance terms of the Hardy-type inequalities.

Every functional is reduced by polar decomposition to an angular moment
times one-dimensional integrals. Distance terms with a removable
singularity at |x| = R are integrated in the logarithmic variable
t = log(R / |x|) over the whole real line.
"""

import logging
import math
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from .constants import (
    K_constant,
    constant_CLQq,
    critical_constant,
    elementary_ineq_check,
    estimate_Cp,
    hardy_constant,
)
from .report import (
    CKN_TOLERANCE,
    DEFICIT_TOLERANCE,
    CKNResult,
    DeficitReport,
    ExponentParams,
    Inequality,
)
from .supremum import grid_supremum
from ..core.group import GroupSpec, QuasiNormSpec, group_to_json
from ..core.polar import angular_moment, radial_integrand
from ..core.profiles import (
    RadialProfile,
    SeparableFunction,
    as_separable,
    critical_substitution,
    hardy_transform,
    rellich_operator,
)
from ..core.quadrature import (
    Integrand1D,
    QuadratureSpec,
    integrate_log_line,
    integrate_radial,
    log_difference_quotient,
)
from ..utils.exceptions import ValidationError
from ..utils.helpers import abs_power, safe_divide, signed_power
from ..utils.validators import validate_positive_number

logger = logging.getLogger(__name__)

Function = Union[RadialProfile, SeparableFunction]

_MONOTONICITY_POINTS = 200


# Shared pieces -----------------------------------------------------------

def _inputs(group: GroupSpec, norm: QuasiNormSpec, u: SeparableFunction,
            quad: QuadratureSpec, **params) -> Dict[str, Any]:
    angular = (u.angular.constant if u.angular.is_constant else "callable")
    data = {
        "group": group_to_json(group, norm),
        "profile": u.profile.to_dict(),
        "angular": angular,
        "quadrature": quad.to_dict(),
    }
    data.update(params)
    return data


def _moment(group: GroupSpec, norm: QuasiNormSpec, u: SeparableFunction, power: float,
            quad: QuadratureSpec) -> float:
    u.check_norm(norm)
    return angular_moment(group, norm, u.angular, power, absolute=True, quad=quad)


def _require_radial(u: SeparableFunction, what: str) -> None:
    if not u.angular.is_constant:
        raise ValidationError(f"{what} is only defined for radial functions")


def _radial(profile: RadialProfile, expression, power: float,
            quad: QuadratureSpec) -> Tuple[float, float]:
    return integrate_radial(radial_integrand(profile, expression, power), quad)


def _log_breakpoints(center: float, points: Sequence[float]) -> Tuple[float, ...]:
    """Positions t = log(center / r) of the given radii."""
    return tuple(math.log(center / r) for r in points if 0 < r < math.inf)


def _profile_edges(profile: RadialProfile) -> Tuple[float, ...]:
    return tuple(profile.knots) + tuple(profile.support)


def _log_line_distance(g: RadialProfile, center: float, power: float,
                       quad: QuadratureSpec) -> Tuple[float, float]:
    """integral over R of |g(center e^-t) - g(center)|^power / |t|^power dt."""
    quotient = log_difference_quotient(g.eval, g.d1, center)
    return integrate_log_line(
        lambda t: abs_power(quotient(t), power),
        breakpoints=_log_breakpoints(center, _profile_edges(g)),
        spec=quad,
    )


def _mul_safe(weight: np.ndarray, values: np.ndarray) -> np.ndarray:
    with np.errstate(invalid="ignore", over="ignore"):
        return np.where(values != 0.0, weight * values, 0.0)


def _check_radius(value: float, name: str) -> float:
    return validate_positive_number(value, name)


# L^p Hardy ---------------------------------------------------------------

def _hardy_parts(profile: RadialProfile, Q: float, p: float,
                 quad: QuadratureSpec) -> Tuple[float, float, float]:
    """Radial parts of integral |R u|^p and integral |u|^p / |x|^p, plus error."""
    lhs, lhs_err = _radial(profile, lambda r: abs_power(profile.d1(r), p), Q - 1.0, quad)
    rhs, rhs_err = _radial(profile, lambda r: abs_power(profile.eval(r), p), Q - 1.0 - p, quad)
    return lhs, rhs, lhs_err + rhs_err


def hardy_distance(u: Function, R: float, group: GroupSpec, norm: QuasiNormSpec,
                   p: float, quad: Optional[QuadratureSpec] = None) -> float:
    """
    Distance d_H(u; R) from the Hardy extremizer |x|^(-(Q-p)/p) matched at R.

    With v = r^((Q-p)/p) phi the integral becomes
    d_H^p = integral_S |omega|^p times integral over R of
    |v(R e^-t) - v(R)|^p / |t|^p dt.

    Args:
        u: Radial profile or separable function
        R: Matching radius
        group: Group
        norm: Quasi-norm
        p: Exponent
        quad: Quadrature configuration

    Returns:
        d_H(u; R)

    Raises:
        ValidationError: If R <= 0 or p >= Q
    """
    R = _check_radius(R, "R")
    quad = quad or QuadratureSpec()
    u = as_separable(u)
    moment = _moment(group, norm, u, p, quad)
    if moment == 0.0:
        return 0.0
    v = hardy_transform(u.profile, group.Q, p, validate=False)
    value, _ = _log_line_distance(v, R, p, quad)
    return (moment * max(value, 0.0)) ** (1.0 / p)


def hardy_ratio(u: Function, group: GroupSpec, norm: QuasiNormSpec, p: float,
                quad: Optional[QuadratureSpec] = None) -> float:
    """
    integral |u|^p / |x|^p divided by integral |R u|^p.

    The supremum over u is ((Q - p)/p)^(-p). Returns 0 for u = 0.
    """
    quad = quad or QuadratureSpec()
    u = as_separable(u)
    if _moment(group, norm, u, p, quad) == 0.0:
        return 0.0
    lhs, rhs, _ = _hardy_parts(u.profile, group.Q, p, quad)
    return safe_divide(rhs, lhs, default=0.0)


def hardy_deficit(u: Function, group: GroupSpec, norm: QuasiNormSpec, p: float,
                  quad: Optional[QuadratureSpec] = None,
                  r_grid: Optional[Sequence[float]] = None,
                  floor: Optional[float] = None) -> DeficitReport:
    """
    Deficit of the L^p Hardy inequality and the distance profile over R.

    lhs = integral |R u|^p, rhs_constant_part = ((Q - p)/p)^p integral
    |u|^p / |x|^p. The distance grid holds d_H(u; R) over a logarithmic
    R-grid around the profile scale; the supremum is refined between grid
    neighbours and enters the stability ratio with power p.

    Args:
        u: Radial profile or separable function
        group: Group
        norm: Quasi-norm
        p: Exponent, 2 <= p < Q
        quad: Quadrature configuration
        r_grid: Explicit R-grid
        floor: Stability constant to check deficit / sup^p against

    Returns:
        DeficitReport

    Raises:
        ValidationError: If p is outside [2, Q)
        QuadratureError: If an integral does not converge

    Example:
        >>> g = make_group(3, (1, 1, 1))
        >>> report = hardy_deficit(make_profile("gaussian"), g, QuasiNormSpec(NormKind.EUCLIDEAN), 2)
        >>> round(report.deficit / math.pi ** 1.5, 8)
        1.0
    """
    quad = quad or QuadratureSpec()
    Q = group.Q
    ExponentParams(p=p).check_hardy(Q)
    u = as_separable(u)
    moment = _moment(group, norm, u, p, quad)
    report = DeficitReport(
        Inequality.LP_HARDY, distance_power=p,
        inputs=_inputs(group, norm, u, quad, p=p),
    )

    if moment == 0.0:
        report.lhs = report.rhs_constant_part = report.deficit = 0.0
    else:
        lhs, rhs, err = _hardy_parts(u.profile, Q, p, quad)
        constant = hardy_constant(Q, p)
        report.lhs = moment * lhs
        report.rhs_constant_part = constant * moment * rhs
        report.deficit = report.lhs - report.rhs_constant_part
        report.quadrature_err = moment * (err * max(1.0, constant))

    sup = grid_supremum(lambda R: hardy_distance(u, R, group, norm, p, quad),
                        u.profile.scale, grid=r_grid)
    report.distance_grid = sup.grid
    report.sup_distance = (sup.argmax, sup.value)
    report.notes["sup_is_lower_bound"] = True
    logger.info("hardy_deficit: deficit=%.10g sup d_H=%.10g", report.deficit, sup.value)
    return report.finalize(floor)


# Weighted Hardy (CKN) ----------------------------------------------------

def ckn_check(u: Function, R: float, group: GroupSpec, norm: QuasiNormSpec, p: float,
              quad: Optional[QuadratureSpec] = None) -> CKNResult:
    """
    Both sides of the weighted Hardy inequality with the log weight.

    lhs = || (u - u_R) / (|x|^(Q/p) log(R/|x|)) ||_p and
    rhs = || |x|^((p-Q)/p) R u ||_p with u_R(x) = u(R x / |x|). The
    inequality asserts lhs <= p/(p - 1) rhs.

    Returns:
        CKNResult (lhs, rhs, ratio); 0/0 is reported as ratio 0

    Raises:
        ValidationError: If R <= 0, p <= 1 or u is not supported in a
            compact subset of G minus the origin
    """
    R = _check_radius(R, "R")
    ExponentParams(p=p).check_ckn()
    quad = quad or QuadratureSpec()
    u = as_separable(u)
    lo, hi = u.profile.support
    if not (lo > 0 and math.isfinite(hi)):
        raise ValidationError(
            f"Weighted Hardy check needs support away from 0 and infinity, got {u.profile.support}"
        )

    moment = _moment(group, norm, u, p, quad)
    if moment == 0.0:
        return CKNResult(0.0, 0.0, 0.0)

    phi = u.profile
    lhs, _ = _log_line_distance(phi, R, p, quad)
    def euler(t):
        r = R * np.exp(-t)
        return abs_power(_mul_safe(r, phi.d1(r)), p)

    rhs, _ = integrate_log_line(
        euler, breakpoints=_log_breakpoints(R, _profile_edges(phi)), spec=quad)
    lhs = (moment * max(lhs, 0.0)) ** (1.0 / p)
    rhs = (moment * max(rhs, 0.0)) ** (1.0 / p)
    if rhs == 0.0:
        ratio = 0.0 if lhs == 0.0 else math.inf
    else:
        ratio = lhs / rhs
    return CKNResult(lhs, rhs, ratio)


def ckn_report(u: Function, group: GroupSpec, norm: QuasiNormSpec, p: float, R: float,
               quad: Optional[QuadratureSpec] = None,
               r_grid: Optional[Sequence[float]] = None) -> DeficitReport:
    """
    Weighted Hardy check as a report.

    deficit = p/(p - 1) rhs - lhs at the configured R; the grid holds the
    ratio lhs/rhs over R and the supremum is the largest ratio found.
    """
    quad = quad or QuadratureSpec()
    u = as_separable(u)
    at_R = ckn_check(u, R, group, norm, p, quad)
    constant = p / (p - 1.0)
    report = DeficitReport(
        Inequality.CKN, lhs=at_R.lhs, rhs_constant_part=constant * at_R.rhs,
        deficit=constant * at_R.rhs - at_R.lhs, distance_power=1.0,
        inputs=_inputs(group, norm, u, quad, p=p, R=R),
    )
    sup = grid_supremum(lambda r: ckn_check(u, r, group, norm, p, quad).ratio,
                        u.profile.scale, grid=r_grid)
    report.distance_grid = sup.grid
    report.sup_distance = (sup.argmax, sup.value)
    report.margin = constant - max(sup.value, at_R.ratio)
    report.notes["ratio_at_R"] = at_R.ratio
    report.notes["sharp_constant"] = constant
    report.passed = bool(at_R.holds(p) and sup.value <= constant * (1.0 + CKN_TOLERANCE))
    return report


# Critical Hardy ----------------------------------------------------------

def _check_ball_support(profile: RadialProfile, R: float, strict: bool = False) -> None:
    # strict: the support must stop short of |x| = R
    outside = profile.support[1] >= R if strict else profile.support[1] > R
    if outside:
        where = "strictly inside" if strict else "in"
        raise ValidationError(
            f"u must be supported {where} the ball of radius {R}, got support {profile.support}"
        )


def critical_hardy_distance(u: Function, T: float, R: float, group: GroupSpec,
                            norm: QuasiNormSpec, quad: Optional[QuadratureSpec] = None,
                            form: str = "proof") -> float:
    """
    Distance d_cH(u; T, R) from the critical extremizer family.

    In the variable s = 1/log(R/|x|) with v(s) = s^c phi(R e^(-1/s)),
    c = (Q - 1)/Q:

    - ``proof`` (denominator |log(T log(R/|x|))|^Q):
      d^Q = integral_S |omega|^Q times integral over R of
      |v(T e^-w) - v(T)|^Q / |w|^Q dw
    - ``stated`` (denominator |T log(R/|x|)|^Q): infinite unless v(T) = 0,
      then T^(-Q) integral |v|^Q s^(Q-1) ds

    Raises:
        ValidationError: If T <= 0, R <= 0, the support leaves the ball or
            the form is unknown
    """
    T = _check_radius(T, "T")
    R = _check_radius(R, "R")
    if form not in ("proof", "stated"):
        raise ValidationError(f"Unknown distance form '{form}'. Must be 'proof' or 'stated'")
    quad = quad or QuadratureSpec()
    u = as_separable(u)
    Q = group.Q
    _check_ball_support(u.profile, R, strict=True)
    moment = _moment(group, norm, u, Q, quad)
    if moment == 0.0:
        return 0.0

    v = critical_substitution(u.profile, R, Q, validate=False).v
    if form == "proof":
        value, _ = _log_line_distance(v, T, Q, quad)
        return (moment * max(value, 0.0)) ** (1.0 / Q)

    if v.at(T) != 0.0:
        return math.inf
    value, _ = _radial(v, lambda s: abs_power(v.eval(s), Q), Q - 1.0, quad)
    return (moment * T ** (-Q) * max(value, 0.0)) ** (1.0 / Q)


def critical_deficit_s_variable(v: RadialProfile, Q: float, moment: float = 1.0,
                                quad: Optional[QuadratureSpec] = None) -> float:
    """
    Critical deficit written in the variable s.

    moment * integral_0^inf (|s v' - c v|^Q - c^Q |v|^Q) ds / s with
    c = (Q - 1)/Q.
    """
    quad = quad or QuadratureSpec()
    c = (Q - 1.0) / Q

    def integrand(s):
        return (abs_power(s * v.d1(s) - c * v.eval(s), Q)
                - c ** Q * abs_power(v.eval(s), Q))

    value, _ = integrate_radial(
        Integrand1D(lambda s: integrand(s) / s, v.support[0], v.support[1],
                    power_at_a=Q - 2.0 if v.support[0] == 0.0 else None,
                    breakpoints=v.knots, scale=v.scale),
        quad,
    )
    return moment * value


def critical_hardy_deficit(u: Function, R: float, group: GroupSpec, norm: QuasiNormSpec,
                           quad: Optional[QuadratureSpec] = None,
                           t_grid: Optional[Sequence[float]] = None,
                           floor: Optional[float] = None) -> DeficitReport:
    """
    Deficit of the critical Hardy inequality on the ball B(0, R).

    lhs = integral_B |R u|^Q, rhs_constant_part = ((Q - 1)/Q)^Q integral_B
    |u|^Q / (|x|^Q log(R/|x|)^Q). The distance grid holds the proof-form
    d_cH(u; T, R) over a logarithmic T-grid; the stated form at the
    supremum is recorded in the notes.

    Raises:
        ValidationError: If Q < 2, R <= 0 or u is not supported in the ball
    """
    R = _check_radius(R, "R")
    quad = quad or QuadratureSpec()
    Q = group.Q
    ExponentParams(R=R).check_critical(Q)
    u = as_separable(u)
    phi = u.profile
    _check_ball_support(phi, R, strict=True)
    moment = _moment(group, norm, u, Q, quad)
    report = DeficitReport(
        Inequality.CRITICAL_HARDY, distance_power=Q,
        inputs=_inputs(group, norm, u, quad, R=R),
    )

    if moment == 0.0:
        report.lhs = report.rhs_constant_part = report.deficit = 0.0
    else:
        lhs, lhs_err = _radial(phi, lambda r: abs_power(phi.d1(r), Q), Q - 1.0, quad)
        rhs, rhs_err = integrate_radial(
            Integrand1D(
                lambda t: abs_power(phi.eval(R * np.exp(-t)), Q) * t ** (-Q),
                0.0, math.inf,
                breakpoints=_log_breakpoints(R, _profile_edges(phi)),
                scale=1.0,
            ),
            quad,
        )
        constant = critical_constant(Q)
        report.lhs = moment * lhs
        report.rhs_constant_part = constant * moment * rhs
        report.deficit = report.lhs - report.rhs_constant_part
        report.quadrature_err = moment * (lhs_err + constant * rhs_err)

    if moment == 0.0:
        center = 1.0
    else:
        center = critical_substitution(phi, R, Q, validate=False).v.scale
    sup = grid_supremum(lambda T: critical_hardy_distance(u, T, R, group, norm, quad),
                        center, grid=t_grid)
    report.distance_grid = sup.grid
    report.sup_distance = (sup.argmax, sup.value)
    report.notes["asserted_form"] = "proof"
    report.notes["sup_is_lower_bound"] = True
    if math.isfinite(sup.argmax):
        report.notes["stated_form_at_sup"] = critical_hardy_distance(
            u, sup.argmax, R, group, norm, quad, form="stated")
    logger.info("critical_hardy_deficit: deficit=%.10g sup d_cH=%.10g",
                report.deficit, sup.value)
    return report.finalize(floor)


# Improved radial inequality ----------------------------------------------

def _sample_points(profile: RadialProfile, R: float) -> np.ndarray:
    lo, hi = profile.support
    hi = min(hi, R)
    lo = max(lo, 1e-12 * hi)
    return np.geomspace(lo, hi, _MONOTONICITY_POINTS)


def _check_positive_nonincreasing(profile: RadialProfile, R: float) -> None:
    r = _sample_points(profile, R)
    values, slopes = profile.eval(r), profile.d1(r)
    if np.any(values < 0):
        raise ValidationError("Improved radial inequality needs a nonnegative profile")
    tolerance = 1e-12 * (1.0 + float(np.max(np.abs(slopes))))
    if np.any(slopes > tolerance):
        i = int(np.nonzero(slopes > tolerance)[0][0])
        raise ValidationError(
            f"Improved radial inequality needs a non-increasing profile; "
            f"phi'({r[i]:.6g}) = {slopes[i]:.6g} > 0"
        )


def radial_improved_check(u: Function, q: float, L: float, R: float, group: GroupSpec,
                          norm: QuasiNormSpec,
                          quad: Optional[QuadratureSpec] = None) -> DeficitReport:
    """
    Improved critical inequality with the weight log(R e / |x|).

    The deficit integral |R u|^Q - ((Q-1)/Q)^Q integral |u|^Q /
    (|x|^Q log(Re/|x|)^Q) must dominate
    |S|^(1 - Q/q) C^(Q/q) (integral |u|^q / (|x|^Q log(Re/|x|)^alpha))^(Q/q)
    with alpha = (Q - 1) q / Q + L + 2 and C = constant_CLQq(L, Q, q). The
    report margin is the deficit minus that lower bound.

    Raises:
        ValidationError: For non-radial, negative or increasing profiles,
            support outside the ball or inadmissible (q, L)
    """
    R = _check_radius(R, "R")
    quad = quad or QuadratureSpec()
    Q = group.Q
    params = ExponentParams(q=q, L=L, R=R)
    params.check_radial_improved(Q)
    u = as_separable(u)
    _require_radial(u, "The improved radial inequality")
    phi = u.profile
    _check_ball_support(phi, R)
    alpha = params.alpha(Q)
    C = constant_CLQq(L, Q, q)

    report = DeficitReport(
        Inequality.RADIAL_IMPROVED,
        inputs=_inputs(group, norm, u, quad, q=q, L=L, R=R),
    )
    report.notes.update({"alpha": alpha, "C": C})

    c_omega = float(u.angular.constant)
    if c_omega == 0.0:
        report.lhs = report.rhs_constant_part = report.deficit = report.margin = 0.0
        report.notes["improvement"] = 0.0
        report.passed = True
        return report
    if c_omega < 0:
        raise ValidationError("Improved radial inequality needs a positive function")
    _check_positive_nonincreasing(phi, R)

    moment = _moment(group, norm, u, Q, quad)
    breakpoints = tuple(1.0 + t for t in _log_breakpoints(R, _profile_edges(phi)) if t > 0)

    def in_t(power, weight_power):
        return integrate_radial(
            Integrand1D(
                lambda t: abs_power(phi.eval(R * np.exp(1.0 - t)), power) * t ** (-weight_power),
                1.0, math.inf, breakpoints=breakpoints, scale=1.0,
            ),
            quad,
        )

    lhs, lhs_err = _radial(phi, lambda r: abs_power(phi.d1(r), Q), Q - 1.0, quad)
    hardy_part, hardy_err = in_t(Q, Q)
    weighted, weighted_err = in_t(q, alpha)

    constant = critical_constant(Q)
    report.lhs = moment * lhs
    report.rhs_constant_part = constant * moment * hardy_part
    report.deficit = report.lhs - report.rhs_constant_part
    improvement = moment * C ** (Q / q) * max(weighted, 0.0) ** (Q / q)
    report.margin = report.deficit - improvement
    report.quadrature_err = moment * (lhs_err + constant * hardy_err) + weighted_err
    report.notes["improvement"] = improvement
    report.passed = bool(report.margin >= -DEFICIT_TOLERANCE * (1.0 + abs(report.lhs)))
    return report


# Rellich-type inequality --------------------------------------------------

def _rellich_expression(phi: RadialProfile, Q: float):
    def expression(r):
        safe = np.where(r > 0, r, 1.0)
        return np.where(r > 0, phi.d2(r) + (Q - 1.0) / safe * phi.d1(r), 0.0)
    return expression


def rellich_distance(u: Function, R: float, group: GroupSpec, norm: QuasiNormSpec,
                     k: int, p: float, quad: Optional[QuadratureSpec] = None) -> float:
    """
    Square root of the Rellich distance integral at matching radius R.

    With v = r^((Q - k p)/p) phi and W = |v|^((p-2)/2) v, the integral is
    integral_S |omega|^p times integral over R of (W(R e^-t) - W(R))^2 / t^2 dt.
    """
    R = _check_radius(R, "R")
    quad = quad or QuadratureSpec()
    u = as_separable(u)
    _require_radial(u, "The Rellich distance")
    moment = _moment(group, norm, u, p, quad)
    if moment == 0.0:
        return 0.0

    v = hardy_transform(u.profile, group.Q, p, k=k, validate=False)
    half = p / 2.0

    def W(r):
        return signed_power(v.eval(r), half)

    def dW(r):
        return half * _mul_safe(abs_power(v.eval(r), half - 1.0), v.d1(r))

    quotient = log_difference_quotient(W, dW, R)
    value, _ = integrate_log_line(
        lambda t: quotient(t) ** 2,
        breakpoints=_log_breakpoints(R, _profile_edges(v)),
        spec=quad,
    )
    return math.sqrt(moment * max(value, 0.0))


def rellich_deficit(u: Function, k: int, p: float, group: GroupSpec, norm: QuasiNormSpec,
                    quad: Optional[QuadratureSpec] = None,
                    r_grid: Optional[Sequence[float]] = None,
                    floor: Optional[float] = None) -> DeficitReport:
    """
    Deficit of the Rellich-type inequality for radial u.

    lhs = integral |R~ u|^p / |x|^((k-2) p) with R~ = R^2 + (Q-1)/|x| R,
    rhs_constant_part = K(k, p)^p integral |u|^p / |x|^(k p). The distance
    grid holds :func:`rellich_distance` over R; it enters the stability
    ratio squared.

    Raises:
        ValidationError: If k p >= Q, p < 1, k is not an integer >= 2 or u is
            not radial
    """
    quad = quad or QuadratureSpec()
    Q = group.Q
    ExponentParams(p=p, k=k).check_rellich(Q)
    u = as_separable(u)
    _require_radial(u, "The Rellich inequality")
    phi = u.profile
    moment = _moment(group, norm, u, p, quad)
    K = float(K_constant(k, p, Q))

    report = DeficitReport(
        Inequality.RELLICH, distance_power=2.0,
        inputs=_inputs(group, norm, u, quad, k=k, p=p),
    )
    report.notes["K"] = K

    if moment == 0.0:
        report.lhs = report.rhs_constant_part = report.deficit = 0.0
    else:
        operator = _rellich_expression(phi, Q)
        lhs, lhs_err = _radial(phi, lambda r: abs_power(operator(r), p),
                               Q - 1.0 - (k - 2) * p, quad)
        rhs, rhs_err = _radial(phi, lambda r: abs_power(phi.eval(r), p),
                               Q - 1.0 - k * p, quad)
        report.lhs = moment * lhs
        report.rhs_constant_part = K ** p * moment * rhs
        report.deficit = report.lhs - report.rhs_constant_part
        report.quadrature_err = moment * (lhs_err + K ** p * rhs_err)

    sup = grid_supremum(lambda R: rellich_distance(u, R, group, norm, k, p, quad),
                        phi.scale, grid=r_grid)
    report.distance_grid = sup.grid
    report.sup_distance = (sup.argmax, sup.value)
    report.notes["sup_is_lower_bound"] = True
    return report.finalize(floor)


def rellich_expansion_residual(phi: RadialProfile, k: int, p: float, Q: float,
                               r_grid: Sequence[float]) -> float:
    """
    Check -R~phi = r^(k-2-Q/p) (K v - r^2 R~_k v) on a grid.

    v = r^((Q - k p)/p) phi and R~_k f = f'' + (2k + Q(p-2)/p - 1)/r f'.
    Both sides use analytic derivatives.

    Returns:
        max |lhs - rhs| / (1 + |R~phi|) over the grid

    Raises:
        ValidationError: If a grid point is not strictly inside the support
    """
    r = np.asarray(r_grid, dtype=float)
    lo, hi = phi.support
    if r.size == 0 or np.any(r <= lo) or np.any(r >= hi):
        raise ValidationError(f"r_grid must lie strictly inside the support {phi.support}")

    K = float(K_constant(k, p, Q))
    v = hardy_transform(phi, Q, p, k=k, validate=False)
    b = 2.0 * k + Q * (p - 2.0) / p - 1.0

    operator = rellich_operator(phi, Q, r)
    weighted = v.d2(r) + b / r * v.d1(r)
    rhs = r ** (k - 2.0 - Q / p) * (K * v.eval(r) - r * r * weighted)
    residual = np.abs(-operator - rhs) / (1.0 + np.abs(operator))
    return float(np.max(residual))


# Integration-by-parts identities ------------------------------------------

def vanishing_flux_integral(v: RadialProfile, p: float,
                            quad: Optional[QuadratureSpec] = None) -> float:
    """integral_0^inf |v|^(p-2) v v' dr, which is 0 for compactly supported v with v(0) = 0."""
    quad = quad or QuadratureSpec()
    value, _ = integrate_radial(
        Integrand1D(lambda r: signed_power(v.eval(r), p - 1.0) * v.d1(r),
                    v.support[0], v.support[1], breakpoints=v.knots, scale=v.scale),
        quad,
    )
    return value


def rellich_parts_residual(v: RadialProfile, p: float,
                           quad: Optional[QuadratureSpec] = None) -> float:
    """
    Relative residual of -integral |v|^(p-2) v v'' r dr = (p-1) integral |v|^(p-2) v'^2 r dr.

    Returns:
        |lhs - rhs| / |rhs| (absolute residual when rhs = 0)
    """
    quad = quad or QuadratureSpec()
    lo, hi = v.support

    def integrate(func):
        value, _ = integrate_radial(
            Integrand1D(func, lo, hi, breakpoints=v.knots, scale=v.scale), quad)
        return value

    lhs = -integrate(lambda r: signed_power(v.eval(r), p - 1.0) * v.d2(r) * r)
    rhs = (p - 1.0) * integrate(
        lambda r: _mul_safe(abs_power(v.eval(r), p - 2.0), v.d1(r) ** 2) * r)
    scale = abs(rhs) if rhs != 0.0 else 1.0
    return abs(lhs - rhs) / scale


# Elementary inequalities ---------------------------------------------------

def elementary_report(p: float, variant: str = "i", samples: int = 100_000,
                      seed: int = 0, C: Optional[float] = None) -> DeficitReport:
    """
    Sampled check of an elementary (a, b) inequality.

    Margins are normalized by (|a| + |b|)^p; lhs, deficit and margin all
    hold the smallest normalized margin. Variant ii defaults to
    C = estimate_Cp(p) (1 - 1e-6).
    """
    rng = np.random.default_rng(seed)
    if variant == "iii":
        a = rng.uniform(0.0, 1.0, samples)
        b = a - rng.uniform(0.0, 2.0, samples)
    else:
        a = rng.uniform(-1.0, 1.0, samples)
        b = rng.uniform(-1.0, 1.0, samples)
    if variant == "ii" and C is None:
        C = estimate_Cp(p) * (1.0 - 1e-6)

    margin = elementary_ineq_check(a, b, p, variant, C=C)
    scale = abs_power(np.abs(a) + np.abs(b), p)
    normalized = np.where(scale > 0, margin / np.where(scale > 0, scale, 1.0), 0.0)
    worst = float(np.min(normalized))

    report = DeficitReport(
        Inequality.ELEMENTARY, lhs=worst, rhs_constant_part=0.0, deficit=worst,
        margin=worst,
        inputs={"p": p, "variant": variant, "samples": samples, "seed": seed, "C": C},
    )
    report.notes["violations"] = int(np.sum(normalized < -1e-12))
    report.passed = report.notes["violations"] == 0
    return report


# Dispatch ---------------------------------------------------------------------

def evaluate_inequality(inequality: Union[str, Inequality], u: Optional[Function],
                        group: Optional[GroupSpec], norm: Optional[QuasiNormSpec],
                        params: ExponentParams,
                        quad: Optional[QuadratureSpec] = None,
                        r_grid: Optional[Sequence[float]] = None,
                        t_grid: Optional[Sequence[float]] = None,
                        floor: Optional[float] = None,
                        variant: str = "i", samples: int = 100_000,
                        seed: int = 0) -> DeficitReport:
    """
    Evaluate one inequality and return its report.

    Args:
        inequality: Inequality id or enum member
        u: Function (unused for the elementary inequalities)
        group: Group (unused for the elementary inequalities)
        norm: Quasi-norm (unused for the elementary inequalities)
        params: Exponents and radii
        quad: Quadrature configuration
        r_grid: Explicit R-grid for R-suprema
        t_grid: Explicit T-grid for the critical distance
        floor: Stability constant to assert
        variant: Elementary inequality variant
        samples: Elementary inequality sample count
        seed: Elementary inequality sampling seed

    Returns:
        DeficitReport
    """
    inequality = Inequality.parse(inequality)
    if inequality is Inequality.ELEMENTARY:
        return elementary_report(params.p, variant, samples=samples, seed=seed)
    if u is None or group is None or norm is None:
        raise ValidationError(f"{inequality.value} needs a function, a group and a norm")

    if inequality is Inequality.LP_HARDY:
        return hardy_deficit(u, group, norm, params.p, quad, r_grid=r_grid, floor=floor)
    if inequality is Inequality.CKN:
        return ckn_report(u, group, norm, params.p, params.R, quad, r_grid=r_grid)
    if inequality is Inequality.CRITICAL_HARDY:
        return critical_hardy_deficit(u, params.R, group, norm, quad, t_grid=t_grid, floor=floor)
    if inequality is Inequality.RADIAL_IMPROVED:
        return radial_improved_check(u, params.q, params.L, params.R, group, norm, quad)
    return rellich_deficit(u, params.k, params.p, group, norm, quad, r_grid=r_grid, floor=floor)
