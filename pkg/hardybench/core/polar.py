"""
Polar decomposition of integrals over a homogeneous group.

For a separable u(r y) = phi(r) omega(y),

    integral over G of F(u) dx = integral over the quasi-sphere of the angular
    part times integral_0^inf F(phi)(r) r^(Q-1) dr,

so every functional reduces to an angular moment times a radial integral.
"""

import logging
import math
from typing import Callable, Optional, Tuple, Union

import numpy as np

from .group import (
    GroupSpec,
    NormKind,
    QuasiNormSpec,
    check_compatible,
    decay_box,
    quasi_norm,
    sphere_measure,
)
from .profiles import AngularFactor, RadialProfile, SeparableFunction, as_separable
from .quadrature import Integrand1D, QuadratureSpec, integrate_ambient, integrate_radial
from ..utils.exceptions import ValidationError
from ..utils.helpers import abs_power

logger = logging.getLogger(__name__)

_CIRCLE_POINTS = 2048
_POLAR_NODES = 128
_AZIMUTH_POINTS = 256


def _sphere_points(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes on the Euclidean unit sphere in R^n and their surface weights."""
    if n == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])

    if n == 2:
        theta = np.linspace(0.0, 2.0 * math.pi, _CIRCLE_POINTS, endpoint=False)
        points = np.column_stack([np.cos(theta), np.sin(theta)])
        return points, np.full(_CIRCLE_POINTS, 2.0 * math.pi / _CIRCLE_POINTS)

    if n == 3:
        z, wz = np.polynomial.legendre.leggauss(_POLAR_NODES)
        phi = np.linspace(0.0, 2.0 * math.pi, _AZIMUTH_POINTS, endpoint=False)
        zz, pp = np.meshgrid(z, phi, indexing="ij")
        rho = np.sqrt(1.0 - zz * zz)
        points = np.column_stack([
            (rho * np.cos(pp)).ravel(), (rho * np.sin(pp)).ravel(), zz.ravel()
        ])
        weights = np.outer(wz, np.full(_AZIMUTH_POINTS, 2.0 * math.pi / _AZIMUTH_POINTS))
        return points, weights.ravel()

    raise ValidationError(f"Angular quadrature is limited to n <= 3, got n={n}")


def angular_moment(group: GroupSpec, norm: QuasiNormSpec, angular: AngularFactor,
                   power: float = 1.0, absolute: bool = True,
                   quad: Optional[QuadratureSpec] = None) -> float:
    """
    Integral of omega^power (or |omega|^power) against the quasi-sphere measure.

    Constant factors give c^power |sphere| on every group. Non-constant
    factors are integrated on the Euclidean sphere in R^1, R^2 or R^3.

    Args:
        group: Group
        norm: Quasi-norm
        angular: Angular factor omega
        power: Exponent applied to omega
        absolute: Use |omega|^power instead of omega^power
        quad: Quadrature configuration for the sphere measure

    Returns:
        The angular moment

    Raises:
        ValidationError: For a non-constant factor with a non-Euclidean norm,
            or on R^n with n > 3

    Example:
        >>> g = make_group(3, (1, 1, 1))
        >>> round(angular_moment(g, QuasiNormSpec(NormKind.EUCLIDEAN), Constant(2.0), 2) / math.pi, 10)
        16.0
    """
    check_compatible(norm, group)

    if angular.is_constant:
        c = float(angular.constant)
        value = float(abs_power(c, power)) if absolute else c ** power
        return value * sphere_measure(group, norm, quad)

    if norm.kind is not NormKind.EUCLIDEAN:
        raise ValidationError(
            "Non-constant angular factors are only supported with the Euclidean norm"
        )
    points, weights = _sphere_points(group.n)
    values = angular(points)
    values = abs_power(values, power) if absolute else values ** power
    return math.fsum(weights * values)


def radial_integrand(profile: RadialProfile, expression: Callable[[np.ndarray], np.ndarray],
                     power: float) -> Integrand1D:
    """
    Wrap ``expression(r) * r^power`` with the profile's support annotations.

    The integrand is annotated as behaving like r^power at the origin when
    the support starts at 0.
    """
    lo, hi = profile.support

    def func(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            weight = np.where(r > 0, r ** power, 0.0)
        return np.where(weight != 0.0, expression(r) * weight, 0.0)

    power_at_a = power if lo == 0.0 and power > -1.0 else None
    return Integrand1D(func, lo, hi, power_at_a=power_at_a,
                       breakpoints=profile.knots, scale=profile.scale)


def integrate_polar(group: GroupSpec, norm: QuasiNormSpec,
                    u: Union[RadialProfile, SeparableFunction],
                    expression: Optional[Callable[[RadialProfile], Callable]] = None,
                    angular_power: float = 1.0, absolute: bool = False,
                    quad: Optional[QuadratureSpec] = None) -> float:
    """
    Integrate a separable expression over the group in polar coordinates.

    Args:
        group: Group
        norm: Quasi-norm
        u: Separable function or radial profile (omega = 1)
        expression: Factory taking the radial profile and returning the
            radial part r -> F(phi)(r). Defaults to phi itself.
        angular_power: Power of omega carried by the expression
        absolute: Whether the angular part enters as |omega|^power
        quad: Quadrature configuration

    Returns:
        angular moment times integral_0^inf F(phi)(r) r^(Q-1) dr

    Raises:
        ValidationError: For a non-constant angular factor with a
            non-Euclidean norm
        QuadratureError: If the radial integral does not converge

    Example:
        >>> g = make_group(2, (1, 1))
        >>> value = integrate_polar(g, QuasiNormSpec(NormKind.EUCLIDEAN),
        ...                         make_profile("gaussian", sigma=2 ** -0.5))
        >>> round(value / math.pi, 10)
        1.0
    """
    quad = quad or QuadratureSpec()
    u = as_separable(u)
    u.check_norm(norm)

    moment = angular_moment(group, norm, u.angular, angular_power, absolute, quad)
    if moment == 0.0:
        return 0.0

    radial_part = expression(u.profile) if expression is not None else u.profile.eval
    value, err = integrate_radial(
        radial_integrand(u.profile, radial_part, group.Q - 1.0), quad)
    logger.debug("integrate_polar: moment=%.17g radial=%.17g (err %.2e)", moment, value, err)
    return moment * value


def ambient_check(group: GroupSpec, norm: QuasiNormSpec, profile: RadialProfile,
                  radius: float, quad: Optional[QuadratureSpec] = None) -> Tuple[float, float]:
    """
    Integrate a radial profile in polar form and with the tensor oracle.

    The oracle box is ``decay_box(group, radius)``; the profile must be
    negligible outside the quasi-ball of that radius.

    Returns:
        Tuple of (polar value, ambient value)
    """
    quad = quad or QuadratureSpec()
    polar = integrate_polar(group, norm, profile, quad=quad)
    ambient, _ = integrate_ambient(lambda x: profile.eval(quasi_norm(norm, group, x)),
                                   decay_box(group, radius), quad, strict=False)
    return polar, ambient
