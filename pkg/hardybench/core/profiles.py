"""
Radial test-function families with analytic derivatives.

A :class:`RadialProfile` carries phi(r) together with phi' and phi'', its
support and the knots where it is only finitely smooth. Every profile built
through :func:`make_profile` is checked against centered finite differences
at construction.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import beta as beta_fn
from scipy.special import betainc

from .group import GroupSpec, QuasiNormSpec, NormKind, dilate, quasi_norm
from ..utils.exceptions import ValidationError
from ..utils.validators import (
    validate_exponent_range,
    validate_finite,
    validate_positive_number,
)

logger = logging.getLogger(__name__)

Array = np.ndarray
RadialFn = Callable[[Array], Array]

_FD_POINTS = 100
_FD_STEP = 1e-5
_FD_TOL_D1 = 1e-6
_FD_TOL_D2 = 1e-5


class ProfileFamily(Enum):
    """Catalog of radial families."""

    BUMP = "bump"
    GAUSSIAN = "gaussian"
    MOLLIFIED_POWER = "mollified-power"
    LOG_POWER = "log-power"
    SHELL = "shell"
    POWER = "power"
    CUSTOM = "custom"


@dataclass(frozen=True)
class RadialProfile:
    """
    A radial function phi(r) with analytic first and second derivatives.

    Attributes:
        family: Family the profile belongs to
        params: Family parameters (echoed into reports)
        eval: r -> phi(r)
        d1: r -> phi'(r)
        d2: r -> phi''(r)
        support: Closed interval outside which phi vanishes (hi may be inf)
        knots: Points in the support where phi is only finitely smooth
        scale: Natural length scale
    """

    family: ProfileFamily
    params: Dict[str, float]
    eval: RadialFn = field(repr=False)
    d1: RadialFn = field(repr=False)
    d2: RadialFn = field(repr=False)
    support: Tuple[float, float] = (0.0, math.inf)
    knots: Tuple[float, ...] = ()
    scale: float = 1.0

    def __call__(self, r) -> Array:
        return self.eval(np.asarray(r, dtype=float))

    def at(self, r: float) -> float:
        """phi at a single point."""
        return float(self.eval(np.array([float(r)]))[0])

    def derivative_at(self, r: float, order: int = 1) -> float:
        """phi' or phi'' at a single point."""
        fn = self.d1 if order == 1 else self.d2
        return float(fn(np.array([float(r)]))[0])

    @property
    def compact(self) -> bool:
        return math.isfinite(self.support[1])

    def scaled(self, lam: float, exponent: float = 0.0,
               validate: bool = True) -> "RadialProfile":
        """
        The profile lam^exponent * phi(lam * r).

        Args:
            lam: Dilation factor
            exponent: Power of lam multiplying the profile
            validate: Check the composed derivatives

        Returns:
            New RadialProfile
        """
        lam = validate_positive_number(lam, "lambda")
        c = lam ** exponent
        base = self
        lo, hi = self.support
        return _finish(RadialProfile(
            family=ProfileFamily.CUSTOM,
            params={"base": self.family.value, "lambda": lam, "exponent": exponent},
            eval=lambda r: c * base.eval(lam * r),
            d1=lambda r: c * lam * base.d1(lam * r),
            d2=lambda r: c * lam * lam * base.d2(lam * r),
            support=(lo / lam, hi / lam),
            knots=tuple(k / lam for k in self.knots),
            scale=self.scale / lam,
        ), validate)

    def pieces(self) -> Sequence[Tuple[float, float]]:
        """Smooth pieces of the support, the last one bounded for infinite support."""
        lo, hi = self.support
        edges = [lo] + sorted(k for k in self.knots if lo < k < hi)
        edges.append(hi if math.isfinite(hi) else edges[-1] + 10.0 * self.scale)
        return list(zip(edges[:-1], edges[1:]))

    def to_dict(self) -> dict:
        data = {"family": self.family.value}
        data.update(self.params)
        return data


def _fd_sample_points(profile: RadialProfile,
                      rng: np.random.Generator) -> Tuple[Array, Array]:
    pieces = [(a, b) for a, b in profile.pieces() if b > a]
    if not pieces:
        return np.array([]), np.array([])
    per_piece = max(1, _FD_POINTS // len(pieces))
    samples = []
    lengths = []
    for a, b in pieces:
        if a > 0 and b / a > 2.0:
            u = rng.uniform(0.01, 0.99, per_piece)
            samples.append(a * (b / a) ** u)
            lengths.append(np.full(per_piece, b - a))
        else:
            lo = a + 0.01 * (b - a)
            hi = b - 0.01 * (b - a)
            if a == 0.0:
                lo = max(lo, 1e-3 * (b - a))
            samples.append(rng.uniform(lo, hi, per_piece))
            lengths.append(np.full(per_piece, b - a))
    return np.concatenate(samples), np.concatenate(lengths)


def validate_derivatives(profile: RadialProfile, seed: int = 0) -> None:
    """
    Compare analytic derivatives with centered finite differences.

    Points are drawn per smooth piece, away from knots. Points where the
    finite-difference step would be below 1e4 ulps are skipped.

    Raises:
        ValidationError: If d1 or d2 disagrees with the finite differences
    """
    rng = np.random.default_rng(seed)
    r, lengths = _fd_sample_points(profile, rng)
    if r.size == 0:
        return

    h = _FD_STEP * np.minimum(r, lengths)
    ok = h >= 1e4 * np.spacing(r)
    r, h = r[ok], h[ok]
    if r.size == 0:
        return

    rp, rm = r + h, r - h
    width = rp - rm
    with np.errstate(all="ignore"):
        phi = profile.eval(r)
        d1 = profile.d1(r)
        d2 = profile.d2(r)
        fd1 = (profile.eval(rp) - profile.eval(rm)) / width
        fd2 = (profile.d1(rp) - profile.d1(rm)) / width

    scale1 = 1.0 + np.abs(d1) + 1e-3 * np.abs(phi) / r
    scale2 = 1.0 + np.abs(d2) + 1e-3 * np.abs(d1) / r
    bad1 = ~(np.abs(d1 - fd1) <= _FD_TOL_D1 * scale1)
    bad2 = ~(np.abs(d2 - fd2) <= _FD_TOL_D2 * scale2)
    if np.any(bad1):
        i = int(np.nonzero(bad1)[0][0])
        raise ValidationError(
            f"{profile.family.value}: phi' = {d1[i]:.10g} disagrees with finite "
            f"difference {fd1[i]:.10g} at r = {r[i]:.10g}"
        )
    if np.any(bad2):
        i = int(np.nonzero(bad2)[0][0])
        raise ValidationError(
            f"{profile.family.value}: phi'' = {d2[i]:.10g} disagrees with finite "
            f"difference {fd2[i]:.10g} at r = {r[i]:.10g}"
        )


def _finish(profile: RadialProfile, validate: bool) -> RadialProfile:
    if validate:
        validate_derivatives(profile)
    return profile


# Smooth transitions ------------------------------------------------------

def smoothstep(x, m: float) -> Tuple[Array, Array, Array]:
    """
    Order-m transition S(x) = I_x(m, m) with its first two derivatives.

    S is 0 for x <= 0 and 1 for x >= 1, with m - 1 continuous derivatives
    at both ends.

    Args:
        x: Points
        m: Smoothing order (>= 2)

    Returns:
        Tuple (S, S', S'')
    """
    x = np.asarray(x, dtype=float)
    inside = (x > 0.0) & (x < 1.0)
    xc = np.clip(x, 0.0, 1.0)
    s = betainc(m, m, xc)
    norm = 1.0 / beta_fn(m, m)
    with np.errstate(all="ignore"):
        base = (xc * (1.0 - xc)) ** (m - 2.0)
        s1 = np.where(inside, norm * base * xc * (1.0 - xc), 0.0)
        s2 = np.where(inside, norm * (m - 1.0) * base * (1.0 - 2.0 * xc), 0.0)
    return s, s1, s2


# Families ----------------------------------------------------------------

def _bump(m: float, R: float) -> RadialProfile:
    m = validate_exponent_range(m, "m", lower=2.0)
    R = validate_positive_number(R, "R")

    def parts(r):
        x = r / R
        base = np.clip(1.0 - x * x, 0.0, None)
        inside = np.abs(x) < 1.0
        return x, base, inside

    def ev(r):
        x, base, inside = parts(r)
        return np.where(inside, base ** m, 0.0)

    def d1(r):
        x, base, inside = parts(r)
        return np.where(inside, -2.0 * m * x / R * base ** (m - 1.0), 0.0)

    def d2(r):
        x, base, inside = parts(r)
        with np.errstate(all="ignore"):
            value = (-2.0 * m / (R * R) * base ** (m - 1.0)
                     + 4.0 * m * (m - 1.0) * x * x / (R * R) * base ** (m - 2.0))
        return np.where(inside, value, 0.0)

    return RadialProfile(ProfileFamily.BUMP, {"m": m, "R": R}, ev, d1, d2,
                         support=(0.0, R), knots=(R,), scale=R)


def _gaussian(sigma: float) -> RadialProfile:
    sigma = validate_positive_number(sigma, "sigma")
    s2 = sigma * sigma

    def ev(r):
        return np.exp(-r * r / (2.0 * s2))

    def d1(r):
        return _mul(-r / s2, ev(r))

    def d2(r):
        return _mul(r * r / (s2 * s2) - 1.0 / s2, ev(r))

    return RadialProfile(ProfileFamily.GAUSSIAN, {"sigma": sigma}, ev, d1, d2,
                         support=(0.0, math.inf), scale=sigma)


def _mul(weight: Array, values: Array) -> Array:
    """weight * values with 0 wherever values vanish, even for infinite weights."""
    with np.errstate(invalid="ignore", over="ignore"):
        return np.where(values != 0.0, weight * values, 0.0)


def _power_parts(gamma: float, r: Array):
    pos = r > 0
    safe = np.where(pos, r, 1.0)
    with np.errstate(all="ignore"):
        p0 = np.where(pos, safe ** gamma, 0.0)
        p1 = np.where(pos, gamma * safe ** (gamma - 1.0), 0.0)
        p2 = np.where(pos, gamma * (gamma - 1.0) * safe ** (gamma - 2.0), 0.0)
    return p0, p1, p2


def _mollified_power(gamma: float, eps: float, M: float, m: float) -> RadialProfile:
    gamma = validate_finite(gamma, "gamma")
    eps = validate_positive_number(eps, "eps")
    M = validate_positive_number(M, "M")
    m = validate_exponent_range(m, "m", lower=2.0)
    if M < 4.0 * eps:
        raise ValidationError(f"mollified-power needs M >= 4*eps, got eps={eps}, M={M}")

    def cutoff(r):
        a, a1, a2 = smoothstep((r - eps) / eps, m)
        b, b1, b2 = smoothstep((r - 0.5 * M) / (0.5 * M), m)
        c_in, c_in1, c_in2 = a, a1 / eps, a2 / (eps * eps)
        c_out, c_out1, c_out2 = 1.0 - b, -b1 * 2.0 / M, -b2 * 4.0 / (M * M)
        c = c_in * c_out
        c1 = c_in1 * c_out + c_in * c_out1
        c2 = c_in2 * c_out + 2.0 * c_in1 * c_out1 + c_in * c_out2
        return c, c1, c2

    def ev(r):
        c, _, _ = cutoff(r)
        p0, _, _ = _power_parts(gamma, r)
        return np.where(c != 0.0, p0 * c, 0.0)

    def d1(r):
        c, c1, _ = cutoff(r)
        p0, p1, _ = _power_parts(gamma, r)
        return np.where((c != 0.0) | (c1 != 0.0), p1 * c + p0 * c1, 0.0)

    def d2(r):
        c, c1, c2 = cutoff(r)
        p0, p1, p2 = _power_parts(gamma, r)
        active = (c != 0.0) | (c1 != 0.0) | (c2 != 0.0)
        return np.where(active, p2 * c + 2.0 * p1 * c1 + p0 * c2, 0.0)

    return RadialProfile(
        ProfileFamily.MOLLIFIED_POWER,
        {"gamma": gamma, "eps": eps, "M": M, "m": m},
        ev, d1, d2,
        support=(eps, M), knots=(eps, 2.0 * eps, 0.5 * M, M),
        scale=math.sqrt(eps * M),
    )


def log_radius(r, R: float) -> Array:
    """t = log(R / r), accurate both for r close to R and for r much smaller than R."""
    r = np.asarray(r, dtype=float)
    with np.errstate(all="ignore"):
        near = -np.log1p((r - R) / R)
        far = np.log(R / r)
    return np.where(r > 0.5 * R, near, far)


def _log_power(beta: float, R: float, m: float, t_min: float, t_max: float,
               ramp: float) -> RadialProfile:
    beta = validate_finite(beta, "beta")
    R = validate_positive_number(R, "R")
    m = validate_exponent_range(m, "m", lower=2.0)
    t_min = validate_positive_number(t_min, "t_min")
    t_max = validate_positive_number(t_max, "t_max")
    ramp = validate_exponent_range(ramp, "ramp", lower=0.0, upper=0.5,
                                   lower_inclusive=False, upper_inclusive=True)
    if t_max <= t_min:
        raise ValidationError(f"log-power needs t_min < t_max, got {t_min}, {t_max}")

    ell0, ell1 = math.log(t_min), math.log(t_max)
    width = ramp * (ell1 - ell0)

    def window(ell):
        a, a1, a2 = smoothstep((ell - ell0) / width, m)
        b, b1, b2 = smoothstep((ell - (ell1 - width)) / width, m)
        up, up1, up2 = a, a1 / width, a2 / (width * width)
        down, down1, down2 = 1.0 - b, -b1 / width, -b2 / (width * width)
        return (up * down, up1 * down + up * down1,
                up2 * down + 2.0 * up1 * down1 + up * down2)

    def in_t(r):
        t = log_radius(r, R)
        inside = (t > t_min) & (t < t_max)
        safe_t = np.where(inside, t, 1.0)
        ell = np.log(safe_t)
        eta, eta1, eta2 = window(ell)
        g = np.exp(beta * ell)
        w0 = g * eta
        g1 = g * (beta * eta + eta1)
        g2 = g * (beta * beta * eta + 2.0 * beta * eta1 + eta2)
        w1 = g1 / safe_t
        w2 = (g2 - g1) / (safe_t * safe_t)
        return inside, w0, w1, w2

    def ev(r):
        inside, w0, _, _ = in_t(r)
        return np.where(inside, w0, 0.0)

    def d1(r):
        inside, _, w1, _ = in_t(r)
        safe_r = np.where(inside, r, 1.0)
        return np.where(inside, -w1 / safe_r, 0.0)

    def d2(r):
        inside, _, w1, w2 = in_t(r)
        safe_r = np.where(inside, r, 1.0)
        return np.where(inside, (w2 + w1) / (safe_r * safe_r), 0.0)

    t_knots = (t_min, t_min * math.exp(width), t_max * math.exp(-width), t_max)
    knots = tuple(sorted(R * math.exp(-t) for t in t_knots))
    return RadialProfile(
        ProfileFamily.LOG_POWER,
        {"beta": beta, "R": R, "m": m, "t_min": t_min, "t_max": t_max, "ramp": ramp},
        ev, d1, d2,
        support=(knots[0], knots[-1]), knots=knots,
        scale=R * math.exp(-math.sqrt(t_min * t_max)),
    )


def _shell(a: float, b: float, m: float) -> RadialProfile:
    a = validate_positive_number(a, "a", allow_zero=True)
    b = validate_positive_number(b, "b")
    m = validate_exponent_range(m, "m", lower=2.0)
    if b <= a:
        raise ValidationError(f"shell needs a < b, got a={a}, b={b}")
    width2 = (b - a) ** 2

    def parts(r):
        z = 4.0 * (r - a) * (b - r) / width2
        inside = (r > a) & (r < b)
        z = np.where(inside, z, 0.0)
        return inside, z, 4.0 * (a + b - 2.0 * r) / width2, -8.0 / width2

    def ev(r):
        inside, z, _, _ = parts(r)
        return np.where(inside, z ** m, 0.0)

    def d1(r):
        inside, z, z1, _ = parts(r)
        return np.where(inside, m * z ** (m - 1.0) * z1, 0.0)

    def d2(r):
        inside, z, z1, z2 = parts(r)
        with np.errstate(all="ignore"):
            value = m * (m - 1.0) * z ** (m - 2.0) * z1 * z1 + m * z ** (m - 1.0) * z2
        return np.where(inside, value, 0.0)

    return RadialProfile(ProfileFamily.SHELL, {"a": a, "b": b, "m": m}, ev, d1, d2,
                         support=(a, b), knots=(a, b), scale=0.5 * (a + b))


def _power(gamma: float) -> RadialProfile:
    gamma = validate_finite(gamma, "gamma")
    return RadialProfile(
        ProfileFamily.POWER, {"gamma": gamma},
        lambda r: _power_parts(gamma, r)[0],
        lambda r: _power_parts(gamma, r)[1],
        lambda r: _power_parts(gamma, r)[2],
        support=(0.0, math.inf), scale=1.0,
    )


def _custom(eval: RadialFn, d1: RadialFn, d2: RadialFn,
            support: Tuple[float, float] = (0.0, math.inf),
            knots: Sequence[float] = (), scale: float = 1.0,
            **params) -> RadialProfile:
    return RadialProfile(ProfileFamily.CUSTOM, dict(params), eval, d1, d2,
                         support=tuple(float(s) for s in support),
                         knots=tuple(float(k) for k in knots), scale=float(scale))


_BUILDERS = {
    ProfileFamily.BUMP: _bump,
    ProfileFamily.GAUSSIAN: _gaussian,
    ProfileFamily.MOLLIFIED_POWER: _mollified_power,
    ProfileFamily.LOG_POWER: _log_power,
    ProfileFamily.SHELL: _shell,
    ProfileFamily.POWER: _power,
    ProfileFamily.CUSTOM: _custom,
}

_DEFAULTS = {
    ProfileFamily.BUMP: {"m": 4.0, "R": 1.0},
    ProfileFamily.GAUSSIAN: {"sigma": 1.0},
    ProfileFamily.MOLLIFIED_POWER: {"m": 4.0},
    ProfileFamily.LOG_POWER: {"R": 1.0, "m": 4.0, "ramp": 0.25},
    ProfileFamily.SHELL: {"m": 4.0},
}


def make_profile(family: Union[str, ProfileFamily], validate: bool = True,
                 **params) -> RadialProfile:
    """
    Build a profile from the catalog.

    Args:
        family: Family name or enum member
        validate: Check analytic derivatives against finite differences
        **params: Family parameters. bump(m, R); gaussian(sigma);
            mollified-power(gamma, eps, M, m); log-power(beta, R, m, t_min,
            t_max, ramp); shell(a, b, m); power(gamma); custom(eval, d1, d2,
            support, knots, scale)

    Returns:
        Validated RadialProfile

    Raises:
        ValidationError: For unknown families or invalid parameters

    Example:
        >>> phi = make_profile("bump", m=2, R=1.0)
        >>> round(phi.at(2 ** -0.5), 12)
        0.25
    """
    try:
        family = ProfileFamily(family)
    except ValueError:
        raise ValidationError(
            f"Unknown profile family '{family}'. "
            f"Must be one of {[f.value for f in ProfileFamily]}"
        )

    merged = dict(_DEFAULTS.get(family, {}))
    merged.update(params)
    try:
        profile = _BUILDERS[family](**merged)
    except TypeError as exc:
        raise ValidationError(f"Invalid parameters for {family.value}: {exc}")
    return _finish(profile, validate)


def parse_profile(text: Union[str, dict]) -> RadialProfile:
    """
    Build a profile from ``family:key=value,...`` or a JSON-style dict.

    Example:
        >>> parse_profile("bump:m=4,R=1").params["m"]
        4.0
    """
    if isinstance(text, dict):
        data = dict(text)
        family = data.pop("family", None)
        if family is None:
            raise ValidationError("Profile object needs a 'family' key")
    else:
        family, _, args = str(text).strip().partition(":")
        data = {}
        for item in filter(None, (a.strip() for a in args.split(","))):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValidationError(f"Malformed profile parameter '{item}' in '{text}'")
            try:
                data[key.strip()] = float(value)
            except ValueError:
                raise ValidationError(f"Profile parameter {key} must be numeric, got {value!r}")

    if str(family).lower() == ProfileFamily.CUSTOM.value:
        raise ValidationError("Custom profiles are only available through the Python API")
    return make_profile(str(family).lower(), **data)


# Separable functions -----------------------------------------------------

@dataclass(frozen=True)
class AngularFactor:
    """
    Angular part omega(y) of a separable function.

    Either a constant or a callable on the Euclidean unit sphere taking an
    (N, n) array of unit vectors.
    """

    constant: Optional[float] = 1.0
    func: Optional[Callable[[Array], Array]] = field(default=None, repr=False)

    def __post_init__(self):
        if (self.constant is None) == (self.func is None):
            raise ValidationError("AngularFactor needs exactly one of constant or func")

    @property
    def is_constant(self) -> bool:
        return self.func is None

    def __call__(self, y) -> Array:
        y = np.atleast_2d(np.asarray(y, dtype=float))
        if self.is_constant:
            return np.full(y.shape[0], float(self.constant))
        return np.asarray(self.func(y), dtype=float)


def Constant(c: float = 1.0) -> AngularFactor:
    """Constant angular factor."""
    return AngularFactor(constant=validate_finite(c, "angular constant"))


@dataclass(frozen=True)
class SeparableFunction:
    """u(r y) = phi(r) omega(y) in polar coordinates."""

    profile: RadialProfile
    angular: AngularFactor = field(default_factory=Constant)

    def check_norm(self, norm: QuasiNormSpec) -> None:
        """Non-Euclidean quasi-spheres only carry constant angular factors."""
        if not self.angular.is_constant and norm.kind is not NormKind.EUCLIDEAN:
            raise ValidationError(
                "Non-constant angular factors are only supported with the Euclidean norm"
            )

    def evaluate(self, group: GroupSpec, norm: QuasiNormSpec, x) -> Array:
        """u at ambient point(s) x."""
        self.check_norm(norm)
        x = np.atleast_2d(np.asarray(x, dtype=float))
        r = quasi_norm(norm, group, x)
        if self.angular.is_constant:
            return self.profile(r) * float(self.angular.constant)
        safe = np.where(r > 0, r, 1.0)
        return self.profile(r) * self.angular(x / safe[:, None])


@dataclass(frozen=True)
class SmoothFunction:
    """A general smooth function given with its Euclidean gradient."""

    func: Callable[[Array], Array] = field(repr=False)
    grad: Callable[[Array], Array] = field(repr=False)


def as_separable(u: Union[RadialProfile, SeparableFunction]) -> SeparableFunction:
    """Wrap a radial profile as a separable function with omega = 1."""
    if isinstance(u, SeparableFunction):
        return u
    if isinstance(u, RadialProfile):
        return SeparableFunction(u)
    raise ValidationError(f"Expected a RadialProfile or SeparableFunction, got {type(u).__name__}")


# Operators and transforms ------------------------------------------------

def radial_derivative(u: Union[RadialProfile, SeparableFunction, SmoothFunction],
                      group: GroupSpec, norm: QuasiNormSpec, x) -> float:
    """
    Derivative of u along the dilation ray through x, d/d|x|.

    For separable u this is phi'(|x|) omega(y) with y = D_(1/|x|) x. For a
    SmoothFunction on an abelian group it is the Euler operator
    sum_i nu_i x_i d_i u divided by |x|.

    Raises:
        ValidationError: For x = 0, or a SmoothFunction on a non-abelian group
    """
    x = np.asarray(x, dtype=float)
    r = float(quasi_norm(norm, group, x))
    if r == 0.0:
        raise ValidationError("Radial derivative is undefined at x = 0")

    if isinstance(u, SmoothFunction):
        if not group.is_abelian:
            raise ValidationError("Euler-operator radial derivative requires an abelian group")
        gradient = np.asarray(u.grad(x[None, :]), dtype=float).reshape(-1)
        return float(np.dot(np.asarray(group.weights) * x, gradient) / r)

    u = as_separable(u)
    u.check_norm(norm)
    y = dilate(group, 1.0 / r, x)
    return u.profile.derivative_at(r) * float(u.angular(y)[0])


def rellich_operator(phi: RadialProfile, Q: float, r) -> Array:
    """
    R^2 phi + (Q - 1)/r R phi for a radial profile.

    Raises:
        ValidationError: If any r <= 0
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValidationError("rellich_operator needs r > 0")
    return phi.d2(r) + (Q - 1.0) / r * phi.d1(r)


def hardy_transform(phi: RadialProfile, Q: float, p: float, k: int = 1,
                    validate: bool = True) -> RadialProfile:
    """
    v(r) = r^a phi(r) with a = (Q - k p) / p.

    k = 1 is the first-order transform; k >= 2 the Rellich variant.

    Raises:
        ValidationError: If the exponent is not positive

    Example:
        >>> v = hardy_transform(make_profile("bump", m=2, R=1.0), Q=4, p=2)
        >>> round(v.at(0.5), 12)
        0.28125
    """
    a = (Q - k * p) / p
    if a <= 0:
        raise ValidationError(f"hardy_transform exponent (Q - k p)/p must be > 0, got {a}")

    def ev(r):
        p0, _, _ = _power_parts(a, r)
        return _mul(p0, phi.eval(r))

    def d1(r):
        p0, p1, _ = _power_parts(a, r)
        return _mul(p1, phi.eval(r)) + _mul(p0, phi.d1(r))

    def d2(r):
        p0, p1, p2 = _power_parts(a, r)
        return (_mul(p2, phi.eval(r)) + 2.0 * _mul(p1, phi.d1(r))
                + _mul(p0, phi.d2(r)))

    return _finish(RadialProfile(
        ProfileFamily.CUSTOM,
        {"base": phi.family.value, "transform": "hardy", "exponent": a},
        ev, d1, d2, support=phi.support, knots=phi.knots, scale=phi.scale,
    ), validate)


@dataclass(frozen=True)
class CriticalSubstitution:
    """
    v(s) = s^c phi(R e^(-1/s)) with c = (Q - 1)/Q and s = 1/log(R/r).

    Attributes:
        v: Profile in the variable s
        R: Ball radius
        Q: Homogeneous dimension
    """

    v: RadialProfile
    R: float
    Q: float

    def s_of_r(self, r) -> Array:
        return 1.0 / log_radius(r, self.R)

    def ds_dr(self, r) -> Array:
        """s'(r) = s / (r log(R/r)) = s^2 / r."""
        r = np.asarray(r, dtype=float)
        s = self.s_of_r(r)
        return s * s / r


def critical_substitution(phi: RadialProfile, R: float, Q: float,
                          validate: bool = True) -> CriticalSubstitution:
    """
    Pass to the variable s = 1/log(R/r) used for the critical inequality.

    Raises:
        ValidationError: If the support of phi reaches r = R
    """
    R = validate_positive_number(R, "R")
    Q = validate_exponent_range(Q, "Q", lower=2.0)
    if phi.support[1] >= R:
        raise ValidationError(
            f"critical_substitution needs support inside [0, R), got {phi.support} with R={R}"
        )
    c = (Q - 1.0) / Q

    def psi(s):
        s = np.asarray(s, dtype=float)
        pos = s > 0
        safe = np.where(pos, s, 1.0)
        with np.errstate(all="ignore"):
            r = np.where(pos, R * np.exp(-1.0 / safe), 0.0)
            f0, f1, f2 = phi.eval(r), phi.d1(r), phi.d2(r)
            s4 = safe ** 4
            g0 = f0
            g1 = np.where(pos, f1 * r / (safe * safe), 0.0)
            g2 = np.where(pos, f2 * r * r / s4 + f1 * r * (1.0 - 2.0 * safe) / s4, 0.0)
        p0, p1, p2 = _power_parts(c, s)
        return pos, g0, g1, g2, p0, p1, p2

    def ev(s):
        pos, g0, _, _, p0, _, _ = psi(s)
        return np.where(pos, _mul(p0, g0), 0.0)

    def d1(s):
        pos, g0, g1, _, p0, p1, _ = psi(s)
        return np.where(pos, _mul(p1, g0) + _mul(p0, g1), 0.0)

    def d2(s):
        pos, g0, g1, g2, p0, p1, p2 = psi(s)
        return np.where(pos, _mul(p2, g0) + 2.0 * _mul(p1, g1) + _mul(p0, g2), 0.0)

    def to_s(r):
        if r <= 0:
            return 0.0
        return 1.0 / math.log(R / r) if r < R else math.inf

    lo, hi = phi.support
    knots = tuple(sorted(to_s(k) for k in phi.knots if 0 < k < R))
    v = _finish(RadialProfile(
        ProfileFamily.CUSTOM,
        {"base": phi.family.value, "transform": "critical", "R": R, "Q": Q},
        ev, d1, d2,
        support=(to_s(lo), to_s(hi)), knots=knots,
        scale=to_s(min(phi.scale, R / math.e)),
    ), validate)
    return CriticalSubstitution(v=v, R=R, Q=Q)


def from_critical_substitution(chi: RadialProfile, R: float, Q: float,
                               validate: bool = True) -> RadialProfile:
    """
    Inverse of :func:`critical_substitution`: u(r) = log(R/r)^c chi(1/log(R/r)).

    Raises:
        ValidationError: If chi is not supported in a bounded interval of (0, inf)
    """
    R = validate_positive_number(R, "R")
    Q = validate_exponent_range(Q, "Q", lower=2.0)
    s_lo, s_hi = chi.support
    if not (s_lo > 0 and math.isfinite(s_hi)):
        raise ValidationError(f"chi must be supported in a compact subset of (0, inf), got {chi.support}")
    c = (Q - 1.0) / Q

    def parts(r):
        r = np.asarray(r, dtype=float)
        inside = (r > 0) & (r < R)
        safe_r = np.where(inside, r, 0.5 * R)
        s = 1.0 / log_radius(safe_r, R)
        h0 = s ** -c * chi.eval(s)
        h1 = -c * s ** (-c - 1.0) * chi.eval(s) + s ** -c * chi.d1(s)
        h2 = (c * (c + 1.0) * s ** (-c - 2.0) * chi.eval(s)
              - 2.0 * c * s ** (-c - 1.0) * chi.d1(s) + s ** -c * chi.d2(s))
        s1 = s * s / safe_r
        s2 = s * s * (2.0 * s - 1.0) / (safe_r * safe_r)
        return inside, h0, h1, h2, s1, s2

    def ev(r):
        inside, h0, _, _, _, _ = parts(r)
        return np.where(inside, h0, 0.0)

    def d1(r):
        inside, _, h1, _, s1, _ = parts(r)
        return np.where(inside, h1 * s1, 0.0)

    def d2(r):
        inside, _, h1, h2, s1, s2 = parts(r)
        return np.where(inside, h2 * s1 * s1 + h1 * s2, 0.0)

    def to_r(s):
        return R * math.exp(-1.0 / s)

    knots = tuple(sorted(to_r(k) for k in chi.knots if k > 0 and math.isfinite(k)))
    return _finish(RadialProfile(
        ProfileFamily.CUSTOM,
        {"base": chi.family.value, "transform": "critical-inverse", "R": R, "Q": Q},
        ev, d1, d2,
        support=(to_r(s_lo), to_r(s_hi)), knots=knots,
        scale=to_r(chi.scale),
    ), validate)
