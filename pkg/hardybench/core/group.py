"""
Homogeneous groups in exponential coordinates with diagonal dilations.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.special import gamma as gamma_fn

from .quadrature import Integrand1D, QuadratureSpec, integrate_ambient, integrate_radial
from ..utils.exceptions import ValidationError
from ..utils.validators import validate_choice, validate_integer, validate_positive_number

logger = logging.getLogger(__name__)

# exp(-_ORACLE_DECAY) is negligible against every oracle tolerance.
_ORACLE_DECAY = 45.0


class GroupLaw(Enum):
    """Group-law tag. No formula depends on the multiplication itself."""

    ABELIAN = "abelian"
    HEISENBERG = "heisenberg"


class NormKind(Enum):
    """Closed catalog of homogeneous quasi-norms."""

    EUCLIDEAN = "euclidean"
    ANISOTROPIC_POWER = "anisotropic_power"
    KORANYI = "koranyi"


@dataclass(frozen=True)
class GroupSpec:
    """
    A homogeneous group given by its dilation weights.

    Q is computed once at construction as the exactly rounded sum of the
    weights.

    Attributes:
        n: Topological dimension
        weights: Dilation weights nu_i
        law: Group-law tag
        Q: Homogeneous dimension
    """

    n: int
    weights: Tuple[float, ...]
    law: GroupLaw = GroupLaw.ABELIAN
    Q: float = field(init=False)

    def __post_init__(self):
        n = validate_integer(self.n, "n", minimum=1)
        weights = tuple(float(w) for w in self.weights)
        if len(weights) != n:
            raise ValidationError(f"Expected {n} weights, got {len(weights)}")
        for i, w in enumerate(weights):
            validate_positive_number(w, f"weights[{i}]")

        law = GroupLaw(self.law)
        if law is GroupLaw.HEISENBERG and (n != 3 or weights != (1.0, 1.0, 2.0)):
            raise ValidationError("Heisenberg group requires n=3 with weights (1, 1, 2)")

        object.__setattr__(self, "n", n)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "law", law)
        object.__setattr__(self, "Q", math.fsum(weights))

    @property
    def is_abelian(self) -> bool:
        return self.law is GroupLaw.ABELIAN

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "weights": [int(w) if w.is_integer() else w for w in self.weights],
            "law": self.law.value,
        }


@dataclass(frozen=True)
class QuasiNormSpec:
    """
    A homogeneous quasi-norm.

    Attributes:
        kind: Norm family
        p0: Exponent of the anisotropic power norm (positive even integer)
    """

    kind: NormKind
    p0: Optional[int] = None

    def __post_init__(self):
        kind = NormKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is NormKind.ANISOTROPIC_POWER:
            p0 = validate_integer(self.p0, "p0", minimum=2)
            if p0 % 2:
                raise ValidationError(f"p0 must be a positive even integer, got {p0}")
            object.__setattr__(self, "p0", p0)
        elif self.p0 is not None:
            raise ValidationError("p0 is only meaningful for anisotropic power norms")

    def oracle_power(self) -> float:
        """Exponent s such that |x|^s is a smooth function of the coordinates."""
        if self.kind is NormKind.EUCLIDEAN:
            return 2.0
        if self.kind is NormKind.KORANYI:
            return 4.0
        return float(self.p0)

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value}
        if self.p0 is not None:
            data["p0"] = self.p0
        return data


def make_group(n: int, weights: Sequence[float], law="abelian") -> GroupSpec:
    """
    Build and validate a homogeneous group.

    Args:
        n: Topological dimension
        weights: Dilation weights
        law: "abelian" or "heisenberg" (or a GroupLaw)

    Returns:
        GroupSpec with Q = sum of weights

    Raises:
        ValidationError: For nonpositive weights or a law/weight mismatch

    Example:
        >>> make_group(3, (1, 1, 2), "heisenberg").Q
        4.0
    """
    if isinstance(law, str):
        law = GroupLaw(validate_choice(law, [g.value for g in GroupLaw], "group law"))
    return GroupSpec(n=n, weights=tuple(weights), law=law)


def check_compatible(norm: QuasiNormSpec, group: GroupSpec) -> None:
    """
    Raise ValidationError unless the norm is homogeneous for the group's dilations.
    """
    if norm.kind is NormKind.EUCLIDEAN:
        if any(w != 1.0 for w in group.weights):
            raise ValidationError("Euclidean norm requires all dilation weights equal to 1")
    elif norm.kind is NormKind.KORANYI:
        if group.law is not GroupLaw.HEISENBERG:
            raise ValidationError("Koranyi norm requires the Heisenberg group")
    else:
        for w in group.weights:
            if norm.p0 / w < 1:
                raise ValidationError(
                    f"Anisotropic power norm needs p0/nu_i >= 1, got p0={norm.p0}, nu={w}"
                )


def dilate(group: GroupSpec, lam: float, x) -> np.ndarray:
    """
    Apply the dilation D_lam, coordinate i scaled by lam^nu_i.

    Args:
        group: Group
        lam: Dilation factor (> 0)
        x: Point or array of points with trailing dimension n

    Returns:
        Dilated point(s)
    """
    lam = validate_positive_number(lam, "lambda")
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != group.n:
        raise ValidationError(f"Point has {x.shape[-1]} coordinates, group has n={group.n}")
    return x * lam ** np.asarray(group.weights)


def quasi_norm(norm: QuasiNormSpec, group: GroupSpec, x) -> np.ndarray:
    """
    Evaluate a homogeneous quasi-norm.

    Args:
        norm: Quasi-norm
        group: Group the norm is homogeneous for
        x: Point or array of points with trailing dimension n

    Returns:
        Nonnegative value(s), one per point

    Example:
        >>> g = make_group(2, (1, 1))
        >>> float(quasi_norm(QuasiNormSpec(NormKind.EUCLIDEAN), g, [3.0, 4.0]))
        5.0
    """
    check_compatible(norm, group)
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != group.n:
        raise ValidationError(f"Point has {x.shape[-1]} coordinates, group has n={group.n}")

    if norm.kind is NormKind.EUCLIDEAN:
        return np.sqrt(np.sum(x * x, axis=-1))

    if norm.kind is NormKind.KORANYI:
        planar = x[..., 0] ** 2 + x[..., 1] ** 2
        return (planar * planar + x[..., 2] ** 2) ** 0.25

    exponents = norm.p0 / np.asarray(group.weights)
    return np.sum(np.abs(x) ** exponents, axis=-1) ** (1.0 / norm.p0)


def decay_box(group: GroupSpec, radius: float) -> Tuple[float, ...]:
    """Half-widths of a box containing the quasi-ball of the given radius."""
    return tuple(radius ** w for w in group.weights)


@lru_cache(maxsize=64)
def sphere_measure(group: GroupSpec, norm: QuasiNormSpec,
                   quad: Optional[QuadratureSpec] = None,
                   oracle_power: Optional[float] = None) -> float:
    """
    Measure of the unit quasi-sphere.

    Computed as the ratio of the ambient integral of exp(-|x|^s) to the radial
    integral of exp(-r^s) r^(Q-1). Euclidean groups with n > 3 use the closed
    form 2 pi^(n/2) / Gamma(n/2).

    Args:
        group: Group
        norm: Quasi-norm
        quad: Quadrature configuration
        oracle_power: Exponent s of the oracle integrand (defaults to the
            exponent that makes |x|^s smooth for this norm)

    Returns:
        |sphere| such that the polar decomposition formula holds

    Raises:
        ValidationError: For incompatible pairs or non-Euclidean groups with n > 3
        QuadratureError: If an oracle integral does not converge
    """
    check_compatible(norm, group)
    quad = quad or QuadratureSpec()

    if group.n > 3:
        if norm.kind is not NormKind.EUCLIDEAN:
            raise ValidationError(
                f"Sphere measure for non-Euclidean norms is limited to n <= 3, got n={group.n}"
            )
        return float(2.0 * math.pi ** (group.n / 2.0) / gamma_fn(group.n / 2.0))

    s = float(oracle_power or norm.oracle_power())
    radius = _ORACLE_DECAY ** (1.0 / s)

    def ambient(points):
        return np.exp(-quasi_norm(norm, group, points) ** s)

    def radial(r):
        return np.exp(-r ** s) * r ** (group.Q - 1.0)

    volume, _ = integrate_ambient(ambient, decay_box(group, radius), quad)
    radial_value, _ = integrate_radial(
        Integrand1D(radial, 0.0, math.inf, power_at_a=group.Q - 1.0), quad)
    measure = volume / radial_value
    logger.debug("sphere_measure(%s, %s) = %.17g", group.to_dict(), norm.kind.value, measure)
    return measure


def default_norm(group: GroupSpec) -> QuasiNormSpec:
    """The natural quasi-norm for a group: Koranyi, Euclidean or anisotropic power."""
    if group.law is GroupLaw.HEISENBERG:
        return QuasiNormSpec(NormKind.KORANYI)
    if all(w == 1.0 for w in group.weights):
        return QuasiNormSpec(NormKind.EUCLIDEAN)
    p0 = 2 * int(math.ceil(max(group.weights) / 2.0))
    return QuasiNormSpec(NormKind.ANISOTROPIC_POWER, p0=p0)


def parse_group(text: str) -> GroupSpec:
    """
    Parse a compact group description.

    Accepted forms: ``heisenberg``, ``euclidean:N`` and ``abelian:w1,w2,...``.

    Raises:
        ValidationError: If the description is malformed
    """
    name, _, args = str(text).strip().lower().partition(":")
    try:
        if name == "heisenberg" and not args:
            return make_group(3, (1, 1, 2), GroupLaw.HEISENBERG)
        if name == "euclidean":
            n = validate_integer(args, "euclidean dimension", minimum=1)
            return make_group(n, (1,) * n)
        if name == "abelian":
            weights = tuple(float(w) for w in args.split(","))
            return make_group(len(weights), weights)
    except ValueError as exc:
        raise ValidationError(f"Malformed group '{text}': {exc}")
    raise ValidationError(
        f"Unknown group '{text}'. Use heisenberg, euclidean:N or abelian:w1,w2,..."
    )


def parse_norm(text: Optional[str], group: GroupSpec) -> QuasiNormSpec:
    """
    Parse a compact norm description: ``euclidean``, ``koranyi`` or ``power:P0``.

    None selects :func:`default_norm`. The result is checked against the group.
    """
    if text is None:
        return default_norm(group)
    name, _, args = str(text).strip().lower().partition(":")
    if name == "euclidean":
        norm = QuasiNormSpec(NormKind.EUCLIDEAN)
    elif name == "koranyi":
        norm = QuasiNormSpec(NormKind.KORANYI)
    elif name in ("power", "anisotropic_power"):
        norm = QuasiNormSpec(NormKind.ANISOTROPIC_POWER, p0=validate_integer(args, "p0"))
    else:
        raise ValidationError(f"Unknown norm '{text}'. Use euclidean, koranyi or power:P0")
    check_compatible(norm, group)
    return norm


def group_to_json(group: GroupSpec, norm: QuasiNormSpec) -> dict:
    """Serialize a (group, norm) pair to a JSON-ready object."""
    data = group.to_dict()
    data["norm"] = norm.to_dict()
    return data


def group_from_json(data: dict) -> Tuple[GroupSpec, QuasiNormSpec]:
    """
    Deserialize a (group, norm) pair.

    Raises:
        ValidationError: If fields are missing or inconsistent
    """
    try:
        group = make_group(data["n"], data["weights"], data.get("law", "abelian"))
        norm_data = data.get("norm")
        norm = (default_norm(group) if norm_data is None
                else QuasiNormSpec(NormKind(norm_data["kind"]), norm_data.get("p0")))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"Malformed group JSON: {exc}")
    check_compatible(norm, group)
    return group, norm
