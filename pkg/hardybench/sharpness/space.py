"""
Search spaces over the parameters of a profile family.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from ..analysis.report import ExponentParams
from ..core.group import GroupSpec, QuasiNormSpec, parse_group, parse_norm
from ..core.profiles import ProfileFamily, RadialProfile, make_profile
from ..utils.exceptions import ValidationError

ParamDict = Dict[str, float]


@dataclass(frozen=True)
class Constraint:
    """Named predicate on the full profile parameter dict."""

    name: str
    predicate: Callable[[ParamDict], bool]

    def __call__(self, params: ParamDict) -> bool:
        return bool(self.predicate(params))


def upper_bound(param: str, bound: float) -> Constraint:
    """params[param] <= bound, e.g. a bump radius inside B(0, R)."""
    return Constraint(f"{param}<={bound:g}", lambda values: values[param] <= bound)


def ordered(lower: str, upper: str, factor: float = 1.0) -> Constraint:
    """params[upper] >= factor * params[lower]."""
    return Constraint(f"{upper}>={factor:g}*{lower}",
                      lambda values: values[upper] >= factor * values[lower])


@dataclass(frozen=True)
class FamilySearchSpace:
    """
    Parameter box of one profile family plus the fixed setting it is probed in.

    Parameters listed in ``log10_params`` are searched in log10 scale: the box
    holds exponents and :meth:`to_params` returns 10**x.

    Attributes:
        family: Profile family id
        box: Closed interval per searched parameter
        group: Compact group description
        norm: Compact norm description (None for the group default)
        fixed: Profile parameters that are not searched
        log10_params: Names of parameters searched in log10 scale
        params: Exponent parameters (p, q, L, k, R, T) of the inequality
        constraints: Predicates every evaluated point must satisfy
        name: Label used in logs and reports

    Example:
        >>> space = FamilySearchSpace("bump", {"m": (2, 8), "R": (0.5, 2)},
        ...                           group="euclidean:4", params={"p": 2})
        >>> space.to_params([4.0, 1.0])
        {'m': 4.0, 'R': 1.0}
    """

    family: str
    box: Dict[str, Tuple[float, float]]
    group: str = "euclidean:4"
    norm: Optional[str] = None
    fixed: Dict[str, float] = field(default_factory=dict)
    log10_params: Tuple[str, ...] = ()
    params: Dict[str, float] = field(default_factory=dict)
    constraints: Tuple[Constraint, ...] = ()
    name: str = ""

    def __post_init__(self):
        try:
            ProfileFamily(self.family)
        except ValueError:
            raise ValidationError(f"Unknown profile family '{self.family}'")
        if not self.box:
            raise ValidationError("Search space needs at least one parameter")
        for key, interval in self.box.items():
            if len(interval) != 2:
                raise ValidationError(f"Box entry for {key} must be (low, high)")
            lo, hi = (float(v) for v in interval)
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise ValidationError(f"Empty interval for {key}: [{lo}, {hi}]")
        unknown = set(self.log10_params) - set(self.box)
        if unknown:
            raise ValidationError(f"log10 parameters not in the box: {sorted(unknown)}")
        overlap = set(self.fixed) & set(self.box)
        if overlap:
            raise ValidationError(f"Parameters both fixed and searched: {sorted(overlap)}")
        if not self.name:
            object.__setattr__(self, "name", f"{self.family}@{self.group}")

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self.box)

    @property
    def dimension(self) -> int:
        return len(self.box)

    def bounds(self) -> np.ndarray:
        """(d, 2) array of box bounds in search coordinates."""
        return np.array([[float(lo), float(hi)] for lo, hi in self.box.values()])

    def to_params(self, x: Sequence[float]) -> ParamDict:
        """Search coordinates to the full profile parameter dict."""
        values = dict(self.fixed)
        for key, coordinate in zip(self.names, x):
            coordinate = float(coordinate)
            values[key] = 10.0 ** coordinate if key in self.log10_params else coordinate
        return values

    def violated(self, profile_params: ParamDict) -> List[str]:
        """Names of the constraints a parameter dict fails."""
        return [c.name for c in self.constraints if not c(profile_params)]

    def exponent_params(self) -> ExponentParams:
        return ExponentParams(**self.params)

    def setting(self) -> Tuple[GroupSpec, QuasiNormSpec]:
        group = parse_group(self.group)
        return group, parse_norm(self.norm, group)

    def build(self, x: Sequence[float]) -> RadialProfile:
        """
        Profile at a point of the box.

        Probe profiles skip the finite-difference derivative check; the
        catalog formulas are checked once by the tests.

        Raises:
            ValidationError: If the point violates a constraint or the family
                rejects its parameters
        """
        values = self.to_params(x)
        failed = self.violated(values)
        if failed:
            raise ValidationError(f"Point {values} violates {failed}")
        return self.profile(values)

    def profile(self, profile_params: ParamDict) -> RadialProfile:
        """Profile for a full parameter dict, without constraint checks."""
        return make_profile(self.family, validate=False, **profile_params)

    def halton_seeds(self, n: int, seed: int = 0) -> np.ndarray:
        """n scrambled Halton points scaled into the box."""
        if n <= 0:
            return np.empty((0, self.dimension))
        unit = qmc.Halton(d=self.dimension, scramble=True, seed=seed).random(n)
        bounds = self.bounds()
        return bounds[:, 0] + unit * (bounds[:, 1] - bounds[:, 0])

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "family": self.family,
            "box": {k: [float(lo), float(hi)] for k, (lo, hi) in self.box.items()},
            "log10_params": list(self.log10_params),
            "fixed": dict(self.fixed),
            "group": self.group,
            "norm": self.norm,
            "params": dict(self.params),
            "constraints": [c.name for c in self.constraints],
        }
