"""
Profiles and settings for checking polar integration against the ambient oracle.

Every profile is a function g(w) of w = r^4. For each shipped norm r^4 is a
polynomial in the coordinates, so the tensor oracle integrates a smooth
function (C^7 across the support edge of the compact profiles).
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from ..core.group import parse_group, parse_norm
from ..core.polar import ambient_check
from ..core.profiles import RadialProfile, make_profile
from ..core.quadrature import QuadratureSpec

Parts = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray, np.ndarray]]

# (group, norm) pairs in the compact command-line form
ORACLE_SETTINGS: Tuple[Tuple[str, Optional[str]], ...] = (
    ("euclidean:2", None),
    ("euclidean:3", None),
    ("heisenberg", "koranyi"),
    ("abelian:1,1,2", "power:4"),
)

ORACLE_TOLERANCE = 1e-6

# exp(-rate w) is below e^-40 beyond w = _DECAY / rate
_DECAY = 40.0


@dataclass(frozen=True)
class OracleProfile:
    """A radial profile with the quasi-radius of the box the oracle integrates over."""

    name: str
    profile: RadialProfile
    radius: float


def _in_w(parts: Parts, support: Tuple[float, float], scale: float,
          **params) -> RadialProfile:
    # phi(r) = g(r^4): phi' = 4 r^3 g', phi'' = 16 r^6 g'' + 12 r^2 g'
    def order(n: int):
        def fn(r):
            r = np.asarray(r, dtype=float)
            g0, g1, g2 = parts(r ** 4)
            if n == 0:
                return g0
            if n == 1:
                return 4.0 * r ** 3 * g1
            return 16.0 * r ** 6 * g2 + 12.0 * r * r * g1
        return fn

    return make_profile("custom", eval=order(0), d1=order(1), d2=order(2),
                        support=support, scale=scale, **params)


def exp_quartic(coeffs: Sequence[float], rate: float) -> OracleProfile:
    """P(r^4) exp(-rate r^4) for the polynomial P with the given coefficients."""
    P = Polynomial(coeffs)
    P1, P2 = P.deriv(), P.deriv(2)

    def parts(w):
        e = np.exp(-rate * w)
        return (P(w) * e,
                (P1(w) - rate * P(w)) * e,
                (P2(w) - 2.0 * rate * P1(w) + rate * rate * P(w)) * e)

    terms = "+".join(f"{c:g}w^{i}" for i, c in enumerate(coeffs) if c)
    name = f"({terms})exp(-{rate:g}w)"
    profile = _in_w(parts, (0.0, math.inf), rate ** -0.25,
                    rate=float(rate), degree=float(P.degree()))
    return OracleProfile(name, profile, (_DECAY / rate) ** 0.25)


def quartic_bump(cutoff: float, m: int) -> OracleProfile:
    """(1 - r^4/cutoff)^m on r^4 < cutoff."""
    def parts(w):
        base = np.clip(1.0 - w / cutoff, 0.0, None)
        return (base ** m,
                -(m / cutoff) * base ** (m - 1),
                (m * (m - 1) / cutoff ** 2) * base ** (m - 2))

    radius = cutoff ** 0.25
    profile = _in_w(parts, (0.0, radius), 0.5 * radius, cutoff=float(cutoff), m=float(m))
    return OracleProfile(f"(1-w/{cutoff:g})^{m}", profile, radius)


def oracle_profiles() -> List[OracleProfile]:
    """The ten profiles checked on every setting of :data:`ORACLE_SETTINGS`."""
    return [
        exp_quartic([1.0], 0.5),
        exp_quartic([1.0], 1.0),
        exp_quartic([1.0], 2.0),
        exp_quartic([0.0, 1.0], 1.0),
        exp_quartic([1.0, 1.0], 1.0),
        exp_quartic([0.0, 0.0, 1.0], 0.5),
        exp_quartic([1.0, -0.5], 1.0),
        quartic_bump(1.0 / 16.0, 8),
        quartic_bump(1.0, 8),
        quartic_bump(16.0, 8),
    ]


def oracle_gap(setting: Tuple[str, Optional[str]], entry: OracleProfile,
               quad: Optional[QuadratureSpec] = None) -> float:
    """Relative difference between the polar value and the ambient oracle."""
    group = parse_group(setting[0])
    norm = parse_norm(setting[1], group)
    polar, ambient = ambient_check(group, norm, entry.profile, entry.radius, quad)
    return abs(polar - ambient) / abs(ambient)
