"""
Closed-form constants and the scalar inequalities behind the stability estimates.

Covers the sharp Hardy and weighted Hardy constants, the Rellich-type
constant K(k, p), the radial improvement constant C(L, Q, q), the three
elementary inequalities in (a, b) and the proof-derived stability floors.
"""

import itertools
import logging
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Union

import numpy as np
import pandas as pd
from scipy.optimize import minimize_scalar
from scipy.special import gamma as gamma_fn

from ..core.quadrature import Integrand1D, QuadratureSpec, integrate_radial
from ..utils.exceptions import QuadratureError, ValidationError
from ..utils.helpers import abs_power, signed_power
from ..utils.validators import validate_choice, validate_exponent_range, validate_integer

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]

ELEMENTARY_VARIANTS = ("i", "ii", "iii")

# Angular grid for estimate_Cp keeps away from b = 0 where the quotient
# blows up for p > 2.
_CP_EXCLUSION = 1e-2
_CLQQ_TOLERANCE = 1e-8


def hardy_constant(Q: float, p: float) -> float:
    """Sharp L^p Hardy constant ((Q - p)/p)^p."""
    return ((Q - p) / p) ** p


def ckn_constant(p: float) -> float:
    """Sharp weighted Hardy (CKN-type) constant p/(p - 1)."""
    p = validate_exponent_range(p, "p", lower=1.0, lower_inclusive=False)
    return p / (p - 1.0)


def critical_constant(Q: float) -> float:
    """Sharp critical Hardy constant ((Q - 1)/Q)^Q."""
    return ((Q - 1.0) / Q) ** Q


def _log_moment(L: float, a: float, quad: Optional[QuadratureSpec]) -> float:
    """integral_0^1 s^L log(1/s)^a ds, computed as integral_0^inf x^a e^(-(L+1) x) dx."""
    rate = L + 1.0
    value, _ = integrate_radial(
        Integrand1D(lambda x: np.exp(-rate * x) * x ** a, 0.0, math.inf,
                    power_at_a=a, scale=1.0 / rate),
        quad,
    )
    return value


def constant_CLQq(L: float, Q: float, q: float, verify: bool = False,
                  quad: Optional[QuadratureSpec] = None) -> float:
    """
    Constant of the improved radial inequality.

    C^(-1) = integral_0^1 s^L log(1/s)^a ds = (L + 1)^(-(a + 1)) Gamma(a + 1)
    with a = (Q - 1) q / Q.

    Args:
        L: Power of s, L > -1
        Q: Homogeneous dimension
        q: Integrability exponent, q > 0
        verify: Also evaluate the defining integral and compare
        quad: Quadrature configuration for verification

    Returns:
        The constant C

    Raises:
        ValidationError: If L <= -1 or a <= -1
        QuadratureError: If verification disagrees beyond 1e-8 relative

    Example:
        >>> constant_CLQq(1.0, 2.0, 2.0)
        4.0
    """
    L = validate_exponent_range(L, "L", lower=-1.0, lower_inclusive=False)
    Q = validate_exponent_range(Q, "Q", lower=1.0, lower_inclusive=False)
    q = validate_exponent_range(q, "q", lower=0.0, lower_inclusive=False)
    a = (Q - 1.0) * q / Q
    if a <= -1.0:
        raise ValidationError(f"(Q - 1) q / Q must be > -1, got {a}")

    inverse = (L + 1.0) ** (-(a + 1.0)) * float(gamma_fn(a + 1.0))
    if verify:
        numeric = _log_moment(L, a, quad)
        if abs(numeric - inverse) > _CLQQ_TOLERANCE * abs(inverse):
            raise QuadratureError(
                f"C(L={L}, Q={Q}, q={q}): closed form {inverse!r} vs quadrature {numeric!r}"
            )
        logger.debug("constant_CLQq verified: %.17g vs %.17g", inverse, numeric)
    return 1.0 / inverse


def K_constant(k: Number, p: Number, Q: Number) -> Number:
    """
    Rellich-type constant K(k, p) = (Q - k p)((k - 2) p + (p - 1) Q) / p^2.

    Exact Fraction arithmetic is used when every input is rational
    (int or Fraction); otherwise the result is a float.

    Example:
        >>> K_constant(2, 2, 5)
        Fraction(5, 4)
        >>> K_constant(3, 2.0, 8)
        5.0
    """
    if all(isinstance(v, Rational) for v in (k, p, Q)):
        k, p, Q = Fraction(k), Fraction(p), Fraction(Q)
    else:
        k, p, Q = float(k), float(p), float(Q)
    if p == 0:
        raise ValidationError("K_constant needs p != 0")
    return (Q - k * p) * ((k - 2) * p + (p - 1) * Q) / (p * p)


def _check_elementary_inputs(a: np.ndarray, b: np.ndarray, p: float, variant: str):
    lower = 1.0 if variant == "i" else 2.0
    validate_exponent_range(p, "p", lower=lower)
    if variant == "iii":
        if np.any(a < 0):
            raise ValidationError("Variant iii requires a >= 0")
        if np.any(a - b < 0):
            raise ValidationError("Variant iii requires a - b >= 0")


def elementary_ineq_check(a, b, p: float, variant: str = "i",
                          C: Optional[float] = None) -> np.ndarray:
    """
    Margin (LHS - RHS) of one of the elementary (a, b) inequalities.

    - ``i``:   |a - b|^p - |a|^p >= -p |a|^(p-2) a b, for p >= 1
    - ``ii``:  |a - b|^p - |a|^p >= -p |a|^(p-2) a b + C |b|^p, for p >= 2
    - ``iii``: (a - b)^p + p a^(p-1) b - a^p >= |b|^p, for p >= 2, a >= 0, a >= b

    |a|^(p-2) a is read as sign(a)|a|^(p-1), which is 0 at a = 0.

    Args:
        a: Scalar or array
        b: Scalar or array (broadcast against a)
        p: Exponent
        variant: "i", "ii" or "iii"
        C: Candidate constant (variant ii only)

    Returns:
        Margin array (a scalar array for scalar inputs)

    Raises:
        ValidationError: On precondition violations

    Example:
        >>> float(elementary_ineq_check(1.0, 0.5, 2.0, "iii"))
        0.0
    """
    variant = validate_choice(variant, ELEMENTARY_VARIANTS, "variant")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_elementary_inputs(a, b, p, variant)

    if variant == "iii":
        return ((a - b) ** p + p * a ** (p - 1.0) * b - a ** p) - abs_power(b, p)

    margin = abs_power(a - b, p) - abs_power(a, p) + p * signed_power(a, p - 1.0) * b
    if variant == "ii":
        if C is None:
            raise ValidationError("Variant ii requires a candidate constant C")
        margin = margin - C * abs_power(b, p)
    return margin


def _cp_quotient(theta, p: float) -> np.ndarray:
    a, b = np.cos(theta), np.sin(theta)
    return elementary_ineq_check(a, b, p, "i") / abs_power(b, p)


def estimate_Cp(p: float, samples: int = 4096) -> float:
    """
    Best constant C(p) in the second elementary inequality.

    By joint homogeneity of degree p it suffices to minimize
    (|a - b|^p - |a|^p + p |a|^(p-2) a b) / |b|^p over the half circle
    a = cos(theta), b = sin(theta). The minimum of a dense grid is refined
    by a bounded scalar search between its grid neighbours.

    Args:
        p: Exponent, p >= 2
        samples: Grid size

    Returns:
        Estimate of C(p) in (0, 1]

    Raises:
        ValidationError: If p < 2

    Example:
        >>> round(estimate_Cp(2.0), 10)
        1.0
    """
    p = validate_exponent_range(p, "p", lower=2.0)
    samples = validate_integer(samples, "samples", minimum=16)

    theta = np.linspace(_CP_EXCLUSION, math.pi - _CP_EXCLUSION, samples)
    values = _cp_quotient(theta, p)
    i = int(np.argmin(values))
    best = float(values[i])

    lo, hi = theta[max(i - 1, 0)], theta[min(i + 1, samples - 1)]
    if hi > lo:
        res = minimize_scalar(lambda t: float(_cp_quotient(np.array([t]), p)[0]),
                              bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12})
        if res.success:
            best = min(best, float(res.fun))

    logger.debug("estimate_Cp(%g) = %.17g (grid argmin theta=%.6f)", p, best, theta[i])
    return min(best, 1.0)


def stability_floor(inequality: str, p: Optional[float] = None,
                    Q: Optional[float] = None, k: Optional[int] = None) -> float:
    """
    Stability constant delivered by the proofs.

    - ``lp-hardy``: C(p) ((p - 1)/p)^p
    - ``critical-hardy``: C(Q) ((Q - 1)/Q)^Q
    - ``rellich``: K(k, p)^(p - 1) (p - 1)/p

    where C(p) is the best constant of the second elementary inequality.

    Raises:
        ValidationError: For inequalities without a floor or missing exponents
    """
    if inequality == "lp-hardy":
        if p is None:
            raise ValidationError("lp-hardy floor needs p")
        return estimate_Cp(p) * ((p - 1.0) / p) ** p
    if inequality == "critical-hardy":
        if Q is None:
            raise ValidationError("critical-hardy floor needs Q")
        return estimate_Cp(Q) * critical_constant(Q)
    if inequality == "rellich":
        if None in (p, Q, k):
            raise ValidationError("rellich floor needs k, p and Q")
        K = float(K_constant(k, p, Q))
        return K ** (p - 1.0) * (p - 1.0) / p
    raise ValidationError(f"No stability floor for '{inequality}'")


def constants_table(k: Iterable[Number] = (2,), p: Iterable[Number] = (2,),
                    Q: Iterable[Number] = (4,), L: Iterable[float] = (0.0,),
                    q: Iterable[float] = (2.0,)) -> pd.DataFrame:
    """
    Table of the closed-form constants over a parameter grid.

    Each row holds K(k, p), C(L, Q, q), ((Q - p)/p)^p and p/(p - 1) for one
    point of the cross product. Entries outside their domain are NaN.

    Returns:
        DataFrame with columns k, p, Q, L, q, K, C_LQq, hardy, ckn
    """
    rows = []
    for kk, pp, QQ, LL, qq in itertools.product(k, p, Q, L, q):
        row = {"k": kk, "p": pp, "Q": QQ, "L": LL, "q": qq}
        try:
            row["K"] = float(K_constant(kk, pp, QQ))
        except ValidationError:
            row["K"] = float("nan")
        try:
            row["C_LQq"] = constant_CLQq(LL, QQ, qq)
        except ValidationError:
            row["C_LQq"] = float("nan")
        row["hardy"] = (hardy_constant(float(QQ), float(pp))
                        if 0 < float(pp) <= float(QQ) else float("nan"))
        row["ckn"] = float(pp) / (float(pp) - 1.0) if float(pp) > 1 else float("nan")
        rows.append(row)
    return pd.DataFrame(rows, columns=["k", "p", "Q", "L", "q", "K", "C_LQq", "hardy", "ckn"])
