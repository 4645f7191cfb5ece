"""
Recorded constants for HardyBench.

The recorded floors are the corpus-wide stability constants the inequality
suite asserts. Each sits at or below the proof-derived floor over its
exponent range. A release may not undershoot them by more than 1%.
"""

from typing import Optional

from ..analysis.constants import stability_floor

RECORDED_FLOORS = {
    "lp-hardy": 0.17,
    "critical-hardy": 0.105,
    "rellich": 0.62,
}

# Exponent ranges the recorded floors apply to.
FLOOR_RANGES = {
    "lp-hardy": {"p": (2.0, 3.0)},
    "critical-hardy": {"Q": (2.0, 4.0)},
    "rellich": {"p": (2.0, 2.0), "k": (2, 2)},
}

# Best constants of the second elementary inequality known in closed form.
CP_CLOSED_FORMS = {
    2.0: 1.0,
    3.0: 2.0 - 2.0 ** 0.5,
    4.0: 1.0 / 3.0,
}

# Samples per elementary-inequality run in the full invariant suite.
ELEMENTARY_SAMPLES = 1_000_000

# Largest change of estimate_Cp(p) when its grid doubles.
CP_DOUBLING_TOLERANCE = 1e-4

# Fraction of the sharp constant a probe must reach within its default budget.
SHARP_TARGETS = {
    "hardy-ratio": 0.98,
    "ckn": 0.95,
}


def asserted_floor(inequality: str, p: Optional[float] = None, Q: Optional[float] = None,
                   k: Optional[int] = None) -> Optional[float]:
    """
    Stability constant a verification run asserts.

    The recorded corpus floor applies inside its exponent range; elsewhere
    the proof-derived floor is used, and the smaller of the two wins.

    Returns:
        The floor, or None for inequalities without a stability estimate
    """
    if inequality not in RECORDED_FLOORS:
        return None
    proof = stability_floor(inequality, p=p, Q=Q, k=k)
    values = {"p": p, "Q": Q, "k": k}
    inside = all(
        values[name] is not None and lo <= values[name] <= hi
        for name, (lo, hi) in FLOOR_RANGES[inequality].items()
    )
    if not inside:
        return proof
    return min(RECORDED_FLOORS[inequality], proof)
