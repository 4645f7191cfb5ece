"""
Shipped search spaces for the sharpness probes and stability estimates.
"""

from typing import Dict

from ..sharpness.space import FamilySearchSpace, ordered, upper_bound
from ..utils.exceptions import ValidationError

# Mollified extremizer |x|^(-1) of the Q = 4, p = 2 Hardy inequality,
# searched over many decades of eps and M.
HARDY_RATIO_SPACE = FamilySearchSpace(
    family="mollified-power",
    box={"eps": (-60.0, -1.0), "M": (1.0, 60.0)},
    log10_params=("eps", "M"),
    fixed={"gamma": -1.0, "m": 2.0},
    group="euclidean:4",
    params={"p": 2.0},
    constraints=(ordered("eps", "M", factor=4.0),),
    name="hardy-ratio",
)


def _ckn_space(p: float) -> FamilySearchSpace:
    return FamilySearchSpace(
        family="log-power",
        box={"t_min": (-10.0, -1.0), "t_max": (0.5, 2.7), "ramp": (0.1, 0.5)},
        log10_params=("t_min", "t_max"),
        fixed={"beta": (p - 1.0) / p, "R": 1.0, "m": 2.0},
        group="euclidean:3",
        params={"p": p, "R": 1.0},
        constraints=(ordered("t_min", "t_max", factor=10.0),),
        name=f"ckn-p{p:g}",
    )


CKN_SPACES = {2.0: _ckn_space(2.0), 3.0: _ckn_space(3.0)}

STABILITY_SPACES: Dict[str, FamilySearchSpace] = {
    "lp-hardy": FamilySearchSpace(
        family="bump",
        box={"m": (2.0, 8.0), "R": (0.5, 2.0)},
        group="euclidean:4",
        params={"p": 2.0},
        name="stability-lp-hardy",
    ),
    "critical-hardy": FamilySearchSpace(
        family="bump",
        box={"m": (2.0, 8.0), "R": (0.3, 0.95)},
        group="euclidean:2",
        params={"R": 1.0},
        constraints=(upper_bound("R", 0.95),),
        name="stability-critical-hardy",
    ),
    "rellich": FamilySearchSpace(
        family="bump",
        box={"m": (2.0, 8.0), "R": (0.5, 2.0)},
        group="euclidean:5",
        params={"k": 2, "p": 2.0},
        name="stability-rellich",
    ),
}

SEARCH_SPACES: Dict[str, FamilySearchSpace] = {
    HARDY_RATIO_SPACE.name: HARDY_RATIO_SPACE,
    **{space.name: space for space in CKN_SPACES.values()},
    **{space.name: space for space in STABILITY_SPACES.values()},
}


def get_search_space(name: str) -> FamilySearchSpace:
    """
    Shipped search space by name.

    Raises:
        ValidationError: If no space has that name
    """
    try:
        return SEARCH_SPACES[name]
    except KeyError:
        raise ValidationError(f"Unknown search space '{name}'. Available: {sorted(SEARCH_SPACES)}")
