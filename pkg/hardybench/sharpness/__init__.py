"""
Sharp-constant probes, stability-constant estimates and sweeps.

Derivative-free searches over profile-family parameters, plus the
cross-product evaluation of an inequality over a parameter grid.
"""

from .space import Constraint, FamilySearchSpace, ordered, upper_bound
from .engine import ProbeEngine
from .results import ProbeResult
from .probe import estimate_stability_constant, probe_sharp_constant
from .sweep import parameter_grid, sweep

__all__ = [
    "Constraint",
    "FamilySearchSpace",
    "ordered",
    "upper_bound",
    "ProbeEngine",
    "ProbeResult",
    "probe_sharp_constant",
    "estimate_stability_constant",
    "parameter_grid",
    "sweep",
]
