"""
Inequality functionals, sharp constants and result containers.
"""

from .constants import (
    K_constant,
    constant_CLQq,
    constants_table,
    elementary_ineq_check,
    estimate_Cp,
    stability_floor,
)
from .functionals import (
    ckn_check,
    critical_hardy_deficit,
    critical_hardy_distance,
    evaluate_inequality,
    hardy_deficit,
    hardy_distance,
    radial_improved_check,
    rellich_deficit,
    rellich_expansion_residual,
)
from .report import CKNResult, DeficitReport, ExponentParams, Inequality

__all__ = [
    "K_constant",
    "constant_CLQq",
    "constants_table",
    "elementary_ineq_check",
    "estimate_Cp",
    "stability_floor",
    "ckn_check",
    "critical_hardy_deficit",
    "critical_hardy_distance",
    "evaluate_inequality",
    "hardy_deficit",
    "hardy_distance",
    "radial_improved_check",
    "rellich_deficit",
    "rellich_expansion_residual",
    "CKNResult",
    "DeficitReport",
    "ExponentParams",
    "Inequality",
]
