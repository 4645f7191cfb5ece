"""
HardyBench - numerical verification of Hardy-type inequalities

HardyBench evaluates both sides, deficits and stability distances of the
Hardy, weighted Hardy, critical Hardy, radially improved and Rellich-type
inequalities on homogeneous groups with arbitrary homogeneous quasi-norms:
- Group models (Euclidean, anisotropic abelian, Heisenberg) and quasi-norms
- Adaptive radial quadrature with endpoint substitutions
- Profile catalog with analytic derivatives
- Deficit reports with grid-and-refine distance suprema
- Sharp-constant probes and stability-constant estimates
- Batch sweeps and byte-stable JSON / CSV reports
"""

from .version import __version__

# Group model and quadrature
from .core.group import (
    GroupSpec,
    QuasiNormSpec,
    dilate,
    make_group,
    parse_group,
    parse_norm,
    quasi_norm,
    sphere_measure,
)
from .core.polar import integrate_polar
from .core.quadrature import QuadratureSpec, integrate_ambient, integrate_radial

# Profiles and operators
from .core.profiles import (
    RadialProfile,
    SeparableFunction,
    critical_substitution,
    hardy_transform,
    make_profile,
    radial_derivative,
    rellich_operator,
)

# Functionals and constants
from .analysis.constants import K_constant, constant_CLQq, elementary_ineq_check, estimate_Cp
from .analysis.functionals import (
    ckn_check,
    critical_hardy_deficit,
    critical_hardy_distance,
    hardy_deficit,
    hardy_distance,
    radial_improved_check,
    rellich_deficit,
    rellich_expansion_residual,
)
from .analysis.report import DeficitReport, ExponentParams, Inequality

# Sharpness
from .sharpness import (
    FamilySearchSpace,
    ProbeResult,
    estimate_stability_constant,
    probe_sharp_constant,
    sweep,
)

# Command line
from .cli import run
from .config import RunConfig
from .utils.formatters import emit_report

# Exceptions
from .utils.exceptions import (
    ConfigError,
    HardyBenchError,
    OptimizationError,
    QuadratureError,
    ReportError,
    ValidationError,
)

__all__ = [
    "__version__",
    # Group model and quadrature
    "GroupSpec",
    "QuasiNormSpec",
    "make_group",
    "parse_group",
    "parse_norm",
    "dilate",
    "quasi_norm",
    "sphere_measure",
    "QuadratureSpec",
    "integrate_radial",
    "integrate_polar",
    "integrate_ambient",
    # Profiles and operators
    "RadialProfile",
    "SeparableFunction",
    "make_profile",
    "radial_derivative",
    "rellich_operator",
    "hardy_transform",
    "critical_substitution",
    # Functionals and constants
    "hardy_deficit",
    "hardy_distance",
    "ckn_check",
    "critical_hardy_deficit",
    "critical_hardy_distance",
    "radial_improved_check",
    "constant_CLQq",
    "rellich_deficit",
    "K_constant",
    "rellich_expansion_residual",
    "elementary_ineq_check",
    "estimate_Cp",
    "DeficitReport",
    "ExponentParams",
    "Inequality",
    # Sharpness
    "FamilySearchSpace",
    "ProbeResult",
    "probe_sharp_constant",
    "estimate_stability_constant",
    "sweep",
    # Command line
    "RunConfig",
    "run",
    "emit_report",
    # Exceptions
    "HardyBenchError",
    "ValidationError",
    "QuadratureError",
    "ConfigError",
    "ReportError",
    "OptimizationError",
]
