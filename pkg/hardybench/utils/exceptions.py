"""
Custom exceptions for HardyBench.
"""


class HardyBenchError(Exception):
    """Base exception for HardyBench."""
    pass


class ValidationError(HardyBenchError):
    """Raised when a parameter or precondition check fails."""
    pass


class QuadratureError(HardyBenchError):
    """Raised when an integral does not converge or the integrand is not finite."""
    pass


class ConfigError(HardyBenchError):
    """Raised when a run configuration cannot be parsed or is inconsistent."""
    pass


class ReportError(HardyBenchError):
    """Raised when a report cannot be written."""
    pass


class OptimizationError(HardyBenchError):
    """Raised when a probe finds no feasible point within its budget."""
    pass
