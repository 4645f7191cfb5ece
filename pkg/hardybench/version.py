"""Version information for HardyBench."""

__version__ = "0.1.0"
