"""Shipped corpus, search spaces and recorded constants for HardyBench."""
