"""
Pytest configuration and fixtures for HardyBench tests.
"""

import pytest

from hardybench.core.group import parse_group, parse_norm
from hardybench.core.profiles import make_profile
from hardybench.core.quadrature import QuadratureSpec


@pytest.fixture
def quad():
    """Default quadrature configuration."""
    return QuadratureSpec()


@pytest.fixture
def euclidean3():
    """R^3 with the Euclidean norm."""
    group = parse_group("euclidean:3")
    return group, parse_norm(None, group)


@pytest.fixture
def heisenberg():
    """Heisenberg group with the Koranyi norm (Q = 4)."""
    group = parse_group("heisenberg")
    return group, parse_norm("koranyi", group)


@pytest.fixture
def anisotropic():
    """R^3 with weights (1, 1, 2) and the power-4 norm (Q = 4)."""
    group = parse_group("abelian:1,1,2")
    return group, parse_norm("power:4", group)


@pytest.fixture
def gaussian():
    """Unit Gaussian profile exp(-r^2 / 2)."""
    return make_profile("gaussian", sigma=1.0)


@pytest.fixture
def bump():
    """Bump (1 - r^2)^4 on [0, 1]."""
    return make_profile("bump", m=4, R=1.0)
