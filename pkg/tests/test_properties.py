"""
Property-based tests of the group and constant invariants.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardybench.analysis.constants import K_constant, elementary_ineq_check, estimate_Cp
from hardybench.core.group import dilate, parse_group, parse_norm, quasi_norm

SETTINGS = [
    ("euclidean:3", None),
    ("heisenberg", "koranyi"),
    ("abelian:1,1,2", "power:4"),
]
# Coordinates stay away from the subnormal range so squares keep full precision.
coordinate = st.one_of(
    st.just(0.0),
    st.floats(min_value=1e-6, max_value=1e3),
    st.floats(min_value=-1e3, max_value=-1e-6),
)
point = st.lists(coordinate, min_size=3, max_size=3)


@pytest.mark.parametrize("group_text,norm_text", SETTINGS)
@given(x=point, lam=st.floats(min_value=1e-3, max_value=1e3))
@settings(max_examples=200, deadline=None)
def test_quasi_norm_is_homogeneous(group_text, norm_text, x, lam):
    """|D_lam x| = lam |x|."""
    group = parse_group(group_text)
    norm = parse_norm(norm_text, group)
    base = float(quasi_norm(norm, group, x))
    scaled = float(quasi_norm(norm, group, dilate(group, lam, x)))
    assert scaled == pytest.approx(lam * base, rel=1e-9, abs=1e-300)


@given(a=coordinate, b=coordinate, p=st.floats(min_value=1.0, max_value=6.0))
@settings(max_examples=500, deadline=None)
def test_first_elementary_margin_is_nonnegative(a, b, p):
    """Convexity of |t|^p gives a nonnegative margin."""
    scale = (abs(a) + abs(b)) ** p
    margin = float(elementary_ineq_check(a, b, p, "i"))
    assert margin >= -1e-12 * max(scale, 1.0)


_cached_cp = lru_cache(maxsize=None)(estimate_Cp)


@pytest.mark.parametrize("p", [2.0, 2.5, 3.0, 4.0, 5.0])
@given(a=coordinate, b=coordinate)
@settings(max_examples=300, deadline=None)
def test_second_elementary_margin_with_estimated_constant(p, a, b):
    """Variant ii holds with C slightly below estimate_Cp(p)."""
    C = _cached_cp(p) * (1.0 - 1e-6)
    scale = (abs(a) + abs(b)) ** p
    margin = float(elementary_ineq_check(a, b, p, "ii", C=C))
    assert margin >= -1e-12 * max(scale, 1.0)


@given(a=st.floats(min_value=0.0, max_value=1e3), gap=st.floats(min_value=0.0, max_value=2e3),
       p=st.floats(min_value=2.0, max_value=6.0))
@settings(max_examples=500, deadline=None)
def test_third_elementary_margin_is_nonnegative(a, gap, p):
    """(a - b)^p + p a^(p-1) b - a^p >= |b|^p whenever a >= 0 and a >= b."""
    b = a - gap
    scale = (abs(a) + abs(b)) ** p
    margin = float(elementary_ineq_check(a, b, p, "iii"))
    assert margin >= -1e-12 * max(scale, 1.0)


@given(Q=st.integers(min_value=5, max_value=400))
def test_classical_rellich_constant_is_exact(Q):
    """K(2, 2) = Q(Q - 4)/4 exactly."""
    assert K_constant(2, 2, Q) == Fraction(Q * (Q - 4), 4)


@given(k=st.integers(min_value=2, max_value=6),
       p=st.fractions(min_value=Fraction(11, 10), max_value=Fraction(6), max_denominator=50),
       Q=st.integers(min_value=1, max_value=120))
def test_rellich_constant_positive_below_critical_order(k, p, Q):
    """K(k, p) > 0 whenever k p < Q, and it stays a Fraction."""
    value = K_constant(k, p, Q)
    assert isinstance(value, Fraction)
    if k * p < Q:
        assert value > 0


@given(x=st.lists(point, min_size=1, max_size=8))
@settings(deadline=None)
def test_quasi_norm_vectorizes(x):
    """Arrays of points give one value each, matching pointwise evaluation."""
    group = parse_group("heisenberg")
    norm = parse_norm("koranyi", group)
    values = quasi_norm(norm, group, np.array(x))
    assert values.shape == (len(x),)
    assert np.allclose(values, [float(quasi_norm(norm, group, y)) for y in x])
