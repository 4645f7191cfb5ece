"""
Tests for the group model: groups, dilations, quasi-norms and sphere measures.
"""

import math

import numpy as np
import pytest

from hardybench.core.group import (
    GroupLaw,
    NormKind,
    QuasiNormSpec,
    default_norm,
    dilate,
    group_from_json,
    group_to_json,
    make_group,
    parse_group,
    parse_norm,
    quasi_norm,
    sphere_measure,
)
from hardybench.utils.exceptions import ValidationError


class TestMakeGroup:
    """Test group construction."""

    def test_homogeneous_dimension(self):
        """Test Q is the sum of the weights."""
        assert make_group(3, (1, 1, 2), "heisenberg").Q == 4.0
        assert make_group(4, (1, 1, 1, 1)).Q == 4.0
        assert make_group(2, (0.5, 1.5)).Q == 2.0

    def test_weight_count_mismatch(self):
        """Test weights must match n."""
        with pytest.raises(ValidationError, match="Expected 3 weights"):
            make_group(3, (1, 1))

    def test_nonpositive_weight(self):
        """Test weights must be positive."""
        with pytest.raises(ValidationError, match="weights\\[1\\]"):
            make_group(2, (1, 0))

    def test_heisenberg_requires_its_weights(self):
        """Test the Heisenberg law only accepts (1, 1, 2)."""
        with pytest.raises(ValidationError, match="Heisenberg"):
            make_group(3, (1, 1, 1), "heisenberg")

    def test_parse_group(self):
        """Test compact group descriptions."""
        assert parse_group("heisenberg").law is GroupLaw.HEISENBERG
        assert parse_group("euclidean:5").Q == 5.0
        assert parse_group("abelian:1,1,2").weights == (1.0, 1.0, 2.0)
        with pytest.raises(ValidationError, match="Unknown group"):
            parse_group("nilpotent:3")

    def test_json_round_trip(self):
        """Test group and norm serialization."""
        group = parse_group("abelian:1,1,2")
        norm = parse_norm("power:4", group)
        assert group_from_json(group_to_json(group, norm)) == (group, norm)


class TestQuasiNorm:
    """Test quasi-norm evaluation."""

    def test_euclidean(self):
        """Test the Euclidean norm."""
        g = make_group(2, (1, 1))
        assert float(quasi_norm(QuasiNormSpec(NormKind.EUCLIDEAN), g, [3.0, 4.0])) == 5.0

    def test_koranyi_on_axes(self):
        """Test the Koranyi norm on the horizontal and vertical axes."""
        g = parse_group("heisenberg")
        norm = QuasiNormSpec(NormKind.KORANYI)
        assert float(quasi_norm(norm, g, [2.0, 0.0, 0.0])) == pytest.approx(2.0)
        assert float(quasi_norm(norm, g, [0.0, 0.0, 4.0])) == pytest.approx(2.0)

    def test_vectorized(self):
        """Test evaluation on an array of points."""
        g = parse_group("euclidean:3")
        x = np.array([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 0.0]])
        assert quasi_norm(default_norm(g), g, x) == pytest.approx([1.0, 2.0, 0.0])

    @pytest.mark.parametrize("group_text,norm_text", [
        ("euclidean:3", None),
        ("heisenberg", "koranyi"),
        ("abelian:1,1,2", "power:4"),
        ("abelian:1,2,2", "power:4"),
    ])
    def test_homogeneity(self, group_text, norm_text):
        """Test |D_lam x| = lam |x|."""
        group = parse_group(group_text)
        norm = parse_norm(norm_text, group)
        rng = np.random.default_rng(1)
        x = rng.normal(size=(50, group.n))
        for lam in (0.1, 1.7, 25.0):
            scaled = quasi_norm(norm, group, dilate(group, lam, x))
            assert scaled == pytest.approx(lam * quasi_norm(norm, group, x), rel=1e-12)

    def test_incompatible_norm(self):
        """Test the Euclidean norm is rejected for anisotropic weights."""
        group = parse_group("abelian:1,1,2")
        with pytest.raises(ValidationError, match="Euclidean norm"):
            parse_norm("euclidean", group)
        with pytest.raises(ValidationError, match="Koranyi"):
            parse_norm("koranyi", group)

    def test_power_norm_needs_even_exponent(self):
        """Test p0 must be a positive even integer."""
        with pytest.raises(ValidationError, match="even"):
            QuasiNormSpec(NormKind.ANISOTROPIC_POWER, p0=3)

    def test_dimension_mismatch(self):
        """Test points must have n coordinates."""
        group = parse_group("euclidean:3")
        with pytest.raises(ValidationError, match="coordinates"):
            quasi_norm(default_norm(group), group, [1.0, 2.0])

    def test_default_norms(self):
        """Test the default norm of each group type."""
        assert default_norm(parse_group("heisenberg")).kind is NormKind.KORANYI
        assert default_norm(parse_group("euclidean:4")).kind is NormKind.EUCLIDEAN
        assert default_norm(parse_group("abelian:1,1,2")).p0 == 2


class TestSphereMeasure:
    """Test quasi-sphere measures."""

    @pytest.mark.parametrize("n,expected", [
        (1, 2.0),
        (2, 2.0 * math.pi),
        (3, 4.0 * math.pi),
        (4, 2.0 * math.pi ** 2),
        (5, 8.0 * math.pi ** 2 / 3.0),
    ])
    def test_euclidean(self, n, expected):
        """Test Euclidean sphere measures against closed forms."""
        group = parse_group(f"euclidean:{n}")
        assert sphere_measure(group, default_norm(group)) == pytest.approx(expected, rel=1e-8)

    def test_koranyi(self, heisenberg):
        """Test the Koranyi sphere measure is 2 pi^2."""
        group, norm = heisenberg
        assert sphere_measure(group, norm) == pytest.approx(2.0 * math.pi ** 2, abs=1e-5)

    def test_independent_of_oracle_power(self, anisotropic):
        """Test the oracle exponent does not change the measure."""
        group, norm = anisotropic
        a = sphere_measure(group, norm)
        b = sphere_measure(group, norm, oracle_power=8.0)
        assert a == pytest.approx(b, rel=1e-6)

    def test_non_euclidean_high_dimension(self):
        """Test non-Euclidean norms are limited to n <= 3."""
        group = parse_group("abelian:1,1,1,2")
        with pytest.raises(ValidationError, match="n <= 3"):
            sphere_measure(group, parse_norm("power:4", group))
