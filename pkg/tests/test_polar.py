"""
Tests for integration in polar coordinates.
"""

import math

import numpy as np
import pytest

from hardybench.core.group import decay_box, parse_group, parse_norm, quasi_norm
from hardybench.core.polar import ambient_check, angular_moment, integrate_polar
from hardybench.core.profiles import AngularFactor, Constant, SeparableFunction, make_profile
from hardybench.core.quadrature import integrate_ambient
from hardybench.data.oracle_profiles import (
    ORACLE_SETTINGS,
    ORACLE_TOLERANCE,
    exp_quartic,
    oracle_gap,
    oracle_profiles,
    quartic_bump,
)
from hardybench.utils.exceptions import ValidationError


class TestIntegratePolar:
    """Test integrate_polar against closed forms and the ambient oracle."""

    def test_gaussian_plane(self):
        """Test integral of e^(-|x|^2) over R^2 equals pi."""
        group = parse_group("euclidean:2")
        phi = make_profile("gaussian", sigma=2 ** -0.5)
        assert integrate_polar(group, parse_norm(None, group), phi) == pytest.approx(math.pi)

    def test_gaussian_space(self, euclidean3, gaussian):
        """Test integral of e^(-|x|^2 / 2) over R^3."""
        group, norm = euclidean3
        value = integrate_polar(group, norm, gaussian)
        assert value == pytest.approx((2.0 * math.pi) ** 1.5, rel=1e-10)

    def test_koranyi(self, heisenberg, gaussian):
        """Test the Heisenberg integral is 2 pi^2 times the radial moment."""
        group, norm = heisenberg
        # integral_0^inf e^(-r^2/2) r^3 dr = 2
        assert integrate_polar(group, norm, gaussian) == pytest.approx(4.0 * math.pi ** 2, rel=1e-6)

    def test_expression(self, euclidean3, gaussian):
        """Test the Dirichlet energy of a Gaussian."""
        group, norm = euclidean3
        value = integrate_polar(group, norm, gaussian,
                                expression=lambda phi: (lambda r: phi.d1(r) ** 2))
        assert value == pytest.approx(1.5 * math.pi ** 1.5, rel=1e-10)

    def test_zero_angular_factor(self, euclidean3, gaussian):
        """Test a vanishing angular factor short-circuits to 0."""
        group, norm = euclidean3
        u = SeparableFunction(gaussian, Constant(0.0))
        assert integrate_polar(group, norm, u) == 0.0

    def test_matches_ambient_oracle(self):
        """Test polar and Cartesian integration agree."""
        group = parse_group("euclidean:2")
        norm = parse_norm(None, group)
        phi = make_profile("gaussian")
        polar = integrate_polar(group, norm, phi)
        ambient, _ = integrate_ambient(lambda x: phi(quasi_norm(norm, group, x)),
                                       decay_box(group, 9.0), strict=False)
        assert polar == pytest.approx(ambient, rel=1e-6)

    @pytest.mark.slow
    @pytest.mark.parametrize("setting", ORACLE_SETTINGS, ids=lambda s: s[1] or s[0])
    @pytest.mark.parametrize("entry", oracle_profiles(), ids=lambda e: e.name)
    def test_oracle_matrix(self, setting, entry):
        """Test polar and Cartesian integration agree for every oracle profile and setting."""
        assert oracle_gap(setting, entry) <= ORACLE_TOLERANCE

    def test_quartic_closed_form(self):
        """Test integral of exp(-|x|^4) over R^2 equals pi^1.5 / 2."""
        group = parse_group("euclidean:2")
        entry = exp_quartic([1.0], 1.0)
        value = integrate_polar(group, parse_norm(None, group), entry.profile)
        assert value == pytest.approx(math.pi ** 1.5 / 2.0, rel=1e-9)

    def test_ambient_check(self):
        """Test ambient_check returns the polar value and the oracle value."""
        group = parse_group("euclidean:2")
        norm = parse_norm(None, group)
        entry = quartic_bump(1.0, 8)
        polar, ambient = ambient_check(group, norm, entry.profile, entry.radius)
        assert polar == pytest.approx(integrate_polar(group, norm, entry.profile))
        assert ambient == pytest.approx(polar, rel=ORACLE_TOLERANCE)


class TestAngularMoment:
    """Test angular moments on Euclidean spheres."""

    def test_constant(self, euclidean3):
        """Test a constant factor gives c^power times the sphere measure."""
        group, norm = euclidean3
        assert angular_moment(group, norm, Constant(2.0), 2.0) == pytest.approx(16.0 * math.pi)

    def test_signed_constant(self, euclidean3):
        """Test absolute=False keeps the sign."""
        group, norm = euclidean3
        value = angular_moment(group, norm, Constant(-1.0), 3.0, absolute=False)
        assert value == pytest.approx(-4.0 * math.pi)

    def test_circle(self):
        """Test integral of cos^2 over the circle."""
        group = parse_group("euclidean:2")
        omega = AngularFactor(constant=None, func=lambda y: y[:, 0])
        assert angular_moment(group, parse_norm(None, group), omega, 2.0) == pytest.approx(math.pi)

    def test_circle_absolute(self):
        """Test integral of |cos| over the circle."""
        group = parse_group("euclidean:2")
        omega = AngularFactor(constant=None, func=lambda y: y[:, 0])
        value = angular_moment(group, parse_norm(None, group), omega, 1.0)
        assert value == pytest.approx(4.0, abs=1e-4)

    def test_sphere(self, euclidean3):
        """Test integral of z^2 over the unit sphere."""
        group, norm = euclidean3
        omega = AngularFactor(constant=None, func=lambda y: y[:, 2])
        assert angular_moment(group, norm, omega, 2.0) == pytest.approx(4.0 * math.pi / 3.0)

    def test_non_euclidean_norm(self, heisenberg):
        """Test non-constant factors need the Euclidean norm."""
        group, norm = heisenberg
        omega = AngularFactor(constant=None, func=lambda y: np.ones(len(y)))
        with pytest.raises(ValidationError, match="Euclidean norm"):
            angular_moment(group, norm, omega)

    def test_high_dimension(self):
        """Test non-constant factors are limited to n <= 3."""
        group = parse_group("euclidean:4")
        omega = AngularFactor(constant=None, func=lambda y: y[:, 0])
        with pytest.raises(ValidationError, match="n <= 3"):
            angular_moment(group, parse_norm(None, group), omega, 2.0)
