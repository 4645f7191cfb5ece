"""
Tests for the adaptive radial quadrature and the ambient oracle.
"""

import math

import numpy as np
import pytest
from scipy.special import gamma

from hardybench.core.quadrature import (
    Integrand1D,
    QuadratureSpec,
    Substitution,
    integrate_ambient,
    integrate_log_line,
    integrate_radial,
    log_difference_quotient,
)
from hardybench.utils.exceptions import QuadratureError, ValidationError


class TestIntegrateRadial:
    """Test integrate_radial on integrands with known values."""

    def test_polynomial(self):
        """Test a smooth polynomial."""
        value, err = integrate_radial(Integrand1D(lambda r: r ** 3, 0.0, 1.0))
        assert value == pytest.approx(0.25, rel=1e-13)
        assert err < 1e-10

    @pytest.mark.parametrize("Q", [1.0, 2.5, 4.0, 7.0])
    def test_gamma_moment(self, Q):
        """Test integral of e^-r r^(Q-1) over [0, inf) equals Gamma(Q)."""
        f = Integrand1D(lambda r: np.exp(-r) * r ** (Q - 1.0), 0.0, math.inf, power_at_a=Q - 1.0)
        value, _ = integrate_radial(f)
        assert value == pytest.approx(gamma(Q), rel=1e-10)

    def test_power_singularity_at_zero(self):
        """Test an integrable r^(-1/2) singularity."""
        f = Integrand1D(lambda r: r ** -0.5, 0.0, 1.0, power_at_a=-0.5)
        value, _ = integrate_radial(f)
        assert value == pytest.approx(2.0, rel=1e-10)

    def test_log_vanishing_at_right_endpoint(self):
        """Test r log(1/r)^2 over [0, 1] equals 1/4."""
        f = Integrand1D(lambda r: r * np.log(1.0 / r) ** 2, 0.0, 1.0, log_at_b=2.0)
        value, _ = integrate_radial(f)
        assert value == pytest.approx(0.25, rel=1e-10)

    def test_breakpoint(self):
        """Test a kink declared as a breakpoint."""
        f = Integrand1D(lambda r: np.abs(r - 1.0), 0.0, 2.0, breakpoints=(1.0,))
        value, _ = integrate_radial(f)
        assert value == pytest.approx(1.0, rel=1e-13)

    def test_gaussian_tail(self):
        """Test a Gaussian tail on [0, inf)."""
        value, _ = integrate_radial(Integrand1D(lambda r: np.exp(-r * r), 0.0, math.inf))
        assert value == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-11)

    def test_wide_scale_with_geometric_panels(self):
        """Test an integrand spread over many decades."""
        f = Integrand1D(lambda r: 1.0 / r, 1e-6, 1e6)
        value, _ = integrate_radial(f)
        assert value == pytest.approx(math.log(1e12), rel=1e-10)

    def test_without_substitutions(self):
        """Test plain panels still integrate a smooth finite integrand."""
        spec = QuadratureSpec(substitutions=frozenset())
        value, _ = integrate_radial(Integrand1D(lambda r: np.sin(r), 0.0, math.pi), spec)
        assert value == pytest.approx(2.0, rel=1e-12)

    def test_linearity(self):
        """Test the integral of f + 2 g is I(f) + 2 I(g)."""
        def f(r):
            return np.exp(-r) * r ** 1.5

        def g(r):
            return r * np.exp(-r * r)

        I_f, _ = integrate_radial(Integrand1D(f, 0.0, math.inf, power_at_a=1.5))
        I_g, _ = integrate_radial(Integrand1D(g, 0.0, math.inf, power_at_a=1.0))
        combined = Integrand1D(lambda r: f(r) + 2.0 * g(r), 0.0, math.inf, power_at_a=1.0)
        value, _ = integrate_radial(combined)
        assert value == pytest.approx(I_f + 2.0 * I_g, rel=1e-10)
        assert I_g == pytest.approx(0.5, rel=1e-10)

    def test_tighter_tolerance_never_worse(self):
        """Test halving rel_tol never moves the value away from Gamma(2.5)."""
        f = Integrand1D(lambda r: np.exp(-r) * r ** 1.5, 0.0, math.inf, power_at_a=1.5)
        exact = gamma(2.5)
        floor = 1e-14 * exact
        previous = math.inf
        for rel_tol in [1e-3, 5e-4, 2.5e-4, 1.25e-4, 6.25e-5, 3.125e-5]:
            value, _ = integrate_radial(f, QuadratureSpec(rel_tol=rel_tol))
            error = abs(value - exact)
            assert error <= max(previous, floor)
            previous = error

    def test_non_finite_integrand(self):
        """Test non-finite values raise QuadratureError."""
        f = Integrand1D(lambda r: np.full_like(r, np.nan), 0.0, 1.0)
        with pytest.raises(QuadratureError, match="Non-finite"):
            integrate_radial(f)

    def test_panel_budget(self):
        """Test an exhausted panel budget raises QuadratureError."""
        f = Integrand1D(lambda r: np.sin(200.0 * r), 0.0, 10.0)
        with pytest.raises(QuadratureError, match="No convergence"):
            integrate_radial(f, QuadratureSpec(max_panels=2))

    def test_invalid_interval(self):
        """Test interval validation."""
        with pytest.raises(ValidationError, match="0 <= a < b"):
            Integrand1D(lambda r: r, 1.0, 1.0)
        with pytest.raises(ValidationError, match="power_at_a"):
            Integrand1D(lambda r: r, 0.0, 1.0, power_at_a=-1.0)


class TestQuadratureSpec:
    """Test the quadrature configuration."""

    def test_round_trip(self):
        """Test to_dict/from_dict."""
        spec = QuadratureSpec(rel_tol=1e-8, substitutions=frozenset({Substitution.EXP_TAIL}))
        assert QuadratureSpec.from_dict(spec.to_dict()) == spec

    def test_refined(self):
        """Test refined tightens tolerances and grows the panel budget."""
        spec = QuadratureSpec().refined(2.0)
        assert spec.rel_tol == pytest.approx(5e-11)
        assert spec.max_panels == 8192

    def test_invalid_rule(self):
        """Test unsupported panel rules are rejected."""
        with pytest.raises(ValidationError, match="Unsupported panel rule"):
            QuadratureSpec(panel_rule=21)


class TestLogLine:
    """Test integrals in the logarithmic variable."""

    def test_gaussian_on_real_line(self):
        """Test integral of e^(-t^2) over R."""
        value, _ = integrate_log_line(lambda t: np.exp(-t * t))
        assert value == pytest.approx(math.sqrt(math.pi), rel=1e-11)

    def test_difference_quotient_limit(self):
        """Test the guarded quotient at t = 0 matches its limit."""
        quotient = log_difference_quotient(lambda r: r * r, lambda r: 2.0 * r, 1.0)
        values = quotient(np.array([0.0, 1e-9, 1.0]))
        assert values[0] == pytest.approx(-2.0)
        assert values[1] == pytest.approx(-2.0, rel=1e-6)
        assert values[2] == pytest.approx(math.exp(-2.0) - 1.0)


class TestAmbient:
    """Test the tensor-product ambient oracle."""

    def test_box_volume(self):
        """Test the volume of a box."""
        value, _ = integrate_ambient(lambda x: np.ones(len(x)), (1.0, 2.0))
        assert value == pytest.approx(8.0, rel=1e-12)

    def test_gaussian_3d(self):
        """Test a 3D Gaussian integral."""
        value, _ = integrate_ambient(lambda x: np.exp(-np.sum(x * x, axis=1)), (7.0, 7.0, 7.0))
        assert value == pytest.approx(math.pi ** 1.5, rel=1e-8)

    def test_dimension_limit(self):
        """Test dimensions above 3 are rejected."""
        with pytest.raises(ValidationError, match="dimensions 1 to 3"):
            integrate_ambient(lambda x: np.ones(len(x)), (1.0,) * 4)
