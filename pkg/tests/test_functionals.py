"""
Tests for the inequality functionals.
"""

import math

import numpy as np
import pytest

from hardybench.analysis.constants import hardy_constant
from hardybench.analysis.functionals import (
    ckn_check,
    ckn_report,
    critical_deficit_s_variable,
    critical_hardy_deficit,
    critical_hardy_distance,
    elementary_report,
    evaluate_inequality,
    hardy_deficit,
    hardy_distance,
    hardy_ratio,
    radial_improved_check,
    rellich_deficit,
    rellich_distance,
    rellich_expansion_residual,
    rellich_parts_residual,
    vanishing_flux_integral,
)
from hardybench.analysis.report import ExponentParams, Inequality
from hardybench.core.group import parse_group, parse_norm, sphere_measure
from hardybench.core.profiles import (
    AngularFactor,
    Constant,
    SeparableFunction,
    critical_substitution,
    hardy_transform,
    make_profile,
)
from hardybench.data.constants import ELEMENTARY_SAMPLES
from hardybench.utils.exceptions import ValidationError


def _setting(text, norm=None):
    group = parse_group(text)
    return group, parse_norm(norm, group)


class TestHardy:
    """Test the L^p Hardy deficit and distance."""

    def test_gaussian_deficit(self, euclidean3, gaussian, quad):
        """Test the Gaussian deficit on R^3 at p = 2 is pi^1.5."""
        group, norm = euclidean3
        report = hardy_deficit(gaussian, group, norm, 2.0, quad, r_grid=[1.0])
        assert report.lhs == pytest.approx(1.5 * math.pi ** 1.5, rel=1e-10)
        assert report.rhs_constant_part == pytest.approx(0.5 * math.pi ** 1.5, rel=1e-10)
        assert report.deficit == pytest.approx(math.pi ** 1.5, rel=1e-10)
        assert report.passed

    def test_norm_independence(self, gaussian, quad):
        """Test deficit / |sphere| is the same for every Q = 4 setting."""
        values = []
        for text, norm_text in (("euclidean:4", None), ("heisenberg", "koranyi"),
                                ("abelian:1,1,2", "power:4")):
            group, norm = _setting(text, norm_text)
            report = hardy_deficit(gaussian, group, norm, 2.0, quad, r_grid=[1.0])
            values.append(report.deficit / sphere_measure(group, norm))
        assert values[1] == pytest.approx(values[0], rel=1e-8)
        assert values[2] == pytest.approx(values[0], rel=1e-8)

    @pytest.mark.parametrize("p", [2.0, 2.5, 3.0])
    def test_deficit_nonnegative(self, heisenberg, bump, quad, p):
        """Test the deficit is nonnegative on the Heisenberg group."""
        group, norm = heisenberg
        report = hardy_deficit(bump, group, norm, p, quad, r_grid=[0.25, 0.5, 1.0])
        assert report.deficit > 0
        assert report.sup_distance[1] > 0
        assert report.empirical_C > 0

    def test_ratio_below_sharp_constant(self, euclidean3, bump, quad):
        """Test the Hardy ratio stays below ((Q - p)/p)^(-p)."""
        group, norm = euclidean3
        ratio = hardy_ratio(bump, group, norm, 2.0, quad)
        assert 0 < ratio * hardy_constant(3.0, 2.0) < 1.0

    def test_distance_homogeneity(self, euclidean3, bump, quad):
        """Test d_H(c u; R) = |c| d_H(u; R)."""
        group, norm = euclidean3
        base = hardy_distance(bump, 0.5, group, norm, 2.0, quad)
        scaled = hardy_distance(SeparableFunction(bump, Constant(-3.0)), 0.5, group, norm,
                                2.0, quad)
        assert base > 0
        assert scaled == pytest.approx(3.0 * base, rel=1e-10)

    def test_dilation_invariance(self, heisenberg, bump, quad):
        """Test u_lam = lam^((Q-p)/p) u(D_lam x) keeps the deficit and moves R to R / lam."""
        group, norm = heisenberg
        dilated = bump.scaled(2.0, exponent=1.0)
        base = hardy_deficit(bump, group, norm, 2.0, quad, r_grid=[0.5])
        moved = hardy_deficit(dilated, group, norm, 2.0, quad, r_grid=[0.25])
        assert moved.deficit == pytest.approx(base.deficit, rel=1e-8)
        assert moved.sup_distance[1] == pytest.approx(base.sup_distance[1], rel=1e-8)
        assert hardy_distance(dilated, 0.25, group, norm, 2.0, quad) == pytest.approx(
            hardy_distance(bump, 0.5, group, norm, 2.0, quad), rel=1e-8)

    def test_zero_function(self, euclidean3, bump, quad):
        """Test u = 0 has zero deficit and distance."""
        group, norm = euclidean3
        u = SeparableFunction(bump, Constant(0.0))
        report = hardy_deficit(u, group, norm, 2.0, quad, r_grid=[1.0])
        assert report.deficit == 0.0
        assert report.sup_distance[1] == 0.0
        assert report.empirical_C is None
        assert report.passed

    def test_p_range(self, euclidean3, bump):
        """Test p must satisfy 2 <= p < Q."""
        group, norm = euclidean3
        with pytest.raises(ValidationError, match="2 <= p < Q"):
            hardy_deficit(bump, group, norm, 3.0)
        with pytest.raises(ValidationError, match="2 <= p < Q"):
            hardy_deficit(bump, group, norm, 1.5)

    def test_floor(self, euclidean3, bump, quad):
        """Test a floor above the empirical constant fails the report."""
        group, norm = euclidean3
        report = hardy_deficit(bump, group, norm, 2.0, quad, r_grid=[0.5],
                               floor=1e6)
        assert report.stability_floor == 1e6
        assert not report.passed


class TestCKN:
    """Test the weighted Hardy inequality."""

    def test_shell_below_constant(self, euclidean3, quad):
        """Test lhs <= p/(p - 1) rhs for a shell profile."""
        group, norm = euclidean3
        phi = make_profile("shell", a=0.5, b=2.0, m=3)
        result = ckn_check(phi, 1.0, group, norm, 2.0, quad)
        assert result.lhs > 0 and result.rhs > 0
        assert result.ratio <= 2.0
        assert result.holds(2.0)

    def test_report(self, heisenberg, quad):
        """Test the report carries the ratio supremum."""
        group, norm = heisenberg
        phi = make_profile("shell", a=0.5, b=2.0, m=3)
        report = ckn_report(phi, group, norm, 3.0, 1.0, quad, r_grid=[0.5, 1.0, 2.0])
        assert report.inequality is Inequality.CKN
        assert report.passed
        assert report.margin > 0
        assert report.notes["sharp_constant"] == 1.5

    def test_support_away_from_origin(self, euclidean3, bump):
        """Test profiles touching the origin are rejected."""
        group, norm = euclidean3
        with pytest.raises(ValidationError, match="support away from 0"):
            ckn_check(bump, 1.0, group, norm, 2.0)

    def test_p_above_one(self, euclidean3):
        """Test p must exceed 1."""
        group, norm = euclidean3
        with pytest.raises(ValidationError, match="p > 1"):
            ckn_check(make_profile("shell", a=0.5, b=2.0), 1.0, group, norm, 1.0)


class TestCriticalHardy:
    """Test the critical Hardy inequality on a ball."""

    def test_deficit_nonnegative(self, quad):
        """Test the deficit on R^2 for a bump inside the unit ball."""
        group, norm = _setting("euclidean:2")
        phi = make_profile("bump", m=4, R=0.5)
        report = critical_hardy_deficit(phi, 1.0, group, norm, quad, t_grid=[0.5, 1.0, 2.0])
        assert report.deficit > 0
        assert report.distance_power == 2.0
        assert report.notes["asserted_form"] == "proof"
        assert report.passed

    def test_s_variable_identity(self, euclidean3, quad):
        """Test the deficit equals its form in the variable s = 1/log(R/r)."""
        group, norm = euclidean3
        phi = make_profile("bump", m=4, R=0.5)
        report = critical_hardy_deficit(phi, 1.0, group, norm, quad, t_grid=[1.0])
        v = critical_substitution(phi, 1.0, 3.0).v
        in_s = critical_deficit_s_variable(v, 3.0, moment=sphere_measure(group, norm), quad=quad)
        assert in_s == pytest.approx(report.deficit, rel=1e-7)

    def test_stated_form_infinite(self, euclidean3, quad):
        """Test the stated form is infinite when v(T) is not 0."""
        group, norm = euclidean3
        phi = make_profile("bump", m=4, R=0.5)
        value = critical_hardy_distance(phi, 1.0, 1.0, group, norm, quad, form="stated")
        assert value == math.inf

    def test_unknown_form(self, euclidean3, bump):
        """Test the distance form is validated."""
        group, norm = euclidean3
        with pytest.raises(ValidationError, match="Unknown distance form"):
            critical_hardy_distance(bump, 1.0, 1.0, group, norm, form="bogus")

    def test_support_outside_ball(self, euclidean3, bump):
        """Test u must vanish outside the ball."""
        group, norm = euclidean3
        with pytest.raises(ValidationError, match="ball of radius 0.5"):
            critical_hardy_deficit(bump, 0.5, group, norm)

    def test_support_reaching_ball_edge(self, euclidean3):
        """Test the critical functionals reject support ending at |x| = R."""
        group, norm = euclidean3
        phi = make_profile("bump", m=4, R=1.0)
        with pytest.raises(ValidationError, match="strictly inside"):
            critical_hardy_deficit(phi, 1.0, group, norm)
        with pytest.raises(ValidationError, match="strictly inside"):
            critical_hardy_distance(phi, 1.0, 1.0, group, norm)


class TestRadialImproved:
    """Test the improved radial inequality."""

    def test_holds(self, euclidean3, quad):
        """Test the margin is nonnegative for a decreasing bump."""
        group, norm = euclidean3
        phi = make_profile("bump", m=4, R=0.5)
        report = radial_improved_check(phi, 1.0, 0.0, 1.0, group, norm, quad)
        assert report.notes["alpha"] == pytest.approx(2.0 / 3.0 + 2.0)
        assert report.notes["improvement"] > 0
        assert report.margin >= 0
        assert report.passed

    def test_increasing_profile(self, euclidean3):
        """Test increasing profiles are rejected."""
        group, norm = euclidean3
        phi = make_profile("shell", a=0.2, b=0.8)
        with pytest.raises(ValidationError, match="non-increasing"):
            radial_improved_check(phi, 1.0, 0.0, 1.0, group, norm)

    def test_alpha_above_Q(self, euclidean3):
        """Test alpha > Q is rejected."""
        group, norm = euclidean3
        with pytest.raises(ValidationError, match="exceeds Q"):
            radial_improved_check(make_profile("bump", R=0.5), 2.0, 0.0, 1.0, group, norm)

    def test_L_range(self, euclidean3):
        """Test -1 < L < Q - 2."""
        group, norm = euclidean3
        with pytest.raises(ValidationError, match="-1 < L < Q - 2"):
            radial_improved_check(make_profile("bump", R=0.5), 1.0, 1.0, 1.0, group, norm)

    def test_non_radial(self, euclidean3):
        """Test non-constant angular factors are rejected."""
        group, norm = euclidean3
        u = SeparableFunction(make_profile("bump", R=0.5),
                              AngularFactor(constant=None, func=lambda y: 1.0 + y[:, 0] ** 2))
        with pytest.raises(ValidationError, match="radial functions"):
            radial_improved_check(u, 1.0, 0.0, 1.0, group, norm)

    def test_zero_function(self, euclidean3):
        """Test u = 0 passes trivially."""
        group, norm = euclidean3
        u = SeparableFunction(make_profile("bump", R=0.5), Constant(0.0))
        report = radial_improved_check(u, 1.0, 0.0, 1.0, group, norm)
        assert report.margin == 0.0
        assert report.passed


class TestRellich:
    """Test the Rellich-type inequality."""

    def test_deficit_nonnegative(self, bump, quad):
        """Test the k = 2, p = 2 deficit on R^5."""
        group, norm = _setting("euclidean:5")
        report = rellich_deficit(bump, 2, 2.0, group, norm, quad, r_grid=[0.25, 0.5])
        assert report.notes["K"] == pytest.approx(1.25)
        assert report.deficit > 0
        assert report.distance_power == 2.0
        assert report.passed

    def test_anisotropic(self, bump, quad):
        """Test the deficit on an anisotropic group with Q = 5."""
        group, norm = _setting("abelian:1,2,2", "power:4")
        report = rellich_deficit(bump, 2, 2.0, group, norm, quad, r_grid=[0.5])
        assert report.deficit > 0

    def test_kp_below_Q(self, euclidean3, bump):
        """Test k p < Q."""
        group, norm = euclidean3
        with pytest.raises(ValidationError, match="k p < Q"):
            rellich_deficit(bump, 2, 2.0, group, norm)

    @pytest.mark.parametrize("k,p,Q", [(2, 2.0, 5.0), (2, 3.0, 7.0), (3, 2.0, 7.0)])
    def test_expansion_identity(self, bump, k, p, Q):
        """Test the pointwise expansion of the operator through v."""
        r = np.linspace(0.05, 0.95, 19)
        assert rellich_expansion_residual(bump, k, p, Q, r) <= 1e-8

    def test_expansion_grid_inside_support(self, bump):
        """Test grid points must be inside the support."""
        with pytest.raises(ValidationError, match="strictly inside"):
            rellich_expansion_residual(bump, 2, 2.0, 5.0, [0.5, 1.0])

    def test_parts_identities(self, bump, quad):
        """Test both integration-by-parts identities."""
        v = hardy_transform(bump, 5.0, 2.0, k=2, validate=False)
        assert abs(vanishing_flux_integral(v, 2.0, quad)) <= 1e-9
        assert rellich_parts_residual(v, 2.0, quad) <= 1e-8
        assert rellich_parts_residual(v, 3.0, quad) <= 1e-8

    @pytest.mark.parametrize("R", [0.5, 2.0])
    def test_distance_below_p_two(self, bump, quad, R):
        """Test p < 2 stays finite where v and v' vanish together."""
        group, norm = _setting("euclidean:5")
        value = rellich_distance(bump, R, group, norm, 2, 1.5, quad)
        assert math.isfinite(value)
        assert value > 0


class TestResolution:
    """Test values agree with a run at doubled quadrature resolution."""

    def test_hardy_distance(self, bump, quad):
        """Test d_H for the bump on R^4 at p = 2 and R = 1/2."""
        group, norm = _setting("euclidean:4")
        coarse = hardy_distance(bump, 0.5, group, norm, 2.0, quad)
        fine = hardy_distance(bump, 0.5, group, norm, 2.0, quad.refined(2.0))
        assert coarse > 0
        assert fine == pytest.approx(coarse, rel=1e-8)

    @pytest.mark.parametrize("form", ["proof", "stated"])
    def test_critical_hardy_distance(self, euclidean3, quad, form):
        """Test d_cH for a bump inside the unit ball."""
        group, norm = euclidean3
        phi = make_profile("bump", m=4, R=0.5)
        coarse = critical_hardy_distance(phi, 0.5, 1.0, group, norm, quad, form=form)
        fine = critical_hardy_distance(phi, 0.5, 1.0, group, norm, quad.refined(2.0), form=form)
        if math.isinf(coarse):
            assert math.isinf(fine)
        else:
            assert fine == pytest.approx(coarse, rel=1e-8)

    def test_radial_improved(self, euclidean3, quad):
        """Test the improved inequality deficit and margin."""
        group, norm = euclidean3
        phi = make_profile("bump", m=4, R=0.5)
        coarse = radial_improved_check(phi, 1.0, 0.0, 1.0, group, norm, quad)
        fine = radial_improved_check(phi, 1.0, 0.0, 1.0, group, norm, quad.refined(2.0))
        assert fine.deficit == pytest.approx(coarse.deficit, rel=1e-8)
        assert fine.margin == pytest.approx(coarse.margin, abs=1e-8 * abs(coarse.deficit))


class TestElementaryReport:
    """Test the sampled elementary inequality reports."""

    @pytest.mark.parametrize("variant", ["i", "ii", "iii"])
    def test_no_violations(self, variant):
        """Test every variant holds on samples."""
        report = elementary_report(3.0, variant, samples=20_000, seed=1)
        assert report.notes["violations"] == 0
        assert report.passed

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [2.0, 2.5, 3.0, 4.0])
    @pytest.mark.parametrize("variant", ["i", "ii", "iii"])
    def test_million_samples(self, variant, p):
        """Test every variant holds on the full sample count."""
        report = elementary_report(p, variant, samples=ELEMENTARY_SAMPLES, seed=7)
        assert report.inputs["samples"] == 10 ** 6
        assert report.notes["violations"] == 0

    def test_constant_too_large(self):
        """Test variant ii fails with C above C(2) = 1."""
        report = elementary_report(2.0, "ii", samples=5_000, seed=0, C=1.5)
        assert report.notes["violations"] > 0
        assert not report.passed


class TestEvaluateInequality:
    """Test the dispatch helper."""

    def test_elementary(self):
        """Test the elementary inequalities need no function."""
        report = evaluate_inequality("elementary", None, None, None, ExponentParams(p=2.5),
                                     samples=1000)
        assert report.inequality is Inequality.ELEMENTARY
        assert report.inputs["p"] == 2.5

    def test_requires_function(self):
        """Test function-based inequalities need u, group and norm."""
        with pytest.raises(ValidationError, match="needs a function"):
            evaluate_inequality("lp-hardy", None, None, None, ExponentParams())

    def test_dispatch_ckn(self, euclidean3, quad):
        """Test dispatch passes p and R through."""
        group, norm = euclidean3
        phi = make_profile("shell", a=0.5, b=2.0, m=3)
        report = evaluate_inequality(Inequality.CKN, phi, group, norm,
                                     ExponentParams(p=2.0, R=1.0), quad, r_grid=[1.0])
        assert report.inputs["R"] == 1.0
        assert report.notes["ratio_at_R"] <= 2.0
