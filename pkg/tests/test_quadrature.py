import math

import numpy as np
import pytest

from gausslip.errors import ConvergenceError, EvaluationError
from gausslip.quadrature import (
    QuadratureRule,
    gauss_hermite_rule,
    graded_breaks,
    gauss_legendre_panels,
    integrate_gaussian,
    integrate_halfline,
    tensor_nodes,
    uniform_breaks,
)

SQRT_PI = math.sqrt(math.pi)


class TestGaussHermiteRule:
    def test_one_point_rule_is_forced_by_symmetry(self):
        rule = gauss_hermite_rule(1)
        assert rule.nodes == pytest.approx([0.0])
        assert rule.weights == pytest.approx([SQRT_PI])

    def test_zero_nodes_rejected(self):
        with pytest.raises(ValueError):
            gauss_hermite_rule(0)

    def test_weight_sum_is_gamma_half(self):
        for m in (1, 5, 20, 64):
            rule = gauss_hermite_rule(m)
            assert float(np.sum(rule.weights)) == pytest.approx(math.gamma(0.5), rel=1e-12)

    def test_quadratic_moment_matches_gamma_oracle(self):
        rule = gauss_hermite_rule(20)
        got = float(rule.weights @ rule.nodes**2)
        assert got == pytest.approx(math.gamma(1.5), rel=1e-12)

    def test_polynomial_exactness_up_to_2m_minus_1(self):
        # moments against e^{-x^2}: odd vanish, even are Gamma(j + 1/2)
        m = 8
        rule = gauss_hermite_rule(m)
        for j in range(m):
            got = float(rule.weights @ rule.nodes ** (2 * j))
            assert got == pytest.approx(math.gamma(j + 0.5), rel=1e-12)

    def test_weights_positive_invariant(self):
        with pytest.raises(ValueError):
            QuadratureRule(nodes=[0.0, 1.0], weights=[1.0, -1.0])
        with pytest.raises(ValueError):
            QuadratureRule(nodes=[0.0, 1.0], weights=[1.0])

    def test_halfline_rule_carries_config(self):
        from gausslip.quadrature import halfline_rule
        rule = halfline_rule(rel_tol=1e-8, max_subdivisions=40)
        assert rule.kind == "adaptive_halfline"
        assert rule.nodes.size == 0 and rule.weights.size == 0
        assert rule.rel_tol == 1e-8 and rule.max_subdivisions == 40


class TestIntegrateGaussian:
    def test_probability_measure(self):
        for d in (1, 2, 3):
            got = integrate_gaussian(lambda p: np.ones(p.shape[0]), d,
                                     gauss_hermite_rule(8))
            assert got == pytest.approx(1.0, abs=1e-13)

    def test_normalized_hermite_squared(self):
        from gausslip.hermite import hermite_eval
        got = integrate_gaussian(lambda p: hermite_eval((2,), p) ** 2, 1,
                                 gauss_hermite_rule(64))
        assert got == pytest.approx(1.0, rel=1e-12)

    def test_cross_term_vanishes_by_parity(self):
        from gausslip.hermite import hermite_eval
        got = integrate_gaussian(
            lambda p: hermite_eval((1, 0), p) * hermite_eval((0, 1), p), 2,
            gauss_hermite_rule(24))
        assert got == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize("j", range(12))
    def test_even_moments(self, j):
        # ∫ x^{2j} dgamma = (2j)! / (4^j j!)
        want = math.factorial(2 * j) / (4**j * math.factorial(j))
        got = integrate_gaussian(lambda p: p[:, 0] ** (2 * j), 1,
                                 gauss_hermite_rule(max(16, j + 1)))
        assert got == pytest.approx(want, rel=1e-10)

    def test_doubling_nodes_never_hurts_on_polynomials(self):
        tests = [(lambda p: p[:, 0] ** 6, 15.0 / 8.0),
                 (lambda p: p[:, 0] ** 10, math.factorial(10) / (4**5 * math.factorial(5)))]
        eps = np.finfo(float).eps
        for m in (8, 16, 32):
            for f, want in tests:
                coarse = abs(integrate_gaussian(f, 1, gauss_hermite_rule(m)) - want)
                fine = abs(integrate_gaussian(f, 1, gauss_hermite_rule(2 * m)) - want)
                # both rules are exact here, so only roundoff separates them
                assert fine <= coarse + 16 * eps * abs(want)

    def test_non_finite_value_reported_with_node(self):
        def bad(p):
            out = np.ones(p.shape[0])
            out[p[:, 0] > 0] = np.nan
            return out

        with pytest.raises(EvaluationError) as err:
            integrate_gaussian(bad, 1, gauss_hermite_rule(8))
        assert err.value.node is not None

    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            integrate_gaussian(lambda p: np.ones(p.shape[0]), 4, gauss_hermite_rule(4))


class TestHalfline:
    def test_gamma_half(self):
        got = integrate_halfline(lambda v: np.exp(-v) * v ** -0.5, "none", 1e-10)
        assert got == pytest.approx(math.gamma(0.5), rel=1e-10)

    def test_gamma_three_halves(self):
        got = integrate_halfline(lambda v: np.exp(-v) * v ** 0.5, "none", 1e-10)
        assert got == pytest.approx(math.gamma(1.5), rel=1e-10)

    def test_stable_density_mass(self):
        t = 1.0

        def g(s):
            return (t / (2 * SQRT_PI)) * np.exp(-t * t / (4 * s)) * s ** -1.5

        got = integrate_halfline(g, "inverse_square", 1e-10)
        assert got == pytest.approx(1.0, rel=1e-9)

    def test_change_of_variable_invariance(self):
        # ∫ e^{-t^2/4s} s^{-3/2} ds computed directly and after v = t^2/4s
        t = 1.3

        def direct(s):
            return np.exp(-t * t / (4 * s)) * s ** -1.5

        def substituted(v):
            # v = t^2 / 4s pulls the integrand to the Gamma(1/2) form
            return (2.0 / t) * np.exp(-v) * v ** -0.5

        a = integrate_halfline(direct, "none", 1e-9)
        b = integrate_halfline(substituted, "none", 1e-9)
        assert a == pytest.approx(b, rel=1e-8)
        assert a == pytest.approx(2 * SQRT_PI / t, rel=1e-8)

    def test_log_unit_interval_transform(self):
        # ∫_0^1 (-log r)^{a-1} dr = Gamma(a)
        for a in (1.0, 2.0, 3.5):
            got = integrate_halfline(lambda r, a=a: (-np.log(r)) ** (a - 1.0),
                                     "log_unit_interval", 1e-10)
            assert got == pytest.approx(math.gamma(a), rel=1e-9)
        # an integrand singular at r = 1 is resolved only to the float64
        # endpoint floor (~1e-8)
        got = integrate_halfline(lambda r: (-np.log(r)) ** -0.5,
                                 "log_unit_interval", 1e-10)
        assert got == pytest.approx(math.gamma(0.5), rel=5e-8)

    def test_divergent_integrand_raises_with_estimate(self):
        with pytest.raises(ConvergenceError) as err:
            integrate_halfline(lambda s: 1.0 / (1.0 + s), "none", 1e-8)
        assert err.value.estimate is not None

    def test_non_finite_integrand_raises(self):
        with pytest.raises(EvaluationError):
            integrate_halfline(lambda s: np.where(s > 1.0, np.nan, 1.0) * np.exp(-s),
                               "none", 1e-8)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            integrate_halfline(lambda s: np.exp(-s), "sqrt", 1e-8)
        with pytest.raises(ValueError):
            integrate_halfline(lambda s: np.exp(-s), "none", -1e-8)

    def test_scalar_fallback_callable(self):
        got = integrate_halfline(lambda s: math.exp(-s), "none", 1e-9)
        assert got == pytest.approx(1.0, rel=1e-9)


class TestPanels:
    def test_uniform_breaks_cover_interval(self):
        b = uniform_breaks(-3.0, 3.0, 0.7)
        assert b[0] == -3.0 and b[-1] == 3.0
        assert np.all(np.diff(b) <= 0.7 + 1e-12)

    def test_graded_breaks_refine_near_center(self):
        b = graded_breaks(-8.0, 8.0, 1.0, 0.01)
        widths = np.diff(b)
        i = np.searchsorted(b, 1.0)
        assert widths[max(i - 1, 0)] <= 0.011
        assert np.max(widths) <= 1.0 + 1e-12

    def test_panel_rule_integrates_smooth_function(self):
        nodes, w = gauss_legendre_panels(uniform_breaks(-6.0, 6.0, 0.5))
        got = float(w @ np.exp(-nodes**2))
        assert got == pytest.approx(SQRT_PI, rel=1e-13)
