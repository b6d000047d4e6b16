import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heatkernel.errors import ToleranceNotReached
from heatkernel.series import (
    SeriesConfig,
    l1_bound_check,
    sine_coefficients,
    u1_series,
    u1_series_grid,
    u2_series,
    u2_series_grid,
)

PI2 = math.pi**2
CFG = SeriesConfig()


def singular_forcing(y, s):
    return (8 * PI2 * s + 1) / (2 * math.sqrt(s)) * np.sin(2 * np.pi * y)


class TestSineCoefficients:
    def test_orthogonality_first_mode(self):
        b = sine_coefficients(lambda y: np.sin(np.pi * y), CFG)
        assert b[0] == pytest.approx(0.5, abs=1e-14)
        assert np.max(np.abs(b[1:])) < 1e-14

    def test_orthogonality_second_mode(self):
        b = sine_coefficients(lambda y: np.sin(2 * np.pi * y), CFG)
        assert b[1] == pytest.approx(0.5, abs=1e-14)
        assert abs(b[0]) < 1e-14 and np.max(np.abs(b[2:])) < 1e-14

    def test_parabola_analytic_coefficients(self):
        # integral_0^1 y(1-y) sin(n pi y) dy = 2(1-(-1)^n)/(n pi)^3, checked
        # by integration by parts and by brute-force quadrature
        b = sine_coefficients(lambda y: y * (1 - y), CFG)
        n = np.arange(1, len(b) + 1)
        exact = 2 * (1 - (-1.0) ** n) / (n * math.pi) ** 3
        assert np.max(np.abs(b - exact)) < 1e-14

    def test_rejects_non_finite_data(self):
        from heatkernel.errors import NumericalFailure

        with pytest.raises(NumericalFailure):
            sine_coefficients(lambda y: 1.0 / (y - y), CFG)

    def test_length_matches_config(self):
        cfg = SeriesConfig(max_terms=7)
        assert len(sine_coefficients(lambda y: y, cfg)) == 7


class TestU1Series:
    def test_single_eigenmode(self):
        v = u1_series(lambda y: np.sin(np.pi * y), 0.5, 0.1, CFG)
        assert v == pytest.approx(math.exp(-PI2 * 0.1), abs=1e-13)

    def test_boundary_zero(self):
        for f in (lambda y: np.sin(np.pi * y), lambda y: y * (1 - y)):
            assert u1_series(f, 0.0, 0.2, CFG) == 0.0
            assert u1_series(f, 1.0, 0.2, CFG) == 0.0

    def test_t_zero_returns_initial_data(self):
        assert u1_series(lambda y: y * (1 - y), 0.3, 0.0, CFG) == pytest.approx(0.21, abs=0)

    def test_parabola_against_bruteforce_sum(self):
        # frozen oracle: 500-term direct summation with the analytic
        # coefficients (mpmath, 30 digits) at f = x(1-x), t = 0.05, x = 0.5
        v = u1_series(lambda y: y * (1 - y), 0.5, 0.05, CFG)
        assert v == pytest.approx(0.15740342052911525694, abs=1e-13)

    def test_eigenmode_exactness_any_order(self):
        # two spare coefficients let the tail bound see the spectral decay
        for k in (1, 2, 3):
            for n_terms in (k + 2, 8, 64):
                cfg = SeriesConfig(max_terms=n_terms)
                v = u1_series(lambda y, k=k: np.sin(k * np.pi * y), 0.3, 0.08, cfg)
                want = math.exp(-k * k * PI2 * 0.08) * math.sin(k * math.pi * 0.3)
                assert v == pytest.approx(want, abs=1e-12)

    def test_tolerance_unreachable_is_reported(self):
        cfg = SeriesConfig(max_terms=4, tail_tolerance=1e-12)
        with pytest.raises(ToleranceNotReached) as info:
            u1_series(lambda y: y * (1 - y), 0.5, 1e-4, cfg)
        assert info.value.estimate > info.value.tolerance

    def test_initial_condition_recovered(self):
        cfg = SeriesConfig(max_terms=400, tail_tolerance=1e-6)
        for f in (lambda y: np.sin(np.pi * y) + 0.3 * np.sin(3 * np.pi * y),):
            for x in (0.25, 0.5, 0.8):
                assert u1_series(f, x, 1e-4, cfg) == pytest.approx(float(f(x)), abs=1e-2)

    def test_heat_equation_residual(self):
        f = lambda y: np.sin(np.pi * y) + 0.3 * np.sin(3 * np.pi * y)
        res = {}
        for h in (2e-3, 1e-3):
            worst = 0.0
            for x in (0.3, 0.6):
                for t in (0.05, 0.2):
                    ut = (u1_series(f, x, t + h, CFG) - u1_series(f, x, t - h, CFG)) / (2 * h)
                    uxx = (
                        u1_series(f, x + h, t, CFG)
                        - 2 * u1_series(f, x, t, CFG)
                        + u1_series(f, x - h, t, CFG)
                    ) / (h * h)
                    worst = max(worst, abs(ut - uxx))
            res[h] = worst
        assert res[1e-3] < 2e-3
        # O(h^2): halving h divides the residual by about four
        assert res[2e-3] / res[1e-3] == pytest.approx(4.0, rel=0.35)

    def test_monotone_truncation_bound(self):
        f = lambda y: y * (1 - y)
        bounds = []
        for n_terms in (16, 32, 64, 128):
            cfg = SeriesConfig(max_terms=n_terms, tail_tolerance=1e-9)
            _, bound = u1_series_grid(f, [0.5], 0.05, cfg)
            bounds.append(bound)
        # allow last-ulp jitter from the different quadrature orders
        assert all(b2 <= b1 * (1 + 1e-9) for b1, b2 in zip(bounds, bounds[1:]))

    def test_grid_matches_scalar(self):
        f = lambda y: np.sin(np.pi * y)
        vals, _ = u1_series_grid(f, [0.2, 0.5, 0.8], 0.3, CFG)
        for x, v in zip((0.2, 0.5, 0.8), vals):
            assert v == pytest.approx(u1_series(f, x, 0.3, CFG), abs=0)


class TestU2Series:
    def test_modal_constant_forcing(self):
        t = 0.3
        want = (1 - math.exp(-4 * PI2 * t)) / (4 * PI2) * math.sin(2 * math.pi * 0.25)
        got = u2_series(lambda y, s: np.sin(2 * np.pi * y), 0.25, t, CFG)
        assert got == pytest.approx(want, abs=1e-10)

    def test_t_zero_is_zero(self):
        assert u2_series(singular_forcing, 0.3, 0.0, CFG, singular_at_t0=True) == 0.0

    def test_singular_forcing_quarter(self):
        got = u2_series(singular_forcing, 0.25, 0.25, CFG, singular_at_t0=True)
        assert got == pytest.approx(0.5, abs=1e-8)

    def test_boundary_zero(self):
        assert u2_series(singular_forcing, 0.0, 0.5, CFG, singular_at_t0=True) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_grid_exact_solution(self):
        xs = np.linspace(0.1, 0.9, 9)
        for t in (0.25, 1.0):
            vals, err = u2_series_grid(singular_forcing, xs, t, CFG, singular_at_t0=True)
            want = math.sqrt(t) * np.sin(2 * np.pi * xs)
            assert np.max(np.abs(vals - want)) < 1e-8


class TestL1Bound:
    def test_single_mode_value(self):
        lhs, rhs = l1_bound_check(lambda y: np.sin(np.pi * y), CFG, x_samples=21)
        assert lhs == pytest.approx(1.0 / PI2, abs=1e-6)
        assert rhs == pytest.approx(1.0 / 3.0, abs=1e-9)
        assert lhs <= rhs

    def test_zero_data(self):
        lhs, rhs = l1_bound_check(lambda y: 0.0 * y, CFG, x_samples=5)
        assert lhs == 0.0 and rhs == 0.0

    def test_parabola_under_bound(self):
        lhs, rhs = l1_bound_check(lambda y: y * (1 - y), CFG, x_samples=21)
        assert rhs == pytest.approx(0.25 / 3.0, abs=1e-9)
        assert lhs <= rhs + 1e-4


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SeriesConfig(max_terms=0)
        with pytest.raises(ValueError):
            SeriesConfig(tail_tolerance=0.0)
        with pytest.raises(ValueError):
            SeriesConfig(coeff_quadrature_order=0)

    def test_default_quadrature_order_scales(self):
        assert SeriesConfig(max_terms=10).quadrature_order == 36
        assert SeriesConfig(max_terms=10, coeff_quadrature_order=99).quadrature_order == 99

    @given(st.integers(min_value=1, max_value=200))
    @settings(max_examples=30)
    def test_coefficients_finite(self, n_terms):
        cfg = SeriesConfig(max_terms=n_terms)
        b = sine_coefficients(lambda y: np.exp(y) * np.sin(np.pi * y), cfg)
        assert np.all(np.isfinite(b))
