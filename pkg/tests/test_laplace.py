import math

import numpy as np
import pytest

from heatkernel import kernel, series
from heatkernel.errors import ToleranceNotReached
from heatkernel.laplace import (
    InversionConfig,
    _YGrid,
    _transform_factorized,
    limit_study,
    transform_at,
    transform_slice,
    u1_laplace,
    u1_laplace_grid,
    u2_laplace,
    u2_laplace_grid,
)
from heatkernel.series import SeriesConfig

PI2 = math.pi**2
CFG = InversionConfig()
SCFG = SeriesConfig()


def f_mode1(y):
    return np.sin(np.pi * y)


def f_comb(y):
    return np.sin(np.pi * y) + 0.3 * np.sin(3 * np.pi * y)


def singular_forcing(y, s):
    return (8 * PI2 * s + 1) / (2 * math.sqrt(s)) * np.sin(2 * np.pi * y)


class TestTransform:
    def test_real_kernel_eigenfunction_identity(self):
        # the real-m analogue: v = integral g(sqrt(s),x,y) sin(pi y) dy solves
        # the resolvent problem, v = sin(pi x)/(pi^2 + s)
        for s in (1.0, 25.0):
            v = kernel.bvp_solution(lambda y: math.sin(math.pi * y), math.sqrt(s), 0.4)
            assert v == pytest.approx(math.sin(math.pi * 0.4) / (PI2 + s), abs=1e-10)

    def test_imaginary_axis_analytic_value(self):
        for s in (0.5, 4.0, 40.0):
            for x in (0.3, 0.71):
                got = transform_at(f_mode1, x, s)
                want = math.sin(math.pi * x) / (PI2 + 1j * s)
                assert abs(got - want) < 1e-10

    def test_boundary_zero(self):
        assert transform_at(f_comb, 0.0, 3.0) == 0
        assert transform_at(f_comb, 1.0, 3.0) == 0

    def test_conjugate_pairing(self):
        sl = transform_slice(f_comb, 0.3, [0.7, 2.0, 11.0])
        assert sl.conjugacy_defect() < 1e-14

    def test_factorized_route_matches_reference(self):
        xs = [0.25, 0.5, 0.8]
        grid = _YGrid(xs, CFG)
        fv = f_comb(grid.nodes)
        S = np.array([0.3, 2.0, 50.0, 900.0])
        fast = _transform_factorized(fv, grid, xs, S)
        for i, s in enumerate(S):
            for j, x in enumerate(xs):
                ref = transform_at(f_comb, x, float(s), quad_order=96)
                assert abs(fast[i, j] - ref) < 1e-12

    def test_windowed_route_matches_reference(self):
        # above s ~ 6e5 the transform switches to the localized window path
        xs = [0.5]
        res_lo = u1_laplace_grid(f_mode1, xs, 0.5, CFG)
        big = InversionConfig(s_max=2e6, tolerance=1e-4)
        res_hi = u1_laplace_grid(f_mode1, xs, 0.5, big, strict=False)
        assert res_hi.values[0] == pytest.approx(res_lo.values[0], abs=1e-6)


class TestU1Laplace:
    def test_single_mode_value(self):
        v = u1_laplace(f_mode1, 0.5, 0.1, CFG)
        assert v == pytest.approx(math.exp(-PI2 * 0.1), abs=CFG.tolerance)

    def test_boundary_exact_zero(self):
        res = u1_laplace_grid(f_comb, [0.0, 0.5, 1.0], 0.2, CFG)
        assert res.values[0] == 0.0 and res.values[2] == 0.0
        assert res.estimates[0] == 0.0 and res.estimates[2] == 0.0

    def test_representation_equivalence_catalog(self):
        fs = {
            "mode1": f_mode1,
            "mode2": lambda y: np.sin(2 * np.pi * y),
            "mode3": lambda y: np.sin(3 * np.pi * y),
            "comb": f_comb,
        }
        xs = [0.1, 0.3, 0.5, 0.7, 0.9]
        worst = 0.0
        for f in fs.values():
            for t in (0.05, 0.2, 1.0):
                lap = u1_laplace_grid(f, xs, t, CFG)
                ser, _ = series.u1_series_grid(f, xs, t, SCFG)
                worst = max(worst, float(np.max(np.abs(lap.values - ser))))
        assert worst <= max(1e-6, 10 * CFG.tolerance)

    def test_estimates_cover_actual_error(self):
        xs = [0.25, 0.5, 0.75]
        for t in (0.05, 0.3):
            lap = u1_laplace_grid(f_comb, xs, t, CFG)
            ser, _ = series.u1_series_grid(f_comb, xs, t, SCFG)
            err = np.abs(lap.values - ser)
            assert np.all(err <= lap.estimates + 1e-9)

    def test_t_below_crossover_still_works(self):
        v = u1_laplace(f_comb, 0.3, 0.02, CFG)
        want = series.u1_series(f_comb, 0.3, 0.02, SCFG)
        assert v == pytest.approx(want, abs=1e-5)

    def test_requires_positive_t(self):
        with pytest.raises(ValueError):
            u1_laplace(f_mode1, 0.5, 0.0, CFG)
        with pytest.raises(ValueError):
            u1_laplace(f_mode1, 0.5, -1.0, CFG)

    def test_tolerance_unreachable_reported(self):
        tiny = InversionConfig(s_max=64.0, tolerance=1e-10)
        with pytest.raises(ToleranceNotReached):
            u1_laplace(f_comb, 0.5, 0.2, tiny)

    def test_zero_data(self):
        res = u1_laplace_grid(lambda y: 0.0 * y, [0.3, 0.6], 0.5, CFG)
        assert np.all(res.values == 0.0)


class TestTailSubtraction:
    def test_consistency_between_modes(self):
        loose = InversionConfig(tolerance=1e-4)
        loose_raw = InversionConfig(tolerance=1e-4, tail_subtraction=False)
        on = u1_laplace_grid(f_comb, [0.3, 0.7], 0.2, loose)
        off = u1_laplace_grid(f_comb, [0.3, 0.7], 0.2, loose_raw)
        gap = np.abs(on.values - off.values)
        assert np.all(gap <= on.estimates + off.estimates + 1e-7)

    def test_subtraction_needs_smaller_cutoff(self):
        loose = InversionConfig(tolerance=1e-4)
        loose_raw = InversionConfig(tolerance=1e-4, tail_subtraction=False)
        for f in (f_mode1, f_comb):
            on = u1_laplace_grid(f, [0.3, 0.7], 0.2, loose)
            off = u1_laplace_grid(f, [0.3, 0.7], 0.2, loose_raw)
            assert on.s_cutoff < off.s_cutoff

    def test_default_tolerance_fails_without_subtraction(self):
        raw = InversionConfig(tail_subtraction=False)
        with pytest.raises(ToleranceNotReached):
            u1_laplace(f_comb, 0.3, 0.2, raw)


class TestEvenIntegrand:
    def test_pointwise_evenness(self):
        # g1 cos(st) - g2 sin(st) is even in s, which folds the full-line
        # principal value onto the half line
        t = 0.37
        for s in (0.5, 3.0, 123.0):
            for x, y in ((0.3, 0.6), (0.5, 0.5)):
                a = kernel.green_complex(s, x, y)
                b = kernel.green_complex(-s, x, y)
                plus = a.re * math.cos(s * t) - a.im * math.sin(s * t)
                minus = b.re * math.cos(-s * t) - b.im * math.sin(-s * t)
                assert plus == pytest.approx(minus, abs=1e-16)

    def test_half_line_equals_full_line_on_coarse_grid(self):
        t, x = 0.25, 0.4
        sgrid = np.linspace(0.1, 60.0, 121)
        w = sgrid[1] - sgrid[0]
        G = np.array([transform_at(f_mode1, x, float(s), quad_order=32) for s in sgrid])
        half = (1.0 / math.pi) * np.sum(w * (np.exp(1j * sgrid * t) * G).real)
        Gneg = np.array([transform_at(f_mode1, x, float(-s), quad_order=32) for s in sgrid])
        full = (1.0 / (2 * math.pi)) * np.sum(
            w * (np.exp(1j * sgrid * t) * G + np.exp(-1j * sgrid * t) * Gneg)
        )
        assert abs(half - full.real) < 1e-10 and abs(full.imag) < 1e-14


class TestU2Laplace:
    def test_modal_forcing_analytic(self):
        t = 0.3
        want = (1 - math.exp(-4 * PI2 * t)) / (4 * PI2) * math.sin(2 * math.pi * 0.25)
        got = u2_laplace(lambda y, s: np.sin(2 * np.pi * y), 0.25, t, CFG)
        assert got == pytest.approx(want, abs=1e-5)

    def test_short_time_vanishes(self):
        r = u2_laplace_grid(lambda y, s: np.sin(np.pi * y), [0.5], 0.01, CFG)
        assert r.series_fallback
        assert abs(r.values[0]) < 0.01  # integral over a vanishing interval

    def test_singular_forcing_unit_time(self):
        r = u2_laplace_grid(singular_forcing, [0.25], 1.0, CFG, singular_at_t0=True)
        assert r.values[0] == pytest.approx(1.0, abs=1e-4)
        assert not r.series_fallback

    def test_crossover_continuity(self):
        t = 0.2
        vals = []
        for cross in (0.045, 0.05, 0.055):
            cfg = InversionConfig(crossover=cross)
            r = u2_laplace_grid(lambda y, s: np.sin(2 * np.pi * y), [0.25], t, cfg)
            vals.append(float(r.values[0]))
        assert max(vals) - min(vals) < 1e-5

    def test_requires_positive_t(self):
        with pytest.raises(ValueError):
            u2_laplace(lambda y, s: np.sin(np.pi * y), 0.5, 0.0, CFG)


class TestLimitStudy:
    def test_half_limit_at_1e6(self):
        (s, v), = limit_study(0.5, [1e6])
        assert v == pytest.approx(0.5, abs=2e-3)

    def test_zero_frequency_degenerates(self):
        (s, v), = limit_study(0.5, [0.0])
        assert v == 0.0

    def test_sweep_converges(self):
        sweep = [10.0**k for k in range(2, 11)]
        vals = [v for _, v in limit_study(0.1, sweep)]
        errs = [abs(v - 0.5) for v in vals]
        assert errs[-1] < 1e-6
        assert errs[-1] <= errs[0]

    def test_boundary_rejected(self):
        with pytest.raises(ValueError):
            limit_study(0.0, [1.0])
        with pytest.raises(ValueError):
            limit_study(1.0, [1.0])


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            InversionConfig(s_max=0.0)
        with pytest.raises(ValueError):
            InversionConfig(panels_per_period=3)
        with pytest.raises(ValueError):
            InversionConfig(tolerance=-1.0)
        with pytest.raises(ValueError):
            InversionConfig(y_max_width=0.0)

    def test_defaults(self):
        cfg = InversionConfig()
        assert cfg.s_max == 1e4
        assert cfg.panels_per_period == 8
        assert cfg.tolerance == 1e-7
        assert cfg.tail_subtraction
        assert cfg.crossover == 0.05
