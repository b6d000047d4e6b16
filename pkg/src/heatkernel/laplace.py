"""Frequency-axis representation of the Dirichlet heat solutions.

The homogeneous solution is recovered from the kernel by a principal-value
integral along the imaginary frequency axis.  Because the integrand at -s is
the complex conjugate of the integrand at +s, the principal value collapses
to a half-line integral of a real expression,

    u1(x, t) = (1/pi) integral_0^inf integral_0^1
               ( g1(s,x,y) cos(s t) - g2(s,x,y) sin(s t) ) f(y) dy ds,

which this module evaluates with oscillation-aware Gauss panels.  The raw
frequency integrand decays only like 1/s, so by default the exactly
invertible leading term f(x)/(is) of the transform is subtracted and its
half-line inversion -- f(x)/2, by the Dirichlet integral
integral_0^inf sin(st)/s ds = pi/2 for t > 0 -- is reinstated analytically;
the remainder decays like 1/s^2 and is further accelerated by a first-order
endpoint correction at the truncation frequency.  Truncation error is
estimated from the last dyadic doublings of the cutoff, and integration stops
early once that estimate is far below the requested tolerance.

The forced solution is the Duhamel composition of the homogeneous propagator
with the forcing; the vanishing-elapsed-time end of the convolution is
delegated to the eigenmode series, which is the cheap regime there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad_vec

from . import kernel, series
from .errors import NumericalFailure, ToleranceNotReached

TWO_PI = 2.0 * math.pi

# the factorized transform evaluates sinh(m y) unscaled, which overflows once
# Re(m) = sqrt(s/2) exceeds ~709; beyond this frequency a windowed quadrature
# exploiting the e^{-sqrt(s/2)|x-y|} localization of the kernel takes over
_FACTORIZED_S_LIMIT = 6.0e5

__all__ = [
    "InversionConfig",
    "InversionResult",
    "DuhamelResult",
    "TransformSlice",
    "transform_at",
    "transform_slice",
    "u1_laplace",
    "u1_laplace_grid",
    "u2_laplace",
    "u2_laplace_grid",
    "limit_study",
]


@dataclass(frozen=True)
class InversionConfig:
    """Parameters of the principal-value inversion.

    ``s_max`` caps the frequency integration; ``panels_per_period`` sets the
    panel width relative to the local oscillation period 2*pi/t;
    ``tolerance`` is the per-point truncation-error budget certified by the
    dyadic tail estimate; ``tail_subtraction`` toggles removal of the slowly
    decaying f(x)/(is) part of the transform.  The remaining knobs are
    implementation detail with safe defaults: Gauss order per frequency
    panel, spatial-quadrature panel order and width cap, the elapsed-time
    threshold below which the Duhamel integrand switches to the eigenmode
    series, the size of the analytic sliver at s = 0, and the accuracy of the
    Duhamel time quadrature.
    """

    s_max: float = 1e4
    panels_per_period: int = 8
    tolerance: float = 1e-7
    tail_subtraction: bool = True
    panel_order: int = 4
    y_panel_order: int = 8
    y_max_width: float = 0.125
    crossover: float = 0.05
    origin_eps: float = 1e-8
    time_tolerance: float = 1e-6

    def __post_init__(self):
        if not (self.s_max > 0.0 and math.isfinite(self.s_max)):
            raise ValueError("s_max must be positive and finite")
        if self.panels_per_period < 4:
            raise ValueError("panels_per_period must be >= 4")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be > 0")
        if self.panel_order < 2 or self.y_panel_order < 2:
            raise ValueError("quadrature orders must be >= 2")
        if not (0.0 < self.y_max_width <= 1.0):
            raise ValueError("y_max_width must lie in (0, 1]")
        if self.crossover < 0.0 or self.origin_eps <= 0.0 or self.time_tolerance <= 0.0:
            raise ValueError("crossover, origin_eps and time_tolerance must be positive")


@dataclass(frozen=True)
class InversionResult:
    """Values, per-point truncation estimates and the frequency cutoff used."""

    values: np.ndarray
    estimates: np.ndarray
    s_cutoff: float


@dataclass(frozen=True)
class DuhamelResult:
    """Forced-solution values with error estimates and fallback metadata."""

    values: np.ndarray
    estimates: np.ndarray
    series_fallback: bool
    crossover: float


@dataclass(frozen=True)
class TransformSlice:
    """Time-Laplace transform of u1 at fixed x along imaginary frequencies."""

    x: float
    values: dict[float, complex]

    def conjugacy_defect(self) -> float:
        """max |L(s) - conj(L(-s))| over stored +/- frequency pairs."""
        worst = 0.0
        for s, v in self.values.items():
            if -s in self.values:
                worst = max(worst, abs(v - self.values[-s].conjugate()))
        return worst


def _eval_on(f, arr: np.ndarray) -> np.ndarray:
    vals = f(arr)
    out = np.asarray(vals, dtype=float)
    if out.shape != arr.shape:
        out = np.array([float(f(v)) for v in arr.ravel()]).reshape(arr.shape)
    return out


def transform_at(f, x: float, s: float, quad_order: int = 64) -> complex:
    """L(u1)(x, is) = integral_0^1 g(sqrt(is), x, y) f(y) dy, pointwise.

    Reference route: Gauss-Legendre split at the derivative kink y = x,
    evaluating the kernel through :func:`heatkernel.kernel.green_complex`.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    nodes, weights = leggauss(int(quad_order))
    total = 0.0 + 0.0j
    for lo, hi in ((0.0, x), (x, 1.0)):
        if hi - lo <= 0.0:
            continue
        half = 0.5 * (hi - lo)
        y = 0.5 * (hi + lo) + half * nodes
        fv = _eval_on(f, y)
        if not np.all(np.isfinite(fv)):
            raise NumericalFailure("initial data is not finite inside [0, 1]")
        for yi, wi, fi in zip(y, weights, fv):
            g = kernel.green_complex(s, x, yi)
            total += half * wi * fi * g.value
    return total


def transform_slice(f, x: float, s_values, quad_order: int = 64) -> TransformSlice:
    """Transform evaluated over a set of frequencies (and their negatives)."""
    values: dict[float, complex] = {}
    for s in s_values:
        values[float(s)] = transform_at(f, x, float(s), quad_order)
        values[-float(s)] = transform_at(f, x, -float(s), quad_order)
    return TransformSlice(x=float(x), values=values)


# ----------------------------------------------------------------------------
# vectorized transform over a frequency array and an x-grid
# ----------------------------------------------------------------------------


class _YGrid:
    """Composite Gauss-Legendre grid on [0, 1] whose panel boundaries contain
    every requested x, so the kernel's kink at y = x always falls on a panel
    edge and the left/right split is a prefix sum over panels."""

    def __init__(self, xs, cfg: InversionConfig):
        q_max = math.sqrt(0.5 * cfg.s_max)
        # panel order 8 resolves a phase of ~14 radians to ~1e-10; the kernel
        # oscillates in y with local frequency q = sqrt(s/2)
        max_w = min(cfg.y_max_width, 14.0 / max(q_max, 1.0))
        pts = {0.0, 1.0}
        pts.update(float(x) for x in xs)
        base = sorted(pts)
        bounds = []
        for lo, hi in zip(base[:-1], base[1:]):
            n = max(1, math.ceil((hi - lo) / max_w - 1e-12))
            bounds.extend(lo + (hi - lo) * k / n for k in range(n))
        bounds.append(1.0)
        self.bounds = np.asarray(bounds)
        gl_x, gl_w = leggauss(cfg.y_panel_order)
        mid = 0.5 * (self.bounds[1:] + self.bounds[:-1])
        half = 0.5 * (self.bounds[1:] - self.bounds[:-1])
        self.nodes = mid[:, None] + half[:, None] * gl_x[None, :]
        self.weights = half[:, None] * gl_w[None, :]
        self.shape = self.nodes.shape

    def boundary_index(self, x: float) -> int:
        k = int(np.searchsorted(self.bounds, x))
        if k >= len(self.bounds) or abs(self.bounds[k] - x) > 1e-12:
            raise ValueError(f"x={x!r} is not a panel boundary of this grid")
        return k


def _transform_factorized(fvals, grid: _YGrid, xs, S: np.ndarray) -> np.ndarray:
    """G(s, x) for every s in S and x in xs via the separable kernel form.

    For y <= x the kernel factors as [sinh(m(1-x))/(m sinh m)] * sinh(m y),
    so the y-integral splits into per-panel moments of sinh(m y) and
    sinh(m (1-y)) shared by every x; cumulative sums across panels give the
    exact split at each x.  Valid while sinh(m) stays finite (s below
    ~6e5); all x-dependent factors use only decaying exponentials.
    """
    m = (1.0 + 1.0j) * np.sqrt(0.5 * S)
    wf = (grid.weights * fvals).ravel()
    y = grid.nodes.ravel()
    shl = np.sinh(np.outer(m, y)) * wf
    shr = np.sinh(np.outer(m, 1.0 - y)) * wf
    B, n = grid.shape
    left = shl.reshape(len(S), B, n).sum(axis=2)
    right = shr.reshape(len(S), B, n).sum(axis=2)
    zeros = np.zeros((len(S), 1), dtype=complex)
    left_cum = np.concatenate([zeros, np.cumsum(left, axis=1)], axis=1)
    right_cum = np.concatenate([np.cumsum(right[:, ::-1], axis=1)[:, ::-1], zeros], axis=1)
    den = m * (-np.expm1(-2.0 * m))
    out = np.empty((len(S), len(xs)), dtype=complex)
    for i, x in enumerate(xs):
        k = grid.boundary_index(x)
        cl = np.exp(-m * x) * (-np.expm1(-2.0 * m * (1.0 - x))) / den
        cr = np.exp(-m * (1.0 - x)) * (-np.expm1(-2.0 * m * x)) / den
        out[:, i] = cl * left_cum[:, k] + cr * right_cum[:, k]
    return out


def _g_row(m: complex, x: float, y: np.ndarray) -> np.ndarray:
    """Kernel row g(sqrt(is), x, y_j) in the bounded-exponential form."""
    big = np.maximum(x, y)
    small = np.minimum(x, y)
    return (
        np.exp(-m * (big - small))
        * (-np.expm1(-2.0 * m * (1.0 - big)))
        * (-np.expm1(-2.0 * m * small))
        / (2.0 * m * (-np.expm1(-2.0 * m)))
    )


def _transform_windowed(f, xs, S: np.ndarray) -> np.ndarray:
    """G(s, x) at very high frequencies, where the kernel is concentrated in
    a band |x - y| <~ 40/sqrt(s/2) and the factorized route would overflow."""
    gl_x, gl_w = leggauss(16)
    out = np.zeros((len(S), len(xs)), dtype=complex)
    for j, s in enumerate(S):
        q = math.sqrt(0.5 * s)
        m = (1.0 + 1.0j) * q
        w = 40.0 / q
        for i, x in enumerate(xs):
            for lo, hi in ((max(0.0, x - w), x), (x, min(1.0, x + w))):
                if hi - lo <= 0.0:
                    continue
                edges = np.linspace(lo, hi, 4)
                for a, b in zip(edges[:-1], edges[1:]):
                    half = 0.5 * (b - a)
                    y = 0.5 * (a + b) + half * gl_x
                    out[j, i] += half * np.sum(gl_w * _eval_on(f, y) * _g_row(m, x, y))
    return out


def _transform_zero(fvals, grid: _YGrid, xs) -> np.ndarray:
    """G(0, x) through the piecewise-linear limit kernel."""
    wf = (grid.weights * fvals).ravel()
    y = grid.nodes.ravel()
    wy = wf * y
    w1y = wf * (1.0 - y)
    B, n = grid.shape
    left = np.concatenate([[0.0], np.cumsum(wy.reshape(B, n).sum(axis=1))])
    right = np.concatenate([np.cumsum(w1y.reshape(B, n)[::-1].sum(axis=1))[::-1], [0.0]])
    out = np.empty(len(xs))
    for i, x in enumerate(xs):
        k = grid.boundary_index(x)
        out[i] = (1.0 - x) * left[k] + x * right[k]
    return out


def _panel_nodes(lo: float, hi: float, t: float, cfg: InversionConfig):
    """Gauss nodes/weights on [lo, hi] with panels no wider than the local
    oscillation scale 2*pi/(t*panels_per_period), graded near the origin
    where the transform itself varies on the eigenvalue scale."""
    osc = TWO_PI / (t * cfg.panels_per_period)
    edges = [lo]
    s = lo
    while s < hi:
        s = min(hi, s + min(osc, max(1.0, 0.5 * s)))
        edges.append(s)
    edges = np.asarray(edges)
    gl_x, gl_w = leggauss(cfg.panel_order)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    return (mid[:, None] + half[:, None] * gl_x[None, :]).ravel(), (
        half[:, None] * gl_w[None, :]
    ).ravel()


class _Inverter:
    """Shared state for inverting one initial-data profile on one x-grid."""

    def __init__(self, f, xs, cfg: InversionConfig, grid: _YGrid | None = None):
        self.f = f
        self.xs = np.asarray(xs, dtype=float)
        self.cfg = cfg
        self.grid = grid if grid is not None else _YGrid(self.xs, cfg)
        self.fvals = _eval_on(f, self.grid.nodes)
        if not np.all(np.isfinite(self.fvals)):
            raise NumericalFailure("initial data is not finite inside [0, 1]")
        self.fx = _eval_on(f, self.xs)
        self.interior = (self.xs > 0.0) & (self.xs < 1.0)
        self.data_scale = max(1.0, float(np.max(np.abs(self.fvals), initial=0.0)))

    def transform(self, S: np.ndarray) -> np.ndarray:
        if S[-1] <= _FACTORIZED_S_LIMIT:
            return _transform_factorized(self.fvals, self.grid, self.xs, S)
        split = int(np.searchsorted(S, _FACTORIZED_S_LIMIT, side="right"))
        parts = []
        if split > 0:
            parts.append(_transform_factorized(self.fvals, self.grid, self.xs, S[:split]))
        if split < len(S):
            parts.append(_transform_windowed(self.f, self.xs, S[split:]))
        return np.concatenate(parts, axis=0)

    def _integrand(self, S: np.ndarray, t: float, subtract: bool) -> np.ndarray:
        G = self.transform(S)
        phi = (np.exp(1j * S * t)[:, None] * G).real
        if subtract:
            phi = phi - np.outer(np.sin(S * t) / S, self.fx)
        return phi

    def _correction(self, s_cut: float, t: float, subtract: bool) -> np.ndarray:
        """First-order endpoint correction for the truncated oscillatory tail:
        integral_S^inf R(s) e^{ist} ds = -R(S) e^{iSt}/(it) + O(R'(S)/t)."""
        G = self.transform(np.array([s_cut]))[0]
        R = G - self.fx / (1j * s_cut) if subtract else G
        return -(R * np.exp(1j * s_cut * t) / (1j * t)).real

    def invert(
        self,
        t: float,
        strict: bool = True,
        tol_scale: float = 1.0,
        fixed_cutoff: float | None = None,
    ) -> InversionResult:
        """Run the inversion at time t.

        ``tol_scale`` rescales the tolerance (used by the Duhamel stage,
        where accuracy requirements follow the data amplitude).  With
        ``fixed_cutoff`` the dyadic early stop is disabled and the
        integration always runs to that frequency, which keeps the result a
        smooth function of t inside outer adaptive quadratures.
        """
        cfg = self.cfg
        if not (t > 0.0 and math.isfinite(t)):
            raise ValueError("the principal-value inversion requires t > 0")
        subtract = cfg.tail_subtraction
        eps = cfg.origin_eps
        tol = cfg.tolerance * tol_scale

        # analytic sliver [0, eps]: trapezoid against the s = 0 limit
        G0 = _transform_zero(self.fvals, self.grid, self.xs)
        Geps = self.transform(np.array([eps]))[0]
        phi0 = G0 - self.fx * t if subtract else G0
        phieps = (np.exp(1j * eps * t) * Geps).real
        if subtract:
            phieps = phieps - (math.sin(eps * t) / eps) * self.fx
        acc = 0.5 * eps * (phi0 + phieps)

        # dyadic segments with running corrected partials; stop once the
        # extrapolated remainder is far below tolerance
        top = cfg.s_max if fixed_cutoff is None else min(fixed_cutoff, cfg.s_max)
        cuts = [eps]
        c = 128.0
        while c < top:
            cuts.append(c)
            c *= 2.0
        cuts.append(top)

        base = 0.5 * self.fx if subtract else np.zeros_like(self.fx)
        partials = []
        s_cutoff = top
        for k in range(1, len(cuts)):
            lo, hi = cuts[k - 1], cuts[k]
            S, W = _panel_nodes(lo, hi, t, cfg)
            for start in range(0, len(S), 8192):
                chunk = slice(start, start + 8192)
                acc += W[chunk] @ self._integrand(S[chunk], t, subtract)
            partial = (acc + self._correction(hi, t, subtract)) / math.pi + base
            partials.append(partial)
            if fixed_cutoff is None and len(partials) >= 3:
                est = self._estimate(partials)
                if np.max(est[self.interior], initial=0.0) < 0.25 * tol:
                    s_cutoff = hi
                    break

        values = partials[-1].copy()
        if len(partials) >= 3:
            estimates = self._estimate(partials)
        else:
            estimates = np.abs(partials[-1] - partials[0]) + 1e-16
        # the solution vanishes identically on the boundary: the transform is
        # exactly zero there, so no truncation or subtraction applies
        values[~self.interior] = 0.0
        estimates[~self.interior] = 0.0

        if not np.all(np.isfinite(values)):
            raise NumericalFailure("inversion produced non-finite values")
        worst = float(np.max(estimates, initial=0.0))
        if strict and worst > tol:
            raise ToleranceNotReached(
                f"truncation estimate {worst:.3e} at s_max={cfg.s_max:g} exceeds "
                f"tolerance {tol:.3e} (t={t!r}); raise s_max",
                worst,
                tol,
            )
        return InversionResult(values=values, estimates=estimates, s_cutoff=s_cutoff)

    @staticmethod
    def _estimate(partials: list[np.ndarray]) -> np.ndarray:
        """Geometric-extrapolation remainder from the last two doublings.

        The corrected partials oscillate around the limit, so successive
        differences can understate the residual when phases align; the
        factor 3 keeps the estimate on the safe side of catalog-measured
        actual errors.
        """
        d1 = np.abs(partials[-2] - partials[-3])
        d2 = np.abs(partials[-1] - partials[-2])
        with np.errstate(divide="ignore", invalid="ignore"):
            rho = np.where(d1 > 0.0, d2 / d1, 0.0)
        tail = np.where(rho < 0.5, d2 * rho / np.maximum(1.0 - rho, 0.5), d2)
        return 3.0 * tail + 1e-16


def u1_laplace_grid(
    f,
    xs,
    t: float,
    cfg: InversionConfig = InversionConfig(),
    strict: bool = True,
    _grid: _YGrid | None = None,
) -> InversionResult:
    """Homogeneous solution on an x-grid by principal-value inversion."""
    return _Inverter(f, xs, cfg, _grid).invert(t, strict=strict)


def u1_laplace(f, x: float, t: float, cfg: InversionConfig = InversionConfig()) -> float:
    """Homogeneous solution at one point by principal-value inversion (t > 0)."""
    return float(u1_laplace_grid(f, [float(x)], t, cfg).values[0])


def u2_laplace_grid(
    F,
    xs,
    t: float,
    cfg: InversionConfig = InversionConfig(),
    singular_at_t0: bool = False,
    series_cfg: series.SeriesConfig = series.SeriesConfig(),
) -> DuhamelResult:
    """Forced solution on an x-grid by Duhamel composition of the inversion.

    The convolution integral_0^t P_{t-s}[F(., s)](x) ds uses the
    principal-value propagator for elapsed times above ``cfg.crossover`` and
    the eigenmode series below it (and entirely, when t <= crossover).  With
    ``singular_at_t0`` the source-time integral is taken in sigma = sqrt(s).
    """
    xs = np.asarray(xs, dtype=float)
    if not (t > 0.0 and math.isfinite(t)):
        raise ValueError("u2_laplace requires t > 0")

    def series_prop(s: float) -> np.ndarray:
        coeffs = series.sine_coefficients(lambda y: F(y, s), series_cfg)
        return series._sum_all(coeffs, xs, t - s)

    if t <= cfg.crossover:
        if singular_at_t0:
            vals, err = quad_vec(
                lambda sig: 2.0 * sig * series_prop(sig * sig),
                0.0,
                math.sqrt(t),
                epsabs=0.1 * cfg.time_tolerance,
                epsrel=1e-8,
                norm="max",
            )
        else:
            vals, err = quad_vec(
                series_prop, 0.0, t, epsabs=0.1 * cfg.time_tolerance, epsrel=1e-8, norm="max"
            )
        return DuhamelResult(
            values=vals,
            estimates=np.full_like(vals, err),
            series_fallback=True,
            crossover=cfg.crossover,
        )

    # propagator accuracy only needs to track the time-quadrature budget,
    # and only relative to the forcing amplitude at each source time (the
    # propagator is linear in its data)
    inner_cfg = replace(cfg, tolerance=max(cfg.tolerance, cfg.time_tolerance))
    grid = _YGrid(xs, inner_cfg)
    worst_inner = np.zeros(len(xs))
    t_split = t - cfg.crossover

    # probe the stiffest corners of the convolution to pick one frequency
    # cutoff, then freeze it: per-eval adaptive cutoffs would make the time
    # integrand jitter at the tolerance scale and stall the outer quadrature
    s_cutoff = 128.0
    for s_probe in (1e-4 * t_split, 0.5 * t_split, t_split):
        inv = _Inverter(lambda y: F(y, s_probe), xs, inner_cfg, grid)
        res = inv.invert(t - s_probe, strict=False, tol_scale=inv.data_scale)
        s_cutoff = max(s_cutoff, res.s_cutoff)

    def laplace_prop(s: float) -> np.ndarray:
        inv = _Inverter(lambda y: F(y, s), xs, inner_cfg, grid)
        res = inv.invert(t - s, strict=False, fixed_cutoff=s_cutoff)
        np.maximum(worst_inner, res.estimates, out=worst_inner)
        return res.values

    if singular_at_t0:
        part1, err1 = quad_vec(
            lambda sig: 2.0 * sig * laplace_prop(sig * sig),
            0.0,
            math.sqrt(t_split),
            epsabs=cfg.time_tolerance,
            epsrel=1e-7,
            norm="max",
        )
    else:
        part1, err1 = quad_vec(
            laplace_prop, 0.0, t_split, epsabs=cfg.time_tolerance, epsrel=1e-7, norm="max"
        )
    part2, err2 = quad_vec(
        series_prop, t_split, t, epsabs=0.1 * cfg.time_tolerance, epsrel=1e-8, norm="max"
    )
    values = part1 + part2
    if not np.all(np.isfinite(values)):
        raise NumericalFailure("Duhamel composition produced non-finite values")
    estimates = err1 + err2 + worst_inner * t_split
    return DuhamelResult(
        values=values, estimates=estimates, series_fallback=False, crossover=cfg.crossover
    )


def u2_laplace(
    F,
    x: float,
    t: float,
    cfg: InversionConfig = InversionConfig(),
    singular_at_t0: bool = False,
) -> float:
    """Forced solution at one point by Duhamel composition (t > 0)."""
    return float(u2_laplace_grid(F, [float(x)], t, cfg, singular_at_t0).values[0])


def limit_study(x: float, s_values) -> list[tuple[float, float]]:
    """sqrt(|s|) * |g(sqrt(is), x, x)| along a frequency sweep.

    The scaled diagonal modulus tends to 1/2 as |s| grows, for any interior
    x; boundary x degenerates to zero and is rejected.
    """
    if not 0.0 < x < 1.0:
        raise ValueError("the diagonal limit requires x strictly inside (0, 1)")
    out = []
    for s in s_values:
        s = float(s)
        out.append((s, math.sqrt(abs(s)) * kernel.modulus_closed(s, x, x)))
    return out
