"""Green's-function kernels for the heat problem on the unit interval.

The building block is the kernel g(m, x, y) of the two-point boundary value
problem

    -v''(x) + m^2 v(x) = f(x),   v(0) = v(1) = 0,

so that v(x) = integral_0^1 g(m, x, y) f(y) dy.  For m > 0 it is a product of
hyperbolic sines split at y = x; at m = 0 it degenerates to the piecewise
linear hat (1-x)y / x(1-y).  Evaluating g at the complex argument
m = sqrt(i s) = (1+i) sqrt(|s|/2) turns it into the frequency-axis kernel of
the Dirichlet heat equation; its real part ``g1``, imaginary part ``g2`` and
modulus also admit closed real forms (eight-term trigonometric/hyperbolic
sums) that this module evaluates independently of the complex route.

All evaluations are overflow-safe: hyperbolic products are computed in a
rescaled exponential form with only decaying exponentials, so |s| up to 1e12
and real m up to ~1e300 stay finite.  The functions are pure and thread-safe.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

SQRT2 = math.sqrt(2.0)

# below this |m| the sinh ratio is evaluated by its power series (the
# exponential form would divide two quantities that both vanish like m^2)
_SMALL_M = 1e-2

__all__ = [
    "SpatialPair",
    "KernelValue",
    "green_real",
    "green_complex",
    "g1_closed",
    "g2_closed",
    "modulus_closed",
    "bvp_solution",
]


def _check_xy(x: float, y: float) -> tuple[float, float]:
    x = float(x)
    y = float(y)
    if not (math.isfinite(x) and 0.0 <= x <= 1.0):
        raise ValueError(f"x must lie in [0, 1], got {x!r}")
    if not (math.isfinite(y) and 0.0 <= y <= 1.0):
        raise ValueError(f"y must lie in [0, 1], got {y!r}")
    return x, y


def _check_s(s: float) -> float:
    s = float(s)
    if not math.isfinite(s):
        raise ValueError(f"frequency must be finite, got {s!r}")
    return s


@dataclass(frozen=True)
class SpatialPair:
    """Validated (x, y) pair of positions in [0, 1]."""

    x: float
    y: float

    def __post_init__(self):
        _check_xy(self.x, self.y)

    def swapped(self) -> "SpatialPair":
        return SpatialPair(self.y, self.x)


@dataclass(frozen=True)
class KernelValue:
    """Complex kernel value g(sqrt(is), x, y) split into parts.

    ``re`` and ``im`` are the real and imaginary parts, ``modulus`` the
    magnitude; modulus**2 == re**2 + im**2 up to a few ulps.
    """

    re: float
    im: float
    modulus: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


def _sinh_ratio_series(m2, one_minus_big: float, small: float):
    """g * (m sinh m) expansion: sinh(m a) sinh(m b)/(m sinh m) for |m| small.

    ``m2`` is m**2 (real or complex); accurate to O(m^6) relative, which is
    below double rounding for |m| <= 1e-2.
    """
    a2 = m2 * one_minus_big * one_minus_big
    b2 = m2 * small * small
    fa = 1.0 + a2 / 6.0 * (1.0 + a2 / 20.0)
    fb = 1.0 + b2 / 6.0 * (1.0 + b2 / 20.0)
    fm = 1.0 + m2 / 6.0 * (1.0 + m2 / 20.0)
    return one_minus_big * small * fa * fb / fm


def green_real(m: float, x: float, y: float) -> float:
    """Kernel g(m, x, y) of -v'' + m^2 v with Dirichlet conditions, m >= 0.

    Continuous in m at m = 0, where it equals (1-x)y for y <= x and x(1-y)
    otherwise.  Raises ValueError for negative or non-finite m or positions
    outside the unit square.
    """
    x, y = _check_xy(x, y)
    m = float(m)
    if not math.isfinite(m) or m < 0.0:
        raise ValueError(f"m must be finite and >= 0, got {m!r}")
    big, small = (x, y) if y <= x else (y, x)
    if m == 0.0:
        return (1.0 - big) * small
    if m <= _SMALL_M:
        return _sinh_ratio_series(m * m, 1.0 - big, small)
    # sinh(m(1-big)) sinh(m small) / (m sinh m) with decaying exponentials only
    return (
        math.exp(-m * (big - small))
        * (-math.expm1(-2.0 * m * (1.0 - big)))
        * (-math.expm1(-2.0 * m * small))
        / (2.0 * m * (-math.expm1(-2.0 * m)))
    )


def _cexpm1(z: complex) -> complex:
    """exp(z) - 1 without cancellation for small |z|."""
    re = math.expm1(z.real) * math.cos(z.imag) - 2.0 * math.sin(0.5 * z.imag) ** 2
    im = math.exp(z.real) * math.sin(z.imag)
    return complex(re, im)


def _g_complex_pos(s: float, big: float, small: float) -> complex:
    """g(sqrt(is), big, small) for s > 0 and small <= big."""
    if s <= 1e-4:
        return _sinh_ratio_series(1j * s, 1.0 - big, small)
    m = (1.0 + 1.0j) * math.sqrt(0.5 * s)
    return (
        cmath.exp(-m * (big - small))
        * (-_cexpm1(-2.0 * m * (1.0 - big)))
        * (-_cexpm1(-2.0 * m * small))
        / (2.0 * m * (-_cexpm1(-2.0 * m)))
    )


def green_complex(s: float, x: float, y: float) -> KernelValue:
    """Frequency-axis heat kernel g(sqrt(is), x, y) as a KernelValue.

    Uses the branch sqrt(is) = (1+i) sqrt(|s|/2) for s > 0 and the conjugate
    value for s < 0, which makes the real part even and the imaginary part
    odd in s.  At s = 0 returns the real limit kernel.  Safe for |s| up to
    at least 1e12.
    """
    s = _check_s(s)
    x, y = _check_xy(x, y)
    big, small = (x, y) if y <= x else (y, x)
    if s == 0.0:
        g0 = (1.0 - big) * small
        return KernelValue(g0, 0.0, abs(g0))
    g = _g_complex_pos(abs(s), big, small)
    if s < 0.0:
        g = g.conjugate()
    return KernelValue(g.real, g.imag, abs(g))


# the closed real/imaginary parts are sums of eight products; each product
# takes one factor per node a = sqrt(s/2), b = a*(x-1), c = a*y, the factor
# being either sinh*cos (slot "S") or cosh*sin (slot "C") at that node
_G1_TERMS = (
    ("CCC", +1.0),
    ("SCC", -1.0),
    ("CSC", +1.0),
    ("SSC", +1.0),
    ("CCS", +1.0),
    ("SCS", +1.0),
    ("CSS", -1.0),
    ("SSS", +1.0),
)
_G2_TERMS = (
    ("CCC", +1.0),
    ("SCC", +1.0),
    ("CSC", -1.0),
    ("SSC", +1.0),
    ("CCS", -1.0),
    ("SCS", +1.0),
    ("CSS", -1.0),
    ("SSS", -1.0),
)


def _scaled_factors(w: float) -> tuple[float, float]:
    """(sinh(w)cos(w), cosh(w)sin(w)), both divided by exp(|w|)."""
    aw = abs(w)
    e2 = math.exp(-2.0 * aw)
    sh = math.copysign(0.5 * (1.0 - e2), w)
    ch = 0.5 * (1.0 + e2)
    return sh * math.cos(w), ch * math.sin(w)


def _closed_sum(terms, fs) -> float:
    total = 0.0
    for pattern, sign in terms:
        p = sign
        for slot, pair in zip(pattern, fs):
            p *= pair[0] if slot == "S" else pair[1]
        total += p
    return total


def _closed_parts(s: float, x: float, y: float) -> tuple[float, float]:
    """(g1, g2) for s != 0 via the eight-term closed sums, overflow-safe."""
    s = _check_s(s)
    x, y = _check_xy(x, y)
    if s == 0.0:
        raise ValueError("closed forms carry a 1/sqrt(s) prefactor; use green_complex at s = 0")
    odd = s < 0.0
    s = abs(s)
    big, small = (x, y) if y <= x else (y, x)
    q = math.sqrt(s) / SQRT2
    a, b, c = q, q * (big - 1.0), q * small
    fs = tuple(_scaled_factors(w) for w in (a, b, c))
    # exp(-u)*(cos u - cosh u) for u = 2q, via cosh u - cos u =
    # 2 sinh^2(u/2) + 2 sin^2(u/2) (exact, no cancellation near u = 0)
    u = 2.0 * q
    em = math.exp(-u)
    den_scaled = -(0.5 * (1.0 - em) ** 2 + 2.0 * em * math.sin(0.5 * u) ** 2)
    # addends collectively carry exp(|a|+|b|+|c|); combined with the 1/exp(u)
    # of the denominator the net factor is exp(q*(small-big)) <= 1
    scale = math.exp(q * (small - big))
    pref = SQRT2 * scale / (math.sqrt(s) * den_scaled)
    g1 = pref * _closed_sum(_G1_TERMS, fs)
    g2 = pref * _closed_sum(_G2_TERMS, fs)
    return (g1, -g2) if odd else (g1, g2)


def g1_closed(s: float, x: float, y: float) -> float:
    """Real part of the frequency-axis kernel from its closed form (s != 0).

    Even in s.  Positions are normalized to y <= x first; the expression is
    symmetric under swapping x and y.
    """
    return _closed_parts(s, x, y)[0]


def g2_closed(s: float, x: float, y: float) -> float:
    """Imaginary part of the frequency-axis kernel from its closed form.

    Odd in s; rejects s = 0 (the limit value 0 is served by green_complex).
    """
    return _closed_parts(s, x, y)[1]


def _cosh_minus_cos(w: float) -> tuple[float, float]:
    """cosh(w) - cos(w) as (value, log-scale): result = value * exp(scale)."""
    w = abs(w)
    if w <= 1.0:
        return 2.0 * (math.sinh(0.5 * w) ** 2 + math.sin(0.5 * w) ** 2), 0.0
    em = math.exp(-w)
    return 0.5 * (1.0 - em) ** 2 + 2.0 * em * math.sin(0.5 * w) ** 2, w


def modulus_closed(s: float, x: float, y: float) -> float:
    """|g(sqrt(is), x, y)| from its closed square-root expression.

    Even in s; at s = 0 returns the piecewise-linear modulus y(1-x) (after
    normalizing to y <= x).  Overflow-safe for |s| up to at least 1e12.
    """
    s = _check_s(s)
    x, y = _check_xy(x, y)
    s = abs(s)
    big, small = (x, y) if y <= x else (y, x)
    if s == 0.0:
        return small * (1.0 - big)
    u = SQRT2 * math.sqrt(s)
    nb, eb = _cosh_minus_cos(u * (big - 1.0))
    nc, ec = _cosh_minus_cos(u * small)
    nd, ed = _cosh_minus_cos(u)
    return math.sqrt(nb * nc / (2.0 * s * nd)) * math.exp(0.5 * (eb + ec - ed))


def bvp_solution(f, m: float, x: float, quad_order: int = 48) -> float:
    """v(x) = integral_0^1 g(m, x, y) f(y) dy by Gauss-Legendre split at y = x.

    The kernel has a derivative kink at y = x, so [0, x] and [x, 1] are
    integrated separately with ``quad_order`` nodes each.
    """
    from numpy.polynomial.legendre import leggauss

    x, _ = _check_xy(x, 0.0)
    nodes, weights = leggauss(int(quad_order))
    total = 0.0
    for lo, hi in ((0.0, x), (x, 1.0)):
        if hi - lo <= 0.0:
            continue
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        for t, w in zip(nodes, weights):
            yi = mid + half * t
            total += half * w * green_real(m, x, yi) * f(yi)
    return total
