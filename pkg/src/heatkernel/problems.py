"""Problem catalog, admissibility checks, and exact-solution pairs.

Uniqueness of the bounded solution is guaranteed when the data vanish at the
boundary together with their second x-derivatives: f(0)=f(1)=0,
f''(0)=f''(1)=0, and likewise F(0,t)=F(1,t)=0 with vanishing d2F/dx2 at the
endpoints for all t.  The checker verifies these conditions numerically and
reports rather than rejects: the representations remain usable under weaker
assumptions (the catalog deliberately includes such cases), so admissibility
is advisory.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import expr

__all__ = [
    "HeatProblem",
    "ExactSolution",
    "ConditionResult",
    "AdmissibilityReport",
    "CatalogEntry",
    "check_admissible",
    "catalog",
    "catalog_names",
    "get_problem",
]

# one-sided second derivative at an endpoint, second-order accurate
_FD_H = 1e-4
_FD_TOL = 1e-6


@dataclass(frozen=True)
class HeatProblem:
    """Initial data f(x) and/or forcing F(x, t), as expression trees."""

    name: str
    f: expr.Expr | None = None
    F: expr.Expr | None = None
    singular_at_t0: bool = False

    def __post_init__(self):
        if self.f is None and self.F is None:
            raise ValueError("a heat problem needs initial data, a forcing, or both")
        if self.f is not None and not expr.free_variables(self.f) <= {"x"}:
            raise ValueError("initial data may depend on x only")

    def f_callable(self):
        return expr.to_callable(self.f, ("x",)) if self.f is not None else None

    def F_callable(self):
        """Returns F as (y_array, s) -> array, or None."""
        if self.F is None:
            return None
        fc = expr.to_callable(self.F, ("x", "t"))
        return lambda y, s: fc(y, s)


@dataclass(frozen=True)
class ExactSolution:
    """Closed-form solution u(x, t) paired with its problem."""

    u: expr.Expr
    problem: HeatProblem

    def u_callable(self):
        return expr.to_callable(self.u, ("x", "t"))


@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    worst_value: float
    worst_sample: float
    threshold: float = _FD_TOL


@dataclass(frozen=True)
class AdmissibilityReport:
    problem: str
    conditions: tuple[ConditionResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def lines(self) -> list[str]:
        out = []
        for c in self.conditions:
            verdict = "pass" if c.passed else "FAIL"
            out.append(
                f"{self.problem}: {c.name}: {verdict} "
                f"(worst {c.worst_value:.3e} at {c.worst_sample:g})"
            )
        return out


def _second_derivative_at_end(g, endpoint: float) -> float:
    """One-sided O(h^2) stencil for g'' at 0 or 1."""
    h = _FD_H if endpoint == 0.0 else -_FD_H
    g0 = g(endpoint)
    g1 = g(endpoint + h)
    g2 = g(endpoint + 2 * h)
    g3 = g(endpoint + 3 * h)
    return (2 * g0 - 5 * g1 + 4 * g2 - g3) / (_FD_H * _FD_H)


def check_admissible(p: HeatProblem, samples: int = 64) -> AdmissibilityReport:
    """Verify the uniqueness hypotheses numerically; advisory, never raises
    on a failed condition (only on evaluation errors of the expressions).

    The finite-difference tolerance is applied relative to max(1, sup|data|):
    the stencil divides by h^2 = 1e-8, so argument rounding of the data enters
    at ~ amplitude * eps / h^2 and an absolute threshold would misreport
    large-amplitude data whose conditions hold exactly.
    """
    conds: list[ConditionResult] = []
    dense = np.linspace(0.0, 1.0, 201)

    if p.f is not None:
        fc = p.f_callable()
        scale = max(1.0, float(np.max(np.abs(fc(dense)))))
        tol = _FD_TOL * scale
        for end in (0.0, 1.0):
            v = float(fc(end))
            conds.append(ConditionResult(f"f({end:g}) = 0", abs(v) <= tol, v, end, tol))
        for end in (0.0, 1.0):
            v = _second_derivative_at_end(lambda z: float(fc(z)), end)
            conds.append(ConditionResult(f"f''({end:g}) = 0", abs(v) <= tol, v, end, tol))

    if p.F is not None:
        Fc = expr.to_callable(p.F, ("x", "t"))
        t_lo = 1.0 / samples if p.singular_at_t0 else 0.0
        ts = np.linspace(t_lo, 1.0, samples)
        scale = 1.0
        for t in ts:
            scale = max(scale, float(np.max(np.abs(Fc(dense, t)))))
        tol = _FD_TOL * scale
        for end in (0.0, 1.0):
            worst, at = 0.0, float(ts[0])
            for t in ts:
                v = float(Fc(end, t))
                if abs(v) > abs(worst):
                    worst, at = v, float(t)
            conds.append(ConditionResult(f"F({end:g}, t) = 0", abs(worst) <= tol, worst, at, tol))
        for end in (0.0, 1.0):
            worst, at = 0.0, float(ts[0])
            for t in ts:
                v = _second_derivative_at_end(lambda z: float(Fc(z, t)), end)
                if abs(v) > abs(worst):
                    worst, at = v, float(t)
            conds.append(
                ConditionResult(f"d2F/dx2({end:g}, t) = 0", abs(worst) <= tol, worst, at, tol)
            )

    return AdmissibilityReport(problem=p.name, conditions=tuple(conds))


@dataclass(frozen=True)
class CatalogEntry:
    problem: HeatProblem
    exact: ExactSolution | None
    admissible: bool


def _entry(name, f=None, F=None, u=None, singular=False, admissible=True) -> CatalogEntry:
    prob = HeatProblem(
        name=name,
        f=expr.parse(f) if f else None,
        F=expr.parse(F) if F else None,
        singular_at_t0=singular,
    )
    exact = ExactSolution(u=expr.parse(u), problem=prob) if u else None
    return CatalogEntry(problem=prob, exact=exact, admissible=admissible)


def catalog() -> list[CatalogEntry]:
    """The built-in problems.

    Eigenmodes decay one mode at a time; the smooth combination exercises
    multi-mode data; the constant-in-time forcing has the single-mode ODE
    solution; the singular forcing is discontinuous and unbounded at t = 0
    yet has the simple exact solution sqrt(t) sin(2 pi x); the parabola
    violates the second-derivative hypotheses and is kept for robustness
    testing of the advisory checker.
    """
    entries = [
        _entry(
            "eigenmode-1",
            f="sin(pi*x)",
            u="exp(-pi^2*t)*sin(pi*x)",
        ),
        _entry(
            "eigenmode-2",
            f="sin(2*pi*x)",
            u="exp(-4*pi^2*t)*sin(2*pi*x)",
        ),
        _entry(
            "eigenmode-3",
            f="sin(3*pi*x)",
            u="exp(-9*pi^2*t)*sin(3*pi*x)",
        ),
        _entry(
            "smooth-combination",
            f="sin(pi*x) + 0.3*sin(3*pi*x)",
            u="exp(-pi^2*t)*sin(pi*x) + 0.3*exp(-9*pi^2*t)*sin(3*pi*x)",
        ),
        _entry(
            "modal-forcing",
            F="sin(2*pi*x)",
            u="(1 - exp(-4*pi^2*t))*sin(2*pi*x)/(4*pi^2)",
        ),
        _entry(
            "singular-forcing",
            F="(8*pi^2*t + 1)*sin(2*pi*x)/(2*sqrt(t))",
            u="sqrt(t)*sin(2*pi*x)",
            singular=True,
        ),
        _entry(
            "parabola",
            f="x*(1 - x)",
            admissible=False,
        ),
    ]
    return entries


def catalog_names() -> list[str]:
    return [e.problem.name for e in catalog()]


def get_problem(name: str) -> CatalogEntry:
    for e in catalog():
        if e.problem.name == name:
            return e
    raise KeyError(f"unknown problem {name!r}; available: {', '.join(catalog_names())}")
