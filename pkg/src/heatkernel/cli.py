"""Command-line front end.

Subcommands: ``kernel`` tabulates the frequency-axis kernel and the
discrepancy between its complex and closed-form routes; ``solve`` evaluates a
problem by either representation on an (x, t) grid; ``compare`` runs both and
summarizes the difference; ``limit`` sweeps the scaled diagonal modulus;
``selftest`` runs the invariant suite at reduced resolution.

Output is CSV (RFC 4180, header row, shortest round-trip numbers) or JSON
(an object with a ``rows`` array and a ``metadata`` object).  Identical
invocations produce bit-identical output; wall-clock timings are only added
to JSON metadata on request (--timings).

Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 requested
tolerance unreachable, 5 comparison tolerance exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__, expr, kernel, laplace, problems, series
from .errors import NumericalFailure, ToleranceNotReached

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_TOLERANCE = 4
EXIT_COMPARE = 5


class UsageError(Exception):
    pass


@dataclass
class SolutionField:
    """Solution values on a rectangular (x, t) grid with error estimates."""

    xs: np.ndarray
    ts: np.ndarray
    values: np.ndarray  # shape (nt, nx)
    errors: np.ndarray
    method: str
    fallback: np.ndarray  # bool, per t row

    def rows(self) -> list[dict]:
        out = []
        for i, t in enumerate(self.ts):
            for j, x in enumerate(self.xs):
                out.append(
                    {
                        "x": float(x),
                        "t": float(t),
                        "u": float(self.values[i, j]),
                        "est_error": float(self.errors[i, j]),
                        "method": self.method,
                        "fallback": bool(self.fallback[i]),
                    }
                )
        return out


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------


def _format_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(rows: list[dict], columns: list[str], meta: dict, args) -> None:
    fmt = args.format
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(row[c]) for c in columns])
        text = buf.getvalue()
    else:
        text = json.dumps({"rows": rows, "metadata": meta}, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _meta(args, command: str, config: dict, timings: dict | None) -> dict:
    meta = {
        "command": command,
        "config": config,
        "versions": {
            "heatkernel": __version__,
            "numpy": np.__version__,
            "python": "%d.%d.%d" % sys.version_info[:3],
        },
    }
    try:
        import scipy

        meta["versions"]["scipy"] = scipy.__version__
    except ImportError:  # pragma: no cover
        pass
    if getattr(args, "timings", False) and timings is not None:
        meta["timings"] = timings
    return meta


# ---------------------------------------------------------------------------
# argument handling: hard defaults < config file < explicit flags
# ---------------------------------------------------------------------------

_DEFAULTS = {
    "kernel": {
        "s": 10.0,
        "nx": 21,
        "ny": 21,
        "x_min": 0.0,
        "x_max": 1.0,
        "y_min": 0.0,
        "y_max": 1.0,
        "format": "csv",
        "out": None,
    },
    "solve": {
        "method": "series",
        "nx": 9,
        "nt": 5,
        "x_min": 0.0,
        "x_max": 1.0,
        "t_min": 0.1,
        "t_max": 1.0,
        "terms": 64,
        "tol": None,
        "s_max": 1e4,
        "tail_subtraction": True,
        "format": "csv",
        "out": None,
        "problem": None,
        "f": None,
        "F": None,
    },
    "compare": {
        "nx": 9,
        "nt": 5,
        "x_min": 0.0,
        "x_max": 1.0,
        "t_min": 0.1,
        "t_max": 1.0,
        "terms": 64,
        "tol": 1e-5,
        "s_max": 1e4,
        "tail_subtraction": True,
        "format": "csv",
        "out": None,
        "problem": None,
        "f": None,
        "F": None,
    },
    "limit": {
        "x": 0.5,
        "s_min": 1e2,
        "s_max": 1e10,
        "ns": 25,
        "format": "csv",
        "out": None,
    },
    "selftest": {},
}


def _merge_config(args: argparse.Namespace, command: str) -> argparse.Namespace:
    merged = dict(_DEFAULTS[command])
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file {args.config!r}: {exc}")
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(file_cfg) - set(merged)
        if unknown:
            raise UsageError(f"unknown config keys for '{command}': {sorted(unknown)}")
        merged.update(file_cfg)
    for key in merged:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    for key, val in merged.items():
        setattr(args, key, val)
    return args


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the table to this path instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    p.add_argument("--config", help="JSON file with defaults; explicit flags win")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON metadata")


def _add_problem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", help="catalog problem name (see README)")
    p.add_argument("--f", help="initial data f(x) as an expression")
    p.add_argument("--F", dest="F", help="forcing F(x,t) as an expression")
    p.add_argument("--singular-at-t0", action="store_const", const=True, default=None,
                   help="treat an inline --F as singular at t=0 (substituted time quadrature)")
    p.add_argument("--nx", type=int)
    p.add_argument("--nt", type=int)
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p.add_argument("--t-min", dest="t_min", type=float)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--terms", type=int, help="series truncation order")
    p.add_argument("--tol", type=float)
    p.add_argument("--s-max", dest="s_max", type=float, help="frequency cutoff of the inversion")
    p.add_argument("--no-tail-subtraction", dest="tail_subtraction", action="store_const",
                   const=False, default=None)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="heatkernel",
        description="Dirichlet heat equation: frequency-axis kernel, inversion, series cross-check."
        " Note on expressions: '^' is exponentiation and unary minus binds looser, so -2^2 = -4.",
    )
    ap.add_argument("--version", action="version", version=f"heatkernel {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    pk = sub.add_parser("kernel", help="tabulate g1, g2, modulus and closed-form discrepancies")
    pk.add_argument("--s", type=float, help="frequency (any finite real, including 0)")
    pk.add_argument("--nx", type=int)
    pk.add_argument("--ny", type=int)
    pk.add_argument("--x-min", dest="x_min", type=float)
    pk.add_argument("--x-max", dest="x_max", type=float)
    pk.add_argument("--y-min", dest="y_min", type=float)
    pk.add_argument("--y-max", dest="y_max", type=float)
    _add_common(pk)

    ps = sub.add_parser("solve", help="solve a problem on an (x, t) grid")
    ps.add_argument("--method", choices=("series", "laplace"))
    _add_problem_flags(ps)
    _add_common(ps)

    pc = sub.add_parser("compare", help="run both representations and report differences")
    _add_problem_flags(pc)
    _add_common(pc)

    pl = sub.add_parser("limit", help="sweep sqrt(s)*|g|(s,x,x) toward its 1/2 limit")
    pl.add_argument("--x", type=float)
    pl.add_argument("--s-min", dest="s_min", type=float)
    pl.add_argument("--s-max", dest="s_max", type=float)
    pl.add_argument("--ns", type=int, help="number of log-spaced sweep points")
    _add_common(pl)

    pt = sub.add_parser("selftest", help="run the invariant suite at reduced resolution")
    pt.add_argument("--config", help=argparse.SUPPRESS)
    return ap


# ---------------------------------------------------------------------------
# grids and problem resolution
# ---------------------------------------------------------------------------


def _linspace(lo: float, hi: float, n: int, name: str) -> np.ndarray:
    if n < 2:
        raise UsageError(f"{name} grid needs at least 2 points")
    if hi < lo:
        raise UsageError(f"{name} range is empty: [{lo}, {hi}]")
    return np.linspace(lo, hi, n)


def _resolve_problem(args) -> tuple[str, object, object, bool]:
    """Returns (name, f callable or None, F callable or None, singular flag)."""
    if args.problem and (args.f or args.F):
        raise UsageError("--problem and --f/--F are mutually exclusive")
    if args.problem:
        try:
            entry = problems.get_problem(args.problem)
        except KeyError as exc:
            raise UsageError(str(exc))
        p = entry.problem
        return p.name, p.f_callable(), p.F_callable(), p.singular_at_t0
    if not (args.f or args.F):
        raise UsageError("one of --problem or --f/--F is required")
    f = F = None
    if args.f:
        try:
            node = expr.parse(args.f)
        except expr.ExprError as exc:
            raise UsageError(f"--f: {exc}")
        if not expr.free_variables(node) <= {"x"}:
            raise UsageError("--f may depend on x only")
        f = expr.to_callable(node, ("x",))
    if args.F:
        try:
            node = expr.parse(args.F)
        except expr.ExprError as exc:
            raise UsageError(f"--F: {exc}")
        if not expr.free_variables(node) <= {"x", "t"}:
            raise UsageError("--F may depend on x and t only")
        Fc = expr.to_callable(node, ("x", "t"))
        F = lambda y, s: Fc(y, s)
    prob = problems.HeatProblem(
        name="inline",
        f=expr.parse(args.f) if args.f else None,
        F=expr.parse(args.F) if args.F else None,
        singular_at_t0=bool(args.singular_at_t0),
    )
    report = problems.check_admissible(prob)
    if not report.passed:
        for line in report.lines():
            print(f"warning: {line}", file=sys.stderr)
    return "inline", f, F, bool(args.singular_at_t0)


def _configs(args, use_tol: bool = True) -> tuple[series.SeriesConfig, laplace.InversionConfig]:
    tol = args.tol if use_tol else None
    scfg = series.SeriesConfig(
        max_terms=args.terms,
        tail_tolerance=tol if tol is not None else 1e-10,
    )
    icfg = laplace.InversionConfig(
        s_max=args.s_max,
        tolerance=tol if tol is not None else 1e-7,
        tail_subtraction=args.tail_subtraction,
    )
    return scfg, icfg


def _solve_field(method, name, f, F, singular, xs, ts, scfg, icfg) -> SolutionField:
    nt, nx = len(ts), len(xs)
    values = np.zeros((nt, nx))
    errors = np.zeros((nt, nx))
    fallback = np.zeros(nt, dtype=bool)
    for i, t in enumerate(ts):
        t = float(t)
        if method == "series":
            if f is not None:
                v, bound = series.u1_series_grid(f, xs, t, scfg)
                values[i] += v
                errors[i] += bound
            if F is not None:
                v, err = series.u2_series_grid(F, xs, t, scfg, singular_at_t0=singular)
                values[i] += v
                errors[i] += err
        else:
            if t <= 0.0:
                raise UsageError(
                    "the principal-value inversion needs t > 0; use --method series at t = 0"
                )
            if f is not None:
                res = laplace.u1_laplace_grid(f, xs, t, icfg)
                values[i] += res.values
                errors[i] += res.estimates
            if F is not None:
                res2 = laplace.u2_laplace_grid(F, xs, t, icfg, singular_at_t0=singular, series_cfg=scfg)
                values[i] += res2.values
                errors[i] += res2.estimates
                fallback[i] = res2.series_fallback
    if not np.all(np.isfinite(values)):
        raise NumericalFailure("solution field contains non-finite values")
    return SolutionField(np.asarray(xs), np.asarray(ts), values, errors, method, fallback)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_kernel(args) -> int:
    t0 = time.perf_counter()
    s = float(args.s)
    if not math.isfinite(s):
        raise UsageError("--s must be finite")
    xs = _linspace(args.x_min, args.x_max, args.nx, "x")
    ys = _linspace(args.y_min, args.y_max, args.ny, "y")
    if args.x_min < 0 or args.x_max > 1 or args.y_min < 0 or args.y_max > 1:
        raise UsageError("x and y ranges must lie within [0, 1]")
    rows = []
    for x in xs:
        for y in ys:
            kv = kernel.green_complex(s, float(x), float(y))
            md = kernel.modulus_closed(s, float(x), float(y))
            if s != 0.0:
                g1 = kernel.g1_closed(s, float(x), float(y))
                g2 = kernel.g2_closed(s, float(x), float(y))
                e1, e2 = abs(g1 - kv.re), abs(g2 - kv.im)
            else:
                # the printed closed forms are singular at s = 0; the complex
                # route is the only evaluation there
                e1 = e2 = 0.0
            rows.append(
                {
                    "s": s,
                    "x": float(x),
                    "y": float(y),
                    "g1": kv.re,
                    "g2": kv.im,
                    "modulus": kv.modulus,
                    "g1_err": e1,
                    "g2_err": e2,
                    "modulus_err": abs(md - kv.modulus),
                }
            )
    cols = ["s", "x", "y", "g1", "g2", "modulus", "g1_err", "g2_err", "modulus_err"]
    config = {k: getattr(args, k) for k in _DEFAULTS["kernel"]}
    _emit(rows, cols, _meta(args, "kernel", config, {"total_s": time.perf_counter() - t0}), args)
    return EXIT_OK


def cmd_solve(args) -> int:
    t0 = time.perf_counter()
    name, f, F, singular = _resolve_problem(args)
    if not (0.0 <= args.x_min <= args.x_max <= 1.0):
        raise UsageError("x range must lie within [0, 1]")
    if args.t_min < 0.0:
        raise UsageError("t range must lie within [0, inf)")
    xs = _linspace(args.x_min, args.x_max, args.nx, "x")
    ts = _linspace(args.t_min, args.t_max, args.nt, "t")
    scfg, icfg = _configs(args)
    field = _solve_field(args.method, name, f, F, singular, xs, ts, scfg, icfg)
    cols = ["x", "t", "u", "est_error", "method", "fallback"]
    config = {k: getattr(args, k) for k in _DEFAULTS["solve"]}
    config["problem"] = name
    _emit(field.rows(), cols, _meta(args, "solve", config, {"total_s": time.perf_counter() - t0}), args)
    return EXIT_OK


def cmd_compare(args) -> int:
    t0 = time.perf_counter()
    name, f, F, singular = _resolve_problem(args)
    if not (0.0 <= args.x_min <= args.x_max <= 1.0):
        raise UsageError("x range must lie within [0, 1]")
    if args.t_min <= 0.0:
        raise UsageError("compare requires t > 0 (the inversion side is undefined at t = 0)")
    xs = _linspace(args.x_min, args.x_max, args.nx, "x")
    ts = _linspace(args.t_min, args.t_max, args.nt, "t")
    # --tol is the comparison threshold here; the solvers keep their defaults
    scfg, icfg = _configs(args, use_tol=False)
    ser = _solve_field("series", name, f, F, singular, xs, ts, scfg, icfg)

    lap_values = np.zeros_like(ser.values)
    lap_errors = np.zeros_like(ser.errors)
    fallback = np.zeros(len(ts), dtype=bool)
    for i, t in enumerate(ts):
        t = float(t)
        if t <= icfg.crossover:
            # below the crossover the inversion is not the efficient regime;
            # the comparison falls back to the series representation
            lap_values[i] = ser.values[i]
            lap_errors[i] = ser.errors[i]
            fallback[i] = True
            continue
        if f is not None:
            res = laplace.u1_laplace_grid(f, xs, t, icfg)
            lap_values[i] += res.values
            lap_errors[i] += res.estimates
        if F is not None:
            res2 = laplace.u2_laplace_grid(F, xs, t, icfg, singular_at_t0=singular, series_cfg=scfg)
            lap_values[i] += res2.values
            lap_errors[i] += res2.estimates
            fallback[i] = fallback[i] or res2.series_fallback

    diff = np.abs(ser.values - lap_values)
    rows = []
    for i, t in enumerate(ts):
        for j, x in enumerate(xs):
            rows.append(
                {
                    "x": float(x),
                    "t": float(t),
                    "u_series": float(ser.values[i, j]),
                    "u_laplace": float(lap_values[i, j]),
                    "abs_diff": float(diff[i, j]),
                    "fallback": bool(fallback[i]),
                }
            )
    max_diff = float(np.max(diff))
    mean_diff = float(np.mean(diff))
    summary = f"compare: max|diff| = {max_diff:.6e}, mean|diff| = {mean_diff:.6e}, tol = {args.tol:.6e}"
    cols = ["x", "t", "u_series", "u_laplace", "abs_diff", "fallback"]
    config = {k: getattr(args, k) for k in _DEFAULTS["compare"]}
    config["problem"] = name
    meta = _meta(args, "compare", config, {"total_s": time.perf_counter() - t0})
    meta["summary"] = {"max_diff": max_diff, "mean_diff": mean_diff, "tol": args.tol}
    _emit(rows, cols, meta, args)
    print(summary, file=sys.stderr)
    return EXIT_COMPARE if max_diff > args.tol else EXIT_OK


def cmd_limit(args) -> int:
    t0 = time.perf_counter()
    if not (0.0 < args.x < 1.0):
        raise UsageError("--x must lie strictly inside (0, 1); the limit degenerates at the boundary")
    if args.ns < 2 or args.s_min <= 0 or args.s_max <= args.s_min:
        raise UsageError("need --ns >= 2 and 0 < --s-min < --s-max")
    sweep = np.logspace(math.log10(args.s_min), math.log10(args.s_max), args.ns)
    rows = [
        {"s": float(s), "sqrt_s_modulus": v}
        for s, v in laplace.limit_study(args.x, [float(s) for s in sweep])
    ]
    cols = ["s", "sqrt_s_modulus"]
    config = {k: getattr(args, k) for k in _DEFAULTS["limit"]}
    _emit(rows, cols, _meta(args, "limit", config, {"total_s": time.perf_counter() - t0}), args)
    return EXIT_OK


def cmd_selftest(args) -> int:
    lines, ok = run_selftest()
    for line in lines:
        print(line)
    print("selftest:", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_NUMERICAL


def run_selftest() -> tuple[list[str], bool]:
    """Invariant suite at reduced resolution; returns (report lines, all pass)."""
    checks: list[tuple[str, float, float]] = []  # (name, worst, threshold)
    rng = np.random.default_rng(20240817)

    # kernel symmetry / parity / boundary
    worst_sym = worst_par = worst_bnd = 0.0
    for _ in range(300):
        s = float(np.sign(rng.standard_normal()) * 10 ** rng.uniform(-4, 6))
        x, y = (float(v) for v in rng.uniform(0, 1, 2))
        a = kernel.green_complex(s, x, y)
        b = kernel.green_complex(s, y, x)
        scale = max(a.modulus, 1e-30)
        worst_sym = max(worst_sym, abs(a.value - b.value) / scale)
        c = kernel.green_complex(-s, x, y)
        worst_par = max(worst_par, abs(a.re - c.re) / scale, abs(a.im + c.im) / scale)
        edge = kernel.green_complex(s, float(rng.integers(0, 2)), y)
        worst_bnd = max(worst_bnd, abs(edge.value))
    checks.append(("kernel-symmetry", worst_sym, 1e-12))
    checks.append(("kernel-frequency-parity", worst_par, 1e-12))
    checks.append(("kernel-boundary-zero", worst_bnd, 0.0))

    # closed forms against the complex route
    worst = 0.0
    for s in np.logspace(-2, 6, 9):
        for x in np.linspace(0, 1, 7):
            for y in np.linspace(0, 1, 7):
                kv = kernel.green_complex(float(s), float(x), float(y))
                tol = max(1e-10, 1e-8 * kv.modulus)
                d = max(
                    abs(kernel.g1_closed(float(s), float(x), float(y)) - kv.re),
                    abs(kernel.g2_closed(float(s), float(x), float(y)) - kv.im),
                    abs(kernel.modulus_closed(float(s), float(x), float(y)) - kv.modulus),
                )
                worst = max(worst, d / tol)
    checks.append(("closed-form-equivalence (per tolerance)", worst, 1.0))

    # diagonal maximum of the modulus
    ygrid = np.linspace(0, 1, 201)
    worst = 0.0
    for s in (1.0, 100.0, 1e4):
        for x in (0.3, 0.7):
            vals = [kernel.modulus_closed(s, x, float(y)) for y in ygrid]
            worst = max(worst, abs(ygrid[int(np.argmax(vals))] - x))
    checks.append(("modulus-diagonal-maximum", worst, 1.0 / 200 + 1e-12))

    # scaled diagonal limit
    worst = max(
        abs(math.sqrt(1e6) * kernel.modulus_closed(1e6, x, x) - 0.5) for x in (0.25, 0.5, 0.75)
    )
    checks.append(("sqrt-s-diagonal-limit", worst, 2e-3))

    # boundary-value-problem identity
    worst = 0.0
    for m in (0.0, 1.0, 10.0):
        for x in (0.3, 0.62):
            v = kernel.bvp_solution(lambda y: math.sin(math.pi * y), m, x)
            worst = max(worst, abs(v - math.sin(math.pi * x) / (math.pi**2 + m * m)))
    checks.append(("bvp-eigenfunction-identity", worst, 1e-8))

    # series eigenmode exactness
    scfg = series.SeriesConfig()
    worst = 0.0
    for k in (1, 2, 3):
        for x in (0.25, 0.7):
            v = series.u1_series(lambda y, k=k: np.sin(k * np.pi * y), x, 0.1, scfg)
            worst = max(worst, abs(v - math.exp(-k * k * math.pi**2 * 0.1) * math.sin(k * math.pi * x)))
    checks.append(("series-eigenmode-exactness", worst, 1e-12))

    # representation equivalence on the smooth combination
    f = lambda y: np.sin(np.pi * y) + 0.3 * np.sin(3 * np.pi * y)
    worst = 0.0
    for t in (0.1, 0.5):
        res = laplace.u1_laplace_grid(f, [0.25, 0.5, 0.75], t)
        ser, _ = series.u1_series_grid(f, [0.25, 0.5, 0.75], t, scfg)
        worst = max(worst, float(np.max(np.abs(res.values - ser))))
    checks.append(("representation-equivalence", worst, 1e-5))

    # forced solution, modal analytic case
    r = laplace.u2_laplace_grid(lambda y, s: np.sin(2 * np.pi * y), [0.25], 0.2)
    exact = (1 - math.exp(-4 * math.pi**2 * 0.2)) / (4 * math.pi**2)
    checks.append(("duhamel-modal-forcing", abs(float(r.values[0]) - exact), 1e-4))

    # time-integrability bound
    lhs, rhs = series.l1_bound_check(lambda y: np.sin(np.pi * y), scfg, x_samples=9)
    checks.append(("time-integral-bound", max(0.0, lhs - rhs), 1e-4))

    # parser precedence
    p_ok = expr.evaluate(expr.parse("2+3*4^2")) == 50.0 and expr.evaluate(expr.parse("-2^2")) == -4.0
    checks.append(("parser-precedence", 0.0 if p_ok else 1.0, 0.5))

    lines = []
    all_ok = True
    for name, worst, threshold in checks:
        ok = worst <= threshold
        all_ok &= ok
        lines.append(f"{name}: worst={worst:.3e} tol={threshold:.3e} {'PASS' if ok else 'FAIL'}")
    return lines, all_ok


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args, args.command)
        handler = {
            "kernel": cmd_kernel,
            "solve": cmd_solve,
            "compare": cmd_compare,
            "limit": cmd_limit,
            "selftest": cmd_selftest,
        }[args.command]
        return handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ToleranceNotReached as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (NumericalFailure, expr.ExprEvalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
