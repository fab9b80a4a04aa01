"""Method registry, grid sweeps, identity suites and benchmarks.

All functions return plain dict/list reports in deterministic order; the
command-line layer only parses flags, writes files and maps outcomes to
exit codes.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from dataclasses import dataclass

import numpy as np

from . import integrals as I
from .config import Config
from .errors import PCFError, ToleranceNotMet
from .landau import (
    LandauParams,
    eigen_residual,
    eigen_system,
    g0_ode_residual,
    j11_closed,
    j11_ratio,
    j11_series,
)
from .quadrature import EvalResult
from .series import product_via_hermite_series, square_via_alternating_series
from .specfun import as_half_plane, gamma, hermite_HG, pcf_D

# ---------------------------------------------------------------------------
# Method registry
# ---------------------------------------------------------------------------


def _series_eval(fn, method):
    def run(z, x, cfg):
        r = fn(z, x, cfg.series)
        res = EvalResult(r.value, r.tail_estimate, r.terms_used, method)
        if not r.converged:
            raise ToleranceNotMet(f"{method}: tail estimate {r.tail_estimate:.3g} above target", res)
        return res

    return run


def _oracle_direct(z, x, cfg):
    z = as_half_plane(z).z
    a = pcf_D(-z, x, derivative=False, config=cfg.pcf).value
    b = pcf_D(-z, -x, derivative=False, config=cfg.pcf).value
    value = gamma(z) * a * b
    return EvalResult(value, cfg.pcf.target_rel * abs(value), 2, "oracle_direct")


def _hankel(z, x, cfg):
    z = as_half_plane(z).z
    return I.hankel_check_eq5(-z, x, cfg.quadrature).scaled(gamma(z), "hankel")


@dataclass(frozen=True)
class Method:
    name: str
    target: str  # "P" or "Q"
    run: object


METHODS = {
    m.name: m
    for m in [
        Method("tanh_integral", "P", lambda z, x, c: I.product_via_tanh_integral(z, x, c.quadrature)),
        Method("finite_integral", "P", lambda z, x, c: I.product_via_finite_integral(z, x, c.quadrature)),
        Method("unified+", "P", lambda z, x, c: I.unified_integral(z, x, "+", c.quadrature)),
        Method("hermite_series", "P", _series_eval(product_via_hermite_series, "hermite_series")),
        Method("oracle_direct", "P", _oracle_direct),
        Method("hankel", "P", _hankel),
        Method("coth_integral", "Q", lambda z, x, c: I.square_via_coth_integral(z, x, c.quadrature)),
        Method("shifted_integral", "Q", lambda z, x, c: I.square_via_shifted_integral(z, x, c.quadrature)),
        Method("unified-", "Q", lambda z, x, c: I.unified_integral(z, x, "-", c.quadrature)),
        Method("alternating_series", "Q", _series_eval(square_via_alternating_series, "alternating_series")),
    ]
}


def evaluate(method, z, x, cfg: Config):
    """Run one method; returns (EvalResult, wall_ns).  Errors propagate."""
    if method not in METHODS:
        raise KeyError(f"unknown method {method!r}")
    t0 = time.perf_counter_ns()
    res = METHODS[method].run(z, float(x), cfg)
    return res, time.perf_counter_ns() - t0


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# Cross-check
# ---------------------------------------------------------------------------

CROSSCHECK_COLUMNS = ("z_re", "z_im", "x", "method", "target", "value_re", "value_im",
                      "err_estimate", "work", "status")


def comparable(methods):
    """True when at least two of ``methods`` evaluate the same target."""
    targets = [METHODS[m].target for m in dict.fromkeys(methods)]
    return any(targets.count(t) >= 2 for t in set(targets))


def crosscheck(cfg: Config, threshold=None):
    """Evaluate every (z, x, method) cell and compare methods per target."""
    threshold = cfg.threshold if threshold is None else threshold
    methods = list(dict.fromkeys(cfg.methods))
    cells, deviations = [], []
    ok = True
    for z in cfg.z_values:
        for x in cfg.x_values:
            by_target = {}
            for m in methods:
                cell = {"z": _pair(z), "x": float(x), "method": m, "target": METHODS[m].target}
                try:
                    res, ns = evaluate(m, z, x, cfg)
                    cell.update(value=_pair(res.value), err_estimate=res.err_estimate, work=res.work,
                                wall_ns=ns, status="ok")
                    by_target.setdefault(cell["target"], []).append((m, res.value))
                except PCFError as exc:
                    ok = False
                    cell.update(value=None, err_estimate=None, work=None, wall_ns=None,
                                status=type(exc).__name__)
                cells.append(cell)
            for target in sorted(by_target):
                vals = by_target[target]
                if len(vals) < 2:
                    continue
                scale = max(abs(v) for _, v in vals)
                dev = max(abs(a - b) for _, a in vals for _, b in vals) / scale if scale else 0.0
                deviations.append({"z": _pair(z), "x": float(x), "target": target,
                                   "methods": [m for m, _ in vals], "max_rel_dev": dev})
                ok = ok and dev <= threshold
    return {"config_echo": {**cfg.echo(), "threshold": threshold}, "cells": cells,
            "deviations": deviations, "pass": bool(ok)}


def max_deviation(report):
    return max((d["max_rel_dev"] for d in report["deviations"]), default=0.0)


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def crosscheck_csv(report):
    """CSV table of the cells; no timing columns, so it is byte-stable."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CROSSCHECK_COLUMNS)
    for c in report["cells"]:
        value = c["value"] or [None, None]
        w.writerow([_fmt(float(c["z"][0])), _fmt(float(c["z"][1])), _fmt(c["x"]), c["method"], c["target"],
                    _fmt(value[0]), _fmt(value[1]), _fmt(c["err_estimate"]), _fmt(c["work"]), c["status"]])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Identity suites
# ---------------------------------------------------------------------------

SPECIAL_CASES = ("bessel_z_half", "beta_x_zero", "asymptotic", "appendix", "fourier",
                 "hermite_HG_N1", "erfc_z_one")
SPECIAL_ALIASES = {"bessel": "bessel_z_half", "beta": "beta_x_zero", "erfc": "erfc_z_one",
                   "n1": "hermite_HG_N1"}


def _zlabel(z):
    z = complex(z)
    return {"z_re": z.real, "z_im": z.imag}


def _point(label, lhs, rhs, tol):
    dev = abs(lhs - rhs) / abs(rhs) if rhs else abs(lhs)
    return {**label, "lhs": float(np.real(lhs)), "rhs": float(np.real(rhs)), "rel_dev": dev,
            "tol": tol, "pass": bool(tol is None or dev <= tol)}


def special(case, cfg: Config):
    case = SPECIAL_ALIASES.get(case, case)
    q = cfg.quadrature
    points = []
    extra = {}
    if case == "bessel_z_half":
        for x in (0.5, 1.0, 2.0, 3.0):
            lhs = I.product_via_finite_integral(0.5, x, q).real
            points.append(_point({"x": x}, lhs, I.bessel_closed_form_half(x), 1e-8))
    elif case == "beta_x_zero":
        for z in cfg.z_values:
            lhs = I.product_via_tanh_integral(z, 0.0, q).value
            points.append(_point(_zlabel(z), lhs, I.beta_closed_form(z), 1e-10))
    elif case == "asymptotic":
        errors = []
        for z in (10.0, 50.0, 250.0):
            quad = I.product_via_tanh_integral(z, 1.0, q).real
            est = I.large_parameter_estimate(z, 1.0)
            errors.append(abs(est - quad) / quad)
            points.append(_point({**_zlabel(z), "x": 1.0}, est, quad, 0.05 if z == 50 else None))
        monotone = all(a > b for a, b in zip(errors, errors[1:]))
        extra["monotone"] = monotone
    elif case == "appendix":
        a, p = 1.0, 2.0
        r = I.appendix_pair(a, p, q)
        points.append(_point({"a": a, "p": p, "form": "a"}, r.lhs_a, r.rhs_a, 1e-7))
        points.append(_point({"a": a, "p": p, "form": "b"}, r.lhs_b, r.rhs_b, 1e-7))
    elif case == "fourier":
        b, zp = 1.0, 1.0
        r = I.fourier_pair(b, zp, q)
        points.append(_point({"b": b, "zp": zp, "form": "sin"}, r.sin_lhs, r.sin_rhs, 1e-7))
        points.append(_point({"b": b, "zp": zp, "form": "cos"}, r.cos_lhs, r.cos_rhs, 1e-7))
    elif case == "hermite_HG_N1":
        for lam in (-0.5, -1.3):
            for x in (0.0, 0.7, 1.4):
                points.extend(hermite_bridge_points(lam, x, q))
    elif case == "erfc_z_one":
        for x in np.linspace(-3, 3, 13):
            x = float(x)
            lhs = I.product_via_tanh_integral(1.0, x, q).real
            points.append(_point({"x": x}, lhs, I.erfc_closed_form_one(x), 1e-9))
    else:
        raise KeyError(f"unknown special case {case!r}")
    passed = all(p["pass"] for p in points) and extra.get("monotone", True)
    return {"case": case, "points": points, **extra, "pass": bool(passed)}


def hermite_bridge_points(lam, x, spec):
    """The integral identity and both Weber-function relations at (lam, x)."""
    h, g = hermite_HG(lam, x)
    label = {"lambda": lam, "x": x}
    lhs = math.exp(-x * x) * (h * h + g * g)
    out = [_point({**label, "relation": "square_integral"}, lhs, I.hermite_square_integral(lam, x, spec).value, 1e-8)]
    y = x * math.sqrt(2)
    dp = pcf_D(lam, y, derivative=False).value
    dm = pcf_D(lam, -y, derivative=False).value
    scale = 2 ** (lam / 2)
    out.append(_point({**label, "relation": "weber_H"}, math.exp(-x * x / 2) * h, scale * dp, 1e-8))
    rhs_g = scale / math.sin(math.pi * lam) * (math.cos(math.pi * lam) * dp - dm)
    out.append(_point({**label, "relation": "weber_G"}, math.exp(-x * x / 2) * g, rhs_g, 1e-8))
    return out


# ---------------------------------------------------------------------------
# Landau-Green verification
# ---------------------------------------------------------------------------

DEFAULT_GREEN_PARAMS = ((0.3, 0.7), (1.0, 1.0))
DEFAULT_GREEN_X = (0.0, 0.5, -0.5, 1.5, -1.5)
EIGEN_N_MAX = 3


def eigen_convergence(params: LandauParams, h=0.01, n_max=EIGEN_N_MAX):
    """Residuals at h and h/2 for every pair up to n_max, and their ratios."""
    extent = math.sqrt(2 * n_max + params.delta**2) + 4.5
    out = []
    res = {}
    for step in (h, h / 2):
        grid = np.linspace(-extent, extent, math.ceil(2 * extent / step) + 1)
        res[step] = [(p.n, p.s, eigen_residual(p, params)) for p in eigen_system(params, n_max, grid)]
    for (n, s, r1), (_, _, r2) in zip(res[h], res[h / 2]):
        out.append({"n": n, "s": s, "residual_h": r1, "residual_h2": r2, "ratio": r1 / r2})
    return out


def green(cfg: Config, params_list=DEFAULT_GREEN_PARAMS, x_list=DEFAULT_GREEN_X, ode_h=1e-3):
    report = {"params": [], "pass": True}
    for omega, delta in params_list:
        params = LandauParams(float(omega), float(delta))
        eig = eigen_convergence(params)
        eig_ok = all(3.5 <= e["ratio"] <= 4.5 for e in eig)
        points = []
        for x in x_list:
            closed = j11_closed(params, x, cfg.quadrature)
            ser = j11_series(params, x, cfg.series)
            ratio = j11_ratio(params, x)
            vals = [closed, ser.value, ratio]
            dev = max(abs(a - b) for a in vals for b in vals)
            tol = max(1e-6, 3 * ser.tail_estimate)
            r_ode = g0_ode_residual(params, x, ode_h)
            points.append({"x": float(x), "closed": _pair(closed), "series": _pair(ser.value),
                           "ratio": _pair(ratio), "series_tail": ser.tail_estimate, "triangle_dev": dev,
                           "triangle_tol": tol, "g0_ode_residual": r_ode,
                           "pass": bool(dev <= tol and r_ode <= 1e-5)})
        entry = {"omega": params.omega, "delta": params.delta, "eigen": eig, "eigen_pass": eig_ok,
                 "points": points}
        report["params"].append(entry)
        report["pass"] = bool(report["pass"] and eig_ok and all(p["pass"] for p in points))
    return report


# ---------------------------------------------------------------------------
# Benchmarks
# ---------------------------------------------------------------------------

BENCH_COLUMNS = ("method", "z_re", "z_im", "x", "median_ns", "work", "err_estimate")


def bench(cfg: Config, repetitions=3):
    if repetitions < 3:
        raise ValueError("repetitions must be >= 3")
    rows = []
    zs = sorted(cfg.z_values, key=lambda z: (complex(z).real, complex(z).imag))
    for m in sorted(dict.fromkeys(cfg.methods)):
        for z in zs:
            for x in sorted(cfg.x_values):
                times, res = [], None
                for _ in range(repetitions):
                    try:
                        res, ns = evaluate(m, z, x, cfg)
                    except ToleranceNotMet as exc:
                        res, ns = exc.result, 0
                    times.append(ns)
                rows.append({"method": m, "z_re": complex(z).real, "z_im": complex(z).imag, "x": float(x),
                             "median_ns": int(statistics.median(times)),
                             "work": res.work if res else None,
                             "err_estimate": res.err_estimate if res else None})
    return rows


def rows_csv(rows, columns):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()
