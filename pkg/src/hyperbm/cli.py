"""Configuration-driven experiment runner.

Subcommands:

    hyperbm run <config.json> [--workers K] [--output-dir DIR]
    hyperbm validate <config.json>
    hyperbm schema <experiment>

A config is one JSON document:

    {"experiment": "...", "parameters": {...}, "master_seed": 1234,
     "output_dir": "out"}

Every run writes its data files plus ``manifest.json`` echoing the config,
the package version, the wall-clock duration, and a sha256 per output.  All
randomness flows from ``master_seed`` (MC experiments require it; there is
deliberately no environment override).  CSV cells use 17 significant digits,
'.' decimals and LF line endings, so re-running a config reproduces the
output files byte for byte at any worker count.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .deviations import (
    extrapolate_scaled_log,
    corrected_cumulant_limit,
    corrected_cumulant_conjugate,
    kappa,
    ldp_tail_quadrature,
    legendre_transform,
    log_mgf_quadrature,
    log_mgf_upper_bound,
    mdp_rate_estimate,
    rate,
)
from .hitting import decay_rate, euclidean_hitting
from .kernels import (
    DEFAULT_QUADRATURE,
    g_bound,
    h_bound,
    heat_kernel,
    log_g_bound,
    log_sinh,
    normalization_integral,
)
from .sampling import SimulationPlan, first_passage, set_worker_count

__all__ = ["main", "run", "validate", "report_schema", "EXPERIMENTS"]

_Z_95 = 1.959963984540054


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def _write_csv(path: Path, columns, rows) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n",
                    encoding="ascii", newline="\n")


def _grid(spec, name):
    """A grid is either an explicit list or {"start", "stop", "num", "spacing"}."""
    if isinstance(spec, (list, tuple)):
        return [float(v) for v in spec]
    if isinstance(spec, dict):
        start, stop = float(spec["start"]), float(spec["stop"])
        num = int(spec["num"])
        if spec.get("spacing", "geometric") == "geometric":
            return list(np.geomspace(start, stop, num))
        return list(np.linspace(start, stop, num))
    raise ValueError(f"{name} must be a list or a start/stop/num object")


# ---------------------------------------------------------------------------
# experiment validators and runners
# ---------------------------------------------------------------------------

def _check_dim(p, errs, key="n"):
    n = p.get(key)
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        errs.append(f"{key}: Dimension requires n >= 2 (integer), got {n!r}")
        return None
    return n


def _check_pos(p, errs, key, kind="parameter"):
    v = p.get(key)
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not v > 0:
        errs.append(f"{key}: {kind} must be a positive number, got {v!r}")
        return None
    return float(v)


def _check_grid(p, errs, key, positive=True):
    try:
        g = _grid(p[key], key)
    except (KeyError, ValueError, TypeError) as exc:
        errs.append(f"{key}: {exc}")
        return None
    if not g:
        errs.append(f"{key}: grid must be nonempty")
        return None
    if positive and min(g) <= 0:
        errs.append(f"{key}: grid values must be positive")
        return None
    return g


def _validate_kernel_scan(p):
    errs = []
    n = _check_dim(p, errs)
    if n is not None and n not in (2, 3):
        errs.append("n: exact kernel scans support n in {2, 3}")
    _check_grid(p, errs, "eta_grid")
    _check_grid(p, errs, "t_grid")
    return errs


def _run_kernel_scan(p, outdir, seed):
    n = p["n"]
    etas = _grid(p["eta_grid"], "eta_grid")
    ts = _grid(p["t_grid"], "t_grid")
    rows = []
    for eta in etas:
        for t in ts:
            k = heat_kernel(n, eta, t)
            ratio = math.exp((n - 1) * log_sinh(eta)
                             + math.log(k) - log_g_bound(n, eta, t))
            rows.append((eta, t, k, h_bound(n, eta, t), g_bound(n, eta, t), ratio))
    _write_csv(outdir / "kernel_scan.csv",
               ["eta", "t", "k", "h", "g", "ratio"], rows)
    return ["kernel_scan.csv"]


def _validate_normalization(p):
    errs = []
    n = _check_dim(p, errs)
    if n is not None and n not in (2, 3):
        errs.append("n: normalization needs the exact kernel, n in {2, 3}")
    _check_grid(p, errs, "t_list")
    return errs


def _run_normalization(p, outdir, seed):
    n = p["n"]
    results = []
    for t in _grid(p["t_list"], "t_list"):
        integral = normalization_integral(n, t)
        results.append({"t": t, "integral": integral,
                        "abs_error": abs(integral - 1.0)})
    _write_json(outdir / "normalization.json", {"n": n, "results": results})
    return ["normalization.json"]


def _validate_ldp_rate(p):
    errs = []
    n = _check_dim(p, errs)
    if n is not None and n not in (2, 3):
        errs.append("n: quadrature rates need the exact kernel, n in {2, 3}")
    _check_pos(p, errs, "x", "threshold ratio")
    _check_grid(p, errs, "t_grid")
    if p.get("side", "above") not in ("above", "below"):
        errs.append("side: must be 'above' or 'below'")
    return errs


def _run_ldp_rate(p, outdir, seed):
    n, x = p["n"], float(p["x"])
    side = p.get("side", "above")
    ts = _grid(p["t_grid"], "t_grid")
    target = -rate("I1", x, n=n)
    rows = []
    scaled = []
    for t in ts:
        prob = ldp_tail_quadrature(n, t, x, side)
        s = math.log(prob) / t
        scaled.append(s)
        rows.append((t, prob, s, target, abs(s - target)))
    _write_csv(outdir / "ldp_rate.csv",
               ["t", "tail_prob", "scaled_log", "target", "abs_err"], rows)
    fit = extrapolate_scaled_log(ts, scaled, ts)
    _write_json(outdir / "ldp_rate_summary.json",
                {"n": n, "x": x, "side": side, "target": target,
                 "extrapolated": fit.limit, "fit_slope": fit.slope})
    return ["ldp_rate.csv", "ldp_rate_summary.json"]


def _validate_mdp_rate(p):
    errs = []
    n = _check_dim(p, errs)
    if n is not None and n not in (2, 3):
        errs.append("n: quadrature rates need the exact kernel, n in {2, 3}")
    beta = p.get("beta")
    if not isinstance(beta, (int, float)) or not 0.0 < float(beta) < 0.5:
        errs.append(f"beta: must lie in (0, 1/2), got {beta!r}")
    x = p.get("x")
    if not isinstance(x, (int, float)) or float(x) == 0.0:
        errs.append(f"x: must be a nonzero number, got {x!r}")
    g = _check_grid(p, errs, "t_grid")
    if g is not None and len(g) < 3:
        errs.append("t_grid: needs at least 3 points")
    return errs


def _run_mdp_rate(p, outdir, seed):
    n, beta, x = p["n"], float(p["beta"]), float(p["x"])
    ts = _grid(p["t_grid"], "t_grid")
    est = mdp_rate_estimate(n, beta, x, ts)
    rows = [(t, math.exp(s * t ** (1.0 - 2.0 * beta)), s, est.target,
             abs(s - est.target)) for t, s in est.points]
    _write_csv(outdir / "mdp_rate.csv",
               ["t", "tail_prob", "scaled_log", "target", "abs_err"], rows)
    _write_json(outdir / "mdp_rate_summary.json",
                {"n": n, "beta": beta, "x": x, "target": est.target,
                 "extrapolated": est.extrapolated})
    return ["mdp_rate.csv", "mdp_rate_summary.json"]


def _validate_mgf_bound(p):
    errs = []
    n = _check_dim(p, errs)
    if n is not None and n not in (2, 3):
        errs.append("n: the quadrature side needs the exact kernel, n in {2, 3}")
    _check_grid(p, errs, "t_list")
    if "lambda_list" not in p or not isinstance(p["lambda_list"], (list, tuple)) \
            or not p["lambda_list"]:
        errs.append("lambda_list: nonempty list required")
    d_hat = p.get("d_hat", 1.0)
    if not isinstance(d_hat, (int, float)) or float(d_hat) < 1.0:
        errs.append(f"d_hat: must be >= 1, got {d_hat!r}")
    return errs


def _run_mgf_bound(p, outdir, seed):
    n = p["n"]
    d_hat = float(p.get("d_hat", 1.0))
    rows = []
    for lam in [float(v) for v in p["lambda_list"]]:
        for t in _grid(p["t_list"], "t_list"):
            lb = log_mgf_upper_bound(lam, t, n, d_hat)
            lm = log_mgf_quadrature(n, lam, t)
            rows.append((lam, t, lb, lm, int(lb > lm), lb / t - kappa(lam, n)))
    _write_csv(outdir / "mgf_bound.csv",
               ["lambda", "t", "log_bound", "log_mgf_quadrature", "dominated",
                "scaled_gap"], rows)
    return ["mgf_bound.csv"]


def _validate_hitting_decay(p):
    errs = []
    ns = p.get("n_list")
    if not isinstance(ns, (list, tuple)) or not ns:
        errs.append("n_list: nonempty list of dimensions required")
    else:
        for n in ns:
            if not isinstance(n, int) or isinstance(n, bool) or n < 2:
                errs.append(f"n_list: Dimension requires n >= 2, got {n!r}")
    eta1 = _check_pos(p, errs, "eta1", "ball radius")
    g = _check_grid(p, errs, "eta_grid")
    if g is not None:
        if sorted(g) != g:
            errs.append("eta_grid: must be increasing")
        elif max(g) < 20:
            errs.append("eta_grid: must extend to at least 20")
        if eta1 is not None and g and min(g) <= eta1:
            errs.append("eta_grid: all radii must exceed eta1")
    return errs


def _run_hitting_decay(p, outdir, seed):
    eta1 = float(p["eta1"])
    etas = _grid(p["eta_grid"], "eta_grid")
    rows = []
    for n in p["n_list"]:
        res = decay_rate(n, etas, eta1)
        for eta, slope in res.points:
            rows.append((n, eta, math.exp(slope * eta), slope, res.target))
    _write_csv(outdir / "hitting_decay.csv",
               ["n", "eta", "P", "log_P_over_eta", "target"], rows)
    return ["hitting_decay.csv"]


def _validate_hitting_mc(p):
    errs = []
    _check_dim(p, errs)
    eta0 = _check_pos(p, errs, "eta0", "start radius")
    eta1 = _check_pos(p, errs, "eta1", "ball radius")
    if eta0 is not None and eta1 is not None and eta1 >= eta0:
        errs.append("eta1: must be below eta0")
    _check_pos(p, errs, "horizon", "horizon")
    dt = _check_pos(p, errs, "dt", "step size")
    horizon = p.get("horizon")
    if dt is not None and isinstance(horizon, (int, float)) and dt >= float(horizon) / 2:
        errs.append("dt: must be below horizon/2")
    paths = p.get("paths")
    if not isinstance(paths, int) or isinstance(paths, bool) or paths < 1:
        errs.append(f"paths: positive integer required, got {paths!r}")
    stop = p.get("stop_level", 0.0)
    if not isinstance(stop, (int, float)) or (float(stop) != 0.0 and eta0 is not None
                                              and float(stop) <= eta0):
        errs.append("stop_level: must be 0 or exceed eta0")
    if not isinstance(p.get("dump_radii", False), bool):
        errs.append("dump_radii: boolean required")
    return errs


def _run_hitting_mc(p, outdir, seed):
    from .hitting import HittingQuery, hitting_probability
    from .sampling import write_radii

    n = p["n"]
    plan = SimulationPlan(n=n, horizon=float(p["horizon"]), dt=float(p["dt"]),
                          paths=int(p["paths"]), master_seed=seed,
                          start_radius=float(p["eta0"]))
    res = first_passage(plan, float(p["eta1"]),
                        stop_level=float(p.get("stop_level", 0.0)))
    frac = res.hit_fraction
    target = hitting_probability(HittingQuery(n=n, eta1=float(p["eta1"]),
                                              eta=float(p["eta0"])))
    se = math.sqrt(max(frac * (1.0 - frac), 1e-300) / plan.paths)
    rows = [(float(p["eta0"]), frac, target, frac - target,
             frac - _Z_95 * se, frac + _Z_95 * se)]
    _write_csv(outdir / "hitting_mc.csv",
               ["x", "value", "target", "error", "ci_low", "ci_high"], rows)
    _write_json(outdir / "hitting_mc_summary.json",
                {"n": n, "eta0": float(p["eta0"]), "eta1": float(p["eta1"]),
                 "horizon": float(p["horizon"]), "dt": float(p["dt"]),
                 "paths": plan.paths, "hit_fraction": frac,
                 "closed_form": target, "reflections": res.reflections,
                 "censored": int(np.count_nonzero(res.censored))})
    outputs = ["hitting_mc.csv", "hitting_mc_summary.json"]
    if p.get("dump_radii", False):
        write_radii(outdir / "radii.bin", res.terminal_radii)
        outputs.append("radii.bin")
    return outputs


def _validate_hirao_check(p):
    errs = []
    k = p.get("k", 0.0)
    if not isinstance(k, (int, float)) or float(k) < 0.0:
        errs.append(f"k: must be >= 0, got {k!r}")
    _check_pos(p, errs, "m", "parameter m")
    _check_dim(p, errs)
    g = _check_grid(p, errs, "x_grid", positive=False)
    if g is not None and min(g) < 0:
        errs.append("x_grid: values must be >= 0")
    return errs


def _run_hirao_check(p, outdir, seed):
    k, m, n = float(p.get("k", 0.0)), float(p["m"]), p["n"]
    xs = _grid(p["x_grid"], "x_grid")
    lam_grid = list(np.linspace(-(2 * k + m) / 2 - 10.0, max(xs) + 5.0, 257))
    rows = []
    for x in xs:
        closed = corrected_cumulant_conjugate(x, k, m)
        numeric = legendre_transform(
            lambda lam: corrected_cumulant_limit(lam, k, m), x, lam_grid)
        two_i1 = 2.0 * rate("I1", x, n=n)
        rows.append((x, closed, numeric, two_i1, abs(closed - two_i1)))
    _write_csv(outdir / "hirao_check.csv",
               ["x", "lambda_star_closed", "lambda_star_numeric", "two_I1",
                "discrepancy"], rows)
    return ["hirao_check.csv"]


def _validate_euclidean_compare(p):
    errs = []
    ns = p.get("n_list")
    if not isinstance(ns, (list, tuple)) or not ns:
        errs.append("n_list: nonempty list of dimensions required")
    else:
        for n in ns:
            if not isinstance(n, int) or isinstance(n, bool) or n < 2:
                errs.append(f"n_list: Dimension requires n >= 2, got {n!r}")
    r1 = _check_pos(p, errs, "r1", "inner radius")
    g = _check_grid(p, errs, "r_list")
    if g is not None and r1 is not None and min(g) <= r1:
        errs.append("r_list: radii must exceed r1")
    return errs


def _run_euclidean_compare(p, outdir, seed):
    r1 = float(p["r1"])
    rows = []
    for n in p["n_list"]:
        for r in _grid(p["r_list"], "r_list"):
            prob = euclidean_hitting(n, r1, r)
            rows.append((n, r, prob, math.log(prob) / math.log(r), -(n - 2.0)))
    _write_csv(outdir / "euclidean_compare.csv",
               ["n", "r", "P", "log_P_over_log_r", "target"], rows)
    return ["euclidean_compare.csv"]


_SCHEMAS = {
    "kernel-scan": {
        "outputs": {"kernel_scan.csv": ["eta", "t", "k", "h", "g", "ratio"]},
        "units": "eta: hyperbolic distance; t: time; k/h/g: kernel and bounds; "
                 "ratio: sinh^{n-1}(eta) k / g",
        "parameters": {"n": "int in {2,3}", "eta_grid": "grid", "t_grid": "grid"},
    },
    "normalization": {
        "outputs": {"normalization.json":
                    {"n": "int", "results": [{"t": "float", "integral": "float",
                                              "abs_error": "float"}]}},
        "units": "integral: mass of p_n(., t) on (0, inf), dimensionless",
        "parameters": {"n": "int in {2,3}", "t_list": "grid"},
    },
    "ldp-rate": {
        "outputs": {"ldp_rate.csv": ["t", "tail_prob", "scaled_log", "target",
                                     "abs_err"],
                    "ldp_rate_summary.json": {"extrapolated": "float"}},
        "units": "scaled_log: (1/t) log P(D/t >= x); target: -I1(x)",
        "parameters": {"n": "int in {2,3}", "x": "float > 0", "t_grid": "grid",
                       "side": "'above' | 'below'"},
    },
    "mdp-rate": {
        "outputs": {"mdp_rate.csv": ["t", "tail_prob", "scaled_log", "target",
                                     "abs_err"],
                    "mdp_rate_summary.json": {"extrapolated": "float"}},
        "units": "scaled_log: t^{2 beta - 1} log P; target: -x^2/4",
        "parameters": {"n": "int in {2,3}", "beta": "float in (0, 1/2)",
                       "x": "nonzero float", "t_grid": "grid (>= 3 points)"},
    },
    "mgf-bound": {
        "outputs": {"mgf_bound.csv": ["lambda", "t", "log_bound",
                                      "log_mgf_quadrature", "dominated",
                                      "scaled_gap"]},
        "units": "scaled_gap: (1/t) log(bound) - kappa(lambda)",
        "parameters": {"n": "int in {2,3}", "lambda_list": "list of floats",
                       "t_list": "grid", "d_hat": "float >= 1 (default 1)"},
    },
    "hitting-decay": {
        "outputs": {"hitting_decay.csv": ["n", "eta", "P", "log_P_over_eta",
                                          "target"]},
        "units": "P: hitting probability of the eta1-ball; target: -(n-1)",
        "parameters": {"n_list": "list of ints >= 2", "eta1": "float > 0",
                       "eta_grid": "increasing grid reaching >= 20"},
    },
    "hitting-mc": {
        "outputs": {"hitting_mc.csv": ["x", "value", "target", "error",
                                       "ci_low", "ci_high"],
                    "hitting_mc_summary.json": {"hit_fraction": "float"},
                    "radii.bin": "optional: magic HBMRAD01, u64-LE count, "
                                 "f64-LE terminal radii"},
        "units": "value: MC hit fraction (lower bound); target: closed form",
        "parameters": {"n": "int >= 2", "eta0": "float", "eta1": "float < eta0",
                       "horizon": "float", "dt": "float", "paths": "int",
                       "stop_level": "0 or float > eta0",
                       "dump_radii": "bool (default false)"},
    },
    "hirao-check": {
        "outputs": {"hirao_check.csv": ["x", "lambda_star_closed",
                                        "lambda_star_numeric", "two_I1",
                                        "discrepancy"]},
        "units": "discrepancy: |closed-form conjugate - 2 I1(x)|, reported "
                 "and not asserted to vanish",
        "parameters": {"k": "float >= 0", "m": "float > 0", "n": "int >= 2",
                       "x_grid": "grid of x >= 0"},
    },
    "euclidean-compare": {
        "outputs": {"euclidean_compare.csv": ["n", "r", "P", "log_P_over_log_r",
                                              "target"]},
        "units": "log_P_over_log_r: polynomial decay exponent; target: -(n-2)",
        "parameters": {"n_list": "list of ints >= 2", "r1": "float > 0",
                       "r_list": "grid of r > r1"},
    },
}

_MC_EXPERIMENTS = {"hitting-mc"}

EXPERIMENTS = {
    "kernel-scan": (_validate_kernel_scan, _run_kernel_scan),
    "normalization": (_validate_normalization, _run_normalization),
    "ldp-rate": (_validate_ldp_rate, _run_ldp_rate),
    "mdp-rate": (_validate_mdp_rate, _run_mdp_rate),
    "mgf-bound": (_validate_mgf_bound, _run_mgf_bound),
    "hitting-decay": (_validate_hitting_decay, _run_hitting_decay),
    "hitting-mc": (_validate_hitting_mc, _run_hitting_mc),
    "hirao-check": (_validate_hirao_check, _run_hirao_check),
    "euclidean-compare": (_validate_euclidean_compare, _run_euclidean_compare),
}


def report_schema(experiment: str) -> dict:
    """Column names, units and JSON layout of one experiment's outputs."""
    if experiment not in _SCHEMAS:
        raise ValueError(f"unknown experiment {experiment!r}; known: "
                         f"{sorted(_SCHEMAS)}")
    return {"experiment": experiment, "version": __version__,
            **_SCHEMAS[experiment]}


def validate(config: dict) -> list[str]:
    """All precondition violations of a config; empty means runnable."""
    errs = []
    exp = config.get("experiment")
    if exp not in EXPERIMENTS:
        return [f"experiment: unknown name {exp!r}; known: {sorted(EXPERIMENTS)}"]
    params = config.get("parameters")
    if not isinstance(params, dict):
        return ["parameters: object required"]
    seed = config.get("master_seed")
    if exp in _MC_EXPERIMENTS and not isinstance(seed, int):
        errs.append("master_seed: integer required for Monte Carlo experiments")
    if "output_dir" in config and not isinstance(config["output_dir"], str):
        errs.append("output_dir: string path required")
    try:
        errs.extend(EXPERIMENTS[exp][0](params))
    except Exception as exc:  # defensive: validation itself never throws
        errs.append(f"parameters: {exc}")
    return errs


def run(config: dict, workers: int = 1, output_dir=None) -> dict:
    """Execute one experiment; returns the manifest (also written to disk).

    If a module raises mid-run, a manifest flagging the failure and listing
    whatever outputs were already written is still produced before the
    exception propagates.
    """
    violations = validate(config)
    if violations:
        raise ValueError("invalid config: " + "; ".join(violations))
    outdir = Path(output_dir if output_dir is not None
                  else config.get("output_dir", "."))
    outdir.mkdir(parents=True, exist_ok=True)
    set_worker_count(workers)
    seed = config.get("master_seed", 0)
    started = time.time()
    manifest = {
        "experiment": config["experiment"],
        "config": config,
        "version": __version__,
        "workers": workers,
    }
    try:
        outputs = EXPERIMENTS[config["experiment"]][1](config["parameters"],
                                                       outdir, seed)
    except Exception as exc:
        partial = sorted(p.name for p in outdir.iterdir()
                         if p.is_file() and p.name != "manifest.json")
        manifest.update({
            "duration_seconds": time.time() - started,
            "failed": f"{type(exc).__name__}: {exc}",
            "partial_outputs": {
                name: hashlib.sha256((outdir / name).read_bytes()).hexdigest()
                for name in partial},
        })
        _write_json(outdir / "manifest.json", manifest)
        raise
    checksums = {}
    for name in outputs:
        checksums[name] = hashlib.sha256((outdir / name).read_bytes()).hexdigest()
    manifest.update({
        "duration_seconds": time.time() - started,
        "outputs": checksums,
    })
    _write_json(outdir / "manifest.json", manifest)
    return manifest


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hyperbm",
        description="Experiment runner for hyperbolic Brownian asymptotics")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute an experiment config")
    p_run.add_argument("config", type=Path)
    p_run.add_argument("--workers", type=int, default=1)
    p_run.add_argument("--output-dir", type=Path, default=None)

    p_val = sub.add_parser("validate", help="check a config without running it")
    p_val.add_argument("config", type=Path)

    p_schema = sub.add_parser("schema", help="describe an experiment's outputs")
    p_schema.add_argument("experiment")

    args = parser.parse_args(argv)

    if args.command == "schema":
        try:
            print(json.dumps(report_schema(args.experiment), indent=2, sort_keys=True))
        except ValueError as exc:
            print(json.dumps({"error": str(exc)}), file=sys.stderr)
            return 2
        return 0

    try:
        config = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": f"cannot read config: {exc}"}), file=sys.stderr)
        return 2

    if args.command == "validate":
        violations = validate(config)
        print(json.dumps({"valid": not violations, "violations": violations},
                         indent=2))
        return 0 if not violations else 1

    violations = validate(config)
    if violations:
        print(json.dumps({"error": "invalid config", "violations": violations},
                         indent=2), file=sys.stderr)
        return 1
    try:
        manifest = run(config, workers=args.workers, output_dir=args.output_dir)
    except Exception as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}),
              file=sys.stderr)
        return 3
    print(json.dumps(manifest, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
