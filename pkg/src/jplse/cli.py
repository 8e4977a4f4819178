"""Command line interface: ``jplse <subcommand> ...``.

Exit codes: 0 success, 2 invalid input (validation refusal), 1 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .errors import InvalidInput
from .experiments import ExperimentConfig, run_experiment
from .noise import beta_n, check_condition_A, parse_model, sample_noise
from .scale_space import ScaleSpacePath, build_path, deterministic_path, suggest_grid
from .segment import fit_all_k, fit_fixed_gamma
from .signals import SignalSpec, read_series
from .skorokhod import path_distance, skorokhod_distance
from .step import SIGNALS, StepFunction, distance, hausdorff_jumps


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc.msg})") from None


def _emit_json(obj, out):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(header, rows, out):
    fh = open(out, "w", newline="", encoding="utf-8") if out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if out:
            fh.close()


def _signal(args):
    if args.signal in ("blocks", *SIGNALS):
        spec = SignalSpec(args.signal, scale=args.scale)
    else:
        spec = SignalSpec("step", scale=args.scale, step=StepFunction.from_dict(_read_json(args.signal)))
    return spec.function()


# --- subcommands ---------------------------------------------------------------

def cmd_fit(args):
    y = read_series(args.input)
    seg, obj = fit_fixed_gamma(y, args.gamma)
    _emit_json(seg.to_dict(objective=obj), args.out)


def cmd_deltas(args):
    y = read_series(args.input)
    K = y.size - 1 if args.kmax is None else args.kmax
    table = fit_all_k(y, K)
    rows = []
    for k in range(table.K + 1):
        seg = table.segmentation(k)
        rows.append([k, repr(float(table.delta[k])), seg.n_jumps, " ".join(map(str, seg.changepoints))])
    _emit_csv(["k", "delta", "jumps", "changepoints"], rows, args.out)


def _write_path(path: ScaleSpacePath, args):
    _emit_json(path.to_dict(), args.out)
    if args.csv:
        _emit_csv(["i", "critical_gamma", "zeta", "k"], list(path.to_csv_rows()), args.csv)


def cmd_path(args):
    y = read_series(args.input)
    _write_path(build_path(fit_all_k(y, y.size - 1)), args)


def cmd_target_path(args):
    f = _signal(args)
    off_grid = False
    if isinstance(f, StepFunction):
        x = f.breakpoints * args.n
        off_grid = bool(np.any(np.abs(x - np.round(x)) > 1e-9))
        if off_grid and args.strict:
            hint = suggest_grid(f)
            raise InvalidInput(
                f"breakpoints are not on the grid i/{args.n}" + (f"; use N = {hint}" if hint else "")
            )
        if off_grid:
            print(f"warning: breakpoints are off the grid i/{args.n}; using cell means "
                  f"(exact grid: N = {suggest_grid(f)})", file=sys.stderr)
    _write_path(deterministic_path(f, args.n, allow_off_grid=True), args)


def _load_object(path):
    d = _read_json(path)
    if "critical_gammas" in d:
        return ScaleSpacePath.from_dict(d)
    return StepFunction.from_dict(d)


def cmd_metrics(args):
    a, b = _load_object(args.a), _load_object(args.b)
    metric = args.metric.lower()
    if isinstance(a, ScaleSpacePath) or isinstance(b, ScaleSpacePath):
        if not (isinstance(a, ScaleSpacePath) and isinstance(b, ScaleSpacePath)):
            raise InvalidInput("cannot compare a path with a step function")
        if args.horizon is None:
            raise InvalidInput("path comparisons need --horizon")
        inner = "SKOROKHOD" if metric == "skorokhod" else "L2"
        rep = path_distance(a, b, args.horizon, inner, args.tol)
        _emit_json({"metric": "path", **rep.to_dict()}, args.out)
        return
    out = {"metric": metric}
    if metric == "skorokhod":
        d, w = skorokhod_distance(a, b, args.tol)
        out.update(distance=d, witness=w.to_dict())
    elif metric in ("l2", "sup"):
        out["distance"] = distance(a, b, metric.upper())
    elif metric == "hausdorff":
        out["distance"] = hausdorff_jumps(a.jumps, b.jumps)
    else:
        raise InvalidInput(f"unknown metric {args.metric!r}")
    _emit_json(out, args.out)


def cmd_diag(args):
    model = parse_model(args.model, seed=args.seed)
    beta = args.slack * beta_n(model, args.n)
    rows, passed = [], 0
    for r in range(args.seeds):
        d = check_condition_A(sample_noise(model, args.n, r), beta, interval_means=False)
        passed += d.passed
        rows.append([args.n, r, repr(d.M_n), repr(d.M_dyadic), repr(beta), int(d.passed)])
    _emit_csv(["n", "seed", "M_n", "M_dyadic", "beta_n", "pass"], rows, args.out)
    print(f"pass rate {passed}/{args.seeds} = {passed / args.seeds:.3f}", file=sys.stderr)


def cmd_experiment(args):
    cfg = ExperimentConfig.from_toml(args.config)
    if args.workers is not None:
        cfg = replace(cfg, workers=args.workers)
    report = run_experiment(cfg)
    for p in report.write(args.out):
        print(p, file=sys.stderr)


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jplse", description="Jump-penalised least squares toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fit", help="minimiser for one penalty")
    s.add_argument("--input", required=True)
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("deltas", help="best k-jump errors for k = 0..kmax")
    s.add_argument("--input", required=True)
    s.add_argument("--kmax", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_deltas)

    s = sub.add_parser("path", help="scale space of a series")
    s.add_argument("--input", required=True)
    s.add_argument("--out")
    s.add_argument("--csv", help="also write (i, gamma, zeta, k) rows here")
    s.set_defaults(func=cmd_path)

    s = sub.add_parser("target-path", help="deterministic scale space of a known signal")
    s.add_argument("--signal", required=True, help="blocks, sin, ramp or a step-function JSON file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--scale", type=float, default=1.0)
    s.add_argument("--strict", action="store_true", help="refuse step signals off the grid")
    s.add_argument("--out")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_target_path)

    s = sub.add_parser("metrics", help="distance between two step functions or two paths")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--metric", default="l2", choices=["skorokhod", "l2", "sup", "hausdorff"])
    s.add_argument("--tol", type=float, default=1e-6)
    s.add_argument("--horizon", type=float, help="zeta horizon for path inputs")
    s.add_argument("--out")
    s.set_defaults(func=cmd_metrics)

    s = sub.add_parser("diag", help="maximal partial-sum diagnostics over seeds")
    s.add_argument("--model", required=True, help="gaussian:S, subgaussian:A:Z, t:M:DF or pareto:M:SHAPE")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seeds", type=int, default=100)
    s.add_argument("--seed", type=int, default=0, help="base seed")
    s.add_argument("--slack", type=float, default=1.0, help="compare with slack * beta_n")
    s.add_argument("--out")
    s.set_defaults(func=cmd_diag)

    s = sub.add_parser("experiment", help="run a TOML-configured experiment")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
