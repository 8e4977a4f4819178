"""Monte Carlo harness: penalty schedules, consistency runs, scale-space
comparisons and report files.

Every random draw comes from ``rng_for(seed, n, replicate)``, so a single
``(n, replicate)`` cell can be recomputed on its own and reports are
byte-identical across runs and worker counts (timings are written to a
separate file for that reason).
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial

import numpy as np

from .config import DEFAULTS, TOL, load_toml
from .errors import InvalidInput
from .noise import NoiseModel, beta_n, check_condition_A, sample_noise
from .scale_space import (
    ScaleSpacePath,
    build_path,
    deterministic_path,
    eval_path,
    suggest_grid,
    table_row,
    truncate,
)
from .segment import fit_all_k, fit_fixed_gamma
from .signals import SignalSpec
from .skorokhod import path_distance, skorokhod_distance
from .step import AnalyticSignal, StepFunction, cell_means, distance, hausdorff_jumps

__all__ = [
    "GammaRule",
    "ExperimentConfig",
    "ExperimentReport",
    "beta_growth",
    "check_condition_H",
    "gamma_schedule",
    "target_path",
    "run_consistency",
    "run_scale_compare",
    "run_experiment",
]

METRICS = ("L2", "SUP", "SKOROKHOD", "HAUSDORFF_JUMPS", "PATH")
_EXP = DEFAULTS["experiment"]


# --- penalty rules -------------------------------------------------------------

@dataclass(frozen=True)
class GammaRule:
    """``fixed``: a constant ``value``, or the geometric middle of the target-path
    piece with ``piece_k`` jumps. ``schedule``: ``c * (log n)**log_power / n**n_power``."""

    kind: str = "schedule"
    value: float | None = None
    piece_k: int | None = None
    c: float = 1.0
    log_power: float = 2.0
    n_power: float = 1.0

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind == "fixed":
            if (self.value is None) == (self.piece_k is None):
                raise InvalidInput("a fixed gamma rule needs exactly one of 'value' or 'piece_k'")
            if self.value is not None and not self.value > 0:
                raise InvalidInput(f"fixed gamma must be positive, got {self.value!r}")
            if self.piece_k is not None and self.piece_k < 0:
                raise InvalidInput("piece_k must be non-negative")
        elif kind == "schedule":
            if not self.c > 0:
                raise InvalidInput(f"schedule constant c must be positive, got {self.c!r}")
        else:
            raise InvalidInput(f"unknown gamma rule {self.kind!r}; expected fixed or schedule")

    @classmethod
    def from_dict(cls, d: dict) -> "GammaRule":
        d = dict(d)
        kind = d.pop("rule", d.pop("kind", "schedule"))
        extra = set(d) - {"value", "piece_k", "c", "log_power", "n_power"}
        if extra:
            raise InvalidInput(f"unknown gamma keys: {', '.join(sorted(extra))}")
        return cls(kind, **d)


def beta_growth(model: NoiseModel) -> tuple:
    """``(a, b)`` with ``beta_n`` proportional to ``n**a * (log n)**b``."""
    if model.kind == "gaussian":
        return 0.0, 1.0
    if model.kind == "subgaussian":
        return float(model.zeta), 1.0
    return 2.0 / model.m, 2.0 / model.m


def _dominant(power_n: float, power_log: float) -> int:
    # sign of the limit exponent of n**power_n * (log n)**power_log: +1 -> inf, -1 -> 0
    eps = 1e-12
    if power_n > eps or (abs(power_n) <= eps and power_log > eps):
        return 1
    if power_n < -eps or (abs(power_n) <= eps and power_log < -eps):
        return -1
    return 0


def check_condition_H(rule: GammaRule, model: NoiseModel | None) -> None:
    """Refuse schedules with ``gamma_n -/-> 0`` or ``gamma_n n / beta_n -/-> inf``."""
    if rule.kind != "schedule":
        return
    if _dominant(-rule.n_power, rule.log_power) != -1:
        raise InvalidInput(
            f"schedule c (log n)^{rule.log_power:g} / n^{rule.n_power:g} violates gamma_n -> 0"
        )
    if model is None:
        return
    a, b = beta_growth(model)
    if _dominant(1.0 - rule.n_power - a, rule.log_power - b) != 1:
        raise InvalidInput(
            f"schedule c (log n)^{rule.log_power:g} / n^{rule.n_power:g} violates "
            f"gamma_n * n / beta_n -> inf for beta_n ~ n^{a:g} (log n)^{b:g}"
        )


def gamma_schedule(rule: GammaRule, n: int, model: NoiseModel | None = None) -> float:
    """Penalty for sample size ``n``. With ``model`` given, schedules are checked first."""
    if rule.kind == "fixed":
        if rule.value is None:
            raise InvalidInput("a piece_k rule must be resolved against a target path first")
        return float(rule.value)
    if not n >= 2:
        raise InvalidInput(f"schedules need n >= 2, got {n!r}")
    check_condition_H(rule, model)
    return rule.c * math.log(n) ** rule.log_power / n**rule.n_power


# --- configuration -------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    signal: SignalSpec
    noise: NoiseModel | None
    n_list: tuple
    gamma: GammaRule = field(default_factory=GammaRule)
    replicates: int = 1
    metrics: tuple = ("L2",)
    seed: int = 0
    workers: int = 1
    horizon: float | None = None
    inner: str = "L2"
    table_depth: int = _EXP["table_depth"]
    target_grid: int | None = None
    snapshots: int = 64
    skorokhod_tol: float = TOL["skorokhod_tol"]

    def __post_init__(self):
        ns = tuple(int(n) for n in self.n_list)
        if not ns or any(n < 2 for n in ns) or any(b <= a for a, b in zip(ns, ns[1:])):
            raise InvalidInput("n_list must be a non-empty, strictly increasing list of integers >= 2")
        object.__setattr__(self, "n_list", ns)
        mets = tuple(m.upper() for m in self.metrics)
        bad = [m for m in mets if m not in METRICS]
        if bad or not mets:
            raise InvalidInput(f"unknown metrics {bad}; choose from {', '.join(METRICS)}")
        object.__setattr__(self, "metrics", mets)
        if self.replicates < 1 or self.workers < 1:
            raise InvalidInput("replicates and workers must be at least 1")
        if self.inner.upper() not in ("L2", "SKOROKHOD"):
            raise InvalidInput("path inner metric must be L2 or SKOROKHOD")
        object.__setattr__(self, "inner", self.inner.upper())
        if self.horizon is not None and not self.horizon > 0:
            raise InvalidInput("horizon must be positive")
        if self.target_grid is not None and self.target_grid < 2:
            raise InvalidInput("target_grid must be at least 2")
        if self.noise is None and self.signal.snr is not None:
            raise InvalidInput("snr scaling needs a noise model")
        if self.noise is not None:
            object.__setattr__(self, "noise", _with_seed(self.noise, self.seed))
        check_condition_H(self.gamma, self.noise)
        if self.gamma.kind == "schedule" and self.noise is not None:
            ratio = [gamma_schedule(self.gamma, n) * n / beta_n(self.noise, n) for n in ns]
            if any(b <= a for a, b in zip(ratio, ratio[1:])):
                raise InvalidInput("gamma_n * n / beta_n must increase strictly along n_list")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        path = dict(d.pop("path", {}))
        noise_d = dict(d.pop("noise", {"kind": "gaussian"}))
        signal = SignalSpec.from_dict(d.pop("signal", {"kind": "blocks"}))
        gamma = GammaRule.from_dict(d.pop("gamma", {}))
        if noise_d.get("kind", "gaussian").lower() == "none":
            noise = None
        else:
            try:
                noise = NoiseModel(**noise_d)
            except TypeError as exc:
                raise InvalidInput(f"bad noise section: {exc}") from None
        top = {"n_list", "replicates", "metrics", "seed", "workers"}
        extra = set(d) - top
        extra_p = set(path) - {"horizon", "inner", "table_depth", "target_grid", "snapshots", "skorokhod_tol"}
        if extra or extra_p:
            raise InvalidInput(f"unknown config keys: {', '.join(sorted(extra | extra_p))}")
        if "n_list" not in d:
            raise InvalidInput("config needs n_list")
        return cls(signal=signal, noise=noise, gamma=gamma,
                   n_list=tuple(d["n_list"]), replicates=int(d.get("replicates", 1)),
                   metrics=tuple(d.get("metrics", ("L2",))), seed=int(d.get("seed", 0)),
                   workers=int(d.get("workers", 1)), **path)

    @classmethod
    def from_toml(cls, path) -> "ExperimentConfig":
        return cls.from_dict(load_toml(path))

    def to_dict(self) -> dict:
        d = {
            "signal": self.signal.to_dict(),
            "noise": {"kind": "none"} if self.noise is None else asdict(self.noise),
            "gamma": asdict(self.gamma),
            "n_list": list(self.n_list),
            "replicates": self.replicates,
            "metrics": list(self.metrics),
            "seed": self.seed,
            "path": {
                "horizon": self.horizon,
                "inner": self.inner,
                "table_depth": self.table_depth,
                "target_grid": self.target_grid,
                "snapshots": self.snapshots,
                "skorokhod_tol": self.skorokhod_tol,
            },
        }
        return d


def _with_seed(model: NoiseModel, seed: int) -> NoiseModel:
    d = asdict(model)
    d["seed"] = int(seed)
    return NoiseModel(**d)


# --- report --------------------------------------------------------------------

@dataclass
class ExperimentReport:
    kind: str
    config: dict
    rows: list = field(default_factory=list)
    summary: list = field(default_factory=list)
    tables: list = field(default_factory=list)
    path_rows: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    timings: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def merge(self, other: "ExperimentReport") -> "ExperimentReport":
        out = ExperimentReport(f"{self.kind}+{other.kind}", self.config)
        for name in ("rows", "summary", "tables", "path_rows", "snapshots", "timings", "warnings"):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        out.notes = {**self.notes, **other.notes}
        return out

    def write(self, outdir) -> list:
        """Write CSV/JSON files into ``outdir``; returns the written paths."""
        os.makedirs(outdir, exist_ok=True)
        written = []
        for name, rows in (
            ("rows.csv", self.rows),
            ("summary.csv", self.summary),
            ("table.csv", self.tables),
            ("path_distance.csv", self.path_rows),
            ("snapshots.csv", self.snapshots),
            ("timings.csv", self.timings),
        ):
            if rows:
                p = os.path.join(outdir, name)
                _write_csv(p, rows)
                written.append(p)
        p = os.path.join(outdir, "summary.json")
        payload = {
            "kind": self.kind,
            "config": self.config,
            "summary": self.summary,
            "notes": self.notes,
            "warnings": self.warnings,
        }
        with open(p, "w", encoding="utf-8") as fh:
            json.dump(_jsonable(payload), fh, indent=2, sort_keys=True)
            fh.write("\n")
        written.append(p)
        return written


def _write_csv(path, rows):
    cols = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _fmt(r.get(k, "")) for k in cols})


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, (np.integer, np.bool_)):
        return x.item()
    return x


def _quantiles(vals) -> dict:
    v = np.asarray([x for x in vals if x is not None and math.isfinite(x)], dtype=float)
    if v.size == 0:
        return {"median": math.nan, "q25": math.nan, "q75": math.nan}
    q = np.quantile(v, [0.25, 0.5, 0.75])
    return {"median": float(q[1]), "q25": float(q[0]), "q75": float(q[2])}


# --- shared pieces -------------------------------------------------------------

def _default_grid(f, requested: int | None) -> tuple:
    """``(N, exact)`` for the deterministic path of ``f``."""
    if requested is not None:
        return int(requested), False
    if isinstance(f, StepFunction):
        N = suggest_grid(f)
        if N is not None and N <= _EXP["max_target_grid"]:
            return N, True
        return int(_EXP["max_target_grid"]), False
    return int(_EXP["analytic_target_grid"]), False


def target_path(f, N: int | None = None) -> ScaleSpacePath:
    """Deterministic path of ``f`` on its natural grid (exact for on-grid step signals)."""
    N, _ = _default_grid(f, N)
    return deterministic_path(f, N, allow_off_grid=True)


def _resolve_fixed(rule: GammaRule, tau: ScaleSpacePath) -> float:
    if rule.value is not None:
        g = float(rule.value)
        crit = tau.critical_gammas
        if crit.size and np.any(np.abs(crit - g) <= TOL["tie_rel"] * np.maximum(1.0, crit)):
            raise InvalidInput(
                f"fixed gamma {g!r} is a critical value of the target path; the target is not unique"
            )
        return g
    ks = tau.ks
    if rule.piece_k not in ks:
        raise InvalidInput(f"no target-path piece has k = {rule.piece_k}; available: {ks}")
    p = tau.pieces[ks.index(rule.piece_k)]
    if math.isinf(p.gamma_hi):
        return 2.0 * p.gamma_lo if p.gamma_lo > 0 else 1.0
    if p.gamma_lo == 0.0:
        return 0.5 * p.gamma_hi
    return math.sqrt(p.gamma_lo * p.gamma_hi)


def _sample(f, noise: NoiseModel | None, n: int, r: int, means_cache=None):
    fbar = cell_means(f, n) if means_cache is None else means_cache
    xi = np.zeros(n) if noise is None else sample_noise(noise, n, r)
    return fbar + xi, xi


def _distances_to_target(fhat: StepFunction, target, metrics, tol) -> dict:
    out = {}
    if isinstance(target, StepFunction):
        if "L2" in metrics:
            out["L2"] = distance(fhat, target, "L2")
        if "SUP" in metrics:
            out["SUP"] = distance(fhat, target, "SUP")
        if "SKOROKHOD" in metrics:
            out["SKOROKHOD"] = skorokhod_distance(fhat, target, tol)[0]
        if "HAUSDORFF_JUMPS" in metrics:
            out["HAUSDORFF_JUMPS"] = hausdorff_jumps(fhat.jumps, target.jumps)
        return out
    # smooth target: closed-form L2, dense-grid sup, no jump set
    e = fhat.edges()
    if "L2" in metrics:
        F = target.antiderivative(e)
        F2 = target.sq_antiderivative(e)
        c = fhat.values
        sq = np.sum(c * c * np.diff(e) - 2.0 * c * np.diff(F) + np.diff(F2))
        out["L2"] = math.sqrt(max(float(sq), 0.0))
    if "SUP" in metrics:
        t = np.union1d(np.linspace(0.0, 1.0, 20001), e)
        left = np.abs(fhat(t) - target(t))
        # left limits at the jumps
        lim = np.abs(fhat.values[:-1] - target(fhat.jumps)) if fhat.n_jumps else np.zeros(0)
        out["SUP"] = float(max(left.max(), lim.max() if lim.size else 0.0))
    if "SKOROKHOD" in metrics:
        out["SKOROKHOD"] = math.nan
    if "HAUSDORFF_JUMPS" in metrics:
        out["HAUSDORFF_JUMPS"] = hausdorff_jumps(fhat.jumps, [])
    return out


def _pool_map(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks))


# --- consistency ---------------------------------------------------------------

def _consistency_cell(cfg: ExperimentConfig, gamma_fixed, target, target_k, task):
    n, r = task
    f = cfg.signal.function(cfg.noise)
    if target is None:
        target = f
    t0 = time.perf_counter()
    y, xi = _sample(f, cfg.noise, n, r)
    g = gamma_fixed if gamma_fixed is not None else gamma_schedule(cfg.gamma, n)
    seg, obj = fit_fixed_gamma(y, g)
    t_fit = time.perf_counter() - t0
    fhat = seg.to_step()
    row = {"n": n, "replicate": r, "gamma": g}
    if cfg.noise is not None:
        beta = beta_n(cfg.noise, n)
        diag = check_condition_A(xi, beta, interval_means=False)
        m_n, passed = diag.M_n, diag.passed
    else:
        beta, m_n, passed = 0.0, 0.0, True
    row["beta_n"] = beta
    row["gamma_n_over_beta"] = g * n / beta if beta > 0 else math.inf
    row["jumps"] = seg.n_jumps
    row["target_jumps"] = "" if target_k is None else target_k
    row.update(_distances_to_target(fhat, target, [m for m in cfg.metrics if m != "PATH"], cfg.skorokhod_tol))
    row["M_n"] = m_n
    row["condA_pass"] = passed
    # a priori bound on the number of jumps, valid when M_n <= beta_n and gamma > 4 beta_n / n
    if passed and g > 4.0 * beta / n:
        bound = 2.0 * (f.sq_norm() + beta / n) / (g - 2.0 * beta / n) + 1.0
        row["jump_bound"] = bound
        if seg.n_jumps > bound:
            raise RuntimeError(
                f"jump count {seg.n_jumps} exceeds the a priori bound {bound:.3f} at n = {n}, replicate {r}"
            )
    else:
        row["jump_bound"] = ""
    row["objective"] = obj
    return row, {"n": n, "replicate": r, "fit_seconds": t_fit, "total_seconds": time.perf_counter() - t0}


def run_consistency(cfg: ExperimentConfig) -> ExperimentReport:
    """Fit each noisy sample at the rule's penalty and measure the error against the target.

    Targets: the signal itself for schedules, the target-path piece containing
    the fixed penalty otherwise.
    """
    f = cfg.signal.function(cfg.noise)
    notes = {}
    gamma_fixed, target, target_k = None, None, None
    if cfg.gamma.kind == "fixed":
        N, exact = _default_grid(f, cfg.target_grid)
        tau = deterministic_path(f, N, allow_off_grid=True)
        gamma_fixed = _resolve_fixed(cfg.gamma, tau)
        piece = tau.pieces[tau.piece_index(gamma_fixed)]
        target, target_k = piece.function, piece.k
        notes.update(target_grid=N, target_grid_exact=exact, gamma=gamma_fixed,
                     target=target.to_dict(), target_k=target_k,
                     target_gamma_interval=[piece.gamma_lo, None if math.isinf(piece.gamma_hi) else piece.gamma_hi])
    elif isinstance(f, StepFunction):
        target_k = f.n_jumps
    tasks = [(n, r) for n in cfg.n_list for r in range(cfg.replicates)]
    fn = partial(_consistency_cell, cfg, gamma_fixed, target, target_k)
    out = _pool_map(fn, tasks, cfg.workers)
    out.sort(key=lambda o: (o[0]["n"], o[0]["replicate"]))
    rows = [o[0] for o in out]
    report = ExperimentReport("consistency", cfg.to_dict(), rows=rows,
                              timings=[o[1] for o in out], notes=notes)
    metric_cols = [m for m in cfg.metrics if m != "PATH"]
    for n in cfg.n_list:
        sub = [r for r in rows if r["n"] == n]
        s = {"n": n, "gamma": sub[0]["gamma"], "gamma_n_over_beta": sub[0]["gamma_n_over_beta"],
             "replicates": len(sub)}
        for m in metric_cols:
            q = _quantiles(r[m] for r in sub)
            s.update({f"{m}_median": q["median"], f"{m}_q25": q["q25"], f"{m}_q75": q["q75"]})
        s["jumps_median"] = float(np.median([r["jumps"] for r in sub]))
        if target_k is not None:
            s["jumps_match_rate"] = float(np.mean([r["jumps"] == target_k for r in sub]))
        s["condA_rate"] = float(np.mean([r["condA_pass"] for r in sub]))
        report.summary.append(s)
    return report


# --- scale-space comparison ----------------------------------------------------

def _horizon(cfg: ExperimentConfig, tau: ScaleSpacePath, report: ExperimentReport) -> float:
    last = float(tau.zeta_jumps[-1]) if tau.zeta_jumps.size else 0.0
    if cfg.horizon is None:
        return _EXP["horizon_factor"] * last if last > 0 else 1.0
    T = float(cfg.horizon)
    if T <= last:
        T2 = _EXP["horizon_extension"] * last
        msg = f"horizon {T:g} does not cover the target path (last zeta jump {last:g}); extended to {T2:g}"
        warnings.warn(msg, stacklevel=3)
        report.warnings.append(msg)
        T = T2
    return T


def _table_entry(label: str, n, rep, path: ScaleSpacePath, depth: int) -> dict:
    row = {"source": label, "n": n, "replicate": rep, "critical_count": int(path.critical_gammas.size)}
    for i, g in enumerate(table_row(path, depth), start=1):
        row[f"gamma_{i}"] = float(g)
    return row


def _scale_cell(cfg: ExperimentConfig, tau: ScaleSpacePath, T: float, task):
    n, r = task
    f = cfg.signal.function(cfg.noise)
    t0 = time.perf_counter()
    y, _ = _sample(f, cfg.noise, n, r)
    emp = build_path(fit_all_k(y, n - 1))
    t_path = time.perf_counter() - t0
    table = _table_entry("empirical", n, r, emp, cfg.table_depth)
    trunc = truncate(emp, T)
    rep = path_distance(trunc, tau, T, cfg.inner, cfg.skorokhod_tol)
    prow = {"n": n, "replicate": r, "horizon": T, "inner": cfg.inner, "distance": rep.distance,
            "pieces_in_horizon": len(trunc.pieces)}
    snaps = []
    if r == 0:
        for z in np.linspace(0.0, T, cfg.snapshots):
            a, b = eval_path(emp, z), eval_path(tau, z)
            snaps.append({"n": n, "replicate": r, "zeta": float(z), "k_empirical": a.n_jumps,
                          "k_target": b.n_jumps, "l2_to_target": distance(a, b, "L2")})
    timing = {"n": n, "replicate": r, "path_seconds": t_path, "total_seconds": time.perf_counter() - t0}
    return table, prow, snaps, timing


def run_scale_compare(cfg: ExperimentConfig) -> ExperimentReport:
    """Empirical scale spaces against the deterministic one: tables, path distances, snapshots."""
    f = cfg.signal.function(cfg.noise)
    N, exact = _default_grid(f, cfg.target_grid)
    tau = deterministic_path(f, N, allow_off_grid=True)
    report = ExperimentReport("scale_compare", cfg.to_dict())
    T = _horizon(cfg, tau, report)
    report.notes.update(target_grid=N, target_grid_exact=exact, horizon=T,
                        target_ks=tau.ks, target_critical_gammas=tau.critical_gammas.tolist())
    report.tables.append(_table_entry("target", N, "", tau, cfg.table_depth))
    for n in cfg.n_list:
        det = deterministic_path(f, n, allow_off_grid=True)
        report.tables.append(_table_entry("deterministic", n, "", det, cfg.table_depth))
    tasks = [(n, r) for n in cfg.n_list for r in range(cfg.replicates)]
    out = _pool_map(partial(_scale_cell, cfg, tau, T), tasks, cfg.workers)
    out.sort(key=lambda o: (o[1]["n"], o[1]["replicate"]))
    for table, prow, snaps, timing in out:
        report.tables.append(table)
        report.path_rows.append(prow)
        report.snapshots.extend(snaps)
        report.timings.append(timing)
    for n in cfg.n_list:
        d = [p["distance"] for p in report.path_rows if p["n"] == n]
        q = _quantiles(d)
        report.summary.append({"n": n, "replicates": len(d), "path_distance_median": q["median"],
                               "path_distance_q25": q["q25"], "path_distance_q75": q["q75"]})
    return report


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """``PATH`` in the metrics runs the scale-space comparison; any other metric the consistency run."""
    parts = []
    if any(m != "PATH" for m in cfg.metrics):
        parts.append(run_consistency(cfg))
    if "PATH" in cfg.metrics:
        parts.append(run_scale_compare(cfg))
    report = parts[0]
    for p in parts[1:]:
        report = report.merge(p)
    return report
