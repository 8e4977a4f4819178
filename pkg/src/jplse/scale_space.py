"""Solution path over the penalty (the scale space).

The optimal value ``min_k (k * gamma + delta_k)`` is a minimum of finitely
many lines, so the minimiser changes only at the slopes of the lower convex
hull of ``{(k, delta_k)}``. Paths are stored over ``gamma`` and evaluated over
``zeta = 1 / gamma``; at a critical value the larger-``k`` piece is returned,
which makes the path right-continuous in ``zeta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .config import TOL
from .errors import InvalidInput
from .segment import TIE_REL, DeltaTable, Segmentation, fit_all_k
from .step import AnalyticSignal, StepFunction, cell_means, distance, embed

__all__ = [
    "PathPiece",
    "ScaleSpacePath",
    "lower_hull",
    "build_path",
    "eval_path",
    "truncate",
    "deterministic_path",
    "suggest_grid",
    "table_row",
]


@dataclass(frozen=True)
class PathPiece:
    k: int
    gamma_lo: float
    gamma_hi: float  # math.inf for the first piece
    function: StepFunction
    delta: float
    segmentation: Segmentation | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        hi = None if math.isinf(self.gamma_hi) else self.gamma_hi
        return {
            "k": self.k,
            "gamma_interval": [self.gamma_lo, hi],
            "delta": self.delta,
            "function": self.function.to_dict(),
        }


@dataclass(frozen=True)
class ScaleSpacePath:
    """Decreasing critical penalties and the minimiser on each open interval."""

    critical_gammas: np.ndarray
    pieces: tuple
    n: int
    residual: float = 0.0

    def __post_init__(self):
        g = np.asarray(self.critical_gammas, dtype=float)
        if len(self.pieces) != g.size + 1:
            raise InvalidInput("a path needs exactly one more piece than critical values")
        if g.size and (np.any(g <= 0) or np.any(np.diff(g) >= 0)):
            raise InvalidInput("critical gammas must be positive and strictly decreasing")
        object.__setattr__(self, "critical_gammas", g)
        object.__setattr__(self, "pieces", tuple(self.pieces))

    @property
    def zeta_jumps(self) -> np.ndarray:
        return 1.0 / self.critical_gammas

    @property
    def ks(self) -> list:
        return [p.k for p in self.pieces]

    def piece_index(self, gamma: float) -> int:
        """Index of the piece minimising at ``gamma`` (larger-k piece at a critical value)."""
        if gamma <= 0:
            raise InvalidInput("gamma must be positive")
        return int(np.count_nonzero(self.critical_gammas >= gamma))

    def objective(self, gamma: float) -> float:
        """Optimal criterion value at ``gamma`` (includes the residual offset)."""
        p = self.pieces[self.piece_index(gamma)]
        return p.k * gamma + p.delta + self.residual

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "residual": self.residual,
            "critical_gammas": self.critical_gammas.tolist(),
            "pieces": [p.to_dict() for p in self.pieces],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScaleSpacePath":
        try:
            pieces = []
            for p in d["pieces"]:
                lo, hi = p["gamma_interval"]
                pieces.append(
                    PathPiece(
                        int(p["k"]),
                        float(lo),
                        math.inf if hi is None else float(hi),
                        StepFunction.from_dict(p["function"]),
                        float(p.get("delta", math.nan)),
                    )
                )
            return cls(np.asarray(d["critical_gammas"], dtype=float), tuple(pieces),
                       int(d.get("n", 0)), float(d.get("residual", 0.0)))
        except KeyError as exc:
            raise InvalidInput(f"path JSON is missing {exc}") from None

    def to_csv_rows(self):
        """``(i, critical_gamma, zeta, k)`` rows; ``k`` is the jump count just below ``gamma_i``."""
        for i, g in enumerate(self.critical_gammas, start=1):
            yield i, float(g), float(1.0 / g), self.pieces[i].k


def lower_hull(delta) -> list:
    """Vertices ``k`` of the lower convex hull of ``(k, delta_k)`` that are strictly optimal
    for some positive penalty.

    Collinear points and flat trailing runs are dropped, keeping the smallest ``k``.
    """
    d = np.asarray(delta, dtype=float)
    tol = TIE_REL * (1.0 + abs(d[0]))
    hull = []
    for k in range(d.size):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            chord = d[a] + (d[k] - d[a]) * (b - a) / (k - a)
            if chord - d[b] > tol:
                break
            hull.pop()
        hull.append(k)
    while len(hull) >= 2 and d[hull[-2]] - d[hull[-1]] <= tol:
        hull.pop()
    return hull


def build_path(delta: DeltaTable, n: int | None = None) -> ScaleSpacePath:
    """Scale space from a complete Delta table (``K = n - 1``)."""
    n = delta.n if n is None else int(n)
    if n != delta.n:
        raise InvalidInput(f"delta table is for n = {delta.n}, not {n}")
    if delta.K != n - 1:
        raise InvalidInput(f"delta table must be complete (K = n - 1 = {n - 1}), got K = {delta.K}")
    d = delta.delta
    tol = TIE_REL * (1.0 + abs(d[0]))
    if np.any(np.diff(d) > tol):
        raise InvalidInput("delta values must be non-increasing in k")
    ks = lower_hull(d)
    gammas = [(d[a] - d[b]) / (b - a) for a, b in zip(ks[:-1], ks[1:])]
    bounds = [math.inf] + gammas + [0.0]
    pieces = []
    for i, k in enumerate(ks):
        seg = delta.segmentation(k)
        pieces.append(PathPiece(k, bounds[i + 1], bounds[i], seg.to_step(), float(d[k]), seg))
    return ScaleSpacePath(np.asarray(gammas), tuple(pieces), n)


def eval_path(path: ScaleSpacePath, zeta: float) -> StepFunction:
    """Value of the path at ``zeta = 1/gamma``; ``zeta = 0`` gives the constant mean fit."""
    if not zeta >= 0:
        raise InvalidInput(f"zeta must be non-negative, got {zeta!r}")
    idx = int(np.searchsorted(path.zeta_jumps, zeta, side="right"))
    return path.pieces[idx].function


def truncate(path: ScaleSpacePath, T: float) -> ScaleSpacePath:
    """Drop the pieces that start at or beyond ``zeta = T``."""
    if not T > 0:
        raise InvalidInput("horizon must be positive")
    m = int(np.count_nonzero(path.zeta_jumps < T))
    pieces = list(path.pieces[: m + 1])
    pieces[-1] = replace(pieces[-1], gamma_lo=0.0)
    return ScaleSpacePath(path.critical_gammas[:m], tuple(pieces), path.n, path.residual)


def table_row(path: ScaleSpacePath, depth: int = 11) -> np.ndarray:
    """The ``depth`` largest critical penalties, right-padded with zeros."""
    row = np.zeros(depth)
    g = path.critical_gammas[:depth]
    row[: g.size] = g
    return row


def suggest_grid(f: StepFunction, max_denominator: int = 10**6) -> int | None:
    """Smallest grid size ``N`` with every breakpoint on ``{i/N}``, if one exists."""
    N = 1
    for b in f.breakpoints:
        fr = Fraction(float(b)).limit_denominator(max_denominator)
        if abs(float(fr) - b) > 1e-12:
            return None
        N = N * fr.denominator // math.gcd(N, fr.denominator)
    return max(N, 2)


def _on_grid(f: StepFunction, N: int) -> bool:
    x = f.breakpoints * N
    return bool(np.all(np.abs(x - np.round(x)) <= TOL["grid_match"]))


def _residual(f, fbar: np.ndarray) -> float:
    N = fbar.size
    if isinstance(f, StepFunction):
        return distance(f, embed(fbar), "L2") ** 2
    if isinstance(f, AnalyticSignal):
        sq = f.sq_norm()
    else:
        sq = float(np.mean(cell_means(lambda t: np.asarray(f(t)) ** 2, N)))
    return max(sq - float(np.mean(fbar**2)), 0.0)


def deterministic_path(f, N: int, allow_off_grid: bool = False) -> ScaleSpacePath:
    """Scale space of the continuous criterion for a known signal ``f``, with jumps
    restricted to the grid ``{i/N}``.

    Exact for step functions whose breakpoints lie on the grid; otherwise a grid
    approximation (refused for off-grid step functions unless ``allow_off_grid``).
    The constant ``||f - iota(fbar_N)||**2`` is stored as ``path.residual``.
    """
    if not isinstance(N, (int, np.integer)) or N < 2:
        raise InvalidInput(f"grid size must be an integer >= 2, got {N!r}")
    if isinstance(f, StepFunction) and not allow_off_grid and not _on_grid(f, N):
        hint = suggest_grid(f)
        msg = f"breakpoints of f are not on the grid i/{N}"
        if hint is not None:
            msg += f"; use N = {hint} (or a multiple)"
        raise InvalidInput(msg)
    fbar = cell_means(f, int(N))
    path = build_path(fit_all_k(fbar, int(N) - 1))
    return replace(path, residual=_residual(f, fbar))
