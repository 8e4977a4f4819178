"""Piecewise constant (cadlag) functions on [0, 1] and elementary operations.

A :class:`StepFunction` is right-continuous, with the closed endpoint 1
carrying the last value. Breakpoints are always stored in canonical form:
adjacent values are distinct (exact comparison), so the jump set of the
function is exactly its breakpoint array.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .config import TOL
from .errors import InvalidInput

__all__ = [
    "StepFunction",
    "AnalyticSignal",
    "as_series",
    "embed",
    "integral",
    "interval_means",
    "project_mean",
    "distance",
    "hausdorff_jumps",
    "mpl",
    "cell_means",
    "SIGNALS",
]


def as_series(y) -> np.ndarray:
    """Validate a data vector: 1-d, non-empty, finite."""
    arr = np.asarray(y, dtype=float)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size == 0:
        raise InvalidInput("series must contain at least one value")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("series contains non-finite values")
    return arr


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Cadlag step function on [0, 1] in canonical form.

    ``values[i]`` is the value on ``[b[i-1], b[i])`` with ``b[-1] = 0`` and the
    last value also taken at ``t = 1``. Equal adjacent values are merged on
    construction.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.breakpoints, dtype=float).reshape(-1)
        v = np.asarray(self.values, dtype=float).reshape(-1) + 0.0  # no negative zeros
        if v.size != b.size + 1:
            raise InvalidInput(
                f"need len(values) == len(breakpoints) + 1, got {v.size} and {b.size}"
            )
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(v))):
            raise InvalidInput("breakpoints and values must be finite")
        if b.size and (b[0] <= 0.0 or b[-1] >= 1.0):
            raise InvalidInput("breakpoints must lie in the open interval (0, 1)")
        if b.size > 1 and np.any(np.diff(b) <= 0.0):
            raise InvalidInput("breakpoints must be strictly increasing")
        keep = v[1:] != v[:-1]
        b = b[keep].copy()
        v = np.concatenate([v[:1], v[1:][keep]])
        b.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "values", v)

    @classmethod
    def constant(cls, c: float) -> "StepFunction":
        return cls(np.empty(0), np.array([float(c)]))

    @property
    def jumps(self) -> np.ndarray:
        return self.breakpoints

    @property
    def n_jumps(self) -> int:
        return int(self.breakpoints.size)

    def edges(self) -> np.ndarray:
        """Interval endpoints ``0 = e_0 < e_1 < ... < e_m = 1``."""
        return np.concatenate([[0.0], self.breakpoints, [1.0]])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.breakpoints, t, side="right")
        return self.values[idx]

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return (
            self.breakpoints.shape == other.breakpoints.shape
            and bool(np.all(self.breakpoints == other.breakpoints))
            and bool(np.all(self.values == other.values))
        )

    def __hash__(self):
        return hash((self.breakpoints.tobytes(), self.values.tobytes()))

    def __repr__(self):
        return f"StepFunction(breakpoints={self.breakpoints.tolist()}, values={self.values.tolist()})"

    def scaled(self, c: float) -> "StepFunction":
        return StepFunction(self.breakpoints, self.values * float(c))

    def mean(self) -> float:
        return float(np.dot(np.diff(self.edges()), self.values))

    def sq_norm(self) -> float:
        return float(np.dot(np.diff(self.edges()), self.values**2))

    def to_dict(self) -> dict:
        return {"breakpoints": self.breakpoints.tolist(), "values": self.values.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "StepFunction":
        try:
            return cls(np.asarray(d["breakpoints"], dtype=float), np.asarray(d["values"], dtype=float))
        except KeyError as exc:
            raise InvalidInput(f"step function JSON is missing {exc}") from None


@dataclass(frozen=True)
class AnalyticSignal:
    """A named signal with closed-form antiderivatives of ``f`` and ``f**2``."""

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    antiderivative: Callable[[np.ndarray], np.ndarray]
    sq_antiderivative: Callable[[np.ndarray], np.ndarray]

    def __call__(self, t):
        return self.func(np.asarray(t, dtype=float))

    def mean(self) -> float:
        return float(self.antiderivative(1.0) - self.antiderivative(0.0))

    def sq_norm(self) -> float:
        return float(self.sq_antiderivative(1.0) - self.sq_antiderivative(0.0))


_TWO_PI = 2.0 * np.pi

SIGNALS = {
    "sin": AnalyticSignal(
        "sin",
        lambda t: np.sin(_TWO_PI * t),
        lambda t: -np.cos(_TWO_PI * t) / _TWO_PI,
        lambda t: t / 2.0 - np.sin(2.0 * _TWO_PI * t) / (4.0 * _TWO_PI),
    ),
    "ramp": AnalyticSignal(
        "ramp",
        lambda t: np.asarray(t, dtype=float),
        lambda t: np.asarray(t, dtype=float) ** 2 / 2.0,
        lambda t: np.asarray(t, dtype=float) ** 3 / 3.0,
    ),
}


def embed(u) -> StepFunction:
    """Map a vector of length n to the step function equal to ``u[i]`` on ``[i/n, (i+1)/n)``."""
    u = as_series(u)
    n = u.size
    return StepFunction(np.arange(1, n) / n, u)


def integral(f: StepFunction, a, b):
    """Exact integral of ``f`` over ``[a, b]`` (vectorised in ``a`` and ``b``)."""
    edges = f.edges()
    cum = np.concatenate([[0.0], np.cumsum(np.diff(edges) * f.values)])

    def antider(x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        k = np.clip(np.searchsorted(edges, x, side="right") - 1, 0, f.values.size - 1)
        return cum[k] + (x - edges[k]) * f.values[k]

    return antider(b) - antider(a)


def interval_means(f: StepFunction, a, b) -> np.ndarray:
    """Mean of ``f`` over each ``[a[i], b[i]]``; exact value when no jump falls inside."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ia = np.searchsorted(f.breakpoints, a, side="right")
    ib = np.searchsorted(f.breakpoints, b, side="left")
    out = f.values[ia].astype(float)
    mixed = ib > ia
    if np.any(mixed):
        out[mixed] = integral(f, a[mixed], b[mixed]) / (b[mixed] - a[mixed])
    return out


def _check_jump_set(J) -> np.ndarray:
    J = np.unique(np.asarray(list(J) if not isinstance(J, np.ndarray) else J, dtype=float))
    if J.size and (J[0] <= 0.0 or J[-1] >= 1.0):
        raise InvalidInput("jump locations must lie in the open interval (0, 1)")
    return J


def project_mean(f: StepFunction, J: Iterable[float]) -> StepFunction:
    """Partition-mean function of ``f`` over the partition generated by ``J``."""
    J = _check_jump_set(J)
    edges = np.concatenate([[0.0], J, [1.0]])
    means = interval_means(f, edges[:-1], edges[1:])
    return StepFunction(J, means)


def _merged_pieces(f: StepFunction, g: StepFunction):
    edges = np.union1d(f.edges(), g.edges())
    mids = 0.5 * (edges[:-1] + edges[1:])
    return np.diff(edges), f(mids) - g(mids)


def distance(f: StepFunction, g: StepFunction, metric: str = "L2") -> float:
    """Exact L2 or sup distance between two step functions."""
    widths, diff = _merged_pieces(f, g)
    metric = metric.upper()
    if metric == "L2":
        return float(np.sqrt(np.dot(widths, diff**2)))
    if metric == "SUP":
        return float(np.max(np.abs(diff)))
    raise InvalidInput(f"unknown metric {metric!r}; expected L2 or SUP")


def hausdorff_jumps(A: Sequence[float], B: Sequence[float]) -> float:
    """Hausdorff distance between finite subsets of [0, 1].

    An empty set is at distance 1 from any non-empty set and 0 from itself.
    """
    a = np.asarray(list(A), dtype=float)
    b = np.asarray(list(B), dtype=float)
    if a.size == 0 and b.size == 0:
        return 0.0
    if a.size == 0 or b.size == 0:
        return 1.0
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def mpl(f, T: float = 1.0) -> float:
    """Minimum plateau length: smallest gap in ``J(f) ∪ {0, T}``.

    ``f`` may be a :class:`StepFunction` or an array of jump locations.
    """
    jumps = f.breakpoints if isinstance(f, StepFunction) else np.asarray(f, dtype=float)
    pts = np.unique(np.concatenate([[0.0], jumps, [float(T)]]))
    return float(np.min(np.diff(pts)))


def _simpson_cell_means(func, n: int, atol: float = TOL["quadrature_atol"]) -> np.ndarray:
    m = 4
    edges = np.arange(n + 1) / n

    def rule(m):
        # m even subintervals per cell, composite Simpson
        t = edges[:-1, None] + np.arange(m + 1)[None, :] / (n * m)
        w = np.ones(m + 1)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        vals = np.asarray(func(t), dtype=float)
        return (vals @ w) / (3.0 * m)

    prev = rule(m)
    while m < 4096:
        m *= 2
        cur = rule(m)
        if np.max(np.abs(cur - prev)) < atol:
            return cur
        prev = cur
    return prev


def cell_means(f, n: int) -> np.ndarray:
    """Exact (or quadrature) cell averages ``n * ∫_{(i-1)/n}^{i/n} f``."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n!r}")
    edges = np.arange(n + 1) / n
    if isinstance(f, StepFunction):
        return interval_means(f, edges[:-1], edges[1:])
    if isinstance(f, AnalyticSignal):
        F = f.antiderivative(edges)
        return np.diff(F) * n
    if callable(f):
        return _simpson_cell_means(f, n)
    raise InvalidInput(f"cannot sample signal of type {type(f).__name__}")
