"""Exact minimisation of the jump-penalised least squares criterion.

For data ``y`` of length ``n`` and ``gamma > 0`` the criterion of a vector
``u`` is ``gamma * #J(u) + (1/n) * sum((u - y)**2)`` with
``J(u) = {i : u_i != u_{i+1}}``. Minimisers are segment means over some
partition, so everything reduces to choosing changepoints.

Canonical tie-break (shared by every solver here): among minimisers whose
objective lies within ``1e-12 * (1 + |objective|)`` of the minimum, take the
fewest jumps, then the lexicographically smallest changepoint sequence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .config import TOL
from .errors import InvalidInput
from .step import StepFunction, as_series, embed

TIE_REL = TOL["tie_rel"]
BRUTE_FORCE_MAX_N = 20

__all__ = [
    "CostKernel",
    "Segmentation",
    "DeltaTable",
    "fit_fixed_gamma",
    "fit_all_k",
    "brute_force",
    "objective",
]


@dataclass(frozen=True)
class CostKernel:
    """Prefix sums of the data centred at its global mean."""

    s1: np.ndarray
    s2: np.ndarray
    n: int
    scale: float

    @classmethod
    def from_series(cls, y) -> "CostKernel":
        y = as_series(y)
        z = y - y.mean()
        s1 = np.zeros(y.size + 1)
        s2 = np.zeros(y.size + 1)
        np.cumsum(z, out=s1[1:])
        np.cumsum(z * z, out=s2[1:])
        return cls(s1, s2, y.size, 1.0 + float(s2[-1]))

    def sse(self, i: int, j: int) -> float:
        """Residual sum of squares of segment ``i..j`` (1-based, inclusive)."""
        if not 1 <= i <= j <= self.n:
            raise InvalidInput(f"bad segment ({i}, {j}) for n = {self.n}")
        a = self.s1[j] - self.s1[i - 1]
        v = (self.s2[j] - self.s2[i - 1]) - a * a / (j - i + 1)
        if v < -TOL["sse_clamp"] * self.scale:
            raise FloatingPointError(f"negative segment SSE {v!r} beyond rounding")
        return max(v, 0.0)


@dataclass(frozen=True)
class Segmentation:
    """Changepoints ``c`` (jump after index ``c``, 1-based) and segment means."""

    n: int
    changepoints: tuple
    means: tuple

    def __post_init__(self):
        cps = tuple(int(c) for c in self.changepoints)
        if any(not 1 <= c <= self.n - 1 for c in cps) or list(cps) != sorted(set(cps)):
            raise InvalidInput(f"changepoints must be strictly increasing in 1..{self.n - 1}")
        if len(self.means) != len(cps) + 1:
            raise InvalidInput("need one mean per segment")
        object.__setattr__(self, "changepoints", cps)
        object.__setattr__(self, "means", tuple(float(m) for m in self.means))

    @classmethod
    def from_changepoints(cls, y, changepoints) -> "Segmentation":
        y = as_series(y)
        cps = tuple(int(c) for c in changepoints)
        bounds = np.asarray((0,) + cps + (y.size,))
        if np.any(np.diff(bounds) <= 0):
            raise InvalidInput(f"changepoints must be strictly increasing in 1..{y.size - 1}")
        return cls._trusted(y, cps, bounds)

    @classmethod
    def _trusted(cls, y: np.ndarray, cps: tuple, bounds: np.ndarray) -> "Segmentation":
        # solver output: changepoints are already valid, skip re-validation
        seg = object.__new__(cls)
        means = np.add.reduceat(y, bounds[:-1]) / np.diff(bounds)
        object.__setattr__(seg, "n", y.size)
        object.__setattr__(seg, "changepoints", cps)
        object.__setattr__(seg, "means", tuple(means.tolist()))
        return seg

    @property
    def n_jumps(self) -> int:
        return len(self.changepoints)

    def fitted(self) -> np.ndarray:
        bounds = (0,) + self.changepoints + (self.n,)
        return np.repeat(self.means, np.diff(bounds))

    def to_step(self) -> StepFunction:
        return embed(self.fitted())

    def to_dict(self, objective: float | None = None) -> dict:
        d = {"n": self.n, "changepoints": list(self.changepoints), "means": list(self.means)}
        if objective is not None:
            d["objective"] = float(objective)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Segmentation":
        try:
            return cls(int(d["n"]), tuple(d["changepoints"]), tuple(d["means"]))
        except KeyError as exc:
            raise InvalidInput(f"segmentation JSON is missing {exc}") from None


@dataclass(frozen=True)
class DeltaTable:
    """Minimal normalised SSE with at most ``k`` jumps, ``k = 0..K``.

    The optimal segmentations are rebuilt from the backtracking table on
    first access; ``segmentation(k)`` builds a single one.
    """

    n: int
    K: int
    delta: np.ndarray
    y: np.ndarray = field(repr=False)
    next_end: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = np.asarray(self.delta, dtype=float)
        if d.size != self.K + 1:
            raise InvalidInput("delta must have K + 1 entries")
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "_cache", {})

    def segmentation(self, k: int) -> Segmentation:
        if not 0 <= k <= self.K:
            raise InvalidInput(f"k = {k} outside 0..{self.K}")
        cache = self._cache
        if k not in cache:
            nxt = self.next_end
            cps = _walk(lambda i, used: nxt[k - used, i], self.n)
            cache[k] = _from_walk(self.y, cps)
        return cache[k]

    @property
    def segmentations(self) -> list:
        return [self.segmentation(k) for k in range(self.K + 1)]


def objective(y, changepoints, gamma: float) -> float:
    """Criterion value of the segment-mean fit with the given changepoints."""
    y = as_series(y)
    seg = Segmentation.from_changepoints(y, changepoints)
    return gamma * seg.n_jumps + float(np.sum((y - seg.fitted()) ** 2)) / y.size


def _walk(next_end, n: int) -> tuple:
    # next_end(i, jumps_so_far) -> last index of the segment starting at i
    cps = []
    i = 0
    while True:
        j = int(next_end(i, len(cps)))
        if j >= n - 1:
            return tuple(cps)
        cps.append(j + 1)
        i = j + 1


def _from_walk(y: np.ndarray, cps: tuple) -> Segmentation:
    return Segmentation._trusted(y, cps, np.array((0,) + cps + (y.size,)))


def fit_fixed_gamma(y, gamma: float):
    """Global minimiser of the criterion for one ``gamma > 0``.

    Returns ``(Segmentation, objective)``. O(n**2) time.
    """
    y = as_series(y)
    if not gamma > 0:
        raise InvalidInput(f"gamma must be positive, got {gamma!r}; use fit_all_k for gamma = 0")
    ck = CostKernel.from_series(y)
    n = ck.n
    nxt, best, _ = kernels.potts_fixed(ck.s1, ck.s2, float(gamma) * n, TIE_REL)
    ends = nxt.tolist()
    cps = []
    j = ends[0]
    while j < n - 1:
        cps.append(j + 1)
        j = ends[j + 1]
    return _from_walk(y, tuple(cps)), best / n


def fit_all_k(y, K: int) -> DeltaTable:
    """Best segmentation with at most ``k`` jumps for every ``k <= K``. O(K n**2)."""
    y = as_series(y)
    n = y.size
    if not isinstance(K, (int, np.integer)) or K < 0:
        raise InvalidInput(f"K must be a non-negative integer, got {K!r}")
    if K >= n:
        raise InvalidInput(f"K = {K} must be at most n - 1 = {n - 1}")
    ck = CostKernel.from_series(y)
    sse, nxt = kernels.potts_all_k(ck.s1, ck.s2, int(K), TIE_REL)
    return DeltaTable(n, int(K), sse / n, y, nxt)


def brute_force(y, gamma: float):
    """Exhaustive minimisation over all ``2**(n-1)`` changepoint sets (n <= 20).

    Independent of the prefix-sum kernels: segment costs are computed directly
    from the data.
    """
    y = as_series(y)
    n = y.size
    if n > BRUTE_FORCE_MAX_N:
        raise InvalidInput(f"brute force refused for n = {n} > {BRUTE_FORCE_MAX_N}")
    if not gamma >= 0:
        raise InvalidInput(f"gamma must be non-negative, got {gamma!r}")
    vals = [float(v) for v in y]
    cost = {}
    for a in range(n):
        for b in range(a + 1, n + 1):
            seg = vals[a:b]
            mu = sum(seg) / len(seg)
            cost[a, b] = sum((v - mu) ** 2 for v in seg)
    results = []
    for k in range(n):
        for cps in itertools.combinations(range(1, n), k):
            bounds = (0,) + cps + (n,)
            sse = sum(cost[a, b] for a, b in zip(bounds[:-1], bounds[1:]))
            results.append((gamma * k + sse / n, cps))
    best = min(r[0] for r in results)
    tol = TIE_REL * (1.0 + abs(best))
    # results are ordered by jump count, then lexicographically
    obj, cps = next(r for r in results if r[0] <= best + tol)
    return Segmentation.from_changepoints(y, cps), obj
