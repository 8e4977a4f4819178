"""Skorokhod J1 distance between step functions and between scale-space paths.

For step functions the distance only depends on where a time change sends
the jumps. Write ``s_1 < ... < s_p`` for the jumps of ``f`` and
``t_1 < ... < t_q`` for those of ``g`` on ``[0, T]``. A time change is
described by the preimages ``u_i = lambda^{-1}(s_i)``; linear interpolation
between the knots ``(0, 0), (u_i, s_i), (T, T)`` is optimal, so
``L(lambda) <= eps`` reduces to ``e^-eps <= (s_i - s_{i-1}) / (u_i - u_{i-1}) <= e^eps``.
The interleaving of the ``u_i`` with the ``t_j`` fixes which value pairs
``(f_a, g_b)`` are compared, i.e. a monotone lattice path through the
``(p+1) x (q+1)`` grid of value distances (a ``u_i`` equal to a ``t_j``
matches the two jumps and moves diagonally).

Feasibility for a given ``eps`` is decided by a sweep over that grid that
propagates the reachable positions of each ``u_i`` as unions of closed
intervals; the distance is found by bisection on ``eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .errors import InvalidInput
from .step import StepFunction, distance

__all__ = [
    "TimeChange",
    "PathDistanceReport",
    "skorokhod_distance",
    "j1_step_distance",
    "path_distance",
]


@dataclass(frozen=True)
class TimeChange:
    """Piecewise linear increasing bijection of ``[0, T]`` given by its knots ``(t, lambda(t))``."""

    knots: tuple

    def __post_init__(self):
        k = np.asarray(self.knots, dtype=float)
        if k.ndim != 2 or k.shape[1] != 2 or k.shape[0] < 2:
            raise InvalidInput("a time change needs at least two (t, lambda(t)) knots")
        if np.any(np.diff(k[:, 0]) <= 0) or np.any(np.diff(k[:, 1]) <= 0):
            raise InvalidInput("time change knots must be strictly increasing in both coordinates")
        if k[0, 0] != 0 or k[0, 1] != 0 or k[-1, 0] != k[-1, 1]:
            raise InvalidInput("time change must fix both endpoints")
        object.__setattr__(self, "knots", tuple(map(tuple, k.tolist())))

    @classmethod
    def identity(cls, T: float = 1.0) -> "TimeChange":
        return cls(((0.0, 0.0), (float(T), float(T))))

    def __call__(self, t):
        k = np.asarray(self.knots)
        return np.interp(t, k[:, 0], k[:, 1])

    def lipschitz_log(self) -> float:
        """``L(lambda)``: the largest absolute log-slope over the linear pieces."""
        k = np.asarray(self.knots)
        slopes = np.diff(k[:, 1]) / np.diff(k[:, 0])
        return float(np.max(np.abs(np.log(slopes))))

    def to_dict(self) -> dict:
        return {"knots": [list(p) for p in self.knots]}


@dataclass(frozen=True)
class PathDistanceReport:
    distance: float
    witness: TimeChange
    horizon: float
    inner: str
    inner_distances: np.ndarray = field(repr=False)
    matched_inner: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "distance": self.distance,
            "horizon": self.horizon,
            "inner": self.inner,
            "witness": self.witness.to_dict(),
            "inner_distances": self.inner_distances.tolist(),
            "matched_inner": self.matched_inner,
        }


# --- interval-set helpers (sorted lists of closed [lo, hi]) -------------------

def _merge(ivs):
    if not ivs:
        return []
    ivs = sorted(ivs)
    out = [list(ivs[0])]
    for lo, hi in ivs[1:]:
        if lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return [tuple(x) for x in out]


def _shift(ivs, a, b):
    return [(lo + a, hi + b) for lo, hi in ivs]


def _clip(ivs, lo, hi):
    out = []
    for a, b in ivs:
        a2, b2 = max(a, lo), min(b, hi)
        if a2 <= b2:
            out.append((a2, b2))
    return out


def _contains(ivs, x):
    return any(a <= x <= b for a, b in ivs)


# --- core -----------------------------------------------------------------------

def _sweep(s, t, D, eps, T, keep=False):
    """Reachable sets of each preimage ``u_i`` for tolerance ``eps``.

    Returns ``None`` if infeasible, else per-row lists ``R[i][(j, matched)]``.
    """
    p, q = s.size, t.size
    ok = D <= eps
    if not (ok[0, 0] and ok[p, q]):
        return None
    lo_f, hi_f = math.exp(-eps), math.exp(eps)
    sp = np.concatenate([[0.0], s, [T]])
    tt = np.concatenate([[0.0], t, [T]])
    prev = {(0, True): [(0.0, 0.0)]}
    rows = [prev] if keep else None
    for i in range(1, p + 2):
        d = sp[i] - sp[i - 1]
        a, b = d * lo_f, d * hi_f
        P = {}
        for (j, _), ivs in prev.items():
            P.setdefault(j, []).extend(_shift(ivs, a, b))
        cur = {}
        carry = []
        for j in range(q + 1):
            # matched at t_j: reached from row i-1 without passing cell (i-1, j)
            if i <= p and j >= 1 and ok[i, j] and carry and _contains(carry, tt[j]):
                cur[(j, True)] = [(tt[j], tt[j])]
            if ok[i - 1, j]:
                carry = _merge(carry + P.get(j, []))
            else:
                carry = []
            if not carry:
                continue
            if i <= p:
                if ok[i, j]:
                    r = _clip(carry, tt[j], tt[j + 1])
                    if r:
                        cur[(j, False)] = r
            elif j == q and _contains(carry, T):
                cur[(q, True)] = [(T, T)]
        if not cur:
            return None
        prev = cur
        if keep:
            rows.append(cur)
    if (q, True) not in prev or i != p + 1:
        return None
    return rows if keep else True


def _witness(s, t, D, eps, T):
    rows = _sweep(s, t, D, eps, T, keep=True)
    if rows is None:
        raise RuntimeError("witness requested at an infeasible tolerance")
    p, q = s.size, t.size
    ok = D <= eps
    lo_f, hi_f = math.exp(-eps), math.exp(eps)
    sp = np.concatenate([[0.0], s, [T]])
    x, state = T, (q, False)  # reaching T passes every remaining cell of the last row
    us = [T]
    path_cells = []
    for i in range(p + 1, 0, -1):
        d = sp[i] - sp[i - 1]
        j, matched = state
        # the sweep built these bounds by addition; allow for rounding when undoing it
        slack = 1e-12 * max(1.0, T)
        window = (x - d * hi_f - slack, x - d * lo_f + slack)
        last = j - 1 if matched else j
        chosen = None
        jp = last
        while jp >= 0 and chosen is None:
            if not ok[i - 1, jp]:
                break
            for key in ((jp, True), (jp, False)):
                ivs = _clip(rows[i - 1].get(key, []), *window)
                if ivs:
                    target = x - d
                    best = min(ivs, key=lambda iv: 0.0 if iv[0] <= target <= iv[1] else min(abs(iv[0] - target), abs(iv[1] - target)))
                    chosen = (key, min(max(target, best[0]), best[1]))
                    break
            jp -= 1
        if chosen is None:
            raise RuntimeError("witness backtracking failed")
        (jp, m), x = chosen
        path_cells.extend((i - 1, jj) for jj in range(last, jp - 1, -1))
        state = (jp, m)
        us.append(x)
    us = us[::-1]
    knots = [(0.0, 0.0)] + [(float(u), float(v)) for u, v in zip(us[1:-1], s)] + [(float(T), float(T))]
    # guard against rounding collapsing adjacent knots
    clean = [knots[0]]
    for k in knots[1:]:
        if k[0] > clean[-1][0] and k[1] > clean[-1][1]:
            clean.append(k)
    if clean[-1] != (float(T), float(T)):
        clean[-1] = (float(T), float(T))
    return TimeChange(tuple(clean)), path_cells[::-1]


def j1_step_distance(s, t, D, T: float = 1.0, tol: float = TOL["skorokhod_tol"], upper: float | None = None):
    """J1 distance between two step paths on ``[0, T]``.

    ``s``/``t`` are the jump times of the two paths and ``D[a, b]`` the distance
    between value ``a`` of the first and value ``b`` of the second.
    Returns ``(distance, witness, visited_cells)``.
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    D = np.asarray(D, dtype=float)
    if not tol > 0:
        raise InvalidInput(f"tol must be positive, got {tol!r}")
    if D.shape != (s.size + 1, t.size + 1):
        raise InvalidInput("distance matrix shape does not match the jump counts")
    if s.size == t.size and np.array_equal(s, t) and np.all(np.diag(D) == 0):
        return 0.0, TimeChange.identity(T), [(i, i) for i in range(s.size + 1)]
    lo = max(D[0, 0], D[-1, -1])
    if upper is None:
        # identity time change: compare on the merged partition
        edges = np.union1d(np.concatenate([[0.0], s]), np.concatenate([[0.0], t]))
        ia = np.searchsorted(s, edges, side="right")
        ib = np.searchsorted(t, edges, side="right")
        upper = float(np.max(D[ia, ib]))
    hi = max(float(upper), lo)
    if _sweep(s, t, D, hi, T) is None:
        # rounding at the bracket edge; widen slightly
        hi = hi + tol
        while _sweep(s, t, D, hi, T) is None:
            hi *= 2.0
    if _sweep(s, t, D, lo, T) is not None:
        hi = lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _sweep(s, t, D, mid, T) is None:
            lo = mid
        else:
            hi = mid
    witness, cells = _witness(s, t, D, hi, T)
    return float(hi), witness, cells


def skorokhod_distance(f: StepFunction, g: StepFunction, tol: float = TOL["skorokhod_tol"]):
    """J1 distance ``inf_lambda max(L(lambda), sup_t |f(lambda(t)) - g(t)|)`` within ``tol``.

    Returns ``(distance, witness)`` where ``f(witness(t))`` is compared with ``g(t)``.
    """
    if not tol > 0:
        raise InvalidInput(f"tol must be positive, got {tol!r}")
    if f == g:
        return 0.0, TimeChange.identity()
    D = np.abs(f.values[:, None] - g.values[None, :])
    d, w, _ = j1_step_distance(f.breakpoints, g.breakpoints, D, 1.0, tol, upper=distance(f, g, "SUP"))
    return d, w


def _inner_matrix(P, Q, inner, tol):
    D = np.empty((len(P), len(Q)))
    for a, fa in enumerate(P):
        for b, gb in enumerate(Q):
            if inner == "L2":
                D[a, b] = distance(fa, gb, "L2")
            else:
                D[a, b] = skorokhod_distance(fa, gb, tol)[0]
    return D


def path_distance(p, q, T: float, inner: str = "L2", tol: float = TOL["skorokhod_tol"]) -> PathDistanceReport:
    """J1 distance between two scale-space paths viewed as step paths in ``zeta`` on ``[0, T]``.

    Both paths must have all their ``zeta`` jumps strictly below ``T``
    (see :func:`jplse.scale_space.truncate`).
    """
    inner = inner.upper()
    if inner not in ("L2", "SKOROKHOD"):
        raise InvalidInput(f"inner metric must be L2 or SKOROKHOD, got {inner!r}")
    if not T > 0 or not tol > 0:
        raise InvalidInput("horizon and tol must be positive")
    for name, path in (("first", p), ("second", q)):
        if path.zeta_jumps.size and path.zeta_jumps[-1] >= T:
            raise InvalidInput(
                f"{name} path has a zeta jump at {path.zeta_jumps[-1]:.6g} >= T = {T}; truncate first"
            )
    P = [piece.function for piece in p.pieces]
    Q = [piece.function for piece in q.pieces]
    D = _inner_matrix(P, Q, inner, tol)
    d, witness, cells = j1_step_distance(p.zeta_jumps, q.zeta_jumps, D, float(T), tol)
    matched = [float(D[a, b]) for a, b in cells]
    return PathDistanceReport(d, witness, float(T), inner, D, matched)
