"""Noise generation and maximal partial-sum statistics.

The statistic controlled by the noise condition is

    M_n = max_{1 <= i <= j <= n} (xi_i + ... + xi_j)**2 / (j - i + 1),

and the dyadic variant restricts ``(i, j)`` to blocks ``[k 2**l + 1, (k+1) 2**l]``.
Deterministically ``sqrt(M_n) <= (2 + sqrt(2)) * sqrt(M_dyadic)``.

Random streams: every draw uses a Philox4x64 generator seeded from
``SeedSequence(seed, spawn_key=(n, replicate, stream))`` so that any
``(seed, n, replicate)`` cell can be regenerated on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .config import TOL
from .errors import InvalidInput

DYADIC_FACTOR = 2.0 + math.sqrt(2.0)

STREAM_NOISE = 0

__all__ = [
    "NoiseModel",
    "NoiseDiagnostics",
    "rng_for",
    "sample_noise",
    "beta_n",
    "max_partial_stat",
    "check_dyadic_bound",
    "check_condition_A",
    "parse_model",
]


@dataclass(frozen=True)
class NoiseModel:
    """Independent zero-mean noise.

    kind ``gaussian``: N(0, sigma**2).
    kind ``subgaussian``: N(0, 2 alpha n**zeta), so that E exp(v xi) = exp(alpha n**zeta v**2).
    kind ``moment``: Student t (``dist="t"``, ``df > 2m``) or a centred Pareto/Lomax
    (``dist="pareto"``, ``shape > 2m``), both with finite moments of order 2m.
    """

    kind: str = "gaussian"
    sigma: float = 1.0
    alpha: float = 1.0
    zeta: float = 0.0
    m: float = 3.0
    dist: str = "t"
    df: float = 8.0
    shape: float = 8.0
    C: float | None = None
    seed: int = 0

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind == "gaussian":
            if not self.sigma > 0:
                raise InvalidInput(f"gaussian noise needs sigma > 0, got {self.sigma!r}")
        elif kind == "subgaussian":
            if not self.alpha > 0:
                raise InvalidInput(f"subgaussian noise needs alpha > 0, got {self.alpha!r}")
            if not 0 <= self.zeta < 1:
                raise InvalidInput(f"subgaussian noise needs 0 <= zeta < 1, got {self.zeta!r}")
        elif kind == "moment":
            if not self.m > 2:
                raise InvalidInput(f"moment-bounded noise needs m > 2, got {self.m!r}")
            if self.dist == "t":
                if not self.df > 2 * self.m:
                    raise InvalidInput(
                        f"t noise with df = {self.df} lacks a finite moment of order 2m = {2 * self.m}"
                    )
            elif self.dist == "pareto":
                if not self.shape > 2 * self.m:
                    raise InvalidInput(
                        f"pareto noise with shape = {self.shape} lacks a finite moment of order {2 * self.m}"
                    )
            else:
                raise InvalidInput(f"unknown moment-bounded distribution {self.dist!r}")
        else:
            raise InvalidInput(f"unknown noise kind {self.kind!r}")
        if self.C is not None and not self.C > 0:
            raise InvalidInput("beta constant C must be positive")

    @property
    def scale_hint(self) -> float:
        """Standard deviation of one draw (n = 1 for the subgaussian family)."""
        if self.kind == "gaussian":
            return self.sigma
        if self.kind == "subgaussian":
            return math.sqrt(2 * self.alpha)
        if self.dist == "t":
            return math.sqrt(self.df / (self.df - 2))
        a = self.shape
        return math.sqrt(a / ((a - 1) ** 2 * (a - 2)))


def parse_model(text: str, seed: int = 0) -> NoiseModel:
    """Parse ``gaussian:SIGMA``, ``subgaussian:ALPHA:ZETA``, ``t:M:DF`` or ``pareto:M:SHAPE``."""
    parts = text.split(":")
    try:
        head, args = parts[0].lower(), [float(p) for p in parts[1:]]
        if head == "gaussian":
            return NoiseModel("gaussian", sigma=args[0] if args else 1.0, seed=seed)
        if head == "subgaussian":
            return NoiseModel("subgaussian", alpha=args[0], zeta=args[1] if len(args) > 1 else 0.0, seed=seed)
        if head == "t":
            return NoiseModel("moment", m=args[0], dist="t", df=args[1], seed=seed)
        if head == "pareto":
            return NoiseModel("moment", m=args[0], dist="pareto", shape=args[1], seed=seed)
    except (IndexError, ValueError):
        pass
    raise InvalidInput(f"cannot parse noise model {text!r}")


def rng_for(seed: int, n: int, replicate: int = 0, stream: int = STREAM_NOISE) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(n), int(replicate), int(stream)))
    return np.random.Generator(np.random.Philox(ss))


def sample_noise(model: NoiseModel, n: int, replicate: int = 0, rng: np.random.Generator | None = None) -> np.ndarray:
    """``n`` independent zero-mean draws, reproducible from ``(model.seed, n, replicate)``."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n!r}")
    if rng is None:
        rng = rng_for(model.seed, n, replicate)
    if model.kind == "gaussian":
        return model.sigma * rng.standard_normal(n)
    if model.kind == "subgaussian":
        return math.sqrt(2.0 * model.alpha * n**model.zeta) * rng.standard_normal(n)
    if model.dist == "t":
        return rng.standard_t(model.df, n)
    a = model.shape
    return rng.pareto(a, n) - 1.0 / (a - 1.0)


def beta_n(model: NoiseModel, n: int) -> float:
    """Rate sequence bounding ``M_n`` eventually, per noise family."""
    if not n >= 2:
        raise InvalidInput(f"beta_n needs n >= 2 (log n > 0), got {n!r}")
    logn = math.log(n)
    if model.kind == "gaussian":
        return 2.0 * model.sigma**2 * logn
    if model.kind == "subgaussian":
        C = 13.0 * model.alpha if model.C is None else model.C
        return C * n**model.zeta * logn
    C = 1.0 if model.C is None else model.C
    return C * (n * logn) ** (2.0 / model.m)


def _dyadic(xi: np.ndarray):
    n = xi.size
    s = np.concatenate([[0.0], np.cumsum(xi)])
    best, arg = -1.0, (1, 1)
    length = 1
    while length <= n:
        starts = np.arange(0, n - length + 1, length)
        sums = s[starts + length] - s[starts]
        v = sums * sums / length
        k = int(np.argmax(v))
        if v[k] > best:
            best, arg = float(v[k]), (int(starts[k]) + 1, int(starts[k]) + length)
        length *= 2
    return best, arg


def max_partial_stat(xi, mode: str = "EXACT"):
    """``(value, (i, j))`` with ``value = max (xi_i + ... + xi_j)**2 / (j - i + 1)``.

    ``EXACT`` scans all O(n**2) intervals; ``DYADIC`` only the at most 2n dyadic blocks.
    Indices are 1-based and inclusive; the first maximiser in scan order is reported.
    """
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if xi.size == 0:
        raise InvalidInput("need at least one value")
    mode = mode.upper()
    if mode == "DYADIC":
        return _dyadic(xi)
    if mode != "EXACT":
        raise InvalidInput(f"unknown mode {mode!r}")
    s = np.concatenate([[0.0], np.cumsum(xi)])
    best, i, j = kernels.max_partial_exact(s)
    return float(best), (int(i) + 1, int(j))


def check_dyadic_bound(xi):
    """``(exact, dyadic, ok)`` where ``ok`` is ``sqrt(exact) <= (2+sqrt 2) sqrt(dyadic)`` up to a 1e-12 slack."""
    exact, _ = max_partial_stat(xi, "EXACT")
    dyadic, _ = max_partial_stat(xi, "DYADIC")
    ok = math.sqrt(exact) <= DYADIC_FACTOR * math.sqrt(dyadic) + TOL["dyadic_slack"]
    return exact, dyadic, bool(ok)


@dataclass(frozen=True)
class NoiseDiagnostics:
    n: int
    M_n: float
    M_dyadic: float
    argmax: tuple
    beta: float
    passed: bool
    interval_means_ok: bool | None  # mean-squared bound on every grid interval

    def as_row(self) -> dict:
        return {
            "n": self.n,
            "M_n": self.M_n,
            "M_dyadic": self.M_dyadic,
            "beta_n": self.beta,
            "pass": int(self.passed),
        }


def _interval_means_ok(xi: np.ndarray, beta: float) -> bool:
    # mu_I**2 <= beta / (n l(I)) on every on-grid interval, with l(I) = len / n
    n = xi.size
    c = np.concatenate([[0.0], np.cumsum(xi)])
    for length in range(1, n + 1):
        mu = (c[length:] - c[:-length]) / length
        if np.any(mu * mu * length > beta * (1.0 + 1e-12)):
            return False
    return True


def check_condition_A(xi, beta: float, interval_means: bool = True) -> NoiseDiagnostics:
    """Compare ``M_n`` with ``beta`` and (optionally) check the equivalent interval-mean form."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if not beta > 0:
        raise InvalidInput("beta must be positive")
    exact, arg = max_partial_stat(xi, "EXACT")
    dyadic, _ = max_partial_stat(xi, "DYADIC")
    means_ok = _interval_means_ok(xi, beta) if interval_means else None
    return NoiseDiagnostics(xi.size, exact, dyadic, arg, float(beta), bool(exact <= beta), means_ok)
