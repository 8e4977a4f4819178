"""Test signals for experiments: Blocks, custom step functions, smooth named
signals and sampled vectors, with optional SNR-based rescaling."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import InvalidInput
from .noise import NoiseModel
from .step import SIGNALS, AnalyticSignal, StepFunction, as_series, embed

__all__ = ["load_blocks", "SignalSpec", "scale_signal", "signal_sd", "read_series"]

_KINDS = ("blocks", "step", "sin", "ramp", "sampled")


def _read_location_height(text: str):
    rows = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.DictReader(rows)
    loc, height = [], []
    for r in reader:
        loc.append(float(r["location"]))
        height.append(float(r["height"]))
    return np.asarray(loc), np.asarray(height)


def load_blocks() -> StepFunction:
    """Unscaled Blocks step function, ``sum_j h_j 1[t >= t_j]``."""
    text = resources.files("jplse").joinpath("data/blocks.csv").read_text(encoding="utf-8")
    loc, height = _read_location_height(text)
    # cumulative sums are rounded so that heights cancelling to zero stay zero
    values = np.round(np.concatenate([[0.0], np.cumsum(height)]), 12)
    return StepFunction(loc, values)


def read_series(path) -> np.ndarray:
    """Series CSV: either one number per line or a header row containing a ``y`` column."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    if not lines:
        raise InvalidInput(f"{path}: no data")
    try:
        return as_series([float(ln.split(",")[0]) for ln in lines])
    except ValueError:
        pass
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or "y" not in [f.strip() for f in reader.fieldnames]:
        raise InvalidInput(f"{path}: expected one value per line or a 'y' column")
    key = next(f for f in reader.fieldnames if f.strip() == "y")
    try:
        return as_series([float(r[key]) for r in reader])
    except (TypeError, ValueError):
        raise InvalidInput(f"{path}: non-numeric entry in column 'y'") from None


def scale_signal(f, c: float):
    if isinstance(f, StepFunction):
        return f.scaled(c)
    if isinstance(f, AnalyticSignal):
        return AnalyticSignal(
            f"{c:g}*{f.name}",
            lambda t, g=f.func: c * g(t),
            lambda t, g=f.antiderivative: c * g(t),
            lambda t, g=f.sq_antiderivative: c * c * g(t),
        )
    raise InvalidInput(f"cannot scale {type(f).__name__}")


def signal_sd(f) -> float:
    """Standard deviation of ``f(U)`` for ``U`` uniform on [0, 1]."""
    return math.sqrt(max(f.sq_norm() - f.mean() ** 2, 0.0))


@dataclass(frozen=True)
class SignalSpec:
    """What to sample. ``snr`` (if set) overrides ``scale`` with ``snr * sigma / sd(f)``."""

    kind: str = "blocks"
    scale: float = 1.0
    snr: float | None = None
    step: StepFunction | None = None
    path: str | None = None

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind not in _KINDS:
            raise InvalidInput(f"unknown signal kind {self.kind!r}; expected one of {', '.join(_KINDS)}")
        if kind == "step" and self.step is None:
            raise InvalidInput("signal kind 'step' needs a step function")
        if kind == "sampled" and not self.path:
            raise InvalidInput("signal kind 'sampled' needs a file path")
        if not math.isfinite(self.scale):
            raise InvalidInput("signal scale must be finite")
        if self.snr is not None and not self.snr > 0:
            raise InvalidInput("snr must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> "SignalSpec":
        d = dict(d)
        step = d.pop("step", None)
        if step is not None:
            step = StepFunction.from_dict(step)
        known = {"kind", "scale", "snr", "path"}
        extra = set(d) - known
        if extra:
            raise InvalidInput(f"unknown signal keys: {', '.join(sorted(extra))}")
        return cls(step=step, **d)

    def base(self):
        if self.kind == "blocks":
            return load_blocks()
        if self.kind == "step":
            return self.step
        if self.kind == "sampled":
            return embed(read_series(self.path))
        return SIGNALS[self.kind]

    def effective_scale(self, noise: NoiseModel | None = None) -> float:
        if self.snr is None:
            return float(self.scale)
        sd = signal_sd(self.base())
        if sd == 0:
            raise InvalidInput("snr scaling is undefined for a constant signal")
        sigma = 1.0 if noise is None else noise.scale_hint
        return float(self.snr * sigma / sd)

    def function(self, noise: NoiseModel | None = None):
        """The (scaled) signal as a StepFunction or AnalyticSignal."""
        c = self.effective_scale(noise)
        f = self.base()
        return f if c == 1.0 else scale_signal(f, c)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "scale": self.scale}
        if self.snr is not None:
            d["snr"] = self.snr
        if self.step is not None:
            d["step"] = self.step.to_dict()
        if self.path is not None:
            d["path"] = self.path
        return d
