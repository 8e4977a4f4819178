"""Packaged defaults (tolerances, thresholds) and TOML loading."""

from __future__ import annotations

import sys
from importlib import resources

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import InvalidInput


def load_toml(path) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def _load_defaults() -> dict:
    text = resources.files("jplse").joinpath("data/defaults.toml").read_text(encoding="utf-8")
    return tomllib.loads(text)


DEFAULTS = _load_defaults()
TOL = DEFAULTS["tolerances"]
