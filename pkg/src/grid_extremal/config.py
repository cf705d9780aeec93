"""Run configuration: defaults, JSON config files, environment.

Calibration tolerances (the sweep extrapolation bands) live here rather
than in code so they can be tightened after pilot runs without touching
the test suite.  Precedence: explicit CLI flags > user config file >
GRID_EXTREMAL_WORKERS environment variable > packaged defaults.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Optional

from .errors import InvalidArgumentError

_ENV_WORKERS = "GRID_EXTREMAL_WORKERS"

_KNOWN_KEYS = {"format", "out", "workers", "scan_points_per_gap", "refine_tolerance", "tolerances"}
_KNOWN_TOLERANCES = {
    "ratio_extrapolation_rel",
    "monic_extrapolation_rel",
    "saturated_mass_abs",
}


@dataclass(frozen=True)
class RunConfig:
    """Validated runtime options shared by the CLI and the sweep harness."""

    format: str = "json"
    out: str = "-"
    workers: int = 1
    scan_points_per_gap: int = 8
    refine_tolerance: float = 1e-10
    tolerances: dict = field(default_factory=dict)

    def tolerance(self, name: str) -> float:
        if name not in self.tolerances:
            raise InvalidArgumentError(f"unknown tolerance {name!r}")
        return float(self.tolerances[name])


def _packaged_defaults() -> dict:
    text = resources.files("grid_extremal").joinpath("default_config.json").read_text()
    return json.loads(text)


def _validate(raw: dict, source: str) -> None:
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise InvalidArgumentError(f"unknown config keys in {source}: {sorted(unknown)}")
    tol = raw.get("tolerances", {})
    if not isinstance(tol, dict):
        raise InvalidArgumentError(f"'tolerances' must be an object in {source}")
    unknown_tol = set(tol) - _KNOWN_TOLERANCES
    if unknown_tol:
        raise InvalidArgumentError(
            f"unknown tolerance keys in {source}: {sorted(unknown_tol)}"
        )
    if "format" in raw and raw["format"] not in ("json", "csv"):
        raise InvalidArgumentError(f"format must be 'json' or 'csv' in {source}")
    if "workers" in raw and (not isinstance(raw["workers"], int) or raw["workers"] < 1):
        raise InvalidArgumentError(f"workers must be a positive integer in {source}")
    if "scan_points_per_gap" in raw and (
        not isinstance(raw["scan_points_per_gap"], int) or raw["scan_points_per_gap"] < 2
    ):
        raise InvalidArgumentError(f"scan_points_per_gap must be an integer >= 2 in {source}")


def load_config(path: Optional[str] = None) -> RunConfig:
    """Packaged defaults, optionally merged with a user JSON config file."""
    raw = _packaged_defaults()
    _validate(raw, "packaged defaults")
    user_set_workers = False
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            user = json.load(fh)
        _validate(user, path)
        user_set_workers = "workers" in user
        tol = dict(raw.get("tolerances", {}))
        tol.update(user.get("tolerances", {}))
        raw.update({k: v for k, v in user.items() if k != "tolerances"})
        raw["tolerances"] = tol
    cfg = RunConfig(**raw)
    env_workers = os.environ.get(_ENV_WORKERS)
    if env_workers is not None and not user_set_workers:
        try:
            cfg = replace(cfg, workers=max(1, int(env_workers)))
        except ValueError as exc:
            raise InvalidArgumentError(
                f"{_ENV_WORKERS} must be an integer, got {env_workers!r}"
            ) from exc
    return cfg


DEFAULT_CONFIG = load_config()
