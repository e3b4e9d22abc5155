"""Run configuration: flat key = value files, env fallback, defaults.

The file format is deliberately small: one ``key = value`` pair per
line, ``#`` comments, values either numbers, bare strings, or SI
quantities with a unit tag (``hbar = 1.054571817e-34 J.s``).  Flags
always override config values; the ``QDEFORM_CONFIG`` environment
variable names a config file to use when ``--config`` is not given.
"""

from __future__ import annotations

import os
from typing import Optional

ENV_VAR = "QDEFORM_CONFIG"

DEFAULTS = {
    # symbolic engine
    "symbolic.degree": "10",
    # matrix engine
    "matrix.dim": "64",
    "matrix.mu": "0.2",
    "matrix.nu": "0.2",
    # residual envelope validated for mu, nu <= 0.6, N <= 128 (see README)
    "matrix.residual_threshold": "1e-8",
    "matrix.sqrt_cosh_threshold": "1e-10",
    # eigensolver round-off floor for interior residuals
    "matrix.noise_floor": "1e-12",
    "matrix.overflow_guard": "25.0",
    # clock-shift engine
    "clockshift.residual_threshold": "1e-12",
    "clockshift.unitary_threshold": "1e-13",
    "clockshift.power_threshold": "1e-12",
    "clockshift.periodicity_threshold": "1e-9",
    # parameter maps and contraction paths
    "params.alpha": "1.0",
    "params.beta": "1.0",
    "params.mu0": "1.0",
    "params.nu0": "1.0",
    "params.endpoint_tol": "1e-3",
    "params.phase_threshold": "1e-12",
}


class ConfigError(ValueError):
    pass


def parse_config_text(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "#" in line:
            line = line.split("#", 1)[0].strip()
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ConfigError(f"config line {lineno}: empty key or value")
        out[key] = value
    return out


def load_config(path: Optional[str] = None) -> dict[str, str]:
    """Defaults, overlaid with the file from ``path`` or ``QDEFORM_CONFIG``."""
    merged = dict(DEFAULTS)
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    if path:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        merged.update(parse_config_text(text))
    return merged


def get_float(cfg: dict[str, str], key: str) -> float:
    try:
        return float(cfg[key])
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad config value for {key}") from exc


def get_int(cfg: dict[str, str], key: str) -> int:
    try:
        return int(cfg[key])
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad config value for {key}") from exc
