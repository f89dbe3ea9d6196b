"""Run configuration: INI file parsing, flag overrides, metadata sidecars.

A configuration is a flat dict of typed keys.  On disk it is a single
INI-style file with sections [system], [drive], [run]; any command-line
flag overrides the file value.  Every output file gets a JSON sidecar
carrying the full effective configuration, its canonical serialization,
and a content hash, so outputs are reproducible from the sidecar alone.
"""

from __future__ import annotations

import configparser
import hashlib
import io
import json
from pathlib import Path

from .errors import ConfigError

__all__ = [
    "DEFAULTS",
    "KEY_SECTIONS",
    "load_config",
    "merge_overrides",
    "serialize_config",
    "parse_config_text",
    "config_hash",
    "write_sidecar",
]

#: Default configuration.  Physics defaults mirror the documented
#: figure/table parameters: alpha_s = 0.112, lambda = 0.2 GeV^2 behind
#: the presets, and (Z, lam) = (0.15, 0.4) for the figure-style runs.
DEFAULTS = {
    "Z": 0.15,
    "lam": 0.4,
    "L": 0.0,
    "preset": "",
    "n": 5.0,
    "omega": 0.0,
    "omega_unit": "natural",
    "eps_ratio": 0.5,
    "mode": "hydrogen,small_a,large_a",
    "system": "all",
    "n_min": 1.0,
    "n_max": 20.0,
    "n_step": 0.25,
    "n_periods": 0,
    "per_circle": 20,
    "k": 1,
    "count": 50,
    "jobs": 1,
    "seed": 0,
}

#: Which INI section each key lives in (round-trip layout).
KEY_SECTIONS = {
    "system": {"Z", "lam", "L", "preset"},
    "drive": {"omega", "omega_unit", "eps_ratio"},
    "run": {
        "n",
        "mode",
        "system",
        "n_min",
        "n_max",
        "n_step",
        "n_periods",
        "per_circle",
        "k",
        "count",
        "jobs",
        "seed",
    },
}

_TYPES = {k: type(v) for k, v in DEFAULTS.items()}


def _coerce(key: str, raw):
    if key not in _TYPES:
        raise ConfigError(f"unknown configuration key {key!r}")
    t = _TYPES[key]
    try:
        if t is float:
            return float(raw)
        if t is int:
            return int(raw)
        return str(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc


def parse_config_text(text: str) -> dict:
    """Parse INI text into a full config dict (defaults filled in)."""
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keys are case-sensitive ("Z", "L")
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    cfg = dict(DEFAULTS)
    for section in parser.sections():
        if section not in KEY_SECTIONS:
            raise ConfigError(f"unknown config section [{section}]")
        for key, raw in parser.items(section):
            if key not in KEY_SECTIONS[section]:
                raise ConfigError(f"key {key!r} does not belong in section [{section}]")
            cfg[key] = _coerce(key, raw)
    return cfg


def load_config(path) -> dict:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    return parse_config_text(p.read_text(encoding="utf-8"))


def merge_overrides(cfg: dict, overrides: dict) -> dict:
    out = dict(cfg)
    for key, val in overrides.items():
        if val is None:
            continue
        out[key] = _coerce(key, val)
    return out


def serialize_config(cfg: dict) -> str:
    """Canonical INI serialization (stable key order)."""
    parser = configparser.ConfigParser()
    parser.optionxform = str
    for section in ("system", "drive", "run"):
        parser.add_section(section)
        for key in sorted(KEY_SECTIONS[section]):
            parser.set(section, key, str(cfg[key]))
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


def config_hash(cfg: dict) -> str:
    return hashlib.sha256(serialize_config(cfg).encode("utf-8")).hexdigest()


def write_sidecar(out_path, cfg: dict, extra: dict = None) -> Path:
    """Write <out>.meta.json next to an output file; returns its path."""
    side = Path(str(out_path) + ".meta.json")
    payload = {
        "config": cfg,
        "config_ini": serialize_config(cfg),
        "config_sha256": config_hash(cfg),
    }
    if extra:
        payload.update(extra)
    side.write_text(json.dumps(payload, indent=2, default=str), encoding="utf-8")
    return side
