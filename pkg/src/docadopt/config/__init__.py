"""Packaged default configuration data."""
from __future__ import annotations

import json
from importlib import resources


def _read(name: str) -> dict:
    return json.loads(resources.files("docadopt.config").joinpath(name).read_text())


def load_domains() -> list[str]:
    """The configured OSS domain list used to validate discovery requests."""
    return list(_read("domains.json")["domains"])


def load_toi_config() -> list[dict]:
    """Default TOI specs as raw dicts: [{name, phrases}, ...]."""
    return list(_read("tois.json")["tois"])


def load_sweep_grid() -> dict[str, list]:
    """Default one-at-a-time sweep grid: hyperparameter -> value list."""
    return dict(_read("sweep_grid.json")["grid"])
