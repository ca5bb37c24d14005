"""Service configuration with flags > environment > file precedence."""
from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Mapping

from pydantic import BaseModel, Field, field_validator

from ..adoptmap.tois import Thresholds

ENV_PREFIX = "DOCADOPT_"

# config field -> environment variable (documented in the README)
_ENV_VARS = {
    "host": "DOCADOPT_HOST",
    "port": "DOCADOPT_PORT",
    "corpus_dir": "DOCADOPT_CORPUS",
    "model_dir": "DOCADOPT_MODEL",
    "index_file": "DOCADOPT_INDEX",
    "llm": "DOCADOPT_LLM",
    "llm_base_url": "DOCADOPT_LLM_BASE_URL",
    "llm_model": "DOCADOPT_LLM_MODEL",
    "stub_seed": "DOCADOPT_STUB_SEED",
    "cors_origins": "DOCADOPT_CORS_ORIGINS",
    "augment_rate_limit": "DOCADOPT_AUGMENT_RATE_LIMIT",
    "detect_k": "DOCADOPT_DETECT_K",
}

_INT_FIELDS = {"port", "stub_seed", "detect_k"}
_FLOAT_FIELDS = {"augment_rate_limit"}
_LIST_FIELDS = {"cors_origins"}


class ServiceConfig(BaseModel):
    """Runtime settings for the read-only HTTP service."""

    host: str = "127.0.0.1"
    port: int = 8008
    corpus_dir: str
    model_dir: str
    index_file: str
    llm: str = "stub"
    llm_base_url: str | None = None
    llm_model: str | None = None
    stub_seed: int = 0
    cors_origins: tuple[str, ...] = ()
    augment_rate_limit: float = Field(default=1.0, description="Max /augment requests per second.")
    detect_k: int = 5
    thresholds: dict = Field(default_factory=dict)

    @field_validator("llm")
    @classmethod
    def _known_llm(cls, v: str) -> str:
        if v not in ("stub", "http"):
            raise ValueError("llm must be 'stub' or 'http'")
        return v

    @field_validator("augment_rate_limit")
    @classmethod
    def _positive_rate(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("augment_rate_limit must be positive")
        return v

    def validated_thresholds(self) -> Thresholds:
        return Thresholds(**self.thresholds)

    def check_paths(self) -> None:
        for name, path, dir_ok in (
            ("corpus_dir", self.corpus_dir, True),
            ("model_dir", self.model_dir, True),
            ("index_file", self.index_file, False),
        ):
            p = Path(path)
            if dir_ok and not p.is_dir():
                raise FileNotFoundError(f"{name}: no such directory: {path}")
            if not dir_ok and not p.is_file():
                raise FileNotFoundError(f"{name}: no such file: {path}")

    @classmethod
    def resolve(
        cls,
        config_file: str | Path | None = None,
        flags: Mapping | None = None,
        env: Mapping[str, str] | None = None,
    ) -> "ServiceConfig":
        """Merge sources into a validated config (flags > env > file)."""
        env = os.environ if env is None else env
        merged: dict = {}
        if config_file is not None:
            merged.update(json.loads(Path(config_file).read_text(encoding="utf-8")))
        for field_name, var in _ENV_VARS.items():
            if var not in env:
                continue
            raw = env[var]
            if field_name in _INT_FIELDS:
                merged[field_name] = int(raw)
            elif field_name in _FLOAT_FIELDS:
                merged[field_name] = float(raw)
            elif field_name in _LIST_FIELDS:
                merged[field_name] = tuple(p.strip() for p in raw.split(",") if p.strip())
            else:
                merged[field_name] = raw
        merged.update(flags or {})
        config = cls(**merged)
        config.validated_thresholds()
        return config
