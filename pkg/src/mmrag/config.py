"""Application configuration: one YAML file plus environment overrides.

Environment variables of the form APP__SECTION__KEY=value override the
corresponding nested config entry (e.g. APP__INGEST__MAX_RESULTS=100).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import ConfigError

_ENV_PREFIX = "APP__"


def _coerce(value: str):
    lowered = value.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass
    return value


def apply_env_overrides(data: dict, environ=None) -> dict:
    environ = environ if environ is not None else os.environ
    for key, value in environ.items():
        if not key.startswith(_ENV_PREFIX):
            continue
        path = [p.lower() for p in key[len(_ENV_PREFIX):].split("__")]
        node = data
        for part in path[:-1]:
            node = node.setdefault(part, {})
        node[path[-1]] = _coerce(value)
    return data


@dataclass
class AppConfig:
    data: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path: str | Path, environ=None) -> "AppConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh) or {}
        if not isinstance(data, dict):
            raise ConfigError("config root must be a mapping")
        return cls(apply_env_overrides(data, environ))

    def get(self, dotted: str, default=None):
        node = self.data
        for part in dotted.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def require(self, dotted: str):
        sentinel = object()
        value = self.get(dotted, sentinel)
        if value is sentinel:
            raise ConfigError(f"missing required config key: {dotted}")
        return value

    def section(self, name: str) -> dict:
        value = self.data.get(name, {})
        if not isinstance(value, dict):
            raise ConfigError(f"config section {name!r} must be a mapping")
        return value
