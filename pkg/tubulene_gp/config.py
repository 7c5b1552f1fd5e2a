"""This module defines the configuration class for tubulene-gp.

Values are layered: built-in defaults, then the ``[tool.tubulene-gp]`` table of a ``pyproject.toml``
in the working directory, then the ``AT_MAX_BRUTE_VERTICES`` environment variable. Command-line flags
are applied on top of the result by the cli module.
"""

from __future__ import annotations

import copy
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import TYPE_CHECKING, Any, Literal

import tomlkit

if TYPE_CHECKING:
    from collections.abc import Mapping

CONFIG_TABLE = "tubulene-gp"
MAX_BRUTE_ENV = "AT_MAX_BRUTE_VERTICES"
DEFAULT_MAX_BRUTE_VERTICES = 700


class ConfigError(ValueError):
    """Raised when a configuration value is malformed."""


def _default_config() -> dict[str, Any]:
    return {"tool": {CONFIG_TABLE: {}}}


def _merge_dicts(base: Mapping, addition: Mapping) -> Mapping:
    result = dict(copy.deepcopy(base))
    for key, value in addition.items():
        if isinstance(value, dict) and key in base and isinstance(base[key], dict):
            result[key] = _merge_dicts(base[key], value)
        else:
            result[key] = value
    return result


@dataclass(frozen=True)
class TubuleneConfig:
    """Configuration class for tubulene-gp.

    Attributes:
        max_brute_vertices (int): Largest graph the brute-force automorphism oracle accepts. Defaults to 700.
        max_oracle_vertices (int): Largest graph `verify` runs the BFS oracle on. Defaults to 5000.
        jobs (int): Number of worker processes used by `verify`. Defaults to 1.
        check_structure (bool): Whether `verify` compares against brute force and checks the group structure.
            Defaults to True.
        report_format (Literal['csv', 'json']): Output format of `verify`. Defaults to "csv".
    """

    max_brute_vertices: int = DEFAULT_MAX_BRUTE_VERTICES
    max_oracle_vertices: int = 5000
    jobs: int = 1
    check_structure: bool = True
    report_format: Literal["csv", "json"] = "csv"

    def __post_init__(self):
        for name in ("max_brute_vertices", "max_oracle_vertices", "jobs"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.report_format not in ("csv", "json"):
            raise ConfigError(f"Invalid report format: {self.report_format}")

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> TubuleneConfig:
        """Creates an instance of TubuleneConfig from a dictionary.

        Args:
            d (Mapping[str, Any]): Dictionary containing configuration values. Dashed keys are accepted.

        Returns:
            TubuleneConfig: An instance of TubuleneConfig with values populated from the dictionary.

        Raises:
            ConfigError: If the dictionary contains unknown keys or invalid values.
        """
        d = {k.replace("-", "_"): v for k, v in d.items()}
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")
        return cls(**d)

    @classmethod
    def load(cls, cwd: Path | None = None, environ: Mapping[str, str] | None = None) -> TubuleneConfig:
        """Builds the effective configuration from defaults, `pyproject.toml` and the environment.

        Args:
            cwd (Path | None): Directory searched for `pyproject.toml`. Defaults to the working directory.
            environ (Mapping[str, str] | None): Environment to read overrides from. Defaults to `os.environ`.

        Returns:
            TubuleneConfig: The merged configuration.
        """
        environ = os.environ if environ is None else environ
        pyproject = (cwd or Path.cwd()) / "pyproject.toml"

        local: Mapping[str, Any] = {}
        if pyproject.is_file():
            local = tomlkit.parse(pyproject.read_text(encoding="utf-8")).unwrap()

        table = _merge_dicts(_default_config(), local)["tool"][CONFIG_TABLE]
        config = cls.from_dict(table)

        raw_cap = environ.get(MAX_BRUTE_ENV)
        if raw_cap is not None:
            try:
                cap = int(raw_cap)
            except ValueError as e:
                raise ConfigError(f"{MAX_BRUTE_ENV} must be an integer, got {raw_cap!r}") from e
            config = replace(config, max_brute_vertices=cap)

        return config
