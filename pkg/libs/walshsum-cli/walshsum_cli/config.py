"""Configuration, constants and the shared console for the CLI."""

from __future__ import annotations

import configparser
import io
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any

import dotenv
from rich.console import Console

dotenv.load_dotenv()

# Color scheme
COLORS = {
    "primary": "#10b981",
    "dim": "#6b7280",
    "pass": "#34d399",
    "fail": "#ef4444",
    "warn": "#fbbf24",
}

CONFIG_ENV = "WALSHSUM_CONFIG"
WORKERS_ENV = "WALSHSUM_WORKERS"

COMMANDS = {
    "lemmas": "Verify the kernel identities and norm bounds",
    "kernel-norms": "Tabulate ||K_n||_1 and check the 17/15 bound",
    "bounds": "Verify the approximation theorems over a corpus sweep",
    "corpus": "Dump the generated test functions",
}

MODES = ("exact", "float")
FORMATS = ("csv", "jsonl")

# Status output goes to stderr; stdout carries data tables only.
console = Console(stderr=True, highlight=False)


class ConfigError(Exception):
    """Invalid config file, environment value or flag combination."""


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration of one run.

    Every field can be set in the ``[common]`` section, in the command's own
    section, or by the flag of the same name; later sources win.
    """

    command: str
    rank: int | None = None
    n_min: int = 1
    n_max: int = 256
    scheme: tuple[str, ...] = ("fejer",)
    p: tuple[str, ...] = ("1", "2")
    mode: str = "exact"
    seed: int = 0
    only: tuple[str, ...] = ()
    corpus_kind: tuple[str, ...] = ("walsh-polynomial", "random-step", "dyadic-hoelder", "interval-indicator")
    corpus_ranks: tuple[int, ...] = (3, 4, 5, 6)
    corpus_count: int = 2
    beta: tuple[str, ...] = ("1", "2")
    blahota_rows: int = 50
    blahota_stride: int = 8
    workers: int = 1
    format: str = "csv"
    out: str | None = None

    def echo(self) -> str:
        """The effective configuration as INI text, loadable with ``--config``."""
        parser = configparser.ConfigParser(interpolation=None)
        section: dict[str, str] = {}
        for name, value in asdict(self).items():
            if name == "command" or value is None:
                continue
            if isinstance(value, tuple):
                section[name] = " ".join(str(v) for v in value)
            else:
                section[name] = str(value)
        parser[self.command] = section
        buffer = io.StringIO()
        parser.write(buffer)
        return buffer.getvalue().strip()


# Per-command defaults that differ from the dataclass defaults
COMMAND_DEFAULTS: dict[str, dict[str, Any]] = {
    "lemmas": {},
    "kernel-norms": {"n_max": 4096},
    "bounds": {"n_max": 64, "scheme": ("fejer", "weighted:1/k")},
    "corpus": {},
}

_TUPLE_FIELDS = {"scheme", "p", "only", "corpus_kind", "beta"}
_INT_TUPLE_FIELDS = {"corpus_ranks"}
_INT_FIELDS = {"rank", "n_min", "n_max", "seed", "corpus_count", "blahota_rows", "blahota_stride", "workers"}
_FIELD_NAMES = {f.name for f in fields(RunConfig)} - {"command"}


def _convert(name: str, value: Any) -> Any:
    """Bring a flag or file value to the field's type."""
    try:
        if name in _TUPLE_FIELDS:
            return tuple(value.split()) if isinstance(value, str) else tuple(str(v) for v in value)
        if name in _INT_TUPLE_FIELDS:
            items = value.split() if isinstance(value, str) else value
            return tuple(int(v) for v in items)
        if name in _INT_FIELDS:
            return None if value in (None, "", "none") else int(value)
    except ValueError as e:
        msg = f"Invalid value for {name}: {value!r}"
        raise ConfigError(msg) from e
    return value


def _read_file(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(interpolation=None)
    file = Path(path).expanduser()
    if not file.is_file():
        msg = f"Config file not found: {file}"
        raise ConfigError(msg)
    try:
        parser.read_string(file.read_text(encoding="utf-8"), source=str(file))
    except configparser.Error as e:
        msg = f"Cannot parse config file {file}: {e}"
        raise ConfigError(msg) from e
    unknown = [s for s in parser.sections() if s != "common" and s not in COMMANDS]
    if unknown:
        msg = f"Unknown config section(s): {', '.join(unknown)}"
        raise ConfigError(msg)
    return parser


def _section_values(parser: configparser.ConfigParser, section: str) -> dict[str, Any]:
    if not parser.has_section(section):
        return {}
    values: dict[str, Any] = {}
    for key, raw in parser.items(section):
        name = key.replace("-", "_")
        if name not in _FIELD_NAMES:
            msg = f"Unknown key {key!r} in section [{section}]"
            raise ConfigError(msg)
        values[name] = _convert(name, raw)
    return values


def _env_workers() -> dict[str, Any]:
    raw = os.environ.get(WORKERS_ENV)
    if not raw:
        return {}
    return {"workers": _convert("workers", raw)}


def _validate(config: RunConfig) -> RunConfig:
    if config.mode not in MODES:
        msg = f"mode must be one of {', '.join(MODES)}, got {config.mode!r}"
        raise ConfigError(msg)
    if config.format not in FORMATS:
        msg = f"format must be one of {', '.join(FORMATS)}, got {config.format!r}"
        raise ConfigError(msg)
    if config.n_min < 1 or config.n_max < 0:
        msg = f"Need n_min >= 1 and n_max >= 0, got {config.n_min}..{config.n_max}"
        raise ConfigError(msg)
    if config.workers < 1:
        msg = f"workers must be >= 1, got {config.workers}"
        raise ConfigError(msg)
    if config.rank is not None and config.rank < 0:
        msg = f"rank must be >= 0, got {config.rank}"
        raise ConfigError(msg)
    if not config.p and config.command == "bounds":
        msg = "bounds needs at least one exponent p"
        raise ConfigError(msg)
    return config


def load_config(command: str, flags: dict[str, Any], config_path: str | None = None) -> RunConfig:
    """Merge defaults, the config file and flags into a ``RunConfig``.

    Args:
        command: Subcommand name.
        flags: Flag values by field name; None means "not given".
        config_path: Config file; falls back to ``$WALSHSUM_CONFIG``.

    Raises:
        ConfigError: On a missing or malformed file, unknown keys or invalid values.
    """
    if command not in COMMANDS:
        msg = f"Unknown command {command!r}"
        raise ConfigError(msg)
    values: dict[str, Any] = dict(COMMAND_DEFAULTS[command])
    values.update(_env_workers())
    path = config_path or os.environ.get(CONFIG_ENV)
    if path:
        parser = _read_file(path)
        values.update(_section_values(parser, "common"))
        values.update(_section_values(parser, command))
    for name, value in flags.items():
        if name in _FIELD_NAMES and value is not None:
            values[name] = _convert(name, value)
    return _validate(replace(RunConfig(command=command), **values))
