"""Runtime configuration assembly for the square-root kernel CLI."""

from __future__ import annotations

import argparse
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, MutableMapping, NoReturn, Sequence, Tuple

import yaml

from .generators import DEFAULT_APEX_DEGREE, DEFAULT_MAX_CYCLE, DEFAULT_VERTICES
from .oracle import DEFAULT_ENUMERATE_CAP, DEFAULT_NODE_BUDGET

ENV_PREFIX = "SQROOT_"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
DEFAULT_LOG_LEVEL = "WARNING"
ENGINES = ("bruteforce", "tw", "mad")
GENERATOR_KINDS = ("hkt-root", "apex-square")


class ConfigError(ValueError):
    """Raised when configuration sources cannot be resolved."""


@dataclass(slots=True)
class SearchConfig:
    """Limits for the exhaustive oracle; ``node_budget=None`` means unlimited."""

    node_budget: int | None = DEFAULT_NODE_BUDGET
    enumerate_cap: int = DEFAULT_ENUMERATE_CAP


@dataclass(slots=True)
class GeneratorConfig:
    vertices: int = DEFAULT_VERTICES
    max_cycle: int = DEFAULT_MAX_CYCLE
    apex_degree: int = DEFAULT_APEX_DEGREE


@dataclass(slots=True)
class RuntimeConfig:
    """Fully hydrated runtime configuration."""

    command: str
    arguments: argparse.Namespace = field(default_factory=argparse.Namespace)
    search: SearchConfig = field(default_factory=SearchConfig)
    generator: GeneratorConfig = field(default_factory=GeneratorConfig)
    jobs: int = 1
    log_level: str = DEFAULT_LOG_LEVEL
    seed: int = 0
    raw_sources: dict[str, Any] = field(default_factory=dict)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise ConfigError(f"{self.prog}: {message}")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="sqroot-kernel",
        description="Square roots of graphs under forced and forbidden edge labels",
    )
    parser.add_argument("--config", dest="config_file", help="Path to a configuration file (YAML or JSON).")
    parser.add_argument("--log-level", dest="log_level", help="Logging level (default WARNING).")
    parser.add_argument(
        "--budget",
        dest="budget",
        type=int,
        help="Oracle node budget; 0 means unlimited (default 10000000).",
    )
    parser.add_argument("--jobs", dest="jobs", type=int, help="Worker threads for component reduction (default 1).")

    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    square = commands.add_parser("square", help="Print the square of a graph.")
    square.add_argument("file")
    square.add_argument("--dot", help="Also write Graphviz text to this path.")

    solve = commands.add_parser("solve", help="Decide whether the instance has a root.")
    solve.add_argument("file")
    solve.add_argument("--engine", choices=ENGINES, default="bruteforce")
    solve.add_argument("--budget", dest="budget", type=int, default=argparse.SUPPRESS)
    solve.add_argument("--dot", help="Write the graph with its root edges in bold to this path.")

    reduce = commands.add_parser("reduce", help="Apply Edge Reduction and print the reduced instance.")
    reduce.add_argument("file")
    reduce.add_argument("--emit-trace", dest="emit_trace", help="Write the reduction trace (JSON Lines).")

    kernelize = commands.add_parser("kernelize", help="Kernelize a planar+kv instance.")
    kernelize.add_argument("file")
    kernelize.add_argument("--k", dest="k", type=int, required=True)
    kernelize.add_argument("--emit-trace", dest="emit_trace")
    kernelize.add_argument("--jobs", dest="jobs", type=int, default=argparse.SUPPRESS)

    mad = commands.add_parser("mad", help="Print the exact maximum average degree.")
    mad.add_argument("file")
    mad.add_argument("--method", choices=("flow", "bruteforce"), default="flow")

    treewidth = commands.add_parser("treewidth", help="Find a decomposition of width at most K.")
    treewidth.add_argument("file")
    treewidth.add_argument("--k", dest="k", type=int, required=True)

    check = commands.add_parser("check-hkt", help="Decide planarity of the square of a root.")
    check.add_argument("file")

    generate = commands.add_parser("generate", help="Emit a random test instance.")
    generate.add_argument("--kind", choices=GENERATOR_KINDS, required=True)
    generate.add_argument("--seed", dest="seed", type=int)
    generate.add_argument("--k", dest="k", type=int, default=0)
    generate.add_argument("--vertices", dest="vertices", type=int)
    generate.add_argument("--max-cycle", dest="max_cycle", type=int)
    generate.add_argument("--apex-degree", dest="apex_degree", type=int)
    generate.add_argument("--dot", help="Also write Graphviz text to this path.")

    enumerate_ = commands.add_parser("enumerate", help="List every root of the instance.")
    enumerate_.add_argument("file")
    enumerate_.add_argument("--cap", dest="cap", type=int)

    restore = commands.add_parser("restore", help="Lift a root of a reduced instance through a trace.")
    restore.add_argument("trace")
    restore.add_argument("root")

    return parser


def load_runtime_config(
    argv: Sequence[str] | None = None,
    env: Mapping[str, str] | None = None,
) -> Tuple[RuntimeConfig, Sequence[str]]:
    env = os.environ if env is None else env
    parser = build_arg_parser()
    args, remaining = parser.parse_known_args(argv)
    if not args.command:
        raise ConfigError("No command given; run with --help to list the commands")

    config_data: dict[str, Any] = {}
    config_path = args.config_file or env.get(f"{ENV_PREFIX}CONFIG")
    if config_path:
        config_data = _load_config_file(config_path)

    env_data = _extract_env_config(env)
    cli_data = _extract_cli_config(args)

    merged: dict[str, Any] = {}
    merged.update(config_data)
    merged.update(env_data)
    merged.update(cli_data)

    runtime = RuntimeConfig(
        command=args.command,
        arguments=args,
        search=_build_search_config(merged),
        generator=_build_generator_config(merged),
        jobs=_positive(merged.get("jobs", 1), "jobs"),
        log_level=_log_level(merged.get("log_level", DEFAULT_LOG_LEVEL)),
        seed=_integer(merged.get("seed", 0), "seed"),
        raw_sources={
            "file": config_data,
            "env": env_data,
            "cli": cli_data,
        },
    )
    return runtime, remaining


def _load_config_file(path: str) -> dict[str, Any]:
    location = Path(path)
    if not location.exists():
        raise ConfigError(f"Specified configuration file does not exist: {path}")

    try:
        content = location.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ConfigError(f"Configuration file is not valid UTF-8: {path}") from exc
    except OSError as exc:
        raise ConfigError(f"Cannot read configuration file: {path}: {exc}") from exc
    try:
        if location.suffix.lower() == ".json":
            data = json.loads(content)
        else:
            # YAML is a superset of JSON
            data = yaml.safe_load(content)
    except (yaml.YAMLError, json.JSONDecodeError) as exc:
        raise ConfigError(f"Configuration file is not valid YAML or JSON: {path}") from exc

    if not isinstance(data, MutableMapping):
        raise ConfigError("Configuration file content must be an object/dictionary structure")
    return dict(data)


def _extract_env_config(env: Mapping[str, str]) -> dict[str, Any]:
    data: dict[str, Any] = {}
    for key, name in (
        ("budget", "BUDGET"),
        ("enumerate_cap", "ENUMERATE_CAP"),
        ("jobs", "JOBS"),
        ("seed", "SEED"),
    ):
        if raw := env.get(f"{ENV_PREFIX}{name}"):
            data[key] = _integer(raw, f"{ENV_PREFIX}{name}")
    if log_level := env.get(f"{ENV_PREFIX}LOG_LEVEL"):
        data["log_level"] = log_level
    return data


def _extract_cli_config(args: argparse.Namespace) -> dict[str, Any]:
    data: dict[str, Any] = {}
    for attr, key in (
        ("budget", "budget"),
        ("jobs", "jobs"),
        ("log_level", "log_level"),
        ("cap", "enumerate_cap"),
        ("seed", "seed"),
        ("vertices", "vertices"),
        ("max_cycle", "max_cycle"),
        ("apex_degree", "apex_degree"),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            data[key] = value
    return data


def _build_search_config(data: Mapping[str, Any]) -> SearchConfig:
    search = SearchConfig()
    if data.get("budget") is not None:
        budget = _integer(data["budget"], "budget")
        if budget < 0:
            raise ConfigError(f"budget must be non-negative, got {budget}")
        search.node_budget = budget or None
    if data.get("enumerate_cap") is not None:
        search.enumerate_cap = _positive(data["enumerate_cap"], "enumerate_cap")
    return search


def _build_generator_config(data: Mapping[str, Any]) -> GeneratorConfig:
    generator = GeneratorConfig()
    if data.get("vertices") is not None:
        generator.vertices = _positive(data["vertices"], "vertices")
    if data.get("max_cycle") is not None:
        generator.max_cycle = _positive(data["max_cycle"], "max_cycle")
    if data.get("apex_degree") is not None:
        generator.apex_degree = _positive(data["apex_degree"], "apex_degree")
        if generator.apex_degree > 4:
            raise ConfigError(f"apex_degree must lie in 1..4, got {generator.apex_degree}")
    return generator


def _integer(value: Any, name: str) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name} must be an integer, got {value!r}") from exc


def _positive(value: Any, name: str) -> int:
    number = _integer(value, name)
    if number < 1:
        raise ConfigError(f"{name} must be at least 1, got {number}")
    return number


def _log_level(value: Any) -> str:
    level = str(value).strip().upper()
    if level not in LOG_LEVELS:
        raise ConfigError(f"Unknown log level {value!r}; expected one of {', '.join(LOG_LEVELS)}")
    return level


__all__ = [
    "ConfigError",
    "DEFAULT_LOG_LEVEL",
    "ENGINES",
    "ENV_PREFIX",
    "GENERATOR_KINDS",
    "GeneratorConfig",
    "LOG_LEVELS",
    "RuntimeConfig",
    "SearchConfig",
    "build_arg_parser",
    "load_runtime_config",
]
