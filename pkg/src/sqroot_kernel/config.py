"""Public configuration helpers wrapping the core runtime modules."""

from __future__ import annotations

from .core.config import (
    DEFAULT_LOG_LEVEL,
    ENV_PREFIX,
    ConfigError,
    GeneratorConfig,
    RuntimeConfig,
    SearchConfig,
    build_arg_parser,
    load_runtime_config,
)

__all__ = [
    "ConfigError",
    "DEFAULT_LOG_LEVEL",
    "ENV_PREFIX",
    "GeneratorConfig",
    "RuntimeConfig",
    "SearchConfig",
    "build_arg_parser",
    "load_runtime_config",
]
