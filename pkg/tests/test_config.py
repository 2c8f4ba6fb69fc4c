"""Tests for the unified runtime configuration loader."""

from __future__ import annotations

from pathlib import Path

import pytest

from sqroot_kernel.core.config import (
    DEFAULT_LOG_LEVEL,
    ENV_PREFIX,
    ConfigError,
    load_runtime_config,
)
from sqroot_kernel.core.oracle import DEFAULT_NODE_BUDGET


def test_defaults_without_other_sources():
    runtime, remaining = load_runtime_config(["solve", "g.sq"], env={})

    assert runtime.command == "solve"
    assert runtime.arguments.file == "g.sq"
    assert runtime.arguments.engine == "bruteforce"
    assert runtime.search.node_budget == DEFAULT_NODE_BUDGET
    assert runtime.jobs == 1
    assert runtime.log_level == DEFAULT_LOG_LEVEL
    assert remaining == []


def test_cli_overrides_env():
    env = {f"{ENV_PREFIX}BUDGET": "50", f"{ENV_PREFIX}LOG_LEVEL": "debug"}

    runtime, _ = load_runtime_config(["--budget", "7", "solve", "g.sq"], env=env)

    assert runtime.search.node_budget == 7
    assert runtime.log_level == "DEBUG"
    assert runtime.raw_sources["env"] == {"budget": 50, "log_level": "debug"}
    assert runtime.raw_sources["cli"]["budget"] == 7


def test_subcommand_budget_option():
    runtime, _ = load_runtime_config(["solve", "g.sq", "--budget", "9"], env={})
    assert runtime.search.node_budget == 9


def test_env_fallback(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv(f"{ENV_PREFIX}JOBS", "4")
    monkeypatch.setenv(f"{ENV_PREFIX}ENUMERATE_CAP", "12")

    runtime, _ = load_runtime_config(["enumerate", "g.sq"])

    assert runtime.jobs == 4
    assert runtime.search.enumerate_cap == 12


def test_zero_budget_means_unlimited():
    runtime, _ = load_runtime_config(["--budget", "0", "solve", "g.sq"], env={})
    assert runtime.search.node_budget is None


def test_yaml_config_file(tmp_path: Path):
    config_file = tmp_path / "config.yaml"
    config_file.write_text(
        """
budget: 1000
jobs: 2
seed: 5
vertices: 40
apex_degree: 3
log_level: info
""",
        encoding="utf-8",
    )

    runtime, remaining = load_runtime_config(
        ["--config", str(config_file), "--jobs", "3", "generate", "--kind", "hkt-root"],
        env={},
    )

    assert runtime.search.node_budget == 1000
    assert runtime.jobs == 3
    assert runtime.seed == 5
    assert runtime.generator.vertices == 40
    assert runtime.generator.apex_degree == 3
    assert runtime.log_level == "INFO"
    assert remaining == []


def test_json_config_file_from_env(tmp_path: Path):
    config_file = tmp_path / "config.json"
    config_file.write_text('{"enumerate_cap": 3, "max_cycle": 6}', encoding="utf-8")

    runtime, _ = load_runtime_config(
        ["generate", "--kind", "apex-square"],
        env={f"{ENV_PREFIX}CONFIG": str(config_file)},
    )

    assert runtime.search.enumerate_cap == 3
    assert runtime.generator.max_cycle == 6


def test_missing_config_file(tmp_path: Path):
    with pytest.raises(ConfigError, match="does not exist"):
        load_runtime_config(["--config", str(tmp_path / "nope.yaml"), "mad", "g.sq"], env={})


def test_config_file_must_be_a_mapping(tmp_path: Path):
    config_file = tmp_path / "config.yaml"
    config_file.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="object/dictionary"):
        load_runtime_config(["--config", str(config_file), "mad", "g.sq"], env={})


def test_invalid_config_file(tmp_path: Path):
    config_file = tmp_path / "config.json"
    config_file.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigError, match="not valid YAML or JSON"):
        load_runtime_config(["--config", str(config_file), "mad", "g.sq"], env={})


@pytest.mark.parametrize(
    ("argv", "env", "message"),
    [
        (["--budget", "-1", "solve", "g.sq"], {}, "non-negative"),
        (["--jobs", "0", "solve", "g.sq"], {}, "jobs must be at least 1"),
        (["--log-level", "loud", "solve", "g.sq"], {}, "Unknown log level"),
        (["solve", "g.sq"], {f"{ENV_PREFIX}SEED": "abc"}, "must be an integer"),
        (["generate", "--kind", "apex-square", "--apex-degree", "5"], {}, "1..4"),
        (["enumerate", "g.sq", "--cap", "0"], {}, "enumerate_cap"),
        (["solve", "g.sq", "--engine", "sat"], {}, "invalid choice"),
    ],
)
def test_invalid_values_are_rejected(argv, env, message):
    with pytest.raises(ConfigError, match=message):
        load_runtime_config(argv, env=env)


def test_missing_command_raises():
    with pytest.raises(ConfigError, match="No command given"):
        load_runtime_config([], env={})


def test_unknown_options_are_returned():
    _, remaining = load_runtime_config(["mad", "g.sq", "--extra"], env={})
    assert remaining == ["--extra"]


def test_config_file_that_is_not_utf8(tmp_path: Path):
    config_file = tmp_path / "config.yaml"
    config_file.write_bytes(b"budget: 5\n# \xff\xfe\n")
    with pytest.raises(ConfigError, match="not valid UTF-8"):
        load_runtime_config(["--config", str(config_file), "mad", "g.sq"], env={})
