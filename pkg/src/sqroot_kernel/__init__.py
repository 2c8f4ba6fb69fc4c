"""Square roots of graphs under forced and forbidden edge labels."""

from .cli import main, run
from .config import ConfigError, RuntimeConfig, load_runtime_config
from .core import (
    Graph,
    GraphError,
    InstanceFormatError,
    InstanceLoader,
    InstanceSourceError,
    LabeledInstance,
    Verdict,
    edge_reduce,
    enumerate_roots,
    kernelize,
    mad_solve,
    solve_labeled,
    solve_tw,
    square,
)

__all__ = [
    "ConfigError",
    "Graph",
    "GraphError",
    "InstanceFormatError",
    "InstanceLoader",
    "InstanceSourceError",
    "LabeledInstance",
    "RuntimeConfig",
    "Verdict",
    "edge_reduce",
    "enumerate_roots",
    "kernelize",
    "load_runtime_config",
    "main",
    "mad_solve",
    "run",
    "solve_labeled",
    "solve_tw",
    "square",
]
