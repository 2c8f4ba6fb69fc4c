"""Command-line entry point."""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Callable, Sequence

from .config import ConfigError, RuntimeConfig, load_runtime_config
from .core.decomposition import DecompositionError, treewidth_at_most
from .core.density import max_average_degree
from .core.generators import generate_apex_square, generate_hkt_root
from .core.graph import Graph, GraphError, square
from .core.instance import (
    InstanceFormatError,
    InstanceLoader,
    InstanceSourceError,
    format_dot,
    format_graph,
    format_instance,
)
from .core.kernel import hkt_planar_square_check, kernelize
from .core.oracle import SearchLimits, enumerate_roots, solve_labeled
from .core.reduction import ReductionError, ReductionTrace, edge_reduce, restore_solution
from .core.twsolver import mad_solve, solve_tw
from .core.verdict import Verdict

logger = logging.getLogger(__name__)

EXIT_DECIDED = 0
EXIT_TIMEOUT = 2
EXIT_INPUT_ERROR = 3
EXIT_NOT_APPLICABLE = 4

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

_INPUT_ERRORS = (
    ConfigError,
    DecompositionError,
    GraphError,
    InstanceFormatError,
    InstanceSourceError,
    ReductionError,
)

Handler = Callable[[RuntimeConfig, InstanceLoader], int]


def _status(verdict: Verdict) -> str:
    return f"s {verdict.value}"


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InstanceSourceError(f"Cannot write {path}: {exc}") from exc


def _emit_trace(path: str | None, trace: ReductionTrace) -> None:
    if path:
        _write_text(path, "\n".join(trace.to_lines()) + "\n")


def _exit_code(verdict: Verdict) -> int:
    if verdict is Verdict.TIMEOUT:
        return EXIT_TIMEOUT
    if verdict is Verdict.NOT_APPLICABLE:
        return EXIT_NOT_APPLICABLE
    return EXIT_DECIDED


def _cmd_square(config: RuntimeConfig, loader: InstanceLoader) -> int:
    args = config.arguments
    result = square(loader.load(args.file).graph)
    print(format_graph(result), end="")
    if args.dot:
        _write_text(args.dot, format_dot(result))
    return EXIT_DECIDED


def _cmd_solve(config: RuntimeConfig, loader: InstanceLoader) -> int:
    args = config.arguments
    instance = loader.load(args.file)
    reason = ""
    if args.engine == "bruteforce":
        outcome = solve_labeled(instance, SearchLimits(config.search.node_budget))
        verdict, root = outcome.verdict, outcome.root
    elif args.engine == "tw":
        solution = solve_tw(instance)
        verdict, root, reason = solution.verdict, solution.root, solution.reason
    else:
        if instance.required or instance.forbidden:
            raise ConfigError("The mad engine solves unlabeled instances only")
        solution = mad_solve(instance.graph)
        verdict, root, reason = solution.verdict, solution.root, solution.reason

    print(_status(verdict))
    if reason:
        print(f"c {reason}")
    if root is not None:
        print(format_graph(root), end="")
        if args.dot:
            _write_text(args.dot, format_dot(instance.graph, highlight=root.edges()))
    return _exit_code(verdict)


def _cmd_reduce(config: RuntimeConfig, loader: InstanceLoader) -> int:
    args = config.arguments
    result = edge_reduce(loader.load(args.file))
    _emit_trace(args.emit_trace, result.trace)
    print(_status(result.verdict))
    if result.instance is None:
        print(f"c {result.reason}")
        return EXIT_DECIDED
    print(format_instance(result.instance, [f"reduction steps {result.steps}"]), end="")
    return EXIT_DECIDED


def _cmd_kernelize(config: RuntimeConfig, loader: InstanceLoader) -> int:
    args = config.arguments
    if args.k < 0:
        raise ConfigError(f"--k must be non-negative, got {args.k}")
    outcome = kernelize(
        loader.load(args.file),
        args.k,
        limits=SearchLimits(config.search.node_budget),
        jobs=config.jobs,
    )
    _emit_trace(args.emit_trace, outcome.trace)
    print(_status(outcome.verdict))
    if outcome.reason:
        print(f"c {outcome.reason}")
    if outcome.witness is not None:
        print(format_graph(outcome.witness), end="")
    elif outcome.kernel is not None:
        mapping = " ".join(str(v + 1) for v in outcome.vertex_map)
        print(format_instance(outcome.kernel, [f"map {mapping}"]), end="")
    return _exit_code(outcome.verdict)


def _cmd_mad(config: RuntimeConfig, loader: InstanceLoader) -> int:
    args = config.arguments
    value = max_average_degree(loader.load(args.file).graph, method=args.method)
    print(f"{value.numerator}/{value.denominator}")
    return EXIT_DECIDED


def _cmd_treewidth(config: RuntimeConfig, loader: InstanceLoader) -> int:
    args = config.arguments
    graph = loader.load(args.file).graph
    decomposition = treewidth_at_most(graph, args.k)
    if decomposition is None:
        print(f">{args.k}")
        return EXIT_DECIDED
    print(f"s td {len(decomposition.bags)} {decomposition.width + 1} {graph.n}")
    for i, bag in enumerate(decomposition.bags, start=1):
        print(" ".join(["b", str(i), *(str(v + 1) for v in sorted(bag))]))
    for a, b in decomposition.tree_edges:
        print(f"{a + 1} {b + 1}")
    return EXIT_DECIDED


def _cmd_check_hkt(config: RuntimeConfig, loader: InstanceLoader) -> int:
    root = loader.load(config.arguments.file).graph
    print("PLANAR-SQUARE" if hkt_planar_square_check(root) else "NOT")
    return EXIT_DECIDED


def _cmd_generate(config: RuntimeConfig, loader: InstanceLoader) -> int:
    args = config.arguments
    settings = config.generator
    if args.k < 0:
        raise ConfigError(f"--k must be non-negative, got {args.k}")
    graph: Graph
    if args.kind == "hkt-root":
        graph = generate_hkt_root(config.seed, settings.vertices, max_cycle=settings.max_cycle)
        comment = f"hkt-root seed={config.seed}"
    else:
        graph, k = generate_apex_square(
            config.seed,
            args.k,
            settings.vertices,
            max_cycle=settings.max_cycle,
            apex_degree=settings.apex_degree,
        )
        comment = f"apex-square seed={config.seed} k={k}"
    print(format_graph(graph, [comment]), end="")
    if args.dot:
        _write_text(args.dot, format_dot(graph))
    return EXIT_DECIDED


def _cmd_enumerate(config: RuntimeConfig, loader: InstanceLoader) -> int:
    instance = loader.load(config.arguments.file)
    found = enumerate_roots(
        instance,
        max_roots=config.search.enumerate_cap,
        node_budget=config.search.node_budget,
    )
    state = "complete" if found.complete else "capped"
    print(f"c roots {len(found.roots)} {state}")
    for i, root in enumerate(found.roots, start=1):
        print(f"c root {i}")
        for u, v in root.edges():
            print(f"e {u + 1} {v + 1}")
    return EXIT_DECIDED if found.complete else EXIT_TIMEOUT


def _cmd_restore(config: RuntimeConfig, loader: InstanceLoader) -> int:
    args = config.arguments
    trace = ReductionTrace.from_lines(loader.read_text(args.trace).splitlines())
    root = loader.load(args.root).graph
    print(format_graph(restore_solution(trace, root)), end="")
    return EXIT_DECIDED


_COMMANDS: dict[str, Handler] = {
    "square": _cmd_square,
    "solve": _cmd_solve,
    "reduce": _cmd_reduce,
    "kernelize": _cmd_kernelize,
    "mad": _cmd_mad,
    "treewidth": _cmd_treewidth,
    "check-hkt": _cmd_check_hkt,
    "generate": _cmd_generate,
    "enumerate": _cmd_enumerate,
    "restore": _cmd_restore,
}


def main(argv: Sequence[str] | None = None, loader: InstanceLoader | None = None) -> int:
    """Run one subcommand and return its exit code."""

    argv = list(argv) if argv is not None else sys.argv[1:]
    try:
        config, remaining = load_runtime_config(argv)
        if remaining:
            raise ConfigError(f"Unrecognized arguments: {' '.join(remaining)}")
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR

    logging.basicConfig(level=config.log_level, format=LOG_FORMAT, stream=sys.stderr)
    logger.debug("Running %s with %s", config.command, config.raw_sources)

    try:
        return _COMMANDS[config.command](config, loader or InstanceLoader())
    except _INPUT_ERRORS as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR


def run(argv: Sequence[str] | None = None) -> None:
    """Console script entry."""

    raise SystemExit(main(argv))


__all__ = [
    "EXIT_DECIDED",
    "EXIT_INPUT_ERROR",
    "EXIT_NOT_APPLICABLE",
    "EXIT_TIMEOUT",
    "main",
    "run",
]


if __name__ == "__main__":  # pragma: no cover
    run()
