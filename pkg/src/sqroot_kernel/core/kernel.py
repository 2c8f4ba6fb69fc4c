"""Component Reduction and the linear kernel for planar+kv graphs."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .graph import Edge, Graph, blocks_and_cuts, edge
from .oracle import OracleResult, SearchLimits, solve_labeled
from .reduction import (
    LabeledInstance,
    ReductionTrace,
    edge_reduce,
    restore_solution,
    verify_solution,
)
from .verdict import Verdict

logger = logging.getLogger(__name__)

# A planar square without recognizable edges has components of at most this size.
COMPONENT_THRESHOLD = 12
# Vertices per apex vertex a kernel with a root can carry.
KERNEL_FACTOR = 137

ComponentSolver = Callable[[LabeledInstance], OracleResult]


def hkt_planar_square_check(root: Graph) -> bool:
    """Whether ``square(root)`` is planar, decided on ``root`` alone."""

    if root.max_degree > 3:
        return False
    decomposition = blocks_and_cuts(root)
    for block in decomposition.blocks:
        if len(block) <= 4:
            continue
        sub, _ = root.induced_subgraph(block)
        if len(block) % 2 or sub.m != len(block) or any(sub.degree(v) != 2 for v in sub):
            return False
    cuts = decomposition.cut_vertices
    for u in sorted(cuts):
        for v, w in combinations(sorted(root.neighbors(u) & cuts), 2):
            if root.has_edge(v, w):
                return False
    return True


@dataclass(frozen=True, slots=True)
class ComponentReduction:
    verdict: Verdict
    residual: LabeledInstance | None
    vertex_map: tuple[int, ...]
    solved_edges: frozenset[Edge]
    solved_components: tuple[tuple[int, ...], ...] = ()
    reason: str = ""


def _default_solver(limits: SearchLimits | None) -> ComponentSolver:
    return lambda sub: solve_labeled(sub, limits)


def component_reduce(
    instance: LabeledInstance,
    solver: ComponentSolver | None = None,
    *,
    jobs: int = 1,
) -> ComponentReduction:
    """Solve every component with at most 12 vertices and cut it away."""

    solver = solver or _default_solver(None)
    graph = instance.graph
    small = [c for c in graph.components() if len(c) <= COMPONENT_THRESHOLD]
    subs = [instance.restrict(component) for component in small]

    if jobs > 1 and len(subs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(solver, [sub for sub, _ in subs]))
    else:
        results = [solver(sub) for sub, _ in subs]

    solved_edges: set[Edge] = set()
    for (sub, order), result in zip(subs, results):
        if result.verdict is not Verdict.YES:
            reason = f"component {list(order)} answered {result.verdict.value}"
            logger.info("Component reduction stopped: %s", reason)
            return ComponentReduction(result.verdict, None, (), frozenset(), (), reason)
        assert result.root is not None
        solved_edges.update(edge(order[a], order[b]) for a, b in result.root.edges())

    dissolved = {v for component in small for v in component}
    residual, vertex_map = instance.restrict(v for v in graph if v not in dissolved)
    verdict = Verdict.YES if residual.graph.n == 0 else Verdict.REDUCED
    logger.info(
        "Component reduction solved %d components; %d vertices remain",
        len(small),
        residual.graph.n,
    )
    return ComponentReduction(
        verdict,
        residual,
        vertex_map,
        frozenset(solved_edges),
        tuple(tuple(c) for c in small),
    )


@dataclass(frozen=True, slots=True)
class KernelOutcome:
    """Yes (with witness), No, Timeout, or a kernel plus what is needed to lift it."""

    verdict: Verdict
    original: LabeledInstance
    trace: ReductionTrace
    kernel: LabeledInstance | None = None
    vertex_map: tuple[int, ...] = ()
    solved_edges: frozenset[Edge] = frozenset()
    witness: Graph | None = None
    reason: str = ""

    def lift(self, kernel_root: Graph) -> Graph:
        """Turn a solution of the kernel into a root of the original graph."""

        if kernel_root.n != len(self.vertex_map):
            raise ValueError(
                f"Kernel root has {kernel_root.n} vertices, kernel has {len(self.vertex_map)}"
            )
        lifted = set(self.solved_edges)
        lifted.update(
            edge(self.vertex_map[a], self.vertex_map[b]) for a, b in kernel_root.edges()
        )
        reduced_root = Graph.from_edges(self.original.graph.n, lifted)
        return restore_solution(self.trace, reduced_root)


def kernelize(
    instance: LabeledInstance,
    k: int,
    *,
    solver: ComponentSolver | None = None,
    limits: SearchLimits | None = None,
    jobs: int = 1,
) -> KernelOutcome:
    """Edge Reduction, Component Reduction and the ``137k`` size cutoff.

    ``k`` is trusted: a graph that is not planar+kv for the given ``k`` can only
    be wrongly rejected by the size cutoff, never wrongly accepted.
    """

    if k < 0:
        raise ValueError(f"Apex count k must be non-negative, got {k}")
    solver = solver or _default_solver(limits)

    reduced = edge_reduce(instance)
    if reduced.is_no:
        return KernelOutcome(Verdict.NO, instance, reduced.trace, reason=reduced.reason)
    assert reduced.instance is not None

    components = component_reduce(reduced.instance, solver, jobs=jobs)
    if components.residual is None:
        return KernelOutcome(
            components.verdict, instance, reduced.trace, reason=components.reason
        )

    outcome = KernelOutcome(
        Verdict.KERNEL,
        instance,
        reduced.trace,
        components.residual,
        components.vertex_map,
        components.solved_edges,
    )
    size = components.residual.graph.n
    if size == 0:
        witness = outcome.lift(Graph.empty(0))
        if not verify_solution(instance, witness):
            raise RuntimeError("Lifted witness does not solve the original instance")
        return KernelOutcome(
            Verdict.YES, instance, reduced.trace, witness=witness, solved_edges=outcome.solved_edges
        )
    if size > KERNEL_FACTOR * k:
        reason = f"{size} vertices remain, more than {KERNEL_FACTOR}k = {KERNEL_FACTOR * k}"
        logger.info("Kernel cutoff answered no: %s", reason)
        return KernelOutcome(Verdict.NO, instance, reduced.trace, reason=reason)

    logger.info("Kernel has %d vertices (bound %d)", size, KERNEL_FACTOR * k)
    return outcome


__all__ = [
    "COMPONENT_THRESHOLD",
    "ComponentReduction",
    "ComponentSolver",
    "KERNEL_FACTOR",
    "KernelOutcome",
    "component_reduce",
    "hkt_planar_square_check",
    "kernelize",
]
