"""Square Root with Labels by dynamic programming over a tree decomposition.

The decomposition is first made nice (leaf, introduce, forget and join nodes).
A table state at a node records, for the edges of ``G`` inside the bag:

* ``chosen``: the edges put into the root so far;
* ``covered``: the edges already known to be in the root or to have a witness;
* ``hidden``: bag vertices with a chosen edge to an already forgotten vertex.

The edges of a vertex are decided when it is introduced. Two chosen edges
``uw`` and ``wv`` always need ``uv`` in ``G``: inside a bag this is checked
directly, and a hidden vertex may not receive a new chosen edge because its
forgotten root neighbour can never be adjacent to the new vertex.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .decomposition import (
    DecompositionError,
    TreeDecomposition,
    greedy_decomposition,
    treewidth_at_most,
    validate_decomposition,
)
from .density import MAD_THRESHOLD, max_average_degree
from .graph import Edge, Graph, edge
from .reduction import (
    LabeledInstance,
    ReductionResult,
    edge_reduce,
    restore_solution,
    verify_solution,
)
from .verdict import Verdict

logger = logging.getLogger(__name__)

# Reduced graphs below the density threshold have treewidth at most this.
LOW_DENSITY_WIDTH = 5

_State = tuple[frozenset[Edge], frozenset[Edge], frozenset[int]]
_EMPTY_STATE: _State = (frozenset(), frozenset(), frozenset())


@dataclass(frozen=True, slots=True)
class _NiceNode:
    kind: str
    bag: frozenset[int]
    vertex: int | None = None
    children: tuple[int, ...] = ()


@dataclass(frozen=True, slots=True)
class TwSolution:
    verdict: Verdict
    root: Graph | None = None
    decomposition: TreeDecomposition | None = None
    mad: Fraction | None = None
    reduced: LabeledInstance | None = None
    reason: str = ""


def _nice_nodes(decomposition: TreeDecomposition) -> list[_NiceNode]:
    """Nice decomposition in post-order; the last node is the root with an empty bag."""

    nodes: list[_NiceNode] = []

    def add(node: _NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def morph(index: int, target: frozenset[int]) -> int:
        bag = nodes[index].bag
        for v in sorted(bag - target):
            bag = bag - {v}
            index = add(_NiceNode("forget", bag, v, (index,)))
        for v in sorted(target - bag):
            bag = bag | {v}
            index = add(_NiceNode("introduce", bag, v, (index,)))
        return index

    if not decomposition.bags:
        add(_NiceNode("leaf", frozenset()))
        return nodes

    adjacency = decomposition.adjacency()
    parent: dict[int, int | None] = {0: None}
    preorder: list[int] = []
    stack = [0]
    while stack:
        t = stack.pop()
        preorder.append(t)
        for c in adjacency[t]:
            if c not in parent:
                parent[c] = t
                stack.append(c)

    built: dict[int, int] = {}
    for t in reversed(preorder):
        bag = decomposition.bags[t]
        kids = [c for c in adjacency[t] if parent[c] == t]
        if not kids:
            built[t] = morph(add(_NiceNode("leaf", frozenset())), bag)
            continue
        index = morph(built[kids[0]], bag)
        for c in kids[1:]:
            index = add(_NiceNode("join", bag, None, (index, morph(built[c], bag))))
        built[t] = index
    morph(built[0], frozenset())
    return nodes


class _LabeledRootTable:
    """Bottom-up tables with back-pointers for one labeled instance."""

    def __init__(self, instance: LabeledInstance, nodes: list[_NiceNode]) -> None:
        self.instance = instance
        self.graph = instance.graph
        self.nodes = nodes
        self.tables: list[dict[_State, object]] = []

    def _bag_edges(self, bag: Iterable[int]) -> list[Edge]:
        graph = self.graph
        return [(a, b) for a, b in combinations(sorted(bag), 2) if graph.has_edge(a, b)]

    def _cover(
        self, bag: frozenset[int], chosen: frozenset[Edge], covered: frozenset[Edge]
    ) -> frozenset[Edge]:
        result = set(covered)
        for a, b in self._bag_edges(bag):
            if (a, b) in result:
                continue
            if (a, b) in chosen or any(
                edge(a, w) in chosen and edge(w, b) in chosen for w in bag if w != a and w != b
            ):
                result.add((a, b))
        return frozenset(result)

    @staticmethod
    def _chosen_neighbours(chosen: frozenset[Edge], w: int) -> list[int]:
        return [b if a == w else a for a, b in chosen if w in (a, b)]

    def _introduce(self, node: _NiceNode, child: dict[_State, object]) -> dict[_State, object]:
        graph, v = self.graph, node.vertex
        assert v is not None
        others = sorted(graph.neighbors(v) & node.bag)
        forced = [w for w in others if edge(v, w) in self.instance.required]
        free = [
            w
            for w in others
            if edge(v, w) not in self.instance.required
            and edge(v, w) not in self.instance.forbidden
        ]
        table: dict[_State, object] = {}
        for state in child:
            chosen, covered, hidden = state
            for bits in range(1 << len(free)):
                picked = forced + [w for i, w in enumerate(free) if bits >> i & 1]
                if any(w in hidden for w in picked):
                    continue
                if any(not graph.has_edge(a, b) for a, b in combinations(picked, 2)):
                    continue
                if any(
                    not graph.has_edge(x, v)
                    for w in picked
                    for x in self._chosen_neighbours(chosen, w)
                ):
                    continue
                added = frozenset(edge(v, w) for w in picked)
                grown = chosen | added
                key = (grown, self._cover(node.bag, grown, covered), hidden)
                table.setdefault(key, (state, added))
        return table

    def _forget(self, node: _NiceNode, child: dict[_State, object]) -> dict[_State, object]:
        u = node.vertex
        assert u is not None
        incident = [e for e in self._bag_edges(node.bag | {u}) if u in e]
        table: dict[_State, object] = {}
        for state in child:
            chosen, covered, hidden = state
            if any(e not in covered for e in incident):
                continue
            released = self._chosen_neighbours(chosen, u)
            key = (
                frozenset(e for e in chosen if u not in e),
                frozenset(e for e in covered if u not in e),
                (hidden - {u}) | frozenset(released),
            )
            table.setdefault(key, state)
        return table

    def _join(
        self, node: _NiceNode, left: dict[_State, object], right: dict[_State, object]
    ) -> dict[_State, object]:
        by_chosen: dict[frozenset[Edge], list[_State]] = {}
        for state in right:
            by_chosen.setdefault(state[0], []).append(state)
        table: dict[_State, object] = {}
        for lstate in left:
            chosen, lcovered, lhidden = lstate
            for rstate in by_chosen.get(chosen, ()):
                if lhidden & rstate[2]:
                    continue
                key = (
                    chosen,
                    self._cover(node.bag, chosen, lcovered | rstate[1]),
                    lhidden | rstate[2],
                )
                table.setdefault(key, (lstate, rstate))
        return table

    def run(self) -> Graph | None:
        for node in self.nodes:
            if node.kind == "leaf":
                table: dict[_State, object] = {_EMPTY_STATE: None}
            elif node.kind == "introduce":
                table = self._introduce(node, self.tables[node.children[0]])
            elif node.kind == "forget":
                table = self._forget(node, self.tables[node.children[0]])
            else:
                table = self._join(
                    node, self.tables[node.children[0]], self.tables[node.children[1]]
                )
            self.tables.append(table)
            if not table:
                return None
        logger.debug(
            "DP over %d nice nodes, largest table %d states",
            len(self.nodes),
            max(len(t) for t in self.tables),
        )
        if _EMPTY_STATE not in self.tables[-1]:
            return None
        return Graph.from_edges(self.graph.n, self._witness())

    def _witness(self) -> set[Edge]:
        edges: set[Edge] = set()
        stack: list[tuple[int, _State]] = [(len(self.nodes) - 1, _EMPTY_STATE)]
        while stack:
            index, state = stack.pop()
            node = self.nodes[index]
            pointer = self.tables[index][state]
            if node.kind == "introduce":
                child_state, added = pointer  # type: ignore[misc]
                edges.update(added)
                stack.append((node.children[0], child_state))
            elif node.kind == "forget":
                stack.append((node.children[0], pointer))  # type: ignore[arg-type]
            elif node.kind == "join":
                lstate, rstate = pointer  # type: ignore[misc]
                stack.append((node.children[0], lstate))
                stack.append((node.children[1], rstate))
        return edges


def solve_labeled_tw(instance: LabeledInstance, decomposition: TreeDecomposition) -> TwSolution:
    """Decide ``instance`` over ``decomposition``; a Yes carries a verified root."""

    if not validate_decomposition(instance.graph, decomposition):
        raise DecompositionError("Tree decomposition is not valid for the instance graph")
    if instance.has_label_conflict:
        return TwSolution(Verdict.NO, decomposition=decomposition, reason="label conflict")
    nodes = _nice_nodes(decomposition)
    root = _LabeledRootTable(instance, nodes).run()
    if root is None:
        return TwSolution(Verdict.NO, decomposition=decomposition)
    if not verify_solution(instance, root):
        raise RuntimeError(f"Decomposition solver produced an invalid root {root!r}")
    return TwSolution(Verdict.YES, root, decomposition)


def _solve_after_reduction(
    instance: LabeledInstance,
    reduced: ReductionResult,
    decomposition: TreeDecomposition,
    mad: Fraction | None = None,
) -> TwSolution:
    assert reduced.instance is not None
    result = solve_labeled_tw(reduced.instance, decomposition)
    if result.root is None:
        return TwSolution(Verdict.NO, None, decomposition, mad, reduced.instance)
    root = restore_solution(reduced.trace, result.root)
    if not verify_solution(instance, root):
        raise RuntimeError("Restored root does not solve the original instance")
    return TwSolution(Verdict.YES, root, decomposition, mad, reduced.instance)


def solve_tw(instance: LabeledInstance) -> TwSolution:
    """Edge Reduction, then the decomposition DP over a greedy decomposition."""

    reduced = edge_reduce(instance)
    if reduced.is_no:
        return TwSolution(Verdict.NO, reason=reduced.reason)
    assert reduced.instance is not None
    decomposition = greedy_decomposition(reduced.instance.graph)
    logger.info("Greedy decomposition of the reduced graph has width %d", decomposition.width)
    return _solve_after_reduction(instance, reduced, decomposition)


def mad_solve(graph: Graph) -> TwSolution:
    """Exact pipeline for graphs whose maximum average degree is below ``46/11``."""

    if graph.n == 0:
        return TwSolution(Verdict.YES, graph)
    mad = max_average_degree(graph)
    if mad >= MAD_THRESHOLD:
        logger.info("mad %s is at least %s; pipeline does not apply", mad, MAD_THRESHOLD)
        return TwSolution(Verdict.NOT_APPLICABLE, mad=mad, reason=f"mad {mad} >= {MAD_THRESHOLD}")

    instance = LabeledInstance(graph)
    reduced = edge_reduce(instance)
    if reduced.is_no:
        return TwSolution(Verdict.NO, mad=mad, reason=reduced.reason)
    assert reduced.instance is not None
    decomposition = treewidth_at_most(reduced.instance.graph, LOW_DENSITY_WIDTH)
    if decomposition is None:
        reason = f"reduced graph has treewidth above {LOW_DENSITY_WIDTH}"
        logger.info("mad pipeline answered no: %s", reason)
        return TwSolution(Verdict.NO, mad=mad, reduced=reduced.instance, reason=reason)
    return _solve_after_reduction(instance, reduced, decomposition, mad)


__all__ = [
    "LOW_DENSITY_WIDTH",
    "TwSolution",
    "mad_solve",
    "solve_labeled_tw",
    "solve_tw",
]
