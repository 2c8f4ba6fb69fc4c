"""Exact backtracking solver and root enumerator for small labeled instances.

Every candidate root edge is an edge of ``G`` and is decided ``in`` or ``out``.
Two rules drive unit propagation:

* coverage: each G-edge ``uv`` is in the root or has a witness ``w`` with both
  ``uw`` and ``wv`` in the root;
* closure: two root edges ``uw`` and ``wv`` require ``uv`` to be a G-edge.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, edge
from .reduction import LabeledInstance, verify_solution
from .verdict import Verdict

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_ENUMERATE_CAP = 10_000

UNDECIDED, IN, OUT = 0, 1, 2


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True, slots=True)
class SearchLimits:
    node_budget: int | None = DEFAULT_NODE_BUDGET

    @classmethod
    def unlimited(cls) -> "SearchLimits":
        return cls(node_budget=None)


@dataclass(frozen=True, slots=True)
class OracleResult:
    verdict: Verdict
    root: Graph | None
    nodes: int


@dataclass(frozen=True, slots=True)
class RootEnumeration:
    roots: tuple[Graph, ...]
    complete: bool
    nodes: int


class _RootSearch:
    def __init__(self, instance: LabeledInstance, node_budget: int | None) -> None:
        graph = instance.graph
        self.instance = instance
        self.edges = graph.edges()
        index = {e: i for i, e in enumerate(self.edges)}
        self.node_budget = node_budget
        self.nodes = 0

        self.witnesses: list[tuple[tuple[int, int], ...]] = []
        self.watchers: list[list[int]] = [[] for _ in self.edges]
        self.incompatible: list[list[int]] = [[] for _ in self.edges]
        for i, (u, v) in enumerate(self.edges):
            pairs = []
            for w in sorted(graph.neighbors(u) & graph.neighbors(v)):
                a, b = index[edge(u, w)], index[edge(w, v)]
                pairs.append((a, b))
                self.watchers[a].append(i)
                self.watchers[b].append(i)
            self.witnesses.append(tuple(pairs))
            self.watchers[i].append(i)
            for centre, other in ((u, v), (v, u)):
                for c in sorted(graph.neighbors(centre) - graph.closed_neighborhood(other)):
                    self.incompatible[i].append(index[edge(centre, c)])

        self.forced = [index[e] for e in sorted(instance.required)]
        self.banned = [index[e] for e in sorted(instance.forbidden)]

    # Propagation ------------------------------------------------------

    @staticmethod
    def _assign(state: list[int], j: int, value: int, queue: list[int]) -> bool:
        if state[j] == value:
            return True
        if state[j] != UNDECIDED:
            return False
        state[j] = value
        queue.append(j)
        return True

    def _options(self, state: list[int], i: int) -> list[tuple[int, ...]] | None:
        """Alive ways to cover G-edge ``i``; ``None`` when it is already covered."""

        if state[i] == IN:
            return None
        options: list[tuple[int, ...]] = [(i,)] if state[i] == UNDECIDED else []
        for a, b in self.witnesses[i]:
            sa, sb = state[a], state[b]
            if sa == OUT or sb == OUT:
                continue
            if sa == IN and sb == IN:
                return None
            options.append((a, b))
        return options

    def _check_cover(self, state: list[int], i: int, queue: list[int]) -> bool:
        options = self._options(state, i)
        if options is None:
            return True
        if not options:
            return False
        if len(options) == 1:
            return all(self._assign(state, j, IN, queue) for j in options[0])
        return True

    def _propagate(self, state: list[int], queue: list[int]) -> bool:
        while queue:
            j = queue.pop()
            if state[j] == IN:
                for k in self.incompatible[j]:
                    if not self._assign(state, k, OUT, queue):
                        return False
            else:
                for i in self.watchers[j]:
                    if not self._check_cover(state, i, queue):
                        return False
        return True

    def _initial_state(self) -> list[int] | None:
        state = [UNDECIDED] * len(self.edges)
        queue: list[int] = []
        for j in self.forced:
            if not self._assign(state, j, IN, queue):
                return None
        for j in self.banned:
            if not self._assign(state, j, OUT, queue):
                return None
        if not self._propagate(state, queue):
            return None
        for i in range(len(self.edges)):
            if not self._check_cover(state, i, queue) or not self._propagate(state, queue):
                return None
        return state

    # Branching --------------------------------------------------------

    def _choose(self, state: list[int], exhaustive: bool) -> int | None:
        best: tuple[int, int] | None = None
        for i in range(len(self.edges)):
            options = self._options(state, i)
            if options is not None and (best is None or len(options) < best[0]):
                best = (len(options), i)
        if best is not None:
            i = best[1]
            for option in self._options(state, i) or ():
                for j in option:
                    if state[j] == UNDECIDED:
                        return j
        if exhaustive:
            return next((j for j, s in enumerate(state) if s == UNDECIDED), None)
        return None

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise _BudgetExhausted

    def roots(self, exhaustive: bool) -> Iterator[Graph]:
        initial = self._initial_state()
        if initial is None:
            return
        stack = [initial]
        while stack:
            state = stack.pop()
            self._tick()
            pick = self._choose(state, exhaustive)
            if pick is None:
                chosen = [e for e, s in zip(self.edges, state) if s == IN]
                yield Graph.from_edges(self.instance.graph.n, chosen)
                continue
            for value in (OUT, IN):
                child = list(state)
                queue: list[int] = []
                if self._assign(child, pick, value, queue) and self._propagate(child, queue):
                    stack.append(child)


def solve_labeled(instance: LabeledInstance, limits: SearchLimits | None = None) -> OracleResult:
    """Decide ``instance`` exactly; Timeout when the node budget runs out."""

    limits = limits or SearchLimits()
    search = _RootSearch(instance, limits.node_budget)
    try:
        root = next(search.roots(exhaustive=False), None)
    except _BudgetExhausted:
        logger.info("Oracle exhausted its budget of %s nodes", limits.node_budget)
        return OracleResult(Verdict.TIMEOUT, None, search.nodes)
    logger.debug(
        "Oracle explored %d nodes on %d vertices / %d edges",
        search.nodes,
        instance.graph.n,
        instance.graph.m,
    )
    if root is None:
        return OracleResult(Verdict.NO, None, search.nodes)
    if not verify_solution(instance, root):
        raise RuntimeError(f"Oracle produced an invalid root {root!r}")
    return OracleResult(Verdict.YES, root, search.nodes)


def enumerate_roots(
    target: Graph | LabeledInstance,
    *,
    max_roots: int = DEFAULT_ENUMERATE_CAP,
    node_budget: int | None = None,
) -> RootEnumeration:
    """All (labeled) roots in canonical order; ``complete`` is false when a cap was hit."""

    instance = target if isinstance(target, LabeledInstance) else LabeledInstance(target)
    search = _RootSearch(instance, node_budget)
    found: list[Graph] = []
    complete = True
    try:
        for root in search.roots(exhaustive=True):
            if len(found) == max_roots:
                complete = False
                break
            found.append(root)
    except _BudgetExhausted:
        complete = False
    found.sort(key=lambda root: root.edges())
    return RootEnumeration(tuple(found), complete, search.nodes)


__all__ = [
    "DEFAULT_ENUMERATE_CAP",
    "DEFAULT_NODE_BUDGET",
    "OracleResult",
    "RootEnumeration",
    "SearchLimits",
    "enumerate_roots",
    "solve_labeled",
]
