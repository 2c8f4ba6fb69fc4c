"""Tree decompositions: validation, elimination orderings, exact width search."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graph import Graph, GraphError, blocks_and_cuts

logger = logging.getLogger(__name__)


class DecompositionError(ValueError):
    """Raised when a tree decomposition does not fit its graph."""


@dataclass(frozen=True, slots=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...] = ()

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags), default=0) - 1

    def adjacency(self) -> list[list[int]]:
        adjacency: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        return adjacency


def validate_decomposition(graph: Graph, decomposition: TreeDecomposition) -> bool:
    bags = decomposition.bags
    count = len(bags)
    if count == 0:
        return graph.n == 0
    edges = decomposition.tree_edges
    if len(edges) != count - 1:
        return False
    if any(not (0 <= a < count and 0 <= b < count) or a == b for a, b in edges):
        return False
    adjacency = decomposition.adjacency()
    seen = {0}
    queue = deque([0])
    while queue:
        for b in adjacency[queue.popleft()]:
            if b not in seen:
                seen.add(b)
                queue.append(b)
    if len(seen) != count:
        return False

    covered = set().union(*bags)
    if covered != set(graph.vertices):
        return False
    if any(not any(u in bag and v in bag for bag in bags) for u, v in graph.edges()):
        return False
    # a vertex's nodes induce a subtree iff they span exactly (nodes - 1) tree edges
    for x in graph:
        holding = sum(1 for bag in bags if x in bag)
        spanning = sum(1 for a, b in edges if x in bags[a] and x in bags[b])
        if spanning != holding - 1:
            return False
    return True


def decomposition_from_order(graph: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Decomposition whose bags are ``{v} ∪`` later neighbours in the filled graph."""

    if sorted(order) != list(graph.vertices):
        raise DecompositionError("Elimination order must list every vertex exactly once")
    position = {v: i for i, v in enumerate(order)}
    adjacency = [set(graph.neighbors(v)) for v in graph]
    bags: list[frozenset[int]] = []
    tree_edges: list[tuple[int, int]] = []
    roots: list[int] = []
    for v in order:
        later = {w for w in adjacency[v] if position[w] > position[v]}
        for w in later:
            adjacency[w] |= later - {w}
        bags.append(frozenset(later | {v}))
        if later:
            tree_edges.append((position[v], min(position[w] for w in later)))
        else:
            roots.append(position[v])
    tree_edges.extend(zip(roots, roots[1:]))
    return TreeDecomposition(tuple(bags), tuple(tree_edges))


def compress(decomposition: TreeDecomposition) -> TreeDecomposition:
    """Merge every bag contained in a neighbouring bag into that neighbour."""

    bags = list(decomposition.bags)
    adjacency = [set(a) for a in decomposition.adjacency()]
    alive = set(range(len(bags)))
    changed = True
    while changed:
        changed = False
        for i in sorted(alive):
            if i not in alive:
                continue
            target = next((j for j in sorted(adjacency[i]) if bags[i] <= bags[j]), None)
            if target is None:
                continue
            for other in adjacency[i] - {target}:
                adjacency[other].discard(i)
                adjacency[other].add(target)
                adjacency[target].add(other)
            adjacency[target].discard(i)
            adjacency[i] = set()
            alive.discard(i)
            changed = True

    index = {old: new for new, old in enumerate(sorted(alive))}
    tree_edges = sorted(
        (index[a], index[b]) for a in alive for b in adjacency[a] if a < b
    )
    return TreeDecomposition(tuple(bags[i] for i in sorted(alive)), tuple(tree_edges))


def _eliminate(adjacency: dict[int, set[int]], v: int) -> dict[int, set[int]]:
    neighbours = adjacency[v]
    result = {w: set(ws) for w, ws in adjacency.items() if w != v}
    for w in neighbours:
        result[w] |= neighbours - {w}
        result[w].discard(v)
    return result


def _fill_in(adjacency: dict[int, set[int]], v: int) -> int:
    return sum(1 for a, b in combinations(sorted(adjacency[v]), 2) if b not in adjacency[a])


def _greedy_order(graph: Graph, heuristic: str) -> list[int]:
    if heuristic == "min-fill":
        def cost(adj: dict[int, set[int]], v: int) -> tuple[int, int, int]:
            return (_fill_in(adj, v), len(adj[v]), v)
    elif heuristic == "min-degree":
        def cost(adj: dict[int, set[int]], v: int) -> tuple[int, int, int]:
            return (len(adj[v]), _fill_in(adj, v), v)
    else:
        raise ValueError(f"Unknown elimination heuristic {heuristic!r}")

    adjacency = {v: set(graph.neighbors(v)) for v in graph}
    order = []
    while adjacency:
        v = min(adjacency, key=lambda x: cost(adjacency, x))
        order.append(v)
        adjacency = _eliminate(adjacency, v)
    return order


def greedy_decomposition(graph: Graph, heuristic: str = "min-fill") -> TreeDecomposition:
    return compress(decomposition_from_order(graph, _greedy_order(graph, heuristic)))


def _is_clique(adjacency: dict[int, set[int]], vertices: set[int]) -> bool:
    return all(vertices - {a} <= adjacency[a] for a in vertices)


def _degeneracy(adjacency: dict[int, set[int]]) -> int:
    adjacency = {v: set(ws) for v, ws in adjacency.items()}
    best = 0
    while adjacency:
        v = min(adjacency, key=lambda x: (len(adjacency[x]), x))
        best = max(best, len(adjacency[v]))
        for w in adjacency.pop(v):
            adjacency[w].discard(v)
    return best


class _WidthSearch:
    """Branch and bound over elimination orderings of one connected graph."""

    def __init__(self, graph: Graph, k: int) -> None:
        self.graph = graph
        self.k = k
        self.failed: set[frozenset[int]] = set()
        self.nodes = 0

    def order(self) -> list[int] | None:
        graph, k = self.graph, self.k
        if graph.n <= k + 1:
            return list(graph.vertices)
        for heuristic in ("min-fill", "min-degree"):
            order = _greedy_order(graph, heuristic)
            if decomposition_from_order(graph, order).width <= k:
                return order
        adjacency = {v: set(graph.neighbors(v)) for v in graph}
        if _degeneracy(adjacency) > k:
            return None
        return self._search(frozenset(), adjacency)

    def _search(self, eliminated: frozenset[int], adjacency: dict[int, set[int]]) -> list[int] | None:
        self.nodes += 1
        if len(adjacency) <= self.k + 1:
            return sorted(adjacency)
        if eliminated in self.failed:
            return None
        # eliminating a simplicial vertex first never increases the width
        for v in sorted(adjacency):
            if _is_clique(adjacency, adjacency[v]):
                if len(adjacency[v]) > self.k:
                    self.failed.add(eliminated)
                    return None
                rest = self._search(eliminated | {v}, _eliminate(adjacency, v))
                if rest is None:
                    self.failed.add(eliminated)
                    return None
                return [v, *rest]
        candidates = sorted(
            (v for v in adjacency if len(adjacency[v]) <= self.k),
            key=lambda v: (_fill_in(adjacency, v), len(adjacency[v]), v),
        )
        for v in candidates:
            rest = self._search(eliminated | {v}, _eliminate(adjacency, v))
            if rest is not None:
                return [v, *rest]
        self.failed.add(eliminated)
        return None


def treewidth_at_most(graph: Graph, k: int) -> TreeDecomposition | None:
    """A decomposition of width at most ``k``, or ``None`` when ``tw(graph) > k``.

    Exact, but exponential in the worst case; intended for small ``k``.
    """

    if k < 0:
        return TreeDecomposition(()) if graph.n == 0 else None
    full_order: list[int] = []
    for component in graph.components():
        sub, vertex_map = graph.induced_subgraph(component)
        search = _WidthSearch(sub, k)
        order = search.order()
        logger.debug(
            "Width search on %d vertices (k=%d): %s after %d nodes",
            sub.n,
            k,
            "found" if order is not None else "none",
            search.nodes,
        )
        if order is None:
            return None
        full_order.extend(vertex_map[v] for v in order)
    decomposition = compress(decomposition_from_order(graph, full_order))
    logger.info("Found a decomposition of width %d (k=%d)", decomposition.width, k)
    return decomposition


def h_tree_decomposition(root: Graph) -> TreeDecomposition:
    """Block-cut-vertex decomposition of ``square(root)``.

    One bag per block of ``root`` (its vertices) and one per cut vertex ``u``
    (``u`` and its neighbours in ``root``), on the block-cut-vertex tree.
    """

    if not root.is_connected():
        raise GraphError("The block-cut-vertex tree needs a connected root")
    if root.n == 0:
        return TreeDecomposition(())
    decomposition = blocks_and_cuts(root)
    blocks = list(decomposition.blocks)
    cuts = sorted(decomposition.cut_vertices)
    bags = [*blocks, *(root.closed_neighborhood(c) for c in cuts)]
    tree_edges = [
        (b, len(blocks) + c)
        for c, cut in enumerate(cuts)
        for b, block in enumerate(blocks)
        if cut in block
    ]
    return TreeDecomposition(tuple(bags), tuple(tree_edges))


__all__ = [
    "DecompositionError",
    "TreeDecomposition",
    "compress",
    "decomposition_from_order",
    "greedy_decomposition",
    "h_tree_decomposition",
    "treewidth_at_most",
    "validate_decomposition",
]
