"""Immutable simple graphs and the structural primitives built on them."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import networkx as nx

Edge = tuple[int, int]

INFINITY = math.inf


class GraphError(ValueError):
    """Raised when a graph operation is called outside its contract."""


def edge(u: int, v: int) -> Edge:
    """Return the canonical form ``(min, max)`` of the edge ``uv``."""

    if u == v:
        raise GraphError(f"Self-loop at vertex {u} is not a valid edge")
    return (u, v) if u < v else (v, u)


class Graph:
    """Finite simple undirected graph on the vertices ``0..n-1``.

    Instances never change after construction; every "modifying" method returns
    a new graph.
    """

    __slots__ = ("_n", "_adj", "_m")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]]) -> None:
        if n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {n}")
        if len(adjacency) != n:
            raise GraphError(f"Expected {n} adjacency sets, got {len(adjacency)}")
        adj = tuple(frozenset(neighbours) for neighbours in adjacency)
        for u, neighbours in enumerate(adj):
            for v in neighbours:
                if not 0 <= v < n:
                    raise GraphError(f"Vertex {v} adjacent to {u} is out of range 0..{n - 1}")
                if v == u:
                    raise GraphError(f"Self-loop at vertex {u} is not allowed")
                if u not in adj[v]:
                    raise GraphError(f"Adjacency is not symmetric for edge {u}-{v}")
        self._n = n
        self._adj = adj
        self._m = sum(len(neighbours) for neighbours in adj) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adjacency: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"Edge {u}-{v} references a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"Self-loop at vertex {u} is not allowed")
            adjacency[u].add(v)
            adjacency[v].add(u)
        return cls(n, adjacency)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [()] * n)

    # Basic accessors --------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, u: int) -> frozenset[int]:
        return self._adj[u]

    def closed_neighborhood(self, u: int) -> frozenset[int]:
        return self._adj[u] | {u}

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and v in self._adj[u]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self._n) for v in sorted(self._adj[u]) if u < v]

    @property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def __iter__(self) -> Iterator[int]:
        return iter(range(self._n))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edges()!r})"

    # Derived graphs ---------------------------------------------------

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adjacency = [set(a) for a in self._adj]
        for u, v in edges:
            if v not in adjacency[u]:
                raise GraphError(f"Cannot remove missing edge {u}-{v}")
            adjacency[u].discard(v)
            adjacency[v].discard(u)
        return Graph(self._n, adjacency)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.from_edges(self._n, [*self.edges(), *edges])

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Return ``G[vertices]`` relabeled to ``0..k-1`` and the map new id -> old id."""

        order = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(order)}
        adjacency = [
            {index[w] for w in self._adj[v] if w in index}
            for v in order
        ]
        return Graph(len(order), adjacency), order

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""

        seen = [False] * self._n
        result: list[list[int]] = []
        for start in range(self._n):
            if seen[start]:
                continue
            seen[start] = True
            queue = deque([start])
            component = []
            while queue:
                u = queue.popleft()
                component.append(u)
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            result.append(sorted(component))
        return result

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self.edges())
        return graph


# Constructors ----------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"A cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves: int) -> Graph:
    """Star ``K1,leaves`` with centre 0."""

    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# Structural operations -------------------------------------------------


def square(graph: Graph) -> Graph:
    """Return the square: ``uv`` is an edge iff ``1 <= dist(u, v) <= 2``."""

    adjacency = []
    for u in graph:
        reach = set(graph.neighbors(u))
        for w in graph.neighbors(u):
            reach |= graph.neighbors(w)
        reach.discard(u)
        adjacency.append(reach)
    return Graph(graph.n, adjacency)


def distance(graph: Graph, u: int, v: int) -> int | float:
    """BFS distance; :data:`INFINITY` when ``u`` and ``v`` are disconnected."""

    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for w in graph.neighbors(x):
            if w not in dist:
                dist[w] = dist[x] + 1
                if w == v:
                    return dist[w]
                queue.append(w)
    return INFINITY


def are_true_twins(graph: Graph, u: int, v: int) -> bool:
    if u == v:
        raise GraphError("True twins must be distinct vertices")
    return graph.closed_neighborhood(u) == graph.closed_neighborhood(v)


def average_degree(graph: Graph) -> Fraction:
    if graph.n == 0:
        raise GraphError("Average degree is undefined for the empty graph")
    return Fraction(2 * graph.m, graph.n)


@dataclass(frozen=True, slots=True)
class BlockDecomposition:
    """Blocks, cut vertices and bridges of a graph."""

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    bridges: frozenset[Edge]

    def blocks_containing(self, v: int) -> list[frozenset[int]]:
        return [block for block in self.blocks if v in block]

    @staticmethod
    def classify(block: frozenset[int]) -> str:
        if len(block) == 1:
            return "trivial"
        if len(block) == 2:
            return "small"
        return "big"

    @staticmethod
    def is_pendant(graph: Graph, block: frozenset[int]) -> bool:
        return len(block) == 2 and any(graph.degree(v) == 1 for v in block)


def blocks_and_cuts(graph: Graph) -> BlockDecomposition:
    nx_graph = graph.to_networkx()
    blocks = [frozenset(component) for component in nx.biconnected_components(nx_graph)]
    blocks.extend(frozenset({v}) for v in graph if graph.degree(v) == 0)
    blocks.sort(key=lambda block: (min(block), sorted(block)))
    cut_vertices = frozenset(nx.articulation_points(nx_graph))
    bridges = frozenset(edge(*block) for block in blocks if len(block) == 2)
    return BlockDecomposition(tuple(blocks), cut_vertices, bridges)


__all__ = [
    "BlockDecomposition",
    "Edge",
    "Graph",
    "GraphError",
    "INFINITY",
    "are_true_twins",
    "average_degree",
    "blocks_and_cuts",
    "complete_graph",
    "cycle_graph",
    "distance",
    "edge",
    "path_graph",
    "square",
    "star_graph",
]
