"""Detection of recognizable edges and their (u,v)-partitions."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Edge, Graph, GraphError


@dataclass(frozen=True, slots=True)
class UVPartition:
    """Witness ``(X, Y)`` that the ordered edge ``(u, v)`` is recognizable."""

    u: int
    v: int
    x: frozenset[int]
    y: frozenset[int]

    def is_valid_for(self, graph: Graph) -> bool:
        u, v, x, y = self.u, self.v, self.x, self.y
        if not graph.has_edge(u, v) or not x or not y or x & y:
            return False
        if x | y != graph.neighbors(u) & graph.neighbors(v):
            return False
        if not (_is_clique(graph, x) and _is_clique(graph, y)):
            return False
        if any(graph.neighbors(a) & y for a in x):
            return False
        return _private_neighbours_ok(graph, u, v, x, y) and _private_neighbours_ok(
            graph, v, u, y, x
        )


def _is_clique(graph: Graph, vertices: frozenset[int]) -> bool:
    return all(vertices - {a} <= graph.neighbors(a) for a in vertices)


def _private_neighbours_ok(
    graph: Graph, u: int, v: int, own: frozenset[int], other: frozenset[int]
) -> bool:
    # every w in N(u) \ N[v] sees own side, never the other side
    for w in graph.neighbors(u) - graph.closed_neighborhood(v):
        reach = graph.neighbors(w)
        if reach & other or not reach & own:
            return False
    return True


def _clique_components(graph: Graph, vertices: frozenset[int]) -> list[frozenset[int]]:
    remaining = set(vertices)
    components: list[frozenset[int]] = []
    while remaining:
        start = min(remaining)
        stack = [start]
        component = {start}
        while stack:
            a = stack.pop()
            for b in graph.neighbors(a) & remaining:
                if b not in component:
                    component.add(b)
                    stack.append(b)
        remaining -= component
        components.append(frozenset(component))
    return components


def uv_partition(graph: Graph, u: int, v: int) -> UVPartition | None:
    """Return the canonical ``(u, v)``-partition of ``N(u) ∩ N(v)``, if any."""

    if not graph.has_edge(u, v):
        raise GraphError(f"{u}-{v} is not an edge of the graph")
    common = graph.neighbors(u) & graph.neighbors(v)
    if len(common) < 2:
        return None
    components = _clique_components(graph, common)
    if len(components) != 2 or not all(_is_clique(graph, c) for c in components):
        return None
    first, second = components
    for x, y in ((first, second), (second, first)):
        if _private_neighbours_ok(graph, u, v, x, y) and _private_neighbours_ok(
            graph, v, u, y, x
        ):
            return UVPartition(u, v, x, y)
    return None


def find_recognizable_edge(graph: Graph) -> tuple[Edge, UVPartition] | None:
    for a, b in graph.edges():
        for u, v in ((a, b), (b, a)):
            partition = uv_partition(graph, u, v)
            if partition is not None:
                return (a, b), partition
    return None


__all__ = ["UVPartition", "find_recognizable_edge", "uv_partition"]
