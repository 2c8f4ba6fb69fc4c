"""Tests for recognizable-edge detection."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, assume, given, settings

from sqroot_kernel.core.graph import (
    Graph,
    GraphError,
    are_true_twins,
    complete_graph,
    cycle_graph,
    distance,
    edge,
    path_graph,
    square,
)
from sqroot_kernel.core.oracle import enumerate_roots
from sqroot_kernel.core.recognizer import UVPartition, find_recognizable_edge, uv_partition

from .strategies import connected_graphs


def _shortest_cycle_through(root: Graph, u: int, v: int) -> float:
    return distance(root.remove_edges([(u, v)]), u, v) + 1


def _is_pendant_edge(root: Graph, u: int, v: int) -> bool:
    return root.degree(u) == 1 or root.degree(v) == 1


def test_singleton_common_neighbourhood_has_no_partition():
    assert uv_partition(square(cycle_graph(7)), 0, 2) is None


def test_triangle_has_no_partition():
    assert uv_partition(complete_graph(3), 0, 1) is None


def test_non_edge_is_rejected():
    with pytest.raises(GraphError, match="not an edge"):
        uv_partition(path_graph(3), 0, 2)


def test_square_of_c7_has_a_recognizable_cycle_edge():
    found = find_recognizable_edge(square(cycle_graph(7)))
    assert found is not None
    uv, partition = found
    assert uv in cycle_graph(7).edge_set
    assert partition.is_valid_for(square(cycle_graph(7)))
    assert len(partition.x) == len(partition.y) == 1


def test_square_of_c7_first_edge_partition():
    found = find_recognizable_edge(square(cycle_graph(7)))
    assert found == ((0, 1), UVPartition(0, 1, frozenset({6}), frozenset({2})))


def test_complete_graph_has_no_recognizable_edge():
    assert find_recognizable_edge(complete_graph(4)) is None


def test_edgeless_graph_has_no_recognizable_edge():
    assert find_recognizable_edge(Graph.empty(4)) is None


def test_middle_edge_of_path_is_recognizable():
    graph = square(path_graph(4))
    partition = uv_partition(graph, 1, 2)
    assert partition == UVPartition(1, 2, frozenset({0}), frozenset({3}))


@given(connected_graphs(min_vertices=2, max_vertices=9, extra_edges=2))
@settings(max_examples=80, deadline=None)
def test_long_cycle_edges_are_recognizable(root: Graph):
    graph = square(root)
    for u, v in root.edges():
        if _is_pendant_edge(root, u, v) or _shortest_cycle_through(root, u, v) < 7:
            continue
        expected = UVPartition(
            u, v, root.neighbors(u) - {v}, root.neighbors(v) - {u}
        )
        assert expected.is_valid_for(graph)
        assert uv_partition(graph, u, v) is not None


@given(connected_graphs(min_vertices=2, max_vertices=9, extra_edges=3))
@settings(max_examples=80, deadline=None)
def test_without_recognizable_edges_every_inner_edge_is_on_a_short_cycle(root: Graph):
    if find_recognizable_edge(square(root)) is not None:
        return
    for u, v in root.edges():
        if not _is_pendant_edge(root, u, v):
            assert _shortest_cycle_through(root, u, v) <= 6


@given(connected_graphs(min_vertices=3, max_vertices=6, extra_edges=2))
@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
def test_recognizable_edge_pins_down_every_root(root: Graph):
    graph = square(root)
    found = find_recognizable_edge(graph)
    assume(found is not None)
    uv, partition = found
    u, v, x, y = partition.u, partition.v, partition.x, partition.y
    straight = {edge(u, a) for a in x} | {edge(v, b) for b in y}
    crossed = {edge(u, b) for b in y} | {edge(v, a) for a in x}
    private = {edge(u, w) for w in graph.neighbors(u) - graph.closed_neighborhood(v)}
    private |= {edge(v, w) for w in graph.neighbors(v) - graph.closed_neighborhood(u)}
    twins = are_true_twins(graph, u, v)

    roots = enumerate_roots(graph).roots
    assert roots
    for candidate in roots:
        edges = candidate.edge_set
        assert uv in edges
        assert not private & edges
        if twins:
            assert (straight <= edges and not crossed & edges) or (
                crossed <= edges and not straight & edges
            )
        else:
            assert straight <= edges
            assert not crossed & edges


@given(connected_graphs(min_vertices=3, max_vertices=9, extra_edges=2))
@settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
def test_swapped_partition_fails_when_private_neighbours_exist(root: Graph):
    graph = square(root)
    found = find_recognizable_edge(graph)
    assume(found is not None)
    _, partition = found
    u, v = partition.u, partition.v
    assume(
        graph.neighbors(u) - graph.closed_neighborhood(v)
        or graph.neighbors(v) - graph.closed_neighborhood(u)
    )
    swapped = UVPartition(u, v, partition.y, partition.x)
    assert not swapped.is_valid_for(graph)


@given(connected_graphs(min_vertices=2, max_vertices=8))
@settings(max_examples=60, deadline=None)
def test_returned_partitions_are_valid(root: Graph):
    graph = square(root)
    found = find_recognizable_edge(graph)
    if found is not None:
        uv, partition = found
        assert edge(partition.u, partition.v) == uv
        assert partition.is_valid_for(graph)
