from fractions import Fraction

import pytest
from hypothesis import given, settings

from sqroot_kernel.core.corpus import small_graph_corpus
from sqroot_kernel.core.density import BRUTEFORCE_LIMIT, MAD_THRESHOLD, max_average_degree
from sqroot_kernel.core.graph import Graph, GraphError, complete_graph, cycle_graph, path_graph, square

from .strategies import graphs


@pytest.mark.parametrize(
    ("graph", "expected"),
    [
        (complete_graph(4), Fraction(3)),
        (cycle_graph(7), Fraction(2)),
        (square(cycle_graph(7)), Fraction(4)),
        (path_graph(4), Fraction(3, 2)),
        (Graph.empty(3), Fraction(0)),
    ],
)
@pytest.mark.parametrize("method", ["flow", "bruteforce"])
def test_mad_examples(graph, expected, method):
    assert max_average_degree(graph, method=method) == expected


def test_dense_part_dominates_sparse_tail():
    # K5 with a long pendant path: the clique alone has average degree 4
    graph = Graph.from_edges(
        9,
        [*complete_graph(5).edges(), (4, 5), (5, 6), (6, 7), (7, 8)],
    )
    assert max_average_degree(graph) == 4


def test_threshold_is_exact():
    assert MAD_THRESHOLD == Fraction(46, 11)
    assert max_average_degree(square(cycle_graph(7))) < MAD_THRESHOLD
    assert max_average_degree(complete_graph(6)) >= MAD_THRESHOLD


def test_empty_graph_is_rejected():
    with pytest.raises(GraphError, match="undefined"):
        max_average_degree(Graph.empty(0))


def test_unknown_method_is_rejected():
    with pytest.raises(ValueError, match="Unknown mad method"):
        max_average_degree(path_graph(3), method="lp")


def test_bruteforce_refuses_large_graphs():
    with pytest.raises(GraphError, match="limited"):
        max_average_degree(path_graph(BRUTEFORCE_LIMIT + 1), method="bruteforce")


def test_flow_matches_bruteforce_on_small_graphs():
    for graph in small_graph_corpus(6):
        assert max_average_degree(graph) == max_average_degree(graph, method="bruteforce")


@pytest.mark.slow
def test_flow_matches_bruteforce_on_seven_vertices():
    for graph in small_graph_corpus(7, min_n=7):
        assert max_average_degree(graph) == max_average_degree(graph, method="bruteforce")


@given(graphs(max_vertices=12))
@settings(max_examples=60, deadline=None)
def test_flow_matches_bruteforce_on_random_graphs(graph: Graph):
    assert max_average_degree(graph) == max_average_degree(graph, method="bruteforce")
