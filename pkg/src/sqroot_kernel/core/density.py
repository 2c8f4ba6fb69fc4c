"""Exact maximum average degree via densest-subgraph flows."""

from __future__ import annotations

import logging
from fractions import Fraction

import networkx as nx

from .graph import Graph, GraphError, average_degree

logger = logging.getLogger(__name__)

MAD_THRESHOLD = Fraction(46, 11)
BRUTEFORCE_LIMIT = 20

_SOURCE = "source"
_SINK = "sink"


def _denser_subset(graph: Graph, threshold: Fraction) -> list[int] | None:
    """A vertex set whose average degree exceeds ``threshold``, if one exists.

    Goldberg's network with all capacities scaled by the denominator of the
    threshold: a cut with source side ``S`` costs
    ``q*m*n + p*|S| - 2*q*|E(S)|``.
    """

    m = graph.m
    if m == 0:
        return None
    p, q = threshold.numerator, threshold.denominator
    network = nx.DiGraph()
    for v in graph:
        network.add_edge(_SOURCE, v, capacity=q * m)
        network.add_edge(v, _SINK, capacity=q * m + p - q * graph.degree(v))
    for u, v in graph.edges():
        network.add_edge(u, v, capacity=q)
        network.add_edge(v, u, capacity=q)
    cut_value, (reachable, _) = nx.minimum_cut(network, _SOURCE, _SINK)
    if cut_value >= q * m * graph.n:
        return None
    return sorted(v for v in reachable if v != _SOURCE)


def _induced_edge_count(graph: Graph, vertices: list[int]) -> int:
    chosen = set(vertices)
    return sum(len(graph.neighbors(v) & chosen) for v in vertices) // 2


def _mad_bruteforce(graph: Graph) -> Fraction:
    n = graph.n
    if n > BRUTEFORCE_LIMIT:
        raise GraphError(f"Brute-force mad is limited to {BRUTEFORCE_LIMIT} vertices, got {n}")
    masks = [sum(1 << w for w in graph.neighbors(v)) for v in graph]
    inside = [0] * (1 << n)
    best_num, best_den = 0, 1
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        inside[mask] = inside[rest] + (masks[low.bit_length() - 1] & rest).bit_count()
        size = mask.bit_count()
        if 2 * inside[mask] * best_den > best_num * size:
            best_num, best_den = 2 * inside[mask], size
    return Fraction(best_num, best_den)


def max_average_degree(graph: Graph, method: str = "flow") -> Fraction:
    """``max 2|E(G[S])| / |S|`` over non-empty vertex sets ``S``, as an exact rational."""

    if graph.n == 0:
        raise GraphError("Maximum average degree is undefined for the empty graph")
    if method == "bruteforce":
        return _mad_bruteforce(graph)
    if method != "flow":
        raise ValueError(f"Unknown mad method {method!r}; expected 'flow' or 'bruteforce'")

    best = average_degree(graph)
    rounds = 0
    while (subset := _denser_subset(graph, best)) is not None:
        best = Fraction(2 * _induced_edge_count(graph, subset), len(subset))
        rounds += 1
    logger.debug("mad converged to %s after %d flow rounds", best, rounds)
    return best


__all__ = ["BRUTEFORCE_LIMIT", "MAD_THRESHOLD", "max_average_degree"]
