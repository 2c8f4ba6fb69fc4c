"""Isomorph-free small-graph corpus generated by vertex extension."""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations

import networkx as nx
from networkx.algorithms.graph_hashing import weisfeiler_lehman_graph_hash

from .graph import Graph

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def small_graphs(n: int) -> tuple[Graph, ...]:
    """All graphs on exactly ``n`` vertices, one per isomorphism class.

    Each graph on ``n`` vertices is a graph on ``n - 1`` vertices plus one new
    vertex joined to some subset, so extending every representative by every
    subset reaches every class. Candidates are bucketed by their
    Weisfeiler-Lehman hash and compared with an exact isomorphism test.
    """

    if n == 0:
        return (Graph.empty(0),)
    buckets: dict[str, list[nx.Graph]] = {}
    representatives: list[Graph] = []
    for base in small_graphs(n - 1):
        base_edges = base.edges()
        for size in range(n):
            for attach in combinations(range(n - 1), size):
                candidate = Graph.from_edges(n, [*base_edges, *((v, n - 1) for v in attach)])
                nx_candidate = candidate.to_networkx()
                key = weisfeiler_lehman_graph_hash(nx_candidate)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(nx_candidate, other) for other in bucket):
                    continue
                bucket.append(nx_candidate)
                representatives.append(candidate)
    logger.debug("Generated %d isomorphism classes on %d vertices", len(representatives), n)
    return tuple(representatives)


def small_graph_corpus(max_n: int, *, min_n: int = 1) -> list[Graph]:
    corpus: list[Graph] = []
    for n in range(min_n, max_n + 1):
        corpus.extend(small_graphs(n))
    return corpus


__all__ = ["small_graph_corpus", "small_graphs"]
