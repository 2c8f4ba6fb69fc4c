"""Random instance generators: HKT roots and squares of apex-extended roots."""

from __future__ import annotations

import logging
import random

from .graph import Edge, Graph, edge, square
from .kernel import hkt_planar_square_check

logger = logging.getLogger(__name__)

DEFAULT_VERTICES = 20
DEFAULT_MAX_CYCLE = 10
DEFAULT_APEX_DEGREE = 4

# Local edge lists; local vertex 0 is the attachment vertex and has the
# smallest degree inside its block.
_SMALL_BLOCKS: dict[str, tuple[int, list[tuple[int, int]]]] = {
    "k2": (2, [(0, 1)]),
    "k3": (3, [(0, 1), (0, 2), (1, 2)]),
    "c4": (4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    "diamond": (4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
}


def _block_menu(max_cycle: int) -> list[tuple[str, int, list[tuple[int, int]]]]:
    menu = [(name, size, shape) for name, (size, shape) in _SMALL_BLOCKS.items()]
    for length in range(6, max_cycle + 1, 2):
        menu.append((f"c{length}", length, [(i, (i + 1) % length) for i in range(length)]))
    return menu


def generate_hkt_root(
    seed: int,
    vertices: int = DEFAULT_VERTICES,
    *,
    max_cycle: int = DEFAULT_MAX_CYCLE,
) -> Graph:
    """Random tree of small blocks and even cycles whose square is planar.

    Blocks are glued one at a time at an existing vertex; a gluing that breaks
    the degree bound or creates three mutually adjacent cut vertices is
    rejected.
    """

    if vertices < 1:
        raise ValueError(f"A root needs at least one vertex, got {vertices}")
    rng = random.Random(seed)
    menu = _block_menu(max_cycle)
    edges: list[Edge] = []
    n = 1
    rejected = 0
    while n < vertices and rejected < 64:
        name, size, shape = rng.choice(menu)
        if n + size - 1 > vertices:
            rejected += 1
            continue
        anchor = rng.randrange(n)
        local = [anchor, *range(n, n + size - 1)]
        glued = [edge(local[a], local[b]) for a, b in shape]
        candidate = Graph.from_edges(n + size - 1, [*edges, *glued])
        if not hkt_planar_square_check(candidate):
            rejected += 1
            continue
        logger.debug("Glued %s at vertex %d", name, anchor)
        edges.extend(glued)
        n += size - 1
        rejected = 0
    return Graph.from_edges(n, edges)


def generate_apex_root(
    seed: int,
    k: int,
    vertices: int = DEFAULT_VERTICES,
    *,
    max_cycle: int = DEFAULT_MAX_CYCLE,
    apex_degree: int = DEFAULT_APEX_DEGREE,
) -> Graph:
    """HKT root on ``0..r-1`` plus ``k`` apex vertices ``r..r+k-1``.

    Each apex vertex gets 1..``apex_degree`` neighbours inside the closed
    neighbourhood of one root vertex. That set is a clique in the square of the
    root, so deleting the apex vertices from the square of the result leaves
    exactly the (planar) square of the root.
    """

    if k < 0:
        raise ValueError(f"Apex count k must be non-negative, got {k}")
    if not 1 <= apex_degree <= 4:
        raise ValueError(f"Apex degree must lie in 1..4, got {apex_degree}")
    root = generate_hkt_root(seed, vertices, max_cycle=max_cycle)
    rng = random.Random(f"apex:{seed}")
    edges = root.edges()
    for offset in range(k):
        apex = root.n + offset
        centre = rng.randrange(root.n)
        pool = sorted(root.closed_neighborhood(centre))
        chosen = rng.sample(pool, rng.randint(1, min(apex_degree, len(pool))))
        edges.extend(edge(apex, w) for w in sorted(chosen))
    return Graph.from_edges(root.n + k, edges)


def generate_apex_square(
    seed: int,
    k: int,
    vertices: int = DEFAULT_VERTICES,
    *,
    max_cycle: int = DEFAULT_MAX_CYCLE,
    apex_degree: int = DEFAULT_APEX_DEGREE,
) -> tuple[Graph, int]:
    """Square of :func:`generate_apex_root`, with its planar+kv promise ``k``."""

    root = generate_apex_root(
        seed, k, vertices, max_cycle=max_cycle, apex_degree=apex_degree
    )
    return square(root), k


__all__ = [
    "DEFAULT_APEX_DEGREE",
    "DEFAULT_MAX_CYCLE",
    "DEFAULT_VERTICES",
    "generate_apex_root",
    "generate_apex_square",
    "generate_hkt_root",
]
