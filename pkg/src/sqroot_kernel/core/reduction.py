"""Edge Reduction over labeled instances, with a replayable trace."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .graph import Edge, Graph, GraphError, are_true_twins, edge, square
from .recognizer import UVPartition, find_recognizable_edge
from .verdict import Verdict

logger = logging.getLogger(__name__)


class LabelError(GraphError):
    """Raised when a forced or forbidden label is not an edge of the graph."""


class ReductionError(ValueError):
    """Raised when a trace does not fit the graph it is applied to."""


@dataclass(frozen=True, slots=True)
class LabeledInstance:
    """``(G, R, B)``: graph, forced root edges and forbidden root edges."""

    graph: Graph
    required: frozenset[Edge] = frozenset()
    forbidden: frozenset[Edge] = frozenset()

    def __post_init__(self) -> None:
        edges = self.graph.edge_set
        for name, labels in (("forced", self.required), ("forbidden", self.forbidden)):
            stray = sorted(labels - edges)
            if stray:
                raise LabelError(f"{name} labels are not edges of the graph: {stray}")

    @classmethod
    def of(
        cls,
        graph: Graph,
        required: Iterable[tuple[int, int]] = (),
        forbidden: Iterable[tuple[int, int]] = (),
    ) -> "LabeledInstance":
        return cls(
            graph,
            frozenset(edge(*e) for e in required),
            frozenset(edge(*e) for e in forbidden),
        )

    @property
    def has_label_conflict(self) -> bool:
        return bool(self.required & self.forbidden)

    def restrict(self, vertices: Iterable[int]) -> tuple["LabeledInstance", tuple[int, ...]]:
        """Induced sub-instance on ``vertices``, relabeled, plus the vertex map."""

        sub, order = self.graph.induced_subgraph(vertices)
        index = {v: i for i, v in enumerate(order)}

        def _local(labels: frozenset[Edge]) -> frozenset[Edge]:
            return frozenset(
                edge(index[a], index[b]) for a, b in labels if a in index and b in index
            )

        return LabeledInstance(sub, _local(self.required), _local(self.forbidden)), order


class Branch(str, Enum):
    NON_TWIN = "non-twin"
    TWIN_FORCED = "twin-forced"
    TWIN_FREE = "twin-free"


@dataclass(frozen=True, slots=True)
class ReductionEvent:
    """One removed recognizable edge.

    ``deleted`` are the pairs that leave the graph together with ``edge``;
    ``required_added`` and ``forbidden_added`` are the labels it introduced.
    """

    edge: Edge
    partition: UVPartition
    deleted: frozenset[Edge]
    required_added: frozenset[Edge]
    forbidden_added: frozenset[Edge]
    branch: Branch

    def to_record(self) -> dict:
        return {
            "edge": list(self.edge),
            "u": self.partition.u,
            "v": self.partition.v,
            "x": sorted(self.partition.x),
            "y": sorted(self.partition.y),
            "deleted": [list(e) for e in sorted(self.deleted)],
            "required": [list(e) for e in sorted(self.required_added)],
            "forbidden": [list(e) for e in sorted(self.forbidden_added)],
            "branch": self.branch.value,
        }

    @classmethod
    def from_record(cls, record: dict) -> "ReductionEvent":
        try:
            return cls(
                edge=edge(*record["edge"]),
                partition=UVPartition(
                    record["u"], record["v"], frozenset(record["x"]), frozenset(record["y"])
                ),
                deleted=frozenset(edge(*e) for e in record["deleted"]),
                required_added=frozenset(edge(*e) for e in record["required"]),
                forbidden_added=frozenset(edge(*e) for e in record["forbidden"]),
                branch=Branch(record["branch"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ReductionError(f"Malformed reduction event record: {record!r}") from exc


@dataclass(frozen=True, slots=True)
class ReductionTrace:
    n: int
    events: tuple[ReductionEvent, ...] = ()

    def __len__(self) -> int:
        return len(self.events)

    def replay(self, graph: Graph) -> Graph:
        """Apply the recorded deletions to ``graph`` (the original input)."""

        if graph.n != self.n:
            raise ReductionError(f"Trace is for {self.n} vertices, graph has {graph.n}")
        for event in self.events:
            graph = graph.remove_edges([event.edge, *sorted(event.deleted)])
        return graph

    def to_lines(self) -> list[str]:
        lines = [json.dumps({"n": self.n})]
        lines.extend(json.dumps(event.to_record(), sort_keys=True) for event in self.events)
        return lines

    @classmethod
    def from_lines(cls, lines: Sequence[str]) -> "ReductionTrace":
        records = [line for line in lines if line.strip()]
        if not records:
            raise ReductionError("Trace is empty; expected a header record")
        try:
            header = json.loads(records[0])
            n = int(header["n"])
            events = tuple(ReductionEvent.from_record(json.loads(line)) for line in records[1:])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ReductionError):
                raise
            raise ReductionError(f"Trace is not valid JSON Lines: {exc}") from exc
        return cls(n, events)


@dataclass(frozen=True, slots=True)
class ReductionResult:
    verdict: Verdict
    instance: LabeledInstance | None
    trace: ReductionTrace
    reason: str = ""
    steps: int = 0

    @property
    def is_no(self) -> bool:
        return self.verdict is Verdict.NO


def _pairs(centre: int, others: Iterable[int]) -> frozenset[Edge]:
    return frozenset(edge(centre, w) for w in others)


def edge_reduce(instance: LabeledInstance) -> ReductionResult:
    """Apply Edge Reduction until no recognizable edge is left or the answer is No.

    For every solution H of the input, H minus the removed edges solves the
    reduced instance, and every solution of the reduced instance restores to a
    solution of the input.
    """

    graph = instance.graph
    required = set(instance.required)
    forbidden = set(instance.forbidden)
    events: list[ReductionEvent] = []

    def _no(reason: str) -> ReductionResult:
        logger.info("Edge reduction answered no after %d steps: %s", len(events), reason)
        return ReductionResult(
            Verdict.NO, None, ReductionTrace(graph.n, tuple(events)), reason, len(events)
        )

    if instance.has_label_conflict:
        overlap = sorted(instance.required & instance.forbidden)
        return _no(f"edges {overlap} are both forced and forbidden")

    while (found := find_recognizable_edge(graph)) is not None:
        uv, partition = found
        u, v, x, y = partition.u, partition.v, partition.x, partition.y

        if uv in forbidden:
            return _no(f"recognizable edge {uv} is forbidden")
        private = _pairs(u, graph.neighbors(u) - graph.closed_neighborhood(v)) | _pairs(
            v, graph.neighbors(v) - graph.closed_neighborhood(u)
        )
        if required & private:
            return _no(f"forced edges {sorted(required & private)} cannot be in any root")

        straight = _pairs(u, x) | _pairs(v, y)
        crossed = _pairs(u, y) | _pairs(v, x)
        if not are_true_twins(graph, u, v):
            branch = Branch.NON_TWIN
            kept, deleted = straight, crossed
        elif crossed & required or straight & forbidden:
            branch = Branch.TWIN_FORCED
            kept, deleted = crossed, straight
        else:
            branch = Branch.TWIN_FREE
            kept, deleted = straight, crossed
        if kept & forbidden or deleted & required:
            return _no(f"labels around recognizable edge {uv} contradict ({branch.value})")

        # the pairs in `deleted` are joined only through uv, so they leave the
        # graph with it; private pairs stay joined through X or Y
        required_added, forbidden_added = kept, private
        event = ReductionEvent(uv, partition, deleted, required_added, forbidden_added, branch)
        events.append(event)
        logger.debug(
            "Reduced edge %s (%s): X=%s Y=%s deleted=%s",
            uv,
            branch.value,
            sorted(x),
            sorted(y),
            sorted(deleted),
        )

        graph = graph.remove_edges([uv, *sorted(deleted)])
        required = (required - {uv}) | required_added
        forbidden = (forbidden - deleted) | forbidden_added

    logger.info("Edge reduction removed %d recognizable edges", len(events))
    reduced = LabeledInstance(graph, frozenset(required), frozenset(forbidden))
    return ReductionResult(
        Verdict.REDUCED, reduced, ReductionTrace(graph.n, tuple(events)), steps=len(events)
    )


def restore_solution(trace: ReductionTrace, root: Graph) -> Graph:
    """Re-insert every recognizable edge of ``trace`` into a reduced-instance root."""

    if root.n != trace.n:
        raise ReductionError(
            f"Root has {root.n} vertices but the trace was recorded on {trace.n}"
        )
    restored = [event.edge for event in reversed(trace.events) if not root.has_edge(*event.edge)]
    return root.add_edges(restored) if restored else root


def verify_solution(instance: LabeledInstance, root: Graph) -> bool:
    if root.n != instance.graph.n:
        return False
    if square(root) != instance.graph:
        return False
    edges = root.edge_set
    return instance.required <= edges and not instance.forbidden & edges


__all__ = [
    "Branch",
    "LabelError",
    "LabeledInstance",
    "ReductionError",
    "ReductionEvent",
    "ReductionResult",
    "ReductionTrace",
    "edge_reduce",
    "restore_solution",
    "verify_solution",
]
