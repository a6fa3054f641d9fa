"""Unique path spaces: finite directed graphs with at most one path between two vertices.

An edge ``x -> y`` means ``y ⪯ x``; the order is the reflexive-transitive closure of
the reversed edges and ``U_x = {y : x ⪯ y}`` is the smallest open set containing ``x``.
"""

import logging
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from homkk.errors import InputValidationError

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "UPS"})

Edge = tuple[str, str]


@dataclass(frozen=True)
class UniquePathSpace:
    """Vertex labels and directed edges; edges are kept sorted by ``(source, target)``."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[Iterable[str]]) -> "UniquePathSpace":
        edge_list = []
        for edge in edges:
            pair = tuple(edge)
            if len(pair) != 2:
                msg = f"edge {pair!r} must have exactly two endpoints"
                raise InputValidationError(msg)
            edge_list.append((str(pair[0]), str(pair[1])))
        return cls(tuple(sorted(str(v) for v in vertices)), tuple(sorted(edge_list)))

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def in_edges(self, x: str) -> list[Edge]:
        """Edges ``w -> x`` in sorted order."""
        return [e for e in self.edges if e[1] == x]

    def out_edges(self, x: str) -> list[Edge]:
        """Edges ``x -> y`` in sorted order."""
        return [e for e in self.edges if e[0] == x]


@dataclass(frozen=True)
class UpsReport:
    """Outcome of :func:`validate_ups`; ``location`` names the offending vertices."""

    ok: bool
    violation: str | None = None
    location: tuple[str, ...] = ()


def validate_ups(space: UniquePathSpace) -> UpsReport:
    """Check labels, acyclicity and path uniqueness by counting paths from every vertex."""
    known = set(space.vertices)
    if len(known) != len(space.vertices):
        duplicate = next(v for v, k in Counter(space.vertices).items() if k > 1)
        return UpsReport(ok=False, violation="duplicate vertex", location=(duplicate,))
    for x, y in space.edges:
        if x not in known or y not in known:
            return UpsReport(ok=False, violation="edge with unknown endpoint", location=(x, y))
    repeated = [e for e, k in Counter(space.edges).items() if k > 1]
    if repeated:
        return UpsReport(ok=False, violation="duplicate path", location=repeated[0])
    graph = space.graph
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        return UpsReport(ok=False, violation="cycle", location=tuple(u for u, _ in cycle))

    # paths[v][w]: number of directed paths v ~> w, filled in reverse topological order
    paths: dict[str, Counter[str]] = {}
    for v in reversed(list(nx.topological_sort(graph))):
        counts: Counter[str] = Counter({v: 1})
        for w in sorted(graph.successors(v)):
            counts.update(paths[w])
        for w, k in sorted(counts.items()):
            if k > 1:
                logger.debug("Found %s paths from %s to %s.", k, v, w)
                return UpsReport(ok=False, violation="duplicate path", location=(v, w))
        paths[v] = counts
    return UpsReport(ok=True)


def require_valid(space: UniquePathSpace) -> None:
    """Raise :class:`InputValidationError` carrying the report of an invalid space."""
    report = validate_ups(space)
    if not report.ok:
        logger.warning("Invalid unique path space: %s at %s.", report.violation, report.location)
        msg = f"not a unique path space: {report.violation} at {', '.join(report.location)}"
        raise InputValidationError(msg)


def _require_vertex(space: UniquePathSpace, x: str) -> None:
    if x not in space.graph:
        msg = f"unknown vertex {x!r}"
        raise InputValidationError(msg)


def precedes(space: UniquePathSpace, x: str, y: str) -> bool:
    """``x ⪯ y``: there is a directed path from ``y`` to ``x``."""
    _require_vertex(space, x)
    _require_vertex(space, y)
    return x == y or nx.has_path(space.graph, y, x)


def order_relation(space: UniquePathSpace) -> frozenset[tuple[str, str]]:
    """All pairs ``(x, y)`` with ``x ⪯ y``."""
    require_valid(space)
    return frozenset((x, y) for y in space.vertices for x in nx.descendants(space.graph, y) | {y})


def up_set(space: UniquePathSpace, x: str) -> tuple[str, ...]:
    """``U_x = {y : x ⪯ y}`` in sorted order."""
    _require_vertex(space, x)
    return tuple(sorted(nx.ancestors(space.graph, x) | {x}))


def down_set(space: UniquePathSpace, x: str) -> tuple[str, ...]:
    """``{y : y ⪯ x}`` in sorted order."""
    _require_vertex(space, x)
    return tuple(sorted(nx.descendants(space.graph, x) | {x}))


def path_edges(space: UniquePathSpace, start: str, end: str) -> list[Edge]:
    """Edges of the unique path ``start ~> end``; empty when ``start == end``.

    Raises
    ------
    InputValidationError
        If no such path exists

    """
    _require_vertex(space, start)
    _require_vertex(space, end)
    try:
        nodes = nx.shortest_path(space.graph, start, end)
    except nx.NetworkXNoPath as err:
        msg = f"no path from {start!r} to {end!r}"
        raise InputValidationError(msg) from err
    return list(zip(nodes, nodes[1:], strict=False))


def linear_space(n: int) -> UniquePathSpace:
    """Chain ``1 <- 2 <- ... <- n`` with vertices labelled ``"1"`` to ``"n"``."""
    return UniquePathSpace.build((str(k) for k in range(1, n + 1)), ((str(k + 1), str(k)) for k in range(1, n)))
