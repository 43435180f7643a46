"""Silting quivers of order intervals, two-term enumeration and export."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import networkx as nx
import voluptuous as vol

from .complexes import (
    ProjComplex,
    compare_order,
    direct_sum,
    hom_dim,
    iso_complexes,
    label,
    presentation_complex,
    stalk,
    window_normalize,
)
from .const import DEFAULT_BFS_CAP, FORMAT_DOT, FORMAT_JSON, LEFT
from .errors import CapExceededError, InputError
from .modules import list_indecomposables
from .schemas import dump_document, record_from_document, record_to_document, validate
from .silting import (
    SiltingRecord,
    classify,
    is_presilting,
    mutate,
    regular_record,
)

if TYPE_CHECKING:
    from .algebra import Algebra

_LOGGER = logging.getLogger(__name__)


@dataclass
class SiltingQuiverGraph:
    """
    Silting objects of an interval with their irreducible left mutations.

    Node ids are fingerprints, suffixed with "#k" on the rare collision of
    non-isomorphic complexes. Shifts are never identified here.
    """

    top: str
    bottom: str
    graph: nx.DiGraph = field(default_factory=nx.DiGraph)
    complete: bool = False

    def __eq__(self, other: object) -> bool:
        """Same nodes, statuses, edges, bounds and completeness."""
        if not isinstance(other, SiltingQuiverGraph):
            return NotImplemented
        return self.signature() == other.signature()

    __hash__ = None  # type: ignore[assignment]

    def signature(self) -> tuple[Any, ...]:
        """Comparable summary of the graph."""
        return (
            self.top,
            self.bottom,
            self.complete,
            tuple((n, self.record(n).status) for n in self.graph.nodes),
            tuple(sorted(self.edges())),
        )

    def __len__(self) -> int:
        """Number of silting objects."""
        return self.graph.number_of_nodes()

    def record(self, node: str) -> SiltingRecord:
        """Record stored at a node."""
        return self.graph.nodes[node]["record"]

    @property
    def records(self) -> list[SiltingRecord]:
        """Records in discovery order."""
        return [self.record(n) for n in self.graph.nodes]

    def edges(self) -> list[tuple[str, str, int]]:
        """(source, target, summand) triples in insertion order."""
        return [(s, t, data["summand"]) for s, t, data in self.graph.edges(data=True)]

    def find(self, record: SiltingRecord) -> str | None:
        """Node holding a complex isomorphic to the record's, if any."""
        base = record.fingerprint
        candidates = [base, *(f"{base}#{k}" for k in range(1, len(self) + 1))]
        for node in candidates:
            if node not in self.graph:
                return None
            if iso_complexes(self.record(node).complex, record.complex):
                return node
        return None

    def add(self, record: SiltingRecord) -> tuple[str, bool]:
        """Add a record unless an isomorphic one is present; returns (node, added)."""
        existing = self.find(record)
        if existing is not None:
            return existing, False
        node = record.fingerprint
        k = 0
        while node in self.graph:
            k += 1
            node = f"{record.fingerprint}#{k}"
        if k:
            _LOGGER.debug("Fingerprint collision at %s", record.fingerprint)
        self.graph.add_node(node, record=record)
        return node, True


def enumerate_interval(
    top: SiltingRecord, bottom: SiltingRecord, cap: int = DEFAULT_BFS_CAP
) -> SiltingQuiverGraph:
    """
    Breadth-first search of the interval [bottom, top] by left mutation.

    Args:
        top: silting object at which the search starts
        bottom: lower end; mutations not above it are discarded
        cap: most nodes stored

    Returns:
        The silting quiver of the interval, flagged complete

    """
    if not compare_order(top.complex, bottom.complex):
        msg = "Interval top is not above its bottom"
        raise InputError(msg)
    graph = SiltingQuiverGraph(top.fingerprint, bottom.fingerprint)
    root, _ = graph.add(top)
    queue = deque([root])
    while queue:
        node = queue.popleft()
        record = graph.record(node)
        for k in range(len(record.summands)):
            child = mutate(record, k, LEFT)
            if not compare_order(child.complex, bottom.complex):
                continue
            if len(graph) >= cap and graph.find(child) is None:
                msg = f"Interval has more than {cap} silting objects"
                raise CapExceededError(msg, partial=graph)
            target, added = graph.add(child)
            graph.graph.add_edge(node, target, summand=k)
            if added:
                queue.append(target)
        _LOGGER.debug("Explored %s nodes, %s queued", len(graph), len(queue))
    bottom_node = graph.find(bottom)
    if bottom_node is None:
        _LOGGER.warning("Bottom of the interval was not reached")
    else:
        graph.bottom = bottom_node
    graph.complete = True
    return graph


def two_term_silting(algebra: Algebra, cap: int = DEFAULT_BFS_CAP) -> list[SiltingRecord]:
    """Silting objects T with A >= T >= A[1]."""
    graph = enumerate_interval(regular_record(algebra), regular_record(algebra, 1), cap)
    return graph.records


def two_term_presilting_indecomposables(
    algebra: Algebra, cap: int | None = None
) -> list[ProjComplex]:
    """Indecomposable presilting complexes in degrees -1 and 0."""
    modules = (
        list_indecomposables(algebra) if cap is None else list_indecomposables(algebra, cap)
    )
    candidates = [presentation_complex(m, -1) for m in modules]
    candidates.extend(stalk(algebra, (v,), -1) for v in algebra.vertices)
    return [x for x in candidates if is_presilting(x)]


def search_two_term_silting(
    algebra: Algebra, cap: int | None = None
) -> list[SiltingRecord]:
    """
    Two-term silting objects as maximal compatible families.

    Independent of mutation: vertices are indecomposable two-term presilting
    complexes and X, Y are compatible when Hom(X, Y[1]) = Hom(Y, X[1]) = 0.

    Args:
        algebra: a representation-finite algebra
        cap: most indecomposable modules knitted

    Returns:
        The silting objects, sorted by fingerprint

    """
    pieces = two_term_presilting_indecomposables(algebra, cap)
    compatible = nx.Graph()
    compatible.add_nodes_from(range(len(pieces)))
    for i, x in enumerate(pieces):
        for j in range(i + 1, len(pieces)):
            y = pieces[j]
            if hom_dim(x, y, 1) == 0 and hom_dim(y, x, 1) == 0:
                compatible.add_edge(i, j)
    records: dict[str, SiltingRecord] = {}
    for clique in nx.find_cliques(compatible):
        if len(clique) != algebra.rank:
            continue
        record = classify(direct_sum(algebra, [pieces[i] for i in sorted(clique)]))
        records.setdefault(record.fingerprint, record)
    _LOGGER.debug(
        "%s presilting pieces give %s two-term silting objects", len(pieces), len(records)
    )
    return [records[f] for f in sorted(records)]


# Order and connectivity


def covering_pairs(graph: SiltingQuiverGraph) -> set[tuple[str, str]]:
    """Hasse diagram of the order restricted to the nodes."""
    order = nx.DiGraph()
    order.add_nodes_from(graph.graph.nodes)
    nodes = list(graph.graph.nodes)
    for s in nodes:
        for t in nodes:
            if s != t and compare_order(graph.record(s).complex, graph.record(t).complex):
                order.add_edge(s, t)
    return set(nx.transitive_reduction(order).edges)


def edges_are_covering(graph: SiltingQuiverGraph) -> bool:
    """Whether the mutation arrows are exactly the covering pairs."""
    return {(s, t) for s, t, _ in graph.edges()} == covering_pairs(graph)


def is_connected(graph: SiltingQuiverGraph) -> bool:
    """Whether the underlying undirected graph is connected."""
    return len(graph) > 0 and nx.is_weakly_connected(graph.graph)


def left_connected_to_top(graph: SiltingQuiverGraph) -> bool:
    """Whether every node is reached from the top by left mutations."""
    if graph.top not in graph.graph:
        return False
    return nx.descendants(graph.graph, graph.top) | {graph.top} == set(graph.graph.nodes)


def reaches_by_left_mutation(
    top: SiltingRecord, target: ProjComplex, depth: int, cap: int = DEFAULT_BFS_CAP
) -> bool:
    """Whether iterated left mutation from top reaches target within depth steps."""
    graph = SiltingQuiverGraph(top.fingerprint, top.fingerprint)
    frontier = [graph.add(top)[0]]
    for _ in range(depth + 1):
        if any(iso_complexes(graph.record(n).complex, target) for n in frontier):
            return True
        following = []
        for node in frontier:
            record = graph.record(node)
            for k in range(len(record.summands)):
                child, added = graph.add(mutate(record, k, LEFT))
                if added:
                    following.append(child)
            if len(graph) > cap:
                msg = f"Left mutation search passed {cap} nodes"
                raise CapExceededError(msg, partial=graph)
        frontier = following
    return False


def discreteness_probe(
    algebra: Algebra, max_length: int, cap: int = DEFAULT_BFS_CAP
) -> dict[int, int | None]:
    """
    Size of [A[l], A] for l = 1..max_length.

    Args:
        algebra: the algebra
        max_length: largest l probed
        cap: node cap per interval

    Returns:
        Node count per l, None where the cap was hit

    """
    sizes: dict[int, int | None] = {}
    top = regular_record(algebra)
    for n in range(1, max_length + 1):
        try:
            sizes[n] = len(enumerate_interval(top, regular_record(algebra, n), cap))
        except CapExceededError:
            _LOGGER.warning("Interval [A[%s], A] passed %s nodes", n, cap)
            sizes[n] = None
    return sizes


# Export


GRAPH_SCHEMA = vol.Schema(
    {
        vol.Required("top"): str,
        vol.Required("bottom"): str,
        vol.Required("complete"): bool,
        vol.Optional("shift_identified", default=False): bool,
        vol.Required("nodes"): [vol.Schema({vol.Required("id"): str}, extra=vol.ALLOW_EXTRA)],
        vol.Required("edges"): [
            {
                vol.Required("from"): str,
                vol.Required("to"): str,
                vol.Required("summand"): vol.All(int, vol.Range(min=0)),
                vol.Required("shift"): int,
            }
        ],
    }
)


def graph_to_document(
    graph: SiltingQuiverGraph,
    nodes: list[str],
    edges: list[tuple[str, str, int, int]],
    *,
    shift_identified: bool = False,
) -> dict[str, Any]:
    """JSON shape of a (possibly shift-identified) quiver."""
    return {
        "top": graph.top,
        "bottom": graph.bottom,
        "complete": graph.complete,
        "shift_identified": shift_identified,
        "nodes": [{"id": n, **record_to_document(graph.record(n))} for n in nodes],
        "edges": [
            {"from": s, "to": t, "summand": k, "shift": offset} for s, t, k, offset in edges
        ],
    }


def load_graph(algebra: Algebra, data: Any) -> SiltingQuiverGraph:
    """
    Inverse of the JSON export of an unidentified quiver.

    Args:
        algebra: the algebra of the complexes
        data: the parsed document

    Returns:
        The quiver

    """
    data = validate(GRAPH_SCHEMA, data, "silting quiver")
    if data["shift_identified"]:
        msg = "Shift-identified quivers are a view and cannot be loaded"
        raise InputError(msg)
    graph = SiltingQuiverGraph(data["top"], data["bottom"], complete=data["complete"])
    for node in data["nodes"]:
        fields = {k: v for k, v in node.items() if k != "id"}
        graph.graph.add_node(node["id"], record=record_from_document(algebra, fields))
    for edge in data["edges"]:
        if edge["from"] not in graph.graph or edge["to"] not in graph.graph:
            msg = f"Edge {edge['from']} -> {edge['to']} joins unknown nodes"
            raise InputError(msg)
        graph.graph.add_edge(edge["from"], edge["to"], summand=edge["summand"])
    return graph


def _shift_classes(graph: SiltingQuiverGraph) -> dict[str, tuple[str, int]]:
    """Map each node to (representative, offset) with node = representative[offset]."""
    groups: list[tuple[str, ProjComplex, int]] = []
    result: dict[str, tuple[str, int]] = {}
    for node in graph.graph.nodes:
        normalized, lo = window_normalize(graph.record(node).complex)
        for rep, rep_normalized, rep_lo in groups:
            if iso_complexes(rep_normalized, normalized):
                result[node] = (rep, rep_lo - lo)
                break
        else:
            groups.append((node, normalized, lo))
            result[node] = (node, 0)
    return result


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_graph(
    graph: SiltingQuiverGraph, fmt: str = FORMAT_JSON, *, shift_identify: bool = False
) -> str:
    """
    Render a silting quiver as DOT or canonical JSON.

    Args:
        graph: the quiver
        fmt: "dot" or "json"
        shift_identify: draw T and T[i] as one node, marking wrapped arrows

    Returns:
        The byte-stable document

    """
    classes = (
        _shift_classes(graph)
        if shift_identify
        else {n: (n, 0) for n in graph.graph.nodes}
    )
    nodes = [n for n in graph.graph.nodes if classes[n][0] == n]
    edges: list[tuple[str, str, int, int]] = []
    for s, t, k in graph.edges():
        source, s_off = classes[s]
        target, t_off = classes[t]
        edge = (source, target, k, t_off - s_off)
        if edge not in edges:
            edges.append(edge)
    if fmt == FORMAT_JSON:
        return dump_document(
            graph_to_document(graph, nodes, edges, shift_identified=shift_identify)
        )
    if fmt != FORMAT_DOT:
        msg = f"Unknown graph format {fmt}"
        raise InputError(msg)
    ids = {n: f"s{i}" for i, n in enumerate(nodes)}
    lines = ["digraph silting {"]
    lines.extend(
        f'  {ids[n]} [label="{_escape(label(graph.record(n).complex))}"];' for n in nodes
    )
    for source, target, k, offset in edges:
        if offset:
            lines.append(
                f'  {ids[source]} -> {ids[target]} '
                f'[label="μ+ @ {k} [{offset}]", style=dashed];'
            )
        else:
            lines.append(f'  {ids[source]} -> {ids[target]} [label="μ+ @ {k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
