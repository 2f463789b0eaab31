"""Four-sheeted covers of surface vertices and the induced graph cover.

Covers are tracked through their invariants: Euler characteristic,
boundary combinatorics, and genus when the base orientation forces it.
Each boundary circle of the base is covered by two circles of the cover,
each of covering degree 2.  Over an eligible subgraph (surface vertices
joined by edges with both labels 2) every base edge lifts to four edges
with all labels 1; erasing two of the four and gluing along the rest
produces one surface whose fundamental group contains the subgraph's
group with finite index.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graphs import (
    Attachment,
    Edge,
    End,
    GraphOfGroups,
    QbsError,
    SurfaceData,
    Vertex,
    label,
)


class DegenerateSurface(QbsError):
    pass


class NotEligible(QbsError):
    pass


@dataclass(frozen=True)
class CoverDescriptor:
    """Invariants of the 4-sheeted cover of one surface vertex.

    boundary_map[s] gives the two cover slots over base slot s; both have
    covering degree 2.  Cover slot numbering is 2s and 2s+1.  genus and
    orientable are None when the base is non-orientable, where the cover's
    orientation type is not pinned down.
    """

    base: SurfaceData
    chi: int
    boundary_count: int
    genus: int | None
    orientable: bool | None
    boundary_map: tuple[tuple[int, int], ...]

    COVERING_DEGREE_PER_SLOT = 2


def four_cover(surface: SurfaceData) -> CoverDescriptor:
    """The 4-sheeted cover doubling every boundary circle.

    chi multiplies by 4 and each of the m boundary circles is covered by
    two circles of degree 2, giving 2m boundary circles upstairs.
    """
    if surface.boundary_count < 1 or surface.chi >= 0:
        raise DegenerateSurface(
            f"no such cover for {surface}: need boundary and negative Euler characteristic"
        )
    chi = 4 * surface.chi
    boundary = 2 * surface.boundary_count
    if surface.orientable:
        genus = (2 - chi - boundary) // 2
        orientable = True
    else:
        genus = None
        orientable = None
    boundary_map = tuple((2 * s, 2 * s + 1) for s in surface.slots)
    return CoverDescriptor(surface, chi, boundary, genus, orientable, boundary_map)


def _cover_surface(desc: CoverDescriptor) -> SurfaceData:
    """Concrete surface data for the cover, used to house it in a graph.

    For a non-orientable base only chi and the boundary count are forced;
    a non-orientable representative with the right invariants stands in.
    """
    if desc.orientable:
        return SurfaceData(True, desc.genus, desc.boundary_count)
    return SurfaceData(False, 2 - desc.chi - desc.boundary_count, desc.boundary_count)


@dataclass(frozen=True)
class DeltaSubgraph:
    """A component of the (surface vertices, label-(2,2) edges) subgraph."""

    graph: GraphOfGroups  # the parent graph
    vertex_ids: tuple[int, ...]
    edge_ids: tuple[int, ...]

    @property
    def chi(self) -> int:
        return sum(self.graph.vertex(v).surface.chi for v in self.vertex_ids)


def _eligible(graph: GraphOfGroups, e: Edge) -> bool:
    return (
        not graph.vertex(e.source).is_cyclic
        and not graph.vertex(e.target).is_cyclic
        and label(graph, e.id, End.SOURCE) == 2
        and label(graph, e.id, End.TARGET) == 2
    )


def delta_subgraph(graph: GraphOfGroups, edge: int) -> DeltaSubgraph:
    """The eligible component containing the given surface-surface (2,2) edge."""
    seed = graph.edge(edge)
    if graph.vertex(seed.source).is_cyclic or graph.vertex(seed.target).is_cyclic:
        raise NotEligible(f"edge {edge} has a cyclic endpoint")
    if label(graph, edge, End.SOURCE) != 2 or label(graph, edge, End.TARGET) != 2:
        raise NotEligible(f"edge {edge} does not carry labels (2, 2)")
    eligible = [e for e in graph.edges if _eligible(graph, e)]
    seen = {seed.source, seed.target}
    queue = [seed.source, seed.target]
    while queue:
        cur = queue.pop()
        for e in eligible:
            for a, b in ((e.source, e.target), (e.target, e.source)):
                if a == cur and b not in seen:
                    seen.add(b)
                    queue.append(b)
    vertex_ids = tuple(sorted(seen))
    edge_ids = tuple(e.id for e in eligible if e.source in seen and e.target in seen)
    return DeltaSubgraph(graph, vertex_ids, edge_ids)


@dataclass(frozen=True)
class CoveredGraph:
    """The 4-sheeted cover of a DeltaSubgraph.

    graph is the covering graph of groups: same vertex count, covering
    surfaces for vertex groups, and four label-1 edges over every base
    edge.  Cover boundary slots may carry two edge ends each, so the
    covering graph is generally not well-formed in the one-edge-per-slot
    sense; it is bookkeeping for the gluing, not a certifier input.

    edge_map[i] = (base edge id, (f0, f1, f2, f3) local edge ids).
    """

    graph: GraphOfGroups
    vertex_ids: tuple[int, ...]  # local -> parent vertex id
    covers: tuple[CoverDescriptor, ...]
    edge_map: tuple[tuple[int, tuple[int, int, int, int]], ...]

    @property
    def chi(self) -> int:
        return sum(c.chi for c in self.covers)


def hat_delta(delta: DeltaSubgraph) -> CoveredGraph:
    """Build the 4-sheeted cover of an eligible subgraph.

    Over a base edge attached to slot s at an endpoint, the four lifts
    f0..f3 attach to the two cover slots over s: f0 and f2 to the first,
    f1 and f3 to the second, all with exponent 1.
    """
    local = {vid: i for i, vid in enumerate(delta.vertex_ids)}
    covers = tuple(
        four_cover(delta.graph.vertex(vid).surface) for vid in delta.vertex_ids
    )
    vertices = tuple(
        Vertex(i, _cover_surface(covers[i])) for i in range(len(delta.vertex_ids))
    )

    edges: list[Edge] = []
    edge_map = []
    for base_eid in delta.edge_ids:
        e = delta.graph.edge(base_eid)
        s_slot = e.source_end.slot
        t_slot = e.target_end.slot
        lift_ids = []
        for i in range(4):
            half = i % 2  # f0, f2 take the first cover slot; f1, f3 the second
            lift_ids.append(len(edges))
            edges.append(
                Edge(
                    len(edges),
                    local[e.source],
                    local[e.target],
                    Attachment(1, 2 * s_slot + half),
                    Attachment(1, 2 * t_slot + half),
                )
            )
        edge_map.append((base_eid, tuple(lift_ids)))
    return CoveredGraph(
        GraphOfGroups(vertices, tuple(edges)),
        delta.vertex_ids,
        covers,
        tuple(edge_map),
    )


class Orientability(Enum):
    ORIENTABLE = "orientable"
    NONORIENTABLE = "nonorientable"
    UNDETERMINED = "undetermined"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GluedSurface:
    """The surface obtained by keeping f0, f1 lifts and gluing their slots."""

    chi: int
    boundary_count: int
    component_count: int
    orientability: Orientability
    glued_pairs: int


def glued_surface(cg: CoveredGraph) -> GluedSurface:
    """Erase the f2, f3 lifts and glue boundary circles along f0, f1.

    Gluing along circles keeps chi additive; every glued pair removes two
    boundary circles.  Orientability is asserted only when all pieces are
    orientable and the gluing pattern is a forest, where orientations can
    always be chosen consistently; otherwise it depends on data the cover
    invariants do not track and is reported undetermined.
    """
    pieces = len(cg.covers)
    chi = sum(c.chi for c in cg.covers)
    total_boundary = sum(c.boundary_count for c in cg.covers)

    kept = [ids[:2] for _, ids in cg.edge_map]
    glued_pairs = 2 * len(cg.edge_map)

    parent = list(range(pieces))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merges = 0
    for pair in kept:
        for eid in pair:
            e = cg.graph.edge(eid)
            a, b = find(e.source), find(e.target)
            if a != b:
                parent[a] = b
                merges += 1
    component_count = pieces - merges

    if all(c.orientable for c in cg.covers) and glued_pairs == merges:
        orientability = Orientability.ORIENTABLE
    else:
        orientability = Orientability.UNDETERMINED

    return GluedSurface(
        chi=chi,
        boundary_count=total_boundary - 2 * glued_pairs,
        component_count=component_count,
        orientability=orientability,
        glued_pairs=glued_pairs,
    )


def boundary_slot_usage(cg: CoveredGraph) -> dict[tuple[int, int], int]:
    """How many kept lifts use each (local vertex, cover slot); 0 means boundary."""
    usage = {
        (v, slot): 0 for v, c in enumerate(cg.covers) for slot in range(c.boundary_count)
    }
    for _, ids in cg.edge_map:
        for eid in ids[:2]:
            e = cg.graph.edge(eid)
            usage[(e.source, e.source_end.slot)] += 1
            usage[(e.target, e.target_end.slot)] += 1
    return usage
