"""Combinatorial graphs of groups with cyclic and surface vertex groups.

A graph of groups here is a finite connected multigraph with oriented
edges.  Every edge group is infinite cyclic.  A vertex carries either an
infinite cyclic group (one implicit generator) or the fundamental group
of a compact surface with boundary.  Each boundary circle of a surface
vertex owns a numbered "slot"; in a well-formed graph every slot is used
by exactly one edge end, and the edge generator maps to a power of that
boundary class.  At a cyclic vertex the edge generator maps to a power
of the vertex generator.

Vertices and edges are identified by dense nonnegative integers (the
position in their tuple).  All values are immutable; every operation in
this package is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class QbsError(Exception):
    """Base class for errors raised by this package."""


class End(Enum):
    """One of the two ends of an oriented edge."""

    SOURCE = 0
    TARGET = 1

    def opposite(self) -> "End":
        return End.TARGET if self is End.SOURCE else End.SOURCE

    def __str__(self) -> str:
        return "src" if self is End.SOURCE else "dst"


@dataclass(frozen=True)
class SurfaceData:
    """A compact surface with boundary: orientability, genus, and slot count.

    Slots are numbered 0..boundary_count-1, one per boundary circle.
    """

    orientable: bool
    genus: int
    boundary_count: int

    @property
    def chi(self) -> int:
        if self.orientable:
            return 2 - 2 * self.genus - self.boundary_count
        return 2 - self.genus - self.boundary_count

    @property
    def slots(self) -> range:
        return range(self.boundary_count)

    def __str__(self) -> str:
        kind = "orientable" if self.orientable else "nonorientable"
        return f"{kind} genus={self.genus} slots={self.boundary_count}"


@dataclass(frozen=True)
class Vertex:
    id: int
    surface: SurfaceData | None = None  # None means infinite cyclic

    @property
    def is_cyclic(self) -> bool:
        return self.surface is None


@dataclass(frozen=True)
class Attachment:
    """Image of the edge generator at one end.

    slot=None means the image is a_v^n in a cyclic vertex group; otherwise
    the image is p_slot^n, the n-th power of the boundary class owning the
    slot.  n = 0 is constructible but flagged by validate (the boundary
    map would not be injective).
    """

    n: int
    slot: int | None = None

    @property
    def is_surface(self) -> bool:
        return self.slot is not None

    def __str__(self) -> str:
        if self.is_surface:
            return f"(slot={self.slot}, n={self.n})"
        return f"(n={self.n})"


@dataclass(frozen=True)
class Edge:
    id: int
    source: int
    target: int
    source_end: Attachment
    target_end: Attachment

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def vertex_at(self, which: End) -> int:
        return self.source if which is End.SOURCE else self.target

    def end(self, which: End) -> Attachment:
        return self.source_end if which is End.SOURCE else self.target_end


@dataclass(frozen=True)
class GraphOfGroups:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        for i, v in enumerate(self.vertices):
            if v.id != i:
                raise ValueError(f"vertex at position {i} has id {v.id}")
        n = len(self.vertices)
        for i, e in enumerate(self.edges):
            if e.id != i:
                raise ValueError(f"edge at position {i} has id {e.id}")
            if not (0 <= e.source < n and 0 <= e.target < n):
                raise ValueError(f"edge {i} references a missing vertex")

    def vertex(self, vid: int) -> Vertex:
        if not 0 <= vid < len(self.vertices):
            raise QbsError(f"no vertex {vid}")
        return self.vertices[vid]

    def edge(self, eid: int) -> Edge:
        if not 0 <= eid < len(self.edges):
            raise QbsError(f"no edge {eid}")
        return self.edges[eid]

    def ends(self):
        """All edge ends in (edge id, source-before-target) order."""
        for e in self.edges:
            yield e, End.SOURCE
            yield e, End.TARGET

    def ends_at(self, vid: int) -> list[tuple[Edge, End]]:
        """Edge ends incident to a vertex; a loop contributes both ends."""
        out = []
        for e, which in self.ends():
            if e.vertex_at(which) == vid:
                out.append((e, which))
        return out

    def neighbors(self, vid: int) -> list[int]:
        seen = []
        for e in self.edges:
            if e.source == vid:
                seen.append(e.target)
            elif e.target == vid:
                seen.append(e.source)
        return seen


def build_graph(kinds, edge_specs) -> GraphOfGroups:
    """Convenience constructor assigning dense ids.

    kinds: sequence of None (cyclic) or SurfaceData, one per vertex.
    edge_specs: sequence of (source, target, source_end, target_end).
    """
    vertices = tuple(Vertex(i, k) for i, k in enumerate(kinds))
    edges = tuple(
        Edge(i, s, t, se, te) for i, (s, t, se, te) in enumerate(edge_specs)
    )
    return GraphOfGroups(vertices, edges)


def cyclic_end(n: int) -> Attachment:
    return Attachment(n)


def surface_end(slot: int, n: int) -> Attachment:
    return Attachment(n, slot)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    vertex: int | None = None
    edge: int | None = None
    slot: int | None = None

    def __str__(self) -> str:
        where = []
        if self.vertex is not None:
            where.append(f"vertex {self.vertex}")
        if self.edge is not None:
            where.append(f"edge {self.edge}")
        if self.slot is not None:
            where.append(f"slot {self.slot}")
        loc = " @ " + ", ".join(where) if where else ""
        return f"{self.code}: {self.message}{loc}"


def validate(graph: GraphOfGroups) -> tuple[Violation, ...]:
    """Check the well-formedness rules; an empty report means valid.

    Checked: surface vertices have at least one boundary slot, negative
    Euler characteristic and (if non-orientable) positive genus; every
    attachment matches its vertex kind, has a nonzero exponent and an
    existing slot; every slot is used by exactly one edge end; the
    underlying graph is connected.
    """
    out: list[Violation] = []
    for v in graph.vertices:
        s = v.surface
        if s is None:
            continue
        if s.genus < 0:
            out.append(Violation("bad-genus", "genus must be nonnegative", vertex=v.id))
        if s.boundary_count < 1:
            out.append(
                Violation("bad-boundary", "surface vertex needs at least one boundary slot", vertex=v.id)
            )
        if not s.orientable and s.genus < 1:
            out.append(
                Violation("nonorientable-genus", "non-orientable surface needs genus >= 1", vertex=v.id)
            )
        elif s.genus >= 0 and s.boundary_count >= 1 and s.chi >= 0:
            out.append(
                Violation(
                    "degenerate-surface",
                    f"Euler characteristic {s.chi} must be negative",
                    vertex=v.id,
                )
            )

    slot_use: dict[tuple[int, int], int] = {}
    for e, which in graph.ends():
        att = e.end(which)
        v = graph.vertex(e.vertex_at(which))
        if att.n == 0:
            out.append(
                Violation("non-injective-boundary-map", f"{which} end has exponent 0", edge=e.id)
            )
        if v.is_cyclic:
            if att.is_surface:
                out.append(
                    Violation("surface-end-at-cyclic", f"{which} end names a slot on a cyclic vertex", edge=e.id)
                )
        else:
            if not att.is_surface:
                out.append(
                    Violation("cyclic-end-at-surface", f"{which} end has no slot at a surface vertex", edge=e.id)
                )
            elif att.slot not in v.surface.slots:
                out.append(
                    Violation("unknown-slot", f"{which} end names slot {att.slot}", edge=e.id, vertex=v.id)
                )
            else:
                slot_use[(v.id, att.slot)] = slot_use.get((v.id, att.slot), 0) + 1

    for v in graph.vertices:
        if v.surface is None:
            continue
        for slot in v.surface.slots:
            count = slot_use.get((v.id, slot), 0)
            if count == 0:
                out.append(Violation("unattached-slot", "no edge end uses this slot", vertex=v.id, slot=slot))
            elif count > 1:
                out.append(
                    Violation("slot-conflict", f"{count} edge ends use this slot", vertex=v.id, slot=slot)
                )

    if not graph.vertices:
        out.append(Violation("empty", "graph has no vertices"))
    else:
        seen = {0}
        queue = [0]
        while queue:
            cur = queue.pop()
            for other in graph.neighbors(cur):
                if other not in seen:
                    seen.add(other)
                    queue.append(other)
        for v in graph.vertices:
            if v.id not in seen:
                out.append(Violation("disconnected", "vertex unreachable from vertex 0", vertex=v.id))

    return tuple(out)


def label(graph: GraphOfGroups, edge: int, which: End) -> int:
    """The label of an edge end: the absolute attachment exponent.

    >>> g = build_graph([None], [(0, 0, cyclic_end(-6), cyclic_end(1))])
    >>> label(g, 0, End.SOURCE)
    6
    >>> label(g, 0, End.TARGET)
    1
    """
    return abs(graph.edge(edge).end(which).n)


def euler_characteristic(graph: GraphOfGroups) -> int:
    """Sum of surface Euler characteristics; cyclic vertices and edges count 0."""
    return sum(v.surface.chi for v in graph.vertices if v.surface is not None)
