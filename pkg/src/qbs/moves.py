"""Deformation moves: elementary collapse and expansion, folding, reduction.

All moves preserve the fundamental group; the abelianization computed by
the presentation module acts as the independent regression oracle.  Ids
stay dense after every move: deleted vertices and edges are compacted in
order, new ones are appended.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    Attachment,
    Edge,
    End,
    GraphOfGroups,
    QbsError,
    Vertex,
    label,
)


class MoveError(QbsError):
    """A move was requested on data that does not satisfy its preconditions."""


class UnsupportedCollapse(MoveError):
    """The collapse exists but its result would leave the representable class."""


class NotDivisible(MoveError):
    pass


class NotCyclic(MoveError):
    pass


class NotDivisor(MoveError):
    pass


class LoopEdge(MoveError):
    pass


class SurfaceEndFold(MoveError):
    pass


@dataclass(frozen=True)
class CollapseSite:
    """A non-loop edge whose attachment at collapsed_end is a_w^{+-1}.

    Collapsing deletes the vertex at collapsed_end together with the edge
    and re-attaches everything else to the surviving endpoint.
    """

    edge: int
    collapsed_end: End

    def __str__(self) -> str:
        return f"edge {self.edge} ({self.collapsed_end} end)"


def find_collapses(graph: GraphOfGroups) -> list[CollapseSite]:
    """All elementary collapse sites, in (edge id, src-before-dst) order.

    Surface ends never qualify: a boundary map into a surface group with
    negative Euler characteristic is never onto.
    """
    sites = []
    for e, which in graph.ends():
        if e.is_loop:
            continue
        att = e.end(which)
        if not att.is_surface and abs(att.n) == 1:
            sites.append(CollapseSite(e.id, which))
    return sites


def _site_supported(graph: GraphOfGroups, site: CollapseSite) -> bool:
    e = graph.edge(site.edge)
    survivor = e.vertex_at(site.collapsed_end.opposite())
    return graph.vertex(survivor).is_cyclic


def collapse(graph: GraphOfGroups, site: CollapseSite) -> GraphOfGroups:
    """Apply an elementary collapse; the fundamental group is unchanged.

    Raises UnsupportedCollapse when the surviving endpoint is a surface
    vertex: re-attachment would put several edge ends on one boundary
    slot, which the data model cannot represent.
    """
    e = graph.edge(site.edge)
    if e.is_loop:
        raise MoveError(f"edge {e.id} is a loop, not a collapse site")
    att = e.end(site.collapsed_end)
    if att.is_surface or abs(att.n) != 1:
        raise MoveError(f"edge {e.id} has no collapse at the {site.collapsed_end} end")
    collapsed = e.vertex_at(site.collapsed_end)
    survivor = e.vertex_at(site.collapsed_end.opposite())
    surv_att = e.end(site.collapsed_end.opposite())
    if not graph.vertex(survivor).is_cyclic:
        raise UnsupportedCollapse(
            f"collapsing edge {e.id} would re-attach into surface vertex {survivor}"
        )
    # The deleted generator maps to a^(att.n * surv_att.n) at the survivor.
    scale = att.n * surv_att.n

    vmap = {}
    vertices = []
    for v in graph.vertices:
        if v.id == collapsed:
            continue
        vmap[v.id] = len(vertices)
        vertices.append(Vertex(len(vertices), v.surface))

    def moved(vid: int, a: Attachment) -> tuple[int, Attachment]:
        if vid == collapsed:
            return vmap[survivor], Attachment(scale * a.n)
        return vmap[vid], a

    edges = []
    for f in graph.edges:
        if f.id == e.id:
            continue
        s, se = moved(f.source, f.source_end)
        t, te = moved(f.target, f.target_end)
        edges.append(Edge(len(edges), s, t, se, te))
    return GraphOfGroups(tuple(vertices), tuple(edges))


def expand(
    graph: GraphOfGroups,
    vertex: int,
    n: int,
    moved_ends=(),
) -> GraphOfGroups:
    """Elementary expansion at a cyclic vertex.

    Adds a cyclic vertex w carrying the index-|n| subgroup, joined by an
    edge with exponents (n at vertex, 1 at w).  Each moved end, a
    (edge id, End) pair at the vertex with exponent k divisible by n,
    re-attaches to w with exponent k/n.  Collapsing the new edge at the
    w end undoes the expansion.
    """
    v = graph.vertex(vertex)
    if not v.is_cyclic:
        raise NotCyclic(f"vertex {vertex} is a surface vertex")
    if n == 0:
        raise MoveError("expansion exponent must be nonzero")
    moved = sorted({(eid, which) for eid, which in moved_ends}, key=lambda m: (m[0], m[1].value))
    for eid, which in moved:
        f = graph.edge(eid)
        if f.vertex_at(which) != vertex or f.end(which).is_surface:
            raise MoveError(f"edge {eid} {which} end is not a cyclic end at vertex {vertex}")
        if f.end(which).n % n != 0:
            raise NotDivisible(f"edge {eid} {which} exponent {f.end(which).n} not divisible by {n}")

    w = len(graph.vertices)
    vertices = graph.vertices + (Vertex(w, None),)
    moved_set = set(moved)
    edges = []
    for f in graph.edges:
        se, te = f.source_end, f.target_end
        s, t = f.source, f.target
        if (f.id, End.SOURCE) in moved_set:
            s, se = w, Attachment(se.n // n)
        if (f.id, End.TARGET) in moved_set:
            t, te = w, Attachment(te.n // n)
        edges.append(Edge(f.id, s, t, se, te))
    edges.append(Edge(len(edges), vertex, w, Attachment(n), Attachment(1)))
    return GraphOfGroups(vertices, tuple(edges))


def fold(graph: GraphOfGroups, edge: int, which: End, k: int) -> GraphOfGroups:
    """Fold a non-loop edge at a cyclic end with exponent n, along k | |n|.

    The edge group is enlarged to the subgroup generated by a^(sign(n)k),
    realized by splitting the edge into a path through a fresh cyclic
    vertex w: (sign(n)k at the old endpoint, 1 at w) followed by
    (|n|/k at w, untouched far end).  Collapsing the label-1 end of the
    first edge recovers the original graph.
    """
    e = graph.edge(edge)
    if e.is_loop:
        raise LoopEdge(f"edge {edge} is a loop; loop folds are not rewritten")
    att = e.end(which)
    if att.is_surface:
        raise SurfaceEndFold(f"edge {edge} {which} end lies on a surface vertex")
    n = att.n
    if k <= 1 or abs(n) <= 1 or abs(n) % k != 0:
        raise NotDivisor(f"k={k} is not a proper divisor of |{n}|")
    sign = 1 if n > 0 else -1
    v = e.vertex_at(which)
    u = e.vertex_at(which.opposite())
    far = e.end(which.opposite())

    w = len(graph.vertices)
    vertices = graph.vertices + (Vertex(w, None),)
    edges = []
    for f in graph.edges:
        if f.id == edge:
            continue
        edges.append(Edge(len(edges), f.source, f.target, f.source_end, f.target_end))
    edges.append(Edge(len(edges), v, w, Attachment(sign * k), Attachment(1)))
    if which is End.SOURCE:
        edges.append(Edge(len(edges), w, u, Attachment(abs(n) // k), far))
    else:
        edges.append(Edge(len(edges), u, w, far, Attachment(abs(n) // k)))
    return GraphOfGroups(vertices, tuple(edges))


def is_reduced(graph: GraphOfGroups) -> tuple[bool, list[CollapseSite]]:
    """True iff no elementary collapse exists; the sites are the witnesses."""
    sites = find_collapses(graph)
    return not sites, sites


@dataclass(frozen=True)
class ReduceResult:
    graph: GraphOfGroups
    fully_reduced: bool
    blocked: tuple[CollapseSite, ...]  # unsupported sites left, if any


def reduce(graph: GraphOfGroups) -> ReduceResult:
    """Collapse at the lowest supported site until none remains.

    When only collapses into surface vertices remain, the partial result
    is returned flagged not fully reduced, with the blocking sites.
    """
    current = graph
    while True:
        sites = find_collapses(current)
        if not sites:
            return ReduceResult(current, True, ())
        site = next((s for s in sites if _site_supported(current, s)), None)
        if site is None:
            return ReduceResult(current, False, tuple(sites))
        current = collapse(current, site)


@dataclass(frozen=True)
class OneEdgeSplitting:
    """The one-edge splitting obtained by collapsing both sides of Gamma - e.

    The collapsed vertex groups are whole fundamental groups of the parts,
    so only the vertex partition is recorded.  Equal sides mean the edge
    is non-separating and the splitting is an HNN extension.
    """

    edge: int
    source_side: frozenset[int]
    target_side: frozenset[int]

    @property
    def is_hnn(self) -> bool:
        return self.source_side == self.target_side


def one_edge_splitting(graph: GraphOfGroups, edge: int) -> OneEdgeSplitting:
    e = graph.edge(edge)

    def component(start: int) -> frozenset[int]:
        seen = {start}
        queue = [start]
        while queue:
            cur = queue.pop()
            for f in graph.edges:
                if f.id == edge:
                    continue
                for a, b in ((f.source, f.target), (f.target, f.source)):
                    if a == cur and b not in seen:
                        seen.add(b)
                        queue.append(b)
        return frozenset(seen)

    src_side = component(e.source)
    tgt_side = src_side if e.target in src_side else component(e.target)
    return OneEdgeSplitting(edge, src_side, tgt_side)


@dataclass(frozen=True)
class UnfoldednessReport:
    certified: bool
    label_one_ends: tuple[tuple[int, End], ...]

    def __str__(self) -> str:
        if self.certified:
            return "certified: every edge group is a proper subgroup of its endpoint groups"
        ends = ", ".join(f"edge {e} ({w} end)" for e, w in self.label_one_ends)
        return f"inconclusive: label-1 ends at {ends}"


def certify_unfolded(graph: GraphOfGroups) -> UnfoldednessReport:
    """Sufficient criterion only: certified when every edge-end label exceeds 1.

    A label-1 end makes the criterion inapplicable; the report never
    claims the splitting is folded.
    """
    ones = tuple(
        (e.id, which) for e, which in graph.ends() if label(graph, e.id, which) == 1
    )
    return UnfoldednessReport(not ones, ones)
