"""GBS components, Bass-Serre tree shape, tree balls, one-endedness.

A lift of a vertex v in the tree has one edge per coset of the attached
edge group at each incident end, so its degree is the sum of the incident
end labels.  The point/line/branching classification reads that degree
formula off the graph; tree balls expand it explicitly for finitely many
levels as an empirical cross-check and for rendering.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graphs import End, GraphOfGroups, QbsError, Vertex, Edge, label
from .moves import CollapseSite, find_collapses, reduce


class NotReduced(QbsError):
    def __init__(self, sites):
        self.sites = tuple(sites)
        super().__init__(
            "graph admits elementary collapses: " + ", ".join(str(s) for s in self.sites)
        )


class BudgetExceeded(QbsError):
    pass


class TreeShape(Enum):
    POINT = "point"
    LINE = "line"
    BRANCHING = "branching"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GbsComponent:
    """A maximal connected all-cyclic subgraph, with maps back to the parent.

    vertex_ids[i] and edge_ids[j] are the parent ids of local vertex i and
    local edge j of the component graph.
    """

    graph: GraphOfGroups
    vertex_ids: tuple[int, ...]
    edge_ids: tuple[int, ...]

    def local_vertex(self, parent_id: int) -> int:
        try:
            return self.vertex_ids.index(parent_id)
        except ValueError:
            raise QbsError(f"vertex {parent_id} is not in this component") from None


def induced_subgraph(graph: GraphOfGroups, vertex_ids) -> tuple[GraphOfGroups, tuple[int, ...], tuple[int, ...]]:
    """Subgraph on the given vertices with every edge joining two of them."""
    keep = sorted(set(vertex_ids))
    local = {vid: i for i, vid in enumerate(keep)}
    vertices = tuple(Vertex(i, graph.vertex(vid).surface) for i, vid in enumerate(keep))
    edges = []
    kept_edges = []
    for e in graph.edges:
        if e.source in local and e.target in local:
            edges.append(
                Edge(len(edges), local[e.source], local[e.target], e.source_end, e.target_end)
            )
            kept_edges.append(e.id)
    return GraphOfGroups(vertices, tuple(edges)), tuple(keep), tuple(kept_edges)


def gbs_components(graph: GraphOfGroups) -> list[GbsComponent]:
    """Components left after deleting surface vertices and their edges.

    Ordered by lowest contained parent vertex id; may be empty.
    """
    cyclic = [v.id for v in graph.vertices if v.is_cyclic]
    unassigned = set(cyclic)
    components = []
    for start in cyclic:
        if start not in unassigned:
            continue
        seen = {start}
        queue = [start]
        while queue:
            cur = queue.pop()
            for e in graph.edges:
                for a, b in ((e.source, e.target), (e.target, e.source)):
                    if a == cur and b in unassigned and b not in seen:
                        seen.add(b)
                        queue.append(b)
        unassigned -= seen
        sub, vids, eids = induced_subgraph(graph, seen)
        components.append(GbsComponent(sub, vids, eids))
    return components


def _degree_sum(graph: GraphOfGroups, vid: int) -> int:
    return sum(label(graph, e.id, which) for e, which in graph.ends_at(vid))


def classify_tree(component: GbsComponent) -> TreeShape:
    """Point, line or branching shape of the component's Bass-Serre tree.

    Requires the component to be reduced, since label-1 non-loop ends make
    the degree counts reflect collapsible structure.
    """
    g = component.graph
    sites = find_collapses(g)
    if sites:
        raise NotReduced(
            CollapseSite(component.edge_ids[s.edge], s.collapsed_end) for s in sites
        )
    if len(g.vertices) == 1 and not g.edges:
        return TreeShape.POINT
    if all(_degree_sum(g, v.id) == 2 for v in g.vertices):
        return TreeShape.LINE
    return TreeShape.BRANCHING


def is_trivial_Z(graph: GraphOfGroups) -> bool:
    """True iff the graph reduces to a single cyclic vertex with no edges."""
    r = reduce(graph)
    g = r.graph
    return (
        r.fully_reduced
        and len(g.vertices) == 1
        and not g.edges
        and g.vertices[0].is_cyclic
    )


class OneEndedVerdict(Enum):
    CERTIFIED = "certified"
    NO = "no"
    INCONCLUSIVE = "inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OneEndedReport:
    verdict: OneEndedVerdict
    reason: str


def is_one_ended(graph: GraphOfGroups) -> OneEndedReport:
    """One-endedness certificate: reduce, then rule out the infinite cyclic case."""
    r = reduce(graph)
    if not r.fully_reduced:
        return OneEndedReport(
            OneEndedVerdict.INCONCLUSIVE,
            "reduction blocked by a collapse into a surface vertex: "
            + ", ".join(str(s) for s in r.blocked),
        )
    g = r.graph
    if len(g.vertices) == 1 and not g.edges and g.vertices[0].is_cyclic:
        return OneEndedReport(OneEndedVerdict.NO, "fundamental group is infinite cyclic")
    return OneEndedReport(
        OneEndedVerdict.CERTIFIED, "graph reduces to a reduced graph with more than a point"
    )


@dataclass(frozen=True)
class TreeNode:
    index: int
    orbit: int  # parent-graph vertex id this node lies over
    depth: int
    parent: int | None
    parent_edge: int | None  # parent-graph edge id


@dataclass(frozen=True)
class TreeBall:
    nodes: tuple[TreeNode, ...]
    children: tuple[tuple[int, ...], ...]

    def degree(self, index: int) -> int:
        base = len(self.children[index])
        return base + (0 if self.nodes[index].parent is None else 1)

    def max_depth(self) -> int:
        return max(n.depth for n in self.nodes)

    def is_path(self) -> bool:
        return all(self.degree(n.index) <= 2 for n in self.nodes)

    def to_dot(self) -> str:
        lines = ["graph treeball {"]
        for n in self.nodes:
            lines.append(f'  n{n.index} [label="v{n.orbit}@d{n.depth}"];')
        for n in self.nodes:
            if n.parent is not None:
                lines.append(f"  n{n.parent} -- n{n.index};")
        lines.append("}")
        return "\n".join(lines)


def ball(
    component: GbsComponent,
    base_vertex: int,
    radius: int,
    budget: int = 100_000,
) -> TreeBall:
    """Radius-r ball of the Bass-Serre tree around a lift of base_vertex.

    A node over v sprouts label(end) children for every incident edge end
    at v, except that the end used to enter the node contributes one child
    fewer.  Children are ordered by (edge id, src before dst, copy).
    """
    if radius < 0:
        raise QbsError("radius must be nonnegative")
    g = component.graph
    base = component.local_vertex(base_vertex)
    incident = {v.id: g.ends_at(v.id) for v in g.vertices}

    nodes = [TreeNode(0, component.vertex_ids[base], 0, None, None)]
    children: list[list[int]] = [[]]
    frontier: list[tuple[int, int, tuple[int, End] | None]] = [(0, base, None)]
    for depth in range(1, radius + 1):
        next_frontier = []
        for node_idx, vloc, entered in frontier:
            for e, which in incident[vloc]:
                count = abs(e.end(which).n)
                if entered == (e.id, which):
                    count -= 1
                child_local = e.vertex_at(which.opposite())
                for _ in range(count):
                    if len(nodes) >= budget:
                        raise BudgetExceeded(
                            f"tree ball exceeds the {budget}-node budget at depth {depth}"
                        )
                    idx = len(nodes)
                    nodes.append(
                        TreeNode(
                            idx,
                            component.vertex_ids[child_local],
                            depth,
                            node_idx,
                            component.edge_ids[e.id],
                        )
                    )
                    children[node_idx].append(idx)
                    children.append([])
                    next_frontier.append((idx, child_local, (e.id, which.opposite())))
        frontier = next_frontier
    return TreeBall(tuple(nodes), tuple(tuple(c) for c in children))
