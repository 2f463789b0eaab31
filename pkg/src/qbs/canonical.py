"""Canonical relabeling, isomorphism tests, and content fingerprints.

Two graphs are considered isomorphic when some relabeling of vertices and
edges matches kinds, orientations, attachment exponents and slot numbers.
The canonical form is the lexicographically least encoding over all vertex
orderings, found by a backtracking search pruned with iterated invariant
refinement.  On highly symmetric inputs the search is capped by a node
budget and falls back to a deterministic greedy order; graphs produced by
hand or by the move calculus stay far below the cap.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .graphs import Edge, GraphOfGroups, Vertex

SEARCH_BUDGET = 50_000


def _kind_key(v: Vertex):
    if v.surface is None:
        return ("c",)
    s = v.surface
    return ("s", int(s.orientable), s.genus, s.boundary_count)


def _att_key(att):
    if att.is_surface:
        return (1, att.slot, att.n)
    return (0, att.n)


def _refined_colors(g: GraphOfGroups) -> list[int]:
    """Stable vertex colors: iterated refinement by incident-end signatures."""
    n = len(g.vertices)
    incident = [g.ends_at(v.id) for v in g.vertices]
    colors = _compress([_kind_key(v) for v in g.vertices])
    while True:
        sigs = []
        for v in g.vertices:
            local = []
            for e, which in incident[v.id]:
                other = e.vertex_at(which.opposite())
                local.append(
                    (_att_key(e.end(which)), _att_key(e.end(which.opposite())), colors[other], e.is_loop)
                )
            sigs.append((colors[v.id], tuple(sorted(local))))
        new = _compress(sigs)
        if new == colors:
            return colors
        colors = new


def _compress(keys) -> list[int]:
    ranking = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [ranking[k] for k in keys]


class _Budget(Exception):
    pass


def _vertex_record(g, colors, x, pos):
    """Invariant record emitted when x is placed; covers edges into the placed set."""
    items = []
    for e in g.edges:
        if e.is_loop:
            if e.source == x:
                items.append((len(pos), 2, _att_key(e.source_end), _att_key(e.target_end)))
        elif e.source == x and e.target in pos:
            items.append((pos[e.target], 1, _att_key(e.source_end), _att_key(e.target_end)))
        elif e.target == x and e.source in pos:
            items.append((pos[e.source], 0, _att_key(e.source_end), _att_key(e.target_end)))
    return (colors[x], _kind_key(g.vertices[x]), tuple(sorted(items)))


def _search(g, colors):
    n = len(g.vertices)
    best: list = [None, None]  # encoding, ordering
    visited = 0

    def walk(order, pos, enc):
        nonlocal visited
        if len(order) == n:
            if best[0] is None or enc < best[0]:
                best[0], best[1] = enc, tuple(order)
            return
        visited += 1
        if visited > SEARCH_BUDGET:
            raise _Budget
        recs = {}
        for x in range(n):
            if x not in pos:
                recs[x] = _vertex_record(g, colors, x, pos)
        low = min(recs.values())
        enc_next = enc + (low,)
        if best[0] is not None and enc_next > best[0][: len(enc_next)]:
            return
        for x in sorted(k for k, r in recs.items() if r == low):
            pos[x] = len(order)
            order.append(x)
            walk(order, pos, enc_next)
            order.pop()
            del pos[x]

    try:
        walk([], {}, ())
    except _Budget:
        # Greedy fallback: first minimal candidate at every step.
        order: list[int] = []
        pos: dict[int, int] = {}
        enc = ()
        while len(order) < n:
            recs = {x: _vertex_record(g, colors, x, pos) for x in range(n) if x not in pos}
            x = min(recs, key=lambda k: (recs[k], k))
            enc = enc + (recs[x],)
            pos[x] = len(order)
            order.append(x)
        best[0], best[1] = enc, tuple(order)
    return best[0], best[1]


@dataclass(frozen=True)
class CanonicalForm:
    encoding: tuple
    ordering: tuple[int, ...]  # ordering[i] = original vertex placed at position i


def canonical_form(g: GraphOfGroups) -> CanonicalForm:
    if not g.vertices:
        return CanonicalForm((), ())
    colors = _refined_colors(g)
    enc, order = _search(g, colors)
    return CanonicalForm(enc, order)


def canonical_graph(g: GraphOfGroups) -> GraphOfGroups:
    """Relabel into canonical order; isomorphic graphs map to equal values."""
    form = canonical_form(g)
    pos = {old: new for new, old in enumerate(form.ordering)}
    vertices = tuple(
        Vertex(new, g.vertices[old].surface) for new, old in enumerate(form.ordering)
    )
    specs = sorted(
        (pos[e.source], pos[e.target], _att_key(e.source_end), _att_key(e.target_end), e.source_end, e.target_end)
        for e in g.edges
    )
    edges = tuple(
        Edge(i, s, t, se, te) for i, (s, t, _ks, _kt, se, te) in enumerate(specs)
    )
    return GraphOfGroups(vertices, edges)


def isomorphic(a: GraphOfGroups, b: GraphOfGroups) -> bool:
    return canonical_form(a).encoding == canonical_form(b).encoding


def fingerprint(g: GraphOfGroups) -> str:
    """Content hash of the canonical form, stable across relabelings."""
    enc = canonical_form(g).encoding
    return hashlib.sha256(repr(enc).encode()).hexdigest()


def relabel(g: GraphOfGroups, vertex_order, edge_order) -> GraphOfGroups:
    """Rebuild with vertices and edges permuted; vertex_order[i] = old id at new position i."""
    pos = {old: new for new, old in enumerate(vertex_order)}
    vertices = tuple(Vertex(i, g.vertices[old].surface) for i, old in enumerate(vertex_order))
    edges = tuple(
        Edge(
            i,
            pos[g.edges[old].source],
            pos[g.edges[old].target],
            g.edges[old].source_end,
            g.edges[old].target_end,
        )
        for i, old in enumerate(edge_order)
    )
    return GraphOfGroups(vertices, edges)
