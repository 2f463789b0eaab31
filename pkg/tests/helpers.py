"""Shared test utilities: random inputs, independent oracles, move drivers."""

from __future__ import annotations

import itertools
import math
import random

from qbs.graphs import (
    Attachment,
    Edge,
    GraphOfGroups,
    SurfaceData,
    Vertex,
    build_graph,
    cyclic_end,
    surface_end,
)
from qbs.moves import CollapseSite, End, collapse, expand, find_collapses, fold


def nonzero(rng: random.Random, bound: int = 9) -> int:
    n = rng.randint(1, bound)
    return n if rng.random() < 0.5 else -n


def random_gbs_graph(rng: random.Random, max_vertices: int = 6, bound: int = 9) -> GraphOfGroups:
    """Connected all-cyclic graph: a random spanning tree plus extras."""
    n = rng.randint(1, max_vertices)
    specs = []
    for v in range(1, n):
        specs.append((rng.randrange(v), v, cyclic_end(nonzero(rng, bound)), cyclic_end(nonzero(rng, bound))))
    for _ in range(rng.randint(0, 3)):
        specs.append(
            (rng.randrange(n), rng.randrange(n), cyclic_end(nonzero(rng, bound)), cyclic_end(nonzero(rng, bound)))
        )
    return build_graph([None] * n, specs)


def supported_collapses(g: GraphOfGroups) -> list[CollapseSite]:
    out = []
    for site in find_collapses(g):
        e = g.edge(site.edge)
        if g.vertex(e.vertex_at(site.collapsed_end.opposite())).is_cyclic:
            out.append(site)
    return out


def fold_candidates(g: GraphOfGroups):
    out = []
    for e in g.edges:
        if e.is_loop:
            continue
        for which in (End.SOURCE, End.TARGET):
            att = e.end(which)
            if att.is_surface or abs(att.n) <= 1:
                continue
            for k in range(2, abs(att.n) + 1):
                if abs(att.n) % k == 0:
                    out.append((e.id, which, k))
    return out


def expand_candidates(rng: random.Random, g: GraphOfGroups):
    """A sampled expansion: cyclic vertex, exponent, and a divisible end subset."""
    cyclic = [v.id for v in g.vertices if v.is_cyclic]
    if not cyclic:
        return None
    v = rng.choice(cyclic)
    n = nonzero(rng, 4)
    ends = [
        (e.id, which)
        for e, which in g.ends_at(v)
        if not e.end(which).is_surface and e.end(which).n % n == 0
    ]
    chosen = [end for end in ends if rng.random() < 0.5]
    return v, n, chosen


def random_move(rng: random.Random, g: GraphOfGroups):
    """Apply one random supported move; returns (name, new graph) or None."""
    options = []
    if supported_collapses(g):
        options.append("collapse")
    if fold_candidates(g):
        options.append("fold")
    options.append("expand")
    move = rng.choice(options)
    if move == "collapse":
        site = rng.choice(supported_collapses(g))
        return "collapse", collapse(g, site)
    if move == "fold":
        eid, which, k = rng.choice(fold_candidates(g))
        return "fold", fold(g, eid, which, k)
    picked = expand_candidates(rng, g)
    if picked is None:
        return None
    v, n, ends = picked
    return "expand", expand(g, v, n, ends)


def random_int_matrix(rng: random.Random, max_dim: int = 6, bound: int = 20):
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def det_permutation_sum(m) -> int:
    """Determinant by the Leibniz formula; transparent, exponential, exact."""
    k = len(m)
    total = 0
    for perm in itertools.permutations(range(k)):
        sign = 1
        seen = list(perm)
        for i in range(k):  # count inversions
            for j in range(i + 1, k):
                if seen[i] > seen[j]:
                    sign = -sign
        term = 1
        for i in range(k):
            term *= m[i][perm[i]]
        total += sign * term
    return total


def minor_gcd(m, k: int) -> int:
    """gcd of all k x k minors (0 when all vanish)."""
    rows, cols = len(m), len(m[0])
    g = 0
    for rset in itertools.combinations(range(rows), k):
        for cset in itertools.combinations(range(cols), k):
            sub = [[m[i][j] for j in cset] for i in rset]
            g = math.gcd(g, det_permutation_sum(sub))
    return g


def unimodular_shuffle(rng: random.Random, m):
    """Apply random invertible integer row/column operations."""
    m = [row[:] for row in m]
    rows, cols = len(m), len(m[0])
    for _ in range(rng.randint(4, 12)):
        op = rng.randrange(6)
        if op == 0 and rows > 1:
            i, j = rng.sample(range(rows), 2)
            m[i], m[j] = m[j], m[i]
        elif op == 1 and cols > 1:
            i, j = rng.sample(range(cols), 2)
            for row in m:
                row[i], row[j] = row[j], row[i]
        elif op == 2:
            i = rng.randrange(rows)
            m[i] = [-x for x in m[i]]
        elif op == 3:
            i = rng.randrange(cols)
            for row in m:
                row[i] = -row[i]
        elif op == 4 and rows > 1:
            i, j = rng.sample(range(rows), 2)
            c = rng.randint(-3, 3)
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        elif op == 5 and cols > 1:
            i, j = rng.sample(range(cols), 2)
            c = rng.randint(-3, 3)
            for row in m:
                row[i] += c * row[j]
    return m


def random_eligible_delta_parent(rng: random.Random):
    """A valid graph whose surface cluster is one eligible component.

    Returns (graph, seed edge id, expected delta vertex ids, expected chi).
    """
    k = rng.randint(1, 3)
    surfaces = []
    slots_needed = []
    # Tree of (2,2) edges among the surfaces, plus occasional extras.
    links = [(rng.randrange(i), i) for i in range(1, k)]
    if k >= 2 and rng.random() < 0.4:
        links.append(tuple(sorted(rng.sample(range(k), 2))))
    if rng.random() < 0.3:
        v = rng.randrange(k)
        links.append((v, v))  # a (2,2) loop uses two slots of one surface
    use_count = [0] * k
    for a, b in links:
        use_count[a] += 1
        use_count[b] += 1
    for v in range(k):
        extra = rng.randint(1, 2)
        m = use_count[v] + extra
        orientable = rng.random() < 0.7
        genus = rng.randint(1, 2) if not orientable else rng.randint(0, 2)
        while (2 - 2 * genus - m if orientable else 2 - genus - m) >= 0:
            m += 1
        surfaces.append(SurfaceData(orientable, genus, m))
        slots_needed.append(m)

    kinds: list = list(surfaces)
    specs = []
    next_slot = [0] * k

    def take_slot(v):
        s = next_slot[v]
        next_slot[v] += 1
        return s

    for a, b in links:
        specs.append((a, b, surface_end(take_slot(a), rng.choice((2, -2))), surface_end(take_slot(b), rng.choice((2, -2)))))
    seed_edge = 0
    # Attach every leftover slot to a fresh cyclic satellite.
    for v in range(k):
        while next_slot[v] < slots_needed[v]:
            kinds.append(None)
            specs.append((v, len(kinds) - 1, surface_end(take_slot(v), nonzero(rng, 5)), cyclic_end(nonzero(rng, 5))))
    if not links:
        # Single surface, no eligible edge: force a (2,2) loop via two fresh slots.
        s = surfaces[0]
        m = s.boundary_count + 2
        kinds[0] = SurfaceData(s.orientable, s.genus, m)
        specs.insert(0, (0, 0, surface_end(m - 2, 2), surface_end(m - 1, 2)))
    g = build_graph(kinds, specs)
    chi = sum(kinds[v].chi for v in range(k))
    return g, seed_edge, tuple(range(k)), chi
