"""Finite presentations of the fundamental group and their abelianization.

Generator names are deterministic: a{v} for a cyclic vertex, p{v}.{slot}
and h{v}.{j} for the boundary and handle generators of a surface vertex,
t{e} for the stable letter of an edge outside the spanning tree.  Words
are tuples of (generator, nonzero exponent) pairs and every relation is
stored in w = 1 form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import End, GraphOfGroups, QbsError
from .snf import smith_normal_form

Word = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def to_text(self) -> str:
        """Plain-text form: a gen: line, then one rel: line per relator."""
        lines = ["gen: " + " ".join(self.generators)]
        for rel in self.relators:
            lines.append("rel: " + word_to_text(rel))
        return "\n".join(lines)


def word_to_text(word: Word) -> str:
    parts = []
    for gen, exp in word:
        parts.append(gen if exp == 1 else f"{gen}^{exp}")
    return " ".join(parts) if parts else "1"


def _inverse(word: Word) -> Word:
    return tuple((gen, -exp) for gen, exp in reversed(word))


def spanning_tree(graph: GraphOfGroups, root: int | None = None) -> frozenset[int]:
    """Edge ids of the BFS spanning tree (lowest root, ascending edge ids)."""
    if not graph.vertices:
        return frozenset()
    if root is None:
        root = 0
    tree: set[int] = set()
    seen = {root}
    queue = [root]
    while queue:
        cur = queue.pop(0)
        for e in graph.edges:
            if e.is_loop:
                continue
            other = None
            if e.source == cur and e.target not in seen:
                other = e.target
            elif e.target == cur and e.source not in seen:
                other = e.source
            if other is not None:
                tree.add(e.id)
                seen.add(other)
                queue.append(other)
    if len(seen) != len(graph.vertices):
        raise QbsError("graph is not connected")
    return frozenset(tree)


def _generators(graph: GraphOfGroups) -> tuple[dict, list[str]]:
    """Names for every vertex generator, keyed for attachment lookup."""
    names: list[str] = []
    key: dict = {}
    for v in graph.vertices:
        if v.surface is None:
            key[("a", v.id)] = f"a{v.id}"
            names.append(f"a{v.id}")
        else:
            for slot in v.surface.slots:
                key[("p", v.id, slot)] = f"p{v.id}.{slot}"
                names.append(f"p{v.id}.{slot}")
            handles = 2 * v.surface.genus if v.surface.orientable else v.surface.genus
            for j in range(handles):
                key[("h", v.id, j)] = f"h{v.id}.{j}"
                names.append(f"h{v.id}.{j}")
    return key, names


def _image(key: dict, graph: GraphOfGroups, eid: int, which: End) -> Word:
    e = graph.edge(eid)
    att = e.end(which)
    v = e.vertex_at(which)
    if att.is_surface:
        return ((key[("p", v, att.slot)], att.n),)
    return ((key[("a", v)], att.n),)


def presentation(graph: GraphOfGroups, tree: frozenset[int] | None = None) -> Presentation:
    """The fundamental group presentation read off a spanning tree.

    Relators, in order: one surface relator per surface vertex, one
    relator per tree edge (source image times inverse target image), and
    one conjugation relator per non-tree edge with its stable letter.
    """
    if tree is None:
        tree = spanning_tree(graph)
    key, names = _generators(graph)
    relators: list[Word] = []

    for v in graph.vertices:
        s = v.surface
        if s is None:
            continue
        word: list[tuple[str, int]] = [(key[("p", v.id, slot)], 1) for slot in s.slots]
        if s.orientable:
            for j in range(s.genus):
                a, b = key[("h", v.id, 2 * j)], key[("h", v.id, 2 * j + 1)]
                word += [(a, 1), (b, 1), (a, -1), (b, -1)]
        else:
            for j in range(s.genus):
                word.append((key[("h", v.id, j)], 2))
        relators.append(tuple(word))

    stable: dict[int, str] = {}
    for e in graph.edges:
        if e.id not in tree:
            stable[e.id] = f"t{e.id}"

    for e in graph.edges:
        src = _image(key, graph, e.id, End.SOURCE)
        tgt = _image(key, graph, e.id, End.TARGET)
        if e.id in tree:
            relators.append(src + _inverse(tgt))
        else:
            t = stable[e.id]
            relators.append(((t, 1),) + src + ((t, -1),) + _inverse(tgt))

    names += [stable[eid] for eid in sorted(stable)]
    return Presentation(tuple(names), tuple(relators))


@dataclass(frozen=True)
class HomologyDescriptor:
    """First homology: free rank plus the torsion divisibility chain."""

    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError("torsion coefficients must be at least 2")
            if i and d % self.torsion[i - 1]:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def exponent_matrix(p: Presentation) -> list[list[int]]:
    """Integer exponent sums, one row per relator, one column per generator."""
    index = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for rel in p.relators:
        row = [0] * len(p.generators)
        for gen, exp in rel:
            row[index[gen]] += exp
        rows.append(row)
    return rows


def abelianization(p: Presentation) -> HomologyDescriptor:
    """First homology of the presented group via Smith normal form."""
    factors = smith_normal_form(exponent_matrix(p))
    free = len(p.generators) - len(factors)
    return HomologyDescriptor(free, tuple(d for d in factors if d > 1))


def homology(graph: GraphOfGroups) -> HomologyDescriptor:
    return abelianization(presentation(graph))
