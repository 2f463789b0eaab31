"""Plain-text graph files: one declaration per line, # comments.

    vertex <name> cyclic
    vertex <name> surface orientable|nonorientable genus=<g> slots=<m>
    edge <name> <src> <dst> src=(n=<int>) dst=(slot=<k>, n=<int>)

Each edge end is (n=...) for a cyclic end or (slot=..., n=...) for a
surface end.  Names map to dense integer ids in declaration order, so
parse(print(g)) reproduces g with identical ids.
"""

from __future__ import annotations

import re

from .graphs import Attachment, Edge, GraphOfGroups, QbsError, SurfaceData, Vertex


class ParseError(QbsError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class BadSyntax(ParseError):
    pass


class UnknownVertex(ParseError):
    pass


class DuplicateSlotUse(ParseError):
    pass


class ZeroExponent(ParseError):
    pass


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*")
_INT = re.compile(r"[+-]?\d+")


class _Cursor:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    @property
    def column(self) -> int:
        return self.pos + 1

    def fail(self, message: str, cls=BadSyntax):
        raise cls(self.line, self.column, message)

    def match(self, pattern: re.Pattern):
        self.skip_ws()
        m = pattern.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m

    def expect_name(self, what: str) -> str:
        m = self.match(_NAME)
        if not m:
            self.fail(f"expected {what}")
        return m.group()

    def expect_int(self, what: str) -> int:
        m = self.match(_INT)
        if not m:
            self.fail(f"expected {what}")
        return int(m.group())

    def expect_literal(self, lit: str):
        self.skip_ws()
        if not self.text.startswith(lit, self.pos):
            self.fail(f"expected '{lit}'")
        self.pos += len(lit)

    def expect_end(self):
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("unexpected trailing text")


def _parse_attachment(cur: _Cursor) -> tuple[Attachment, int]:
    """One parenthesized end; returns the attachment and the exponent column."""
    cur.expect_literal("(")
    cur.skip_ws()
    slot = None
    if cur.text.startswith("slot", cur.pos):
        cur.expect_literal("slot")
        cur.expect_literal("=")
        slot = cur.expect_int("slot number")
        cur.expect_literal(",")
    cur.expect_literal("n")
    cur.expect_literal("=")
    n_col = cur.column
    n = cur.expect_int("exponent")
    cur.expect_literal(")")
    return Attachment(n, slot), n_col


def parse(text: str) -> GraphOfGroups:
    """Parse a graph file; raises ParseError subclasses with line/column."""
    vertices: list[Vertex] = []
    edges: list[Edge] = []
    vertex_ids: dict[str, int] = {}
    edge_names: set[str] = set()
    slot_claimed: dict[tuple[int, int], int] = {}  # (vertex, slot) -> line

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        cur = _Cursor(line, lineno)
        word = cur.expect_name("'vertex' or 'edge'")
        if word == "vertex":
            name_col = cur.column
            name = cur.expect_name("vertex name")
            if name in vertex_ids:
                raise BadSyntax(lineno, name_col, f"duplicate vertex name '{name}'")
            kind = cur.expect_name("'cyclic' or 'surface'")
            if kind == "cyclic":
                cur.expect_end()
                vertex_ids[name] = len(vertices)
                vertices.append(Vertex(len(vertices), None))
            elif kind == "surface":
                orient = cur.expect_name("'orientable' or 'nonorientable'")
                if orient not in ("orientable", "nonorientable"):
                    cur.fail("expected 'orientable' or 'nonorientable'")
                cur.expect_literal("genus")
                cur.expect_literal("=")
                genus = cur.expect_int("genus")
                cur.expect_literal("slots")
                cur.expect_literal("=")
                slots = cur.expect_int("slot count")
                cur.expect_end()
                vertex_ids[name] = len(vertices)
                vertices.append(
                    Vertex(len(vertices), SurfaceData(orient == "orientable", genus, slots))
                )
            else:
                cur.fail("expected 'cyclic' or 'surface'")
        elif word == "edge":
            name_col = cur.column
            name = cur.expect_name("edge name")
            if name in edge_names:
                raise BadSyntax(lineno, name_col, f"duplicate edge name '{name}'")
            edge_names.add(name)
            ends = []
            for role in ("source", "target"):
                col = cur.column
                vname = cur.expect_name(f"{role} vertex name")
                if vname not in vertex_ids:
                    raise UnknownVertex(lineno, col, f"unknown vertex '{vname}'")
                ends.append(vertex_ids[vname])
            cur.expect_literal("src")
            cur.expect_literal("=")
            src_col = cur.column
            src_att, src_n_col = _parse_attachment(cur)
            cur.expect_literal("dst")
            cur.expect_literal("=")
            dst_col = cur.column
            dst_att, dst_n_col = _parse_attachment(cur)
            cur.expect_end()
            for att, n_col in ((src_att, src_n_col), (dst_att, dst_n_col)):
                if att.n == 0:
                    raise ZeroExponent(lineno, n_col, "exponent must be nonzero")
            for vid, att, col in ((ends[0], src_att, src_col), (ends[1], dst_att, dst_col)):
                if att.is_surface:
                    claim = (vid, att.slot)
                    if claim in slot_claimed:
                        raise DuplicateSlotUse(
                            lineno,
                            col,
                            f"slot {att.slot} of vertex {vid} already used on line {slot_claimed[claim]}",
                        )
                    slot_claimed[claim] = lineno
            edges.append(Edge(len(edges), ends[0], ends[1], src_att, dst_att))
        else:
            raise BadSyntax(lineno, 1, f"unknown declaration '{word}'")

    return GraphOfGroups(tuple(vertices), tuple(edges))


def graph_to_dot(graph: GraphOfGroups) -> str:
    """DOT rendering; edge labels show both attachment exponents."""
    lines = ["graph gog {"]
    for v in graph.vertices:
        if v.surface is None:
            lines.append(f'  v{v.id} [label="v{v.id}"];')
        else:
            s = v.surface
            lines.append(
                f'  v{v.id} [shape=box, label="v{v.id} ({s})"];'
            )
    for e in graph.edges:
        lines.append(
            f'  v{e.source} -- v{e.target} [label="e{e.id}: {e.source_end}|{e.target_end}"];'
        )
    lines.append("}")
    return "\n".join(lines)


def print_graph(graph: GraphOfGroups) -> str:
    """Render a graph in the file format with canonical v{i}/e{i} names."""
    lines = []
    for v in graph.vertices:
        if v.surface is None:
            lines.append(f"vertex v{v.id} cyclic")
        else:
            s = v.surface
            kind = "orientable" if s.orientable else "nonorientable"
            lines.append(
                f"vertex v{v.id} surface {kind} genus={s.genus} slots={s.boundary_count}"
            )
    for e in graph.edges:
        lines.append(
            f"edge e{e.id} v{e.source} v{e.target} src={e.source_end} dst={e.target_end}"
        )
    return "\n".join(lines) + "\n"
