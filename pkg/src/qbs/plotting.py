"""Matplotlib renderings of graphs of groups and tree balls.

Figures are written to files (Agg backend, no display needed).  Layouts
are deterministic: vertices sit on a circle in id order, tree balls use a
layered layout with leaves spread evenly.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .analysis import TreeBall
from .graphs import GraphOfGroups


def _vertex_positions(graph: GraphOfGroups) -> dict[int, tuple[float, float]]:
    n = len(graph.vertices)
    if n == 1:
        return {0: (0.0, 0.0)}
    return {
        v.id: (math.cos(2 * math.pi * v.id / n), math.sin(2 * math.pi * v.id / n))
        for v in graph.vertices
    }


def graph_figure(graph: GraphOfGroups, title: str | None = None, highlight_edges=()):
    """Draw the graph: circles for cyclic vertices, squares for surfaces."""
    pos = _vertex_positions(graph)
    fig, ax = plt.subplots(figsize=(6, 6))
    highlight = set(highlight_edges)

    multiplicity: dict[tuple[int, int], int] = {}
    loop_count: dict[int, int] = {}
    for e in graph.edges:
        color = "tab:red" if e.id in highlight else "0.3"
        if e.is_loop:
            k = loop_count.get(e.source, 0)
            loop_count[e.source] = k + 1
            x, y = pos[e.source]
            r = 0.5 if len(graph.vertices) > 1 else 0.9
            cx, cy = x * (1 + 0.35 * (k + 1)), y * (1 + 0.35 * (k + 1))
            if len(graph.vertices) == 1:
                cx, cy = 0.35 * (k + 1), 0.0
            circ = plt.Circle((cx, cy), 0.18 * r, fill=False, color=color, lw=1.4)
            ax.add_patch(circ)
            ax.annotate(
                f"e{e.id}: {e.source_end.n}|{e.target_end.n}",
                (cx, cy + 0.22 * r),
                ha="center",
                fontsize=8,
                color=color,
            )
        else:
            key = (min(e.source, e.target), max(e.source, e.target))
            k = multiplicity.get(key, 0)
            multiplicity[key] = k + 1
            rad = 0.0 if k == 0 else 0.25 * ((k + 1) // 2) * (-1) ** k
            patch = FancyArrowPatch(
                pos[e.source],
                pos[e.target],
                connectionstyle=f"arc3,rad={rad}",
                arrowstyle="-",
                color=color,
                lw=1.4,
                shrinkA=12,
                shrinkB=12,
            )
            ax.add_patch(patch)
            (x1, y1), (x2, y2) = pos[e.source], pos[e.target]
            mx, my = (x1 + x2) / 2 - rad * (y2 - y1), (y1 + y2) / 2 + rad * (x2 - x1)
            ax.annotate(
                f"e{e.id}: {e.source_end.n}|{e.target_end.n}",
                (mx, my),
                ha="center",
                fontsize=8,
                color=color,
            )

    for v in graph.vertices:
        x, y = pos[v.id]
        if v.is_cyclic:
            ax.plot([x], [y], "o", ms=18, mfc="white", mec="black")
            ax.annotate(f"v{v.id}", (x, y), ha="center", va="center", fontsize=9)
        else:
            ax.plot([x], [y], "s", ms=22, mfc="lightsteelblue", mec="black")
            s = v.surface
            tag = f"v{v.id}\ng{s.genus},b{s.boundary_count}"
            ax.annotate(tag, (x, y), ha="center", va="center", fontsize=7)

    ax.set_xlim(-1.9, 1.9)
    ax.set_ylim(-1.9, 1.9)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def ball_figure(tree: TreeBall, title: str | None = None):
    """Layered drawing of a tree ball, root on top."""
    order: dict[int, float] = {}
    next_x = [0.0]

    def assign(idx: int) -> float:
        kids = tree.children[idx]
        if not kids:
            order[idx] = next_x[0]
            next_x[0] += 1.0
        else:
            xs = [assign(k) for k in kids]
            order[idx] = sum(xs) / len(xs)
        return order[idx]

    assign(0)
    fig, ax = plt.subplots(figsize=(max(6, next_x[0] / 8), 5))
    big = len(tree.nodes) > 400
    for n in tree.nodes:
        if n.parent is not None:
            ax.plot(
                [order[n.parent], order[n.index]],
                [-tree.nodes[n.parent].depth, -n.depth],
                "-",
                color="0.6",
                lw=0.5 if big else 1.0,
                zorder=1,
            )
    xs = [order[n.index] for n in tree.nodes]
    ys = [-n.depth for n in tree.nodes]
    ax.scatter(xs, ys, s=4 if big else 40, c="tab:blue", zorder=2)
    if not big:
        for n in tree.nodes:
            ax.annotate(
                f"v{n.orbit}@d{n.depth}",
                (order[n.index], -n.depth),
                textcoords="offset points",
                xytext=(0, 6),
                ha="center",
                fontsize=6,
            )
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_figure(fig, path: str):
    fig.savefig(path, dpi=150)
    plt.close(fig)
