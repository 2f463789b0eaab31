"""Command-line front end.

Exit codes: 0 for success or a certified verdict, 1 for a rejected or
otherwise negative verdict, 2 for input errors.  --format structured
emits a JSON report carrying {tool_version, fingerprint, verdict|result,
witnesses[]}; text output mirrors the same content.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    BudgetExceeded,
    NotReduced,
    ball,
    classify_tree,
    gbs_components,
    is_one_ended,
)
from .canonical import fingerprint
from .certifier import certify_jsj, universality_preconditions
from .covers import delta_subgraph, glued_surface, hat_delta
from .gogfile import ParseError, graph_to_dot, parse, print_graph
from .graphs import End, GraphOfGroups, QbsError, label, validate
from .moves import fold as fold_move
from .moves import reduce as reduce_move
from .presentation import abelianization, presentation

_END_NAMES = {"src": End.SOURCE, "source": End.SOURCE, "dst": End.TARGET, "target": End.TARGET}


def _read_graph(path: str) -> GraphOfGroups:
    return parse(Path(path).read_text())


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "structured":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _base_payload(command: str, graph: GraphOfGroups | None) -> dict:
    payload = {"tool_version": __version__, "command": command, "witnesses": []}
    if graph is not None:
        payload["fingerprint"] = fingerprint(graph)
    return payload


def _plot_graph(args, graph, title, highlight=()):
    if getattr(args, "plot", None):
        from .plotting import graph_figure, save_figure

        save_figure(graph_figure(graph, title=title, highlight_edges=highlight), args.plot)


def cmd_validate(args) -> int:
    g = _read_graph(args.input)
    violations = validate(g)
    payload = _base_payload("validate", g)
    payload["verdict"] = "valid" if not violations else "invalid"
    payload["witnesses"] = [str(v) for v in violations]
    text = payload["verdict"] + "".join(f"\n  {v}" for v in violations)
    _emit(args, payload, text)
    return 0 if not violations else 1


def cmd_labels(args) -> int:
    g = _read_graph(args.input)
    rows = [
        {"edge": e.id, "src": label(g, e.id, End.SOURCE), "dst": label(g, e.id, End.TARGET)}
        for e in g.edges
    ]
    payload = _base_payload("labels", g)
    payload["result"] = rows
    text = "\n".join(f"e{r['edge']}: src={r['src']} dst={r['dst']}" for r in rows) or "(no edges)"
    _emit(args, payload, text)
    return 0


def cmd_reduce(args) -> int:
    g = _read_graph(args.input)
    result = reduce_move(g)
    rendered = print_graph(result.graph)
    payload = _base_payload("reduce", g)
    payload["result"] = {
        "graph": rendered,
        "fully_reduced": result.fully_reduced,
    }
    payload["witnesses"] = [str(s) for s in result.blocked]
    if args.dot:
        text = graph_to_dot(result.graph)
    else:
        note = "" if result.fully_reduced else "# not fully reduced; blocked sites: " + "; ".join(
            str(s) for s in result.blocked
        ) + "\n"
        text = note + rendered.rstrip("\n")
    if args.output:
        Path(args.output).write_text(rendered)
    _emit(args, payload, text)
    return 0


def cmd_certify(args) -> int:
    g = _read_graph(args.input)
    cert = certify_jsj(g)
    payload = _base_payload("certify", g)
    payload.update(cert.as_dict())
    payload["witnesses"] = [w for c in cert.conditions for w in c.witnesses]
    _emit(args, payload, cert.summary())
    _plot_graph(args, g, f"certify: {cert.verdict}")
    return 0 if cert.certified else 1


def cmd_present(args) -> int:
    g = _read_graph(args.input)
    p = presentation(g)
    payload = _base_payload("present", g)
    payload["result"] = {
        "generators": list(p.generators),
        "relators": [[[gen, exp] for gen, exp in rel] for rel in p.relators],
    }
    _emit(args, payload, p.to_text())
    return 0


def cmd_homology(args) -> int:
    g = _read_graph(args.input)
    h = abelianization(presentation(g))
    payload = _base_payload("homology", g)
    payload["result"] = {"free_rank": h.free_rank, "torsion": list(h.torsion)}
    _emit(args, payload, str(h))
    return 0


def cmd_components(args) -> int:
    g = _read_graph(args.input)
    comps = gbs_components(g)
    payload = _base_payload("components", g)
    payload["result"] = [
        {"index": i, "vertices": list(c.vertex_ids), "edges": list(c.edge_ids)}
        for i, c in enumerate(comps)
    ]
    text = (
        "\n".join(
            f"component {i}: vertices {list(c.vertex_ids)} edges {list(c.edge_ids)}"
            for i, c in enumerate(comps)
        )
        or "(no GBS components)"
    )
    _emit(args, payload, text)
    return 0


def cmd_classify(args) -> int:
    g = _read_graph(args.input)
    comps = gbs_components(g)
    shapes = [(i, str(classify_tree(c))) for i, c in enumerate(comps)]
    payload = _base_payload("classify", g)
    payload["result"] = [{"index": i, "shape": s} for i, s in shapes]
    text = "\n".join(f"component {i}: {s}" for i, s in shapes) or "(no GBS components)"
    _emit(args, payload, text)
    return 0


def cmd_ball(args) -> int:
    g = _read_graph(args.input)
    comps = gbs_components(g)
    comp = next((c for c in comps if args.vertex in c.vertex_ids), None)
    if comp is None:
        raise QbsError(f"vertex {args.vertex} lies in no GBS component")
    tree = ball(comp, args.vertex, args.radius, budget=args.budget)
    degrees: dict[int, int] = {}
    for n in tree.nodes:
        d = tree.degree(n.index)
        degrees[d] = degrees.get(d, 0) + 1
    payload = _base_payload("ball", g)
    payload["result"] = {
        "node_count": len(tree.nodes),
        "max_depth": tree.max_depth(),
        "degree_histogram": {str(k): v for k, v in sorted(degrees.items())},
        "is_path": tree.is_path(),
    }
    if args.dot:
        text = tree.to_dot()
    else:
        text = (
            f"nodes: {len(tree.nodes)}\nmax depth: {tree.max_depth()}\n"
            f"degrees: {dict(sorted(degrees.items()))}\npath: {tree.is_path()}"
        )
    _emit(args, payload, text)
    if args.plot:
        from .plotting import ball_figure, save_figure

        save_figure(ball_figure(tree, title=f"ball around v{args.vertex}, r={args.radius}"), args.plot)
    return 0


def cmd_cover(args) -> int:
    g = _read_graph(args.input)
    delta = delta_subgraph(g, args.edge)
    cg = hat_delta(delta)
    glued = glued_surface(cg)
    rendered = print_graph(cg.graph)
    sidecar = [
        f"e{base} -> " + " ".join(f"e{i}" for i in lifts) for base, lifts in cg.edge_map
    ]
    payload = _base_payload("cover", g)
    payload["result"] = {
        "delta": {
            "vertices": list(delta.vertex_ids),
            "edges": list(delta.edge_ids),
            "chi": delta.chi,
        },
        "hat_delta": {
            "graph": rendered,
            "edge_map": sidecar,
            "chi": cg.chi,
            "covers": [
                {
                    "vertex": vid,
                    "chi": c.chi,
                    "boundary_count": c.boundary_count,
                    "genus": c.genus,
                    "orientable": c.orientable,
                }
                for vid, c in zip(cg.vertex_ids, cg.covers)
            ],
        },
        "glued_surface": {
            "chi": glued.chi,
            "boundary_count": glued.boundary_count,
            "component_count": glued.component_count,
            "orientability": str(glued.orientability),
            "glued_pairs": glued.glued_pairs,
        },
    }
    if args.dot:
        text = graph_to_dot(cg.graph)
    else:
        lines = [
            f"delta: vertices {list(delta.vertex_ids)} edges {list(delta.edge_ids)} chi={delta.chi}",
            f"cover: chi={cg.chi} (4 x {delta.chi})",
            rendered.rstrip("\n"),
        ]
        lines += [f"# map {s}" for s in sidecar]
        lines.append(
            f"glued surface: chi={glued.chi} boundary={glued.boundary_count} "
            f"components={glued.component_count} orientability={glued.orientability}"
        )
        text = "\n".join(lines)
    _emit(args, payload, text)
    _plot_graph(args, cg.graph, "4-sheeted cover")
    return 0


def cmd_fold(args) -> int:
    g = _read_graph(args.input)
    folded = fold_move(g, args.edge, _END_NAMES[args.end], args.k)
    rendered = print_graph(folded)
    payload = _base_payload("fold", g)
    payload["result"] = {"graph": rendered}
    text = graph_to_dot(folded) if args.dot else rendered.rstrip("\n")
    if args.output:
        Path(args.output).write_text(rendered)
    _emit(args, payload, text)
    return 0


def cmd_universality(args) -> int:
    g = _read_graph(args.input)
    v_set = [int(tok) for tok in args.vertices.split(",") if tok.strip() != ""]
    report = universality_preconditions(g, v_set)
    payload = _base_payload("universality", g)
    payload.update(report.as_dict())
    payload["witnesses"] = [w for c in report.conditions for w in c.witnesses]
    lines = [f"verdict: {report.verdict}"]
    for c in report.conditions:
        mark = "pass" if c.passed else "FAIL"
        lines.append(f"  [{mark}] {c.name}")
        for w in c.witnesses:
            lines.append(f"         - {w}")
    _emit(args, payload, "\n".join(lines))
    return 0 if report.verdict == "satisfied" else 1


def cmd_report(args) -> int:
    """Run the whole battery and write figures next to delimited output."""
    g = _read_graph(args.input)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    cert = certify_jsj(g)
    (out / "certificate.json").write_text(
        json.dumps(
            {"tool_version": __version__, **cert.as_dict()}, sort_keys=True, indent=2
        )
        + "\n"
    )

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["edge", "end", "label"])
    for e in g.edges:
        writer.writerow([f"e{e.id}", "src", label(g, e.id, End.SOURCE)])
        writer.writerow([f"e{e.id}", "dst", label(g, e.id, End.TARGET)])
    (out / "labels.csv").write_text(buf.getvalue())

    h = abelianization(presentation(g))
    (out / "homology.txt").write_text(str(h) + "\n")
    (out / "presentation.txt").write_text(presentation(g).to_text() + "\n")

    from .plotting import ball_figure, graph_figure, save_figure

    save_figure(graph_figure(g, title=f"{Path(args.input).name}: {cert.verdict}"), str(out / "graph.png"))
    comps = gbs_components(g)
    ball_files = []
    for i, comp in enumerate(comps):
        base = comp.vertex_ids[0]
        try:
            tree = ball(comp, base, args.radius, budget=args.budget)
        except BudgetExceeded:
            continue
        name = f"ball_{i}.png"
        save_figure(ball_figure(tree, title=f"component {i} ball, r={args.radius}"), str(out / name))
        ball_files.append(name)

    one = is_one_ended(g)
    payload = _base_payload("report", g)
    payload["verdict"] = cert.verdict
    payload["witnesses"] = [w for c in cert.conditions for w in c.witnesses]
    payload["result"] = {
        "out_dir": str(out),
        "files": sorted(
            ["certificate.json", "labels.csv", "homology.txt", "presentation.txt", "graph.png"]
            + ball_files
        ),
        "homology": str(h),
        "one_ended": str(one.verdict),
    }
    text = (
        f"verdict: {cert.verdict}\nhomology: {h}\none-ended: {one.verdict}\n"
        f"wrote {len(payload['result']['files'])} files to {out}"
    )
    _emit(args, payload, text)
    return 0 if cert.certified else 1


def _add_common(sub, plot=False, dot=False, output=False):
    sub.add_argument("input", help="graph file")
    sub.add_argument(
        "--format", choices=("text", "structured"), default="text", help="output style"
    )
    if dot:
        sub.add_argument("--dot", action="store_true", help="emit DOT instead of text")
    if plot:
        sub.add_argument("--plot", metavar="PNG", help="also render a figure to this file")
    if output:
        sub.add_argument("--output", metavar="FILE", help="also write the resulting graph here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qbs",
        description="Graphs of groups with cyclic and surface vertices: "
        "moves, homology, covers, and cyclic JSJ certification.",
    )
    ap.add_argument("--version", action="version", version=f"qbs {__version__}")
    subs = ap.add_subparsers(dest="subcommand", required=True)

    handlers = {}

    def register(name, fn, help_, **common):
        sub = subs.add_parser(name, help=help_)
        _add_common(sub, **common)
        handlers[name] = fn
        return sub

    register("validate", cmd_validate, "check well-formedness")
    register("labels", cmd_labels, "edge-end labels")
    register("reduce", cmd_reduce, "collapse until reduced", dot=True, output=True)
    register("certify", cmd_certify, "JSJ recognition certificate", plot=True)
    register("present", cmd_present, "fundamental group presentation")
    register("homology", cmd_homology, "first homology of the fundamental group")
    register("components", cmd_components, "GBS components")
    register("classify", cmd_classify, "point/line/branching per GBS component")

    sub = register("ball", cmd_ball, "finite Bass-Serre tree ball", plot=True, dot=True)
    sub.add_argument("--vertex", type=int, required=True, help="base vertex id")
    sub.add_argument("--radius", type=int, required=True)
    sub.add_argument("--budget", type=int, default=100_000, help="node budget")

    sub = register("cover", cmd_cover, "4-sheeted cover over an eligible edge", plot=True, dot=True)
    sub.add_argument("--edge", type=int, required=True, help="surface-surface (2,2) edge id")

    sub = register("fold", cmd_fold, "fold an edge at a cyclic end", dot=True, output=True)
    sub.add_argument("--edge", type=int, required=True)
    sub.add_argument("--end", choices=sorted(_END_NAMES), required=True)
    sub.add_argument("--k", type=int, required=True, help="divisor of the end exponent")

    sub = register("universality", cmd_universality, "gluing preconditions for a surface-vertex set")
    sub.add_argument("--vertices", required=True, help="comma-separated surface vertex ids")

    sub = register("report", cmd_report, "full report with figures and delimited output")
    sub.add_argument("--out-dir", required=True, help="directory for report files")
    sub.add_argument("--radius", type=int, default=4, help="tree ball radius for figures")
    sub.add_argument("--budget", type=int, default=100_000)

    ap.set_defaults(handlers=handlers)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handler = args.handlers[args.subcommand]
    try:
        return handler(args)
    except (ParseError, NotReduced, QbsError, OSError, ValueError) as exc:
        if args.format == "structured":
            print(
                json.dumps(
                    {
                        "tool_version": __version__,
                        "command": args.subcommand,
                        "error": {"type": type(exc).__name__, "message": str(exc)},
                    },
                    sort_keys=True,
                    indent=2,
                )
            )
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
