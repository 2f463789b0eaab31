"""Certificates for the cyclic JSJ recognition conditions.

The certifier checks a fixed list of sufficient conditions under which a
well-formed graph of this class is a cyclic (Rips-Sela) JSJ decomposition
of its fundamental group: the graph is reduced, every edge-end label
exceeds 1, every GBS component is reduced with a branching Bass-Serre
tree, and the group is certified one-ended.  The conditions are
sufficient, not necessary, so a Rejected verdict only means the
hypotheses were not met, never that the graph is not a JSJ decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import (
    GbsComponent,
    NotReduced,
    OneEndedVerdict,
    TreeShape,
    classify_tree,
    gbs_components,
    induced_subgraph,
    is_one_ended,
)
from .canonical import fingerprint
from .graphs import End, GraphOfGroups, QbsError, label, validate
from .moves import is_reduced


class VNotSurface(QbsError):
    pass


@dataclass(frozen=True)
class Condition:
    name: str
    passed: bool
    witnesses: tuple[str, ...]

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witnesses": list(self.witnesses)}


@dataclass(frozen=True)
class ComponentReport:
    index: int
    vertex_ids: tuple[int, ...]
    reduced: bool
    shape: str | None
    passed: bool
    witnesses: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "vertex_ids": list(self.vertex_ids),
            "reduced": self.reduced,
            "shape": self.shape,
            "passed": self.passed,
            "witnesses": list(self.witnesses),
        }


@dataclass(frozen=True)
class Certificate:
    verdict: str  # "certified" | "rejected"
    conditions: tuple[Condition, ...]
    components: tuple[ComponentReport, ...]
    fingerprint: str

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def condition(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "conditions": [c.as_dict() for c in self.conditions],
            "components": [c.as_dict() for c in self.components],
            "fingerprint": self.fingerprint,
        }

    def summary(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        for c in self.conditions:
            mark = "pass" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}")
            for w in c.witnesses:
                lines.append(f"         - {w}")
        lines.append(
            "note: a certified verdict asserts sufficient conditions for a cyclic"
            " JSJ decomposition; rejection only means those conditions failed."
        )
        return "\n".join(lines)


def _component_report(index: int, comp: GbsComponent) -> ComponentReport:
    reduced, sites = is_reduced(comp.graph)
    if not reduced:
        witnesses = tuple(
            f"component {index} not reduced: edge {comp.edge_ids[s.edge]} ({s.collapsed_end} end)"
            for s in sites
        )
        return ComponentReport(index, comp.vertex_ids, False, None, False, witnesses)
    shape = classify_tree(comp)
    if shape is TreeShape.BRANCHING:
        return ComponentReport(index, comp.vertex_ids, True, str(shape), True, ())
    return ComponentReport(
        index,
        comp.vertex_ids,
        True,
        str(shape),
        False,
        (f"component {index} has a {shape} Bass-Serre tree",),
    )


def certify_jsj(graph: GraphOfGroups) -> Certificate:
    """Evaluate the JSJ recognition conditions and assemble a certificate.

    Conditions, in order: (0) the graph is well-formed, (1) reduced,
    (2) every edge-end label is greater than 1, (3) every GBS component is
    reduced with a branching tree, (4) the group is certified one-ended.
    """
    fp = fingerprint(graph)
    violations = validate(graph)
    cond0 = Condition("valid-qbs", not violations, tuple(str(v) for v in violations))
    if violations:
        return Certificate("rejected", (cond0,), (), fp)

    reduced, sites = is_reduced(graph)
    cond1 = Condition("reduced", reduced, tuple(str(s) for s in sites))

    ones = tuple(
        f"edge {e.id} ({which} end) has label 1"
        for e, which in graph.ends()
        if label(graph, e.id, which) == 1
    )
    cond2 = Condition("edge-labels", not ones, ones)

    reports = tuple(
        _component_report(i, comp) for i, comp in enumerate(gbs_components(graph))
    )
    cond3 = Condition(
        "gbs-components",
        all(r.passed for r in reports),
        tuple(w for r in reports for w in r.witnesses),
    )

    one = is_one_ended(graph)
    cond4 = Condition(
        "one-ended",
        one.verdict is OneEndedVerdict.CERTIFIED,
        () if one.verdict is OneEndedVerdict.CERTIFIED else (f"{one.verdict}: {one.reason}",),
    )

    conditions = (cond0, cond1, cond2, cond3, cond4)
    verdict = "certified" if all(c.passed for c in conditions) else "rejected"
    return Certificate(verdict, conditions, reports, fp)


@dataclass(frozen=True)
class UniversalityReport:
    verdict: str  # "satisfied" | "failed" | "inconclusive"
    conditions: tuple[Condition, ...]
    component_verdicts: tuple[tuple[int, str], ...]

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "conditions": [c.as_dict() for c in self.conditions],
            "component_verdicts": [
                {"index": i, "verdict": v} for i, v in self.component_verdicts
            ],
        }


def universality_preconditions(graph: GraphOfGroups, v_set) -> UniversalityReport:
    """Check the gluing-theorem preconditions for a set V of surface vertices.

    Condition 1: edges with both endpoints in V have both labels above 1.
    Condition 2: no edge joins V to a surface vertex outside V.
    Condition 3: every component of the complement of V is itself
    certified (its defining graph passes certify_jsj and the one-endedness
    check); anything short of that is reported inconclusive rather than
    failed, since these conditions are sufficient only.
    """
    v_ids = sorted(set(v_set))
    for vid in v_ids:
        if graph.vertex(vid).is_cyclic:
            raise VNotSurface(f"vertex {vid} is cyclic; V must consist of surface vertices")
    vs = set(v_ids)

    bad_labels = tuple(
        f"edge {e.id} has a label below 2 between V vertices"
        for e in graph.edges
        if e.source in vs
        and e.target in vs
        and (label(graph, e.id, End.SOURCE) == 1 or label(graph, e.id, End.TARGET) == 1)
    )
    cond1 = Condition("v-v-labels", not bad_labels, bad_labels)

    qh_neighbors = tuple(
        f"edge {e.id} joins V to surface vertex {e.target if e.source in vs else e.source}"
        for e in graph.edges
        if (e.source in vs) != (e.target in vs)
        and not graph.vertex(e.target if e.source in vs else e.source).is_cyclic
    )
    cond2 = Condition("no-qh-neighbors", not qh_neighbors, qh_neighbors)

    complement = [v.id for v in graph.vertices if v.id not in vs]
    comp_verdicts: list[tuple[int, str]] = []
    remaining = set(complement)
    index = 0
    for start in complement:
        if start not in remaining:
            continue
        seen = {start}
        queue = [start]
        while queue:
            cur = queue.pop()
            for other in graph.neighbors(cur):
                if other in remaining and other not in seen:
                    seen.add(other)
                    queue.append(other)
        remaining -= seen
        sub, _, _ = induced_subgraph(graph, seen)
        cert = certify_jsj(sub)
        one = is_one_ended(sub) if not validate(sub) else None
        ok = cert.certified and one is not None and one.verdict is OneEndedVerdict.CERTIFIED
        comp_verdicts.append((index, "certified" if ok else "inconclusive"))
        index += 1

    all_certified = all(v == "certified" for _, v in comp_verdicts)
    cond3 = Condition(
        "components-universal",
        all_certified,
        tuple(f"component {i}: {v}" for i, v in comp_verdicts if v != "certified"),
    )

    if not cond1.passed or not cond2.passed:
        verdict = "failed"
    elif not all_certified:
        verdict = "inconclusive"
    else:
        verdict = "satisfied"
    return UniversalityReport(verdict, (cond1, cond2, cond3), tuple(comp_verdicts))
