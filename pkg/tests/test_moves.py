"""Deformation moves: examples, errors, round trips, homology invariance."""

import random

import pytest

from qbs.canonical import canonical_graph, isomorphic
from qbs.graphs import End, SurfaceData, build_graph, cyclic_end, surface_end
from qbs.moves import (
    CollapseSite,
    LoopEdge,
    MoveError,
    NotCyclic,
    NotDivisible,
    NotDivisor,
    SurfaceEndFold,
    UnsupportedCollapse,
    certify_unfolded,
    collapse,
    expand,
    find_collapses,
    fold,
    is_reduced,
    one_edge_splitting,
    reduce,
)
from qbs.presentation import homology

from helpers import fold_candidates, random_gbs_graph, random_move, supported_collapses

PANTS = SurfaceData(True, 0, 3)


def bs(m, n):
    return build_graph([None], [(0, 0, cyclic_end(m), cyclic_end(n))])


def q1_like():
    return build_graph(
        [PANTS, None, None, None],
        [
            (0, 1, surface_end(0, 2), cyclic_end(3)),
            (0, 2, surface_end(1, 2), cyclic_end(3)),
            (0, 3, surface_end(2, 2), cyclic_end(3)),
            (1, 1, cyclic_end(2), cyclic_end(3)),
            (2, 2, cyclic_end(2), cyclic_end(3)),
            (3, 3, cyclic_end(2), cyclic_end(3)),
        ],
    )


def test_find_collapses_examples():
    assert find_collapses(bs(1, 5)) == []  # loops never qualify
    segment = build_graph([None, None], [(0, 1, cyclic_end(5), cyclic_end(1))])
    assert find_collapses(segment) == [CollapseSite(0, End.TARGET)]
    assert find_collapses(bs(2, 3)) == []


def test_collapse_reattaches_with_product_exponent():
    g = build_graph(
        [None, None, None],
        [
            (0, 1, cyclic_end(5), cyclic_end(1)),
            (1, 2, cyclic_end(3), cyclic_end(7)),
        ],
    )
    out = collapse(g, CollapseSite(0, End.TARGET))
    assert len(out.vertices) == 2 and len(out.edges) == 1
    e = out.edges[0]
    assert (e.source_end.n, e.target_end.n) == (15, 7)


def test_collapse_degree_one_vertex():
    g = build_graph([None, None], [(0, 1, cyclic_end(2), cyclic_end(-1))])
    out = collapse(g, CollapseSite(0, End.TARGET))
    assert len(out.vertices) == 1 and not out.edges


def test_collapse_negative_unit_flips_signs():
    g = build_graph(
        [None, None],
        [
            (0, 1, cyclic_end(5), cyclic_end(-1)),
            (1, 1, cyclic_end(3), cyclic_end(4)),
        ],
    )
    out = collapse(g, CollapseSite(0, End.TARGET))
    loop = out.edges[0]
    assert (loop.source_end.n, loop.target_end.n) == (-15, -20)
    assert homology(out) == homology(g)


def test_collapse_into_surface_is_unsupported():
    g = build_graph(
        [PANTS, None, None, None],
        [
            (0, 1, surface_end(0, 2), cyclic_end(1)),
            (0, 2, surface_end(1, 2), cyclic_end(3)),
            (0, 3, surface_end(2, 2), cyclic_end(3)),
            (1, 2, cyclic_end(4), cyclic_end(5)),
        ],
    )
    sites = find_collapses(g)
    assert sites == [CollapseSite(0, End.TARGET)]  # still reported
    with pytest.raises(UnsupportedCollapse):
        collapse(g, sites[0])


def test_collapse_rejects_non_sites():
    with pytest.raises(MoveError):
        collapse(bs(1, 1), CollapseSite(0, End.SOURCE))


def test_expand_trivial_and_moving():
    g = build_graph([None], [])
    out = expand(g, 0, 2)
    assert len(out.vertices) == 2
    e = out.edges[0]
    assert (e.source_end.n, e.target_end.n) == (2, 1)

    loop = bs(4, 6)
    out = expand(loop, 0, 2, [(0, End.SOURCE)])
    moved = out.edges[0]
    assert moved.source == 1 and moved.source_end.n == 2  # 4 / 2
    assert moved.target == 0 and moved.target_end.n == 6


def test_expand_errors():
    with pytest.raises(NotDivisible):
        expand(bs(4, 6), 0, 3, [(0, End.SOURCE)])
    surf = build_graph(
        [PANTS, None, None, None],
        [
            (0, 1, surface_end(0, 2), cyclic_end(3)),
            (0, 2, surface_end(1, 2), cyclic_end(3)),
            (0, 3, surface_end(2, 2), cyclic_end(3)),
        ],
    )
    with pytest.raises(NotCyclic):
        expand(surf, 0, 2)


def test_fold_example():
    g = build_graph([None, None], [(0, 1, cyclic_end(6), cyclic_end(5))])
    out = fold(g, 0, End.SOURCE, 3)
    assert len(out.vertices) == 3 and len(out.edges) == 2
    first, second = out.edges
    assert (first.source, first.target) == (0, 2)
    assert (first.source_end.n, first.target_end.n) == (3, 1)
    assert (second.source, second.target) == (2, 1)
    assert (second.source_end.n, second.target_end.n) == (2, 5)


def test_fold_negative_exponent_preserves_homology():
    g = build_graph([None, None], [(0, 1, cyclic_end(-6), cyclic_end(4))])
    out = fold(g, 0, End.SOURCE, 3)
    assert homology(out) == homology(g)
    e1 = out.edges[0]
    assert (e1.source_end.n, e1.target_end.n) == (-3, 1)
    assert out.edges[1].source_end.n == 2


def test_fold_errors():
    g = build_graph([None, None], [(0, 1, cyclic_end(6), cyclic_end(5))])
    with pytest.raises(NotDivisor):
        fold(g, 0, End.SOURCE, 4)
    with pytest.raises(NotDivisor):
        fold(g, 0, End.TARGET, 3)
    with pytest.raises(NotDivisor):
        fold(g, 0, End.SOURCE, 1)
    with pytest.raises(LoopEdge):
        fold(bs(4, 6), 0, End.SOURCE, 2)
    surf = q1_like()
    with pytest.raises(SurfaceEndFold):
        fold(surf, 0, End.SOURCE, 2)


def test_fold_at_full_divisor_allowed():
    g = build_graph([None, None], [(0, 1, cyclic_end(6), cyclic_end(5))])
    out = fold(g, 0, End.SOURCE, 6)
    assert (out.edges[0].source_end.n, out.edges[0].target_end.n) == (6, 1)
    assert out.edges[1].source_end.n == 1


def test_round_trip_fold_then_collapse():
    g = build_graph([None, None], [(0, 1, cyclic_end(6), cyclic_end(5))])
    folded = fold(g, 0, End.SOURCE, 3)
    # the new label-1 end is the target of the second-to-last edge
    back = collapse(folded, CollapseSite(len(folded.edges) - 2, End.TARGET))
    assert isomorphic(back, g)


def test_round_trip_expand_then_collapse():
    g = bs(4, 6)
    grown = expand(g, 0, -2, [(0, End.SOURCE), (0, End.TARGET)])
    back = collapse(grown, CollapseSite(len(grown.edges) - 1, End.TARGET))
    assert isomorphic(back, g)


def test_is_reduced_examples():
    assert is_reduced(bs(2, 3))[0]
    segment = build_graph([None, None], [(0, 1, cyclic_end(5), cyclic_end(1))])
    ok, sites = is_reduced(segment)
    assert not ok and sites == [CollapseSite(0, End.TARGET)]
    assert is_reduced(q1_like())[0]


def test_reduce_chain_to_point():
    g = build_graph(
        [None, None, None],
        [
            (0, 1, cyclic_end(1), cyclic_end(2)),
            (1, 2, cyclic_end(1), cyclic_end(3)),
        ],
    )
    result = reduce(g)
    assert result.fully_reduced
    assert len(result.graph.vertices) == 1 and not result.graph.edges


def test_reduce_fixed_point_and_blocked():
    g = bs(2, 3)
    result = reduce(g)
    assert result.fully_reduced and result.graph == g

    hanging = build_graph(
        [PANTS, None, None, None],
        [
            (0, 1, surface_end(0, 2), cyclic_end(1)),
            (0, 2, surface_end(1, 2), cyclic_end(3)),
            (0, 3, surface_end(2, 2), cyclic_end(3)),
        ],
    )
    result = reduce(hanging)
    assert not result.fully_reduced
    assert result.blocked == (CollapseSite(0, End.TARGET),)


def test_reduce_confluence_on_random_graphs():
    rng = random.Random(21)
    for _ in range(60):
        g = random_gbs_graph(rng)
        canonical = canonical_graph(reduce(g).graph)
        # a different maximal collapse sequence: random site choices
        current = g
        while True:
            sites = supported_collapses(current)
            if not sites:
                break
            current = collapse(current, rng.choice(sites))
        assert canonical_graph(current) == canonical


def test_reduce_leaves_only_unsupported_sites():
    rng = random.Random(22)
    for _ in range(60):
        g = random_gbs_graph(rng)
        result = reduce(g)
        leftover = find_collapses(result.graph)
        if result.fully_reduced:
            assert leftover == []
        else:
            assert leftover and not supported_collapses(result.graph)


def test_one_edge_splitting():
    tree = build_graph(
        [None, None, None],
        [
            (0, 1, cyclic_end(2), cyclic_end(3)),
            (1, 2, cyclic_end(2), cyclic_end(3)),
        ],
    )
    s = one_edge_splitting(tree, 0)
    assert s.source_side == frozenset({0}) and s.target_side == frozenset({1, 2})
    assert not s.is_hnn

    loop = one_edge_splitting(bs(2, 3), 0)
    assert loop.is_hnn and loop.source_side == frozenset({0})

    q1 = q1_like()
    s = one_edge_splitting(q1, 0)
    assert s.target_side == frozenset({1})
    assert s.source_side == frozenset({0, 2, 3})


def test_certify_unfolded():
    assert certify_unfolded(bs(2, 3)).certified
    assert certify_unfolded(q1_like()).certified
    report = certify_unfolded(bs(1, 5))
    assert not report.certified
    assert report.label_one_ends == ((0, End.SOURCE),)


def test_homology_invariant_under_random_moves():
    rng = random.Random(23)
    for _ in range(40):
        g = random_gbs_graph(rng)
        h = homology(g)
        for _ in range(rng.randint(1, 5)):
            step = random_move(rng, g)
            if step is None:
                break
            _, g = step
            assert homology(g) == h


def test_fold_round_trip_randomized():
    rng = random.Random(24)
    done = 0
    while done < 50:
        g = random_gbs_graph(rng)
        cands = fold_candidates(g)
        if not cands:
            continue
        eid, which, k = rng.choice(cands)
        folded = fold(g, eid, which, k)
        back = collapse(folded, CollapseSite(len(folded.edges) - 2, End.TARGET))
        assert isomorphic(back, g)
        done += 1
