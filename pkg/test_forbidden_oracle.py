"""
forbidden_oracle 测试
"""
from dataclasses import replace

import networkx as nx
import pytest

from errors import InvalidWitness, NotASPInput, PreconditionViolated, SizeLimitExceeded
from forbidden_oracle import (ALL_SHAPES, FORBIDDEN_ASP, FORBIDDEN_ASPP, SHAPE_TABLE, ForbiddenWitness,
                              SkeletonShape, Verdict, achievable_shapes, enumerate_k4_subdivisions,
                              find_forbidden, is_red_link, is_sp, oracle_verdict, skeleton_shape_of,
                              validate_witness)
from generators import enumerate_small_graphs, k3r, petersen, spoked
from graph_core import normalize_threads


def _witness_with_unsubdivided(slots):
    """分支顶点 0..3，未列出的槽位经过一个虚拟内部顶点"""
    branch = (0, 1, 2, 3)
    pairs = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    paths = []
    for k, (i, j) in enumerate(pairs):
        paths.append((i, j) if k in slots else (i, f"m{k}", j))
    return ForbiddenWitness(branch, tuple(paths), SkeletonShape.EMPTY)


# ==================== 形状表 ====================

def test_shape_table_covers_all_slot_subsets():
    assert len(SHAPE_TABLE) == 64
    assert set(SHAPE_TABLE.values()) == ALL_SHAPES


@pytest.mark.parametrize("slots, shape", [
    ({0, 1, 2, 3, 4, 5}, SkeletonShape.K4),
    ({0, 3}, SkeletonShape.P3),
    ({0, 5}, SkeletonShape.TWO_MATCHING),
    ({0, 3, 5}, SkeletonShape.P4),
    ({0, 1, 2}, SkeletonShape.CLAW),
    ({0, 1, 3}, SkeletonShape.TRIANGLE),
    ({0, 2, 3, 5}, SkeletonShape.C4),
    ({0, 1, 3, 4}, SkeletonShape.PAW),
    ({0, 1, 2, 3, 4}, SkeletonShape.DIAMOND),
    (set(), SkeletonShape.EMPTY),
])
def test_skeleton_shape_of(slots, shape):
    assert skeleton_shape_of(_witness_with_unsubdivided(slots)) is shape


def test_shape_counts_per_class():
    counts = {}
    for shape in SHAPE_TABLE.values():
        counts[shape] = counts.get(shape, 0) + 1
    assert counts[SkeletonShape.P3] == 12
    assert counts[SkeletonShape.P4] == 12
    assert counts[SkeletonShape.C4] == 3
    assert counts[SkeletonShape.TWO_MATCHING] == 3


# ==================== 判定层级 ====================

def test_verdict_hierarchy():
    assert Verdict.SP.satisfies(Verdict.ASP_P)
    assert Verdict.ASP_P.satisfies("ASP")
    assert not Verdict.ASP.satisfies(Verdict.ASP_P)
    assert not Verdict.NON_ASP.satisfies(Verdict.ASP)
    assert Verdict.NON_ASP.satisfies("NonASP")
    assert Verdict.worst([Verdict.SP, Verdict.ASP, Verdict.ASP_P]) is Verdict.ASP
    assert Verdict.worst([]) is Verdict.SP


# ==================== 枚举 ====================

def test_k4_has_single_unsubdivided_witness():
    witnesses = list(enumerate_k4_subdivisions(nx.complete_graph(4)))
    assert len(witnesses) == 1
    assert witnesses[0].shape is SkeletonShape.K4


def test_cycle_has_no_k4_subdivision():
    assert list(enumerate_k4_subdivisions(nx.cycle_graph(4))) == []


def test_k5_witness_shapes():
    g = nx.complete_graph(5)
    witnesses = list(enumerate_k4_subdivisions(g))
    assert {w.shape for w in witnesses} == {SkeletonShape.K4, SkeletonShape.DIAMOND}
    for w in witnesses:
        assert validate_witness(g, w)


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        list(enumerate_k4_subdivisions(nx.path_graph(41)))


def test_tampered_witness_rejected():
    g = nx.complete_graph(5)
    w = next(enumerate_k4_subdivisions(g))
    with pytest.raises(InvalidWitness):
        validate_witness(g, replace(w, shape=SkeletonShape.P3))
    broken = (w.branch_paths[0][::-1],) + w.branch_paths[1:]
    assert validate_witness(g, replace(w, branch_paths=broken))
    with pytest.raises(InvalidWitness):
        validate_witness(nx.cycle_graph(5), w)


# ==================== find_forbidden ====================

def test_k6_has_no_asp_obstruction():
    assert find_forbidden(nx.complete_graph(6), FORBIDDEN_ASP) is None


def test_k6_has_c4_witness():
    g = nx.complete_graph(6)
    w = find_forbidden(g, FORBIDDEN_ASPP)
    assert w is not None
    assert w.shape is SkeletonShape.C4
    assert validate_witness(g, w)


@pytest.mark.parametrize("prune", [False, True])
def test_petersen_has_asp_obstruction(prune):
    g = petersen()
    w = find_forbidden(g, FORBIDDEN_ASP, prune=prune)
    assert w is not None
    assert w.shape in FORBIDDEN_ASP
    assert validate_witness(g, w)


def test_k33_itself_only_realizes_c4():
    shapes = achievable_shapes(nx.complete_bipartite_graph(3, 3))
    assert shapes == {SkeletonShape.C4}


def test_subdivided_k33_realizes_p3():
    g = nx.complete_bipartite_graph(3, 3)
    for a in (0, 1):
        g.remove_edge(a, 4)
        nx.add_path(g, [a, f"s{a}", 4])
    w = find_forbidden(g, {SkeletonShape.P3})
    assert w is not None
    assert validate_witness(g, w)
    assert oracle_verdict(g).verdict is Verdict.NON_ASP


def test_k3r_achievable_shapes_avoid_asp_obstructions():
    shapes = achievable_shapes(k3r(3))
    assert not shapes & FORBIDDEN_ASP


def test_pruned_search_agrees_with_full_search():
    for n in range(4, 7):
        for g in enumerate_small_graphs(n):
            for forbidden in (FORBIDDEN_ASP, FORBIDDEN_ASPP, ALL_SHAPES):
                full = find_forbidden(g, forbidden, prune=False)
                pruned = find_forbidden(g, forbidden, prune=True)
                assert (full is None) == (pruned is None)
                if pruned is not None:
                    assert validate_witness(g, pruned)


# ==================== oracle_verdict ====================

@pytest.mark.parametrize("g, verdict", [
    (nx.cycle_graph(5), Verdict.SP),
    (nx.complete_graph(4), Verdict.ASP_P),
    (nx.complete_graph(5), Verdict.ASP_P),
    (nx.complete_graph(6), Verdict.ASP),
    (petersen(), Verdict.NON_ASP),
    (nx.complete_bipartite_graph(3, 3), Verdict.ASP),
])
def test_oracle_verdict(g, verdict):
    result = oracle_verdict(g)
    assert result.verdict is verdict
    if verdict in (Verdict.ASP, Verdict.NON_ASP):
        assert validate_witness(g, result.witness)


def test_pruned_oracle_matches_full_oracle():
    for g in enumerate_small_graphs(6):
        assert oracle_verdict(g, prune=True).verdict is oracle_verdict(g, prune=False).verdict


def test_normalization_keeps_verdict():
    g = nx.complete_graph(5)
    g.remove_edge(0, 1)
    nx.add_path(g, [0, 'a', 'b', 'c', 'd', 1])
    nx.add_path(g, [2, 'e', 'f', 'g', 3])
    assert oracle_verdict(g).verdict is oracle_verdict(normalize_threads(g)).verdict


# ==================== SP ====================

def test_is_sp_simple_cases():
    assert is_sp(nx.balanced_tree(2, 3))
    assert is_sp(nx.cycle_graph(7))
    assert not is_sp(nx.complete_graph(4))
    assert not is_sp(nx.wheel_graph(5))


def test_is_sp_matches_k4_enumeration():
    for n in range(1, 7):
        for g in enumerate_small_graphs(n):
            assert is_sp(g) == (next(enumerate_k4_subdivisions(g), None) is None)


def test_subdividing_sp_graph_stays_sp():
    g = nx.complete_bipartite_graph(2, 4)
    assert is_sp(g)
    u, v = next(iter(g.edges()))
    g.remove_edge(u, v)
    nx.add_path(g, [u, 'x', v])
    assert is_sp(g)


# ==================== 红链 ====================

def test_spoke_of_s5_is_red():
    assert is_red_link(spoked(5), (0, 1))


def test_k4_edge_is_not_red():
    assert not is_red_link(nx.complete_graph(4), (0, 1))


def test_theta_window_is_not_red():
    g = nx.Graph([('u', 'a'), ('a', 'v'), ('u', 'b'), ('b', 'v'), ('u', 'c'), ('c', 'v')])
    assert not is_red_link(g, ('u', 'v'))


def test_red_link_requires_skeleton_edge_or_window():
    with pytest.raises(PreconditionViolated):
        is_red_link(nx.cycle_graph(5), (0, 2))


def test_red_link_rejects_non_asp_input():
    with pytest.raises(NotASPInput):
        is_red_link(petersen(), (0, 1))
