"""
receptacles 测试
"""
import networkx as nx
import pytest

from forbidden_oracle import ALL_SHAPES, FORBIDDEN_ASP, FORBIDDEN_ASPP, Verdict, find_forbidden
from generators import K5MINUS, Y, d_mod, enumerate_small_graphs, k5_minus, petersen, replace_edges, spoked
from graph_core import is_isomorphic_small
from receptacles import (blocks, extreme_receptacles, glue, is_asp_via_receptacles, lift_path,
                         receptacles, triconnected_sets)


def theta():
    return nx.Graph([('u', 'a'), ('a', 'v'), ('u', 'b'), ('b', 'v'), ('u', 'c'), ('c', 'v')])


def k5minus_triangle():
    return replace_edges(nx.cycle_graph(3), K5MINUS, skip=(0, 1))


def _edge_set(g):
    return {frozenset(e) for e in g.edges()}


# ==================== 块 ====================

def test_bowtie_has_two_blocks():
    g = nx.Graph([(0, 1), (1, 'c'), ('c', 0), ('c', 3), (3, 4), (4, 'c')])
    out = blocks(g)
    assert len(out) == 2
    assert all(cuts == {'c'} for _, cuts in out)


def test_biconnected_graph_is_one_block():
    assert len(blocks(nx.complete_graph(5))) == 1


def test_path_blocks_are_edges():
    out = blocks(nx.path_graph(5))
    assert len(out) == 4
    assert all(b.number_of_edges() == 1 for b, _ in out)


def test_isolated_vertex_is_a_block():
    g = nx.complete_graph(3)
    g.add_node(9)
    assert any(set(b) == {9} for b, _ in blocks(g))


# ==================== 3-连通分支 ====================

def test_triconnected_sets_of_k5minus_triangle():
    sets = triconnected_sets(k5minus_triangle())
    assert len(sets) == 2
    assert all(len(x) == 5 for x in sets)


def test_triconnected_sets_of_cycle_is_empty():
    assert triconnected_sets(nx.cycle_graph(6)) == []


# ==================== 容器 ====================

def test_k4_is_a_single_receptacle_without_windows():
    decomp = receptacles(nx.complete_graph(4))
    (r,) = decomp.all_receptacles()
    assert r.windows == frozenset()
    assert not r.extreme
    assert _edge_set(r.graph) == _edge_set(nx.complete_graph(4))


def test_theta_is_a_single_extreme_receptacle():
    decomp = receptacles(theta())
    (r,) = decomp.all_receptacles()
    assert r.bond
    assert r.windows == {('u', 'v')}
    assert r.extreme
    assert len(r.thread_origin) == 3


def test_k5minus_triangle_receptacles():
    decomp = receptacles(k5minus_triangle())
    proper = [r for r in decomp.all_receptacles() if not r.degenerate]
    leftover = [r for r in decomp.all_receptacles() if r.degenerate]
    assert len(proper) == 2
    for r in proper:
        assert r.extreme
        (window,) = r.windows
        assert window in {(0, 2), (1, 2)}
        assert is_isomorphic_small(r.graph.subgraph(r.host_vertices()), k5_minus())
    assert len(leftover) == 1
    assert _edge_set(leftover[0].graph) == {frozenset((0, 1))}


def test_spoked_wheel_splits_into_star_and_rim():
    decomp = receptacles(spoked(6))
    proper = [r for r in decomp.all_receptacles() if not r.degenerate]
    assert len(proper) == 1
    assert proper[0].skeleton_set == frozenset(range(7))
    assert len(proper[0].windows) == 6


def test_cycle_of_gadgets_has_extreme_receptacles():
    decomp = receptacles(replace_edges(nx.cycle_graph(4), K5MINUS))
    assert len(extreme_receptacles(decomp)) == 4


def test_windows_are_recorded_in_adjacency():
    decomp = receptacles(k5minus_triangle())
    assert set(decomp.adjacency['windows']) == {(0, 2), (1, 2)}


def test_cut_vertices_are_recorded_in_adjacency():
    g = nx.complete_graph(4)
    g.add_edge(3, 4)
    decomp = receptacles(g)
    assert decomp.adjacency['cuts'] == {3: [0, 1]}


# ==================== 粘合 ====================

@pytest.mark.parametrize("g", [theta(), k5minus_triangle(), d_mod(4), spoked(6),
                               replace_edges(nx.cycle_graph(3), Y)])
def test_glue_restores_every_edge(g):
    decomp = receptacles(g)
    assert _edge_set(glue(decomp)) == _edge_set(g)
    assert set(glue(decomp)) == set(g)


def test_lift_path_through_thread():
    g = k5minus_triangle()
    decomp = receptacles(g)
    r = next(r for r in decomp.all_receptacles() if r.windows == {(0, 2)})
    (t,) = r.thread_origin
    lifted = lift_path(decomp, r, (0, t, 2))
    assert lifted[0] == 0 and lifted[-1] == 2
    assert not set(lifted[1:-1]) & r.skeleton_set
    for a, b in zip(lifted, lifted[1:]):
        assert g.has_edge(a, b)


# ==================== 容器规则 ====================

def test_y_gadget_cycle_is_asp_via_receptacles():
    result = is_asp_via_receptacles(replace_edges(nx.cycle_graph(3), Y))
    assert result.ok


def test_k6_with_pendant_is_asp_via_receptacles():
    g = nx.complete_graph(6)
    g.add_edge(5, 6)
    result = is_asp_via_receptacles(g)
    assert result.ok
    assert Verdict.ASP in result.verdicts


def test_subdivided_petersen_fails_receptacle_rule():
    g = petersen()
    g.remove_edge(0, 1)
    nx.add_path(g, [0, 's', 1])
    assert not is_asp_via_receptacles(g).ok


def _rule_agrees_with_oracle(n):
    for g in enumerate_small_graphs(n):
        if not nx.is_biconnected(g):
            continue
        for forbidden in (FORBIDDEN_ASP, FORBIDDEN_ASPP, ALL_SHAPES):
            whole = find_forbidden(g, forbidden) is None
            parts = is_asp_via_receptacles(g, forbidden, oracle=True).ok
            assert whole == parts, (sorted(g.edges()), sorted(forbidden, key=lambda s: s.value))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_receptacle_rule_agrees_with_oracle(n):
    _rule_agrees_with_oracle(n)


@pytest.mark.slow
def test_receptacle_rule_agrees_with_oracle_n7():
    _rule_agrees_with_oracle(7)
