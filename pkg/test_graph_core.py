"""
graph_core 测试
"""
import random
from itertools import combinations

import networkx as nx
import pytest

from errors import PreconditionViolated, SizeLimitExceeded
from generators import petersen, wheel, wheel_mod
from graph_core import (Disconnector, Fan, exists_circuit_through, find_fan,
                        internally_disjoint_path_count, is_isomorphic_small,
                        is_virtually_3connected, lift_path, normalize_threads,
                        normalize_threads_with_map, skeleton_view)
from utils import ordered, vertex_key


def subdivided_k4(times=1):
    g = nx.complete_graph(4)
    g.remove_edge(0, 1)
    nx.add_path(g, [0] + [10 + i for i in range(times)] + [1])
    return g


def theta():
    g = nx.Graph()
    for mid in ('a', 'b', 'c'):
        g.add_edge('u', mid)
        g.add_edge(mid, 'v')
    return g


def test_vertex_key_orders_ints_before_other_labels():
    assert ordered(['b', 3, ('t', 1), 1, True]) == [1, 3, ('t', 1), True, 'b']
    assert vertex_key(2) < vertex_key(10)


# ==================== 骨架视图 ====================

def test_skeleton_view_k4():
    view = skeleton_view(nx.complete_graph(4))
    assert view.skeleton_vertices == frozenset(range(4))
    assert len(view.skeleton_edges) == 6
    assert view.threads == ()
    assert view.windows == frozenset()


def test_skeleton_view_subdivided_edge():
    view = skeleton_view(subdivided_k4())
    assert view.skeleton_vertices == frozenset(range(4))
    assert len(view.skeleton_edges) == 5
    assert len(view.threads) == 1
    assert view.threads[0].interior == (10,)
    assert view.windows == {(0, 1)}
    assert view.n2[0] == {1}
    assert view.star_degree[0] == 2


def test_skeleton_view_modified_wheel():
    view = skeleton_view(wheel_mod(6))
    assert view.star_degree[0] == 6
    for v in range(1, 7):
        assert len(view.n1[v]) == 3
        # 两条相邻的轮辋边上都挂着线程
        assert view.n2[v] == {1 + (v % 6), 1 + ((v - 2) % 6)}
    assert len(view.windows) == 6


def test_thread_interior_runs_from_smaller_endpoint():
    g = nx.complete_graph(4)
    g.remove_edge(2, 3)
    nx.add_path(g, [3, 'x', 'y', 2])
    view = skeleton_view(g)
    assert view.threads[0].endpoints == (2, 3)
    assert view.threads[0].interior == ('y', 'x')


def test_bare_circuit_is_reported_as_degenerate():
    g = nx.cycle_graph(5)
    g.add_edges_from(nx.complete_graph(range(10, 14)).edges())
    view = skeleton_view(g)
    assert len(view.degenerate) == 1
    assert set(view.degenerate[0].cycle) == set(range(5))
    assert view.skeleton_vertices == frozenset(range(10, 14))


def test_parallel_windows_are_listed():
    g = nx.complete_graph(4)
    nx.add_path(g, [0, 'p', 1])
    nx.add_path(g, [0, 'q', 1])
    assert skeleton_view(g).parallel_windows() == [(0, 1)]


def test_self_loop_rejected():
    g = nx.complete_graph(4)
    g.add_edge(0, 0)
    with pytest.raises(PreconditionViolated):
        skeleton_view(g)


def test_normalization_preserves_skeleton_view():
    g = subdivided_k4(5)
    nx.add_path(g, [2, 20, 21, 22, 3])
    a, b = skeleton_view(g), skeleton_view(normalize_threads(g))
    assert a.skeleton_vertices == b.skeleton_vertices
    assert a.skeleton_edges == b.skeleton_edges
    assert a.windows == b.windows
    assert a.star_degree == b.star_degree
    assert a.n1 == b.n1 and a.n2 == b.n2


# ==================== Menger ====================

@pytest.mark.parametrize("g, x, y, expected", [
    (nx.complete_graph(4), 0, 1, 3),
    (nx.cycle_graph(6), 0, 3, 2),
    (petersen(), 0, 7, 3),
    (petersen(), 0, 1, 3),
])
def test_internally_disjoint_path_count(g, x, y, expected):
    assert internally_disjoint_path_count(g, x, y) == expected


def _min_separator(g, x, y):
    others = [v for v in g if v not in (x, y)]
    for size in range(len(others) + 1):
        for cut in combinations(others, size):
            h = g.subgraph([v for v in g if v not in cut])
            if not nx.has_path(h, x, y):
                return size
    return None


def test_path_count_matches_exhaustive_separator():
    g = nx.Graph([(0, 2), (0, 3), (0, 4), (2, 5), (3, 5), (4, 6), (6, 1), (5, 1), (3, 6), (2, 7), (7, 1)])
    assert internally_disjoint_path_count(g, 0, 1) == _min_separator(g, 0, 1)


def test_path_count_requires_distinct_vertices():
    with pytest.raises(PreconditionViolated):
        internally_disjoint_path_count(nx.complete_graph(3), 0, 0)


# ==================== 虚拟 3-连通 ====================

def test_theta_is_virtually_3connected():
    assert is_virtually_3connected(theta())


def test_circuit_is_vacuously_virtually_3connected():
    assert is_virtually_3connected(nx.cycle_graph(8))


def test_pendant_vertex_breaks_virtual_3connectivity():
    g = nx.complete_graph(4)
    g.add_edge(0, 9)
    assert not is_virtually_3connected(g)


# ==================== 扇 ====================

def test_fan_of_spokes_in_wheel():
    g = wheel(4)
    fan = find_fan(g, 0, g.subgraph(range(1, 5)), 3)
    assert isinstance(fan, Fan)
    assert len(fan.paths) == 3
    assert all(len(p) == 2 for p in fan.paths)
    assert len(set(fan.ends)) == 3


def test_fan_returns_disconnector_for_2_valent_vertex():
    g = nx.complete_graph(4)
    g.add_edge('u', 0)
    g.add_edge('u', 1)
    result = find_fan(g, 'u', range(4), 3)
    assert isinstance(result, Disconnector)
    assert len(result.vertices) == 2


def test_fan_in_petersen():
    g = petersen()
    inner = [5, 6, 7, 8, 9]
    fan = find_fan(g, 0, inner, 3)
    assert isinstance(fan, Fan)
    seen = set()
    for path in fan.paths:
        assert path[0] == 0 and path[-1] in inner
        assert not set(path[1:-1]) & set(inner)
        assert not set(path[1:]) & seen
        seen |= set(path[1:])
        for a, b in zip(path, path[1:]):
            assert g.has_edge(a, b)


def test_fan_extends_hint_ends():
    g = wheel(5)
    hint = Fan(apex=0, paths=((0, 3),))
    fan = find_fan(g, 0, range(1, 6), 3, hint=hint)
    assert 3 in fan.ends


def test_fan_apex_inside_target_rejected():
    with pytest.raises(PreconditionViolated):
        find_fan(nx.complete_graph(4), 0, [0, 1, 2], 2)


# ==================== 回路 ====================

def _check_circuit(g, circuit, required):
    assert set(required) <= set(circuit)
    assert len(set(circuit)) == len(circuit)
    for a, b in zip(circuit, circuit[1:] + circuit[:1]):
        assert g.has_edge(a, b)


def test_circuit_through_triple_in_k4():
    g = nx.complete_graph(4)
    result = exists_circuit_through(g, 0, 1, 2)
    assert result.found
    _check_circuit(g, result.circuit, (0, 1, 2))


def test_circuit_through_triple_in_c5():
    g = nx.cycle_graph(5)
    result = exists_circuit_through(g, 0, 2, 4)
    assert result.found
    _check_circuit(g, result.circuit, (0, 2, 4))


def test_two_triangles_sharing_a_vertex_have_no_circuit():
    g = nx.Graph([(0, 1), (1, 'c'), ('c', 0), ('c', 3), (3, 4), (4, 'c')])
    assert not exists_circuit_through(g, 0, 1, 3).found


def test_k32_witness_when_no_circuit():
    g = nx.complete_bipartite_graph(3, 2)
    result = exists_circuit_through(g, 0, 1, 2)
    assert not result.found
    w = result.witness
    assert set(w.larger_part) == {0, 1, 2}
    assert set(w.smaller_part) == {3, 4}
    interiors = []
    for (s, big), path in w.paths.items():
        assert path[0] == s and path[-1] == big
        for a, b in zip(path, path[1:]):
            assert g.has_edge(a, b)
        interiors.extend(path[1:-1])
    assert len(interiors) == len(set(interiors))


def test_circuit_detour_through_same_arc():
    g = nx.cycle_graph(6)
    g.add_edge(1, 'z')
    g.add_edge('z', 2)
    result = exists_circuit_through(g, 0, 3, 'z')
    assert result.found
    _check_circuit(g, result.circuit, (0, 3, 'z'))


def _check_k32(g, w, triple):
    assert set(w.larger_part) == set(triple)
    assert len(set(w.smaller_part)) == 2 and not set(w.smaller_part) & set(triple)
    assert set(w.paths) == {(s, big) for s in w.smaller_part for big in triple}
    branch = set(triple) | set(w.smaller_part)
    interiors = []
    for (s, big), path in w.paths.items():
        assert path[0] == s and path[-1] == big
        for a, b in zip(path, path[1:]):
            assert g.has_edge(a, b)
        assert not set(path[1:-1]) & branch
        interiors.extend(path[1:-1])
    assert len(interiors) == len(set(interiors))


def _random_biconnected_graphs(count, seed):
    rng = random.Random(seed)
    graphs = []
    while len(graphs) < count:
        g = nx.gnp_random_graph(rng.randint(6, 9), 0.35, seed=rng.randrange(2 ** 31))
        if nx.is_biconnected(g):
            graphs.append(g)
    return graphs


@pytest.mark.parametrize("g", _random_biconnected_graphs(12, seed=3))
def test_circuit_or_k32_for_every_triple(g):
    for triple in combinations(ordered(g), 3):
        result = exists_circuit_through(g, *triple)
        assert result.found != (result.witness is not None), triple
        if result.found:
            _check_circuit(g, result.circuit, triple)
        else:
            _check_k32(g, result.witness, triple)


# ==================== 线程规范化 ====================

def test_normalize_long_thread():
    g = normalize_threads(subdivided_k4(5))
    assert g.number_of_nodes() == 5
    assert is_isomorphic_small(g, subdivided_k4(1))


def test_normalize_is_identity_without_threads():
    g = nx.complete_graph(4)
    assert nx.utils.graphs_equal(normalize_threads(g), g)


def test_lift_path_restores_thread_interior():
    g = subdivided_k4(3)
    h, kept = normalize_threads_with_map(g)
    assert lift_path((0, 10, 1), kept) == (0, 10, 11, 12, 1)
    assert lift_path((1, 10, 0), kept) == (1, 12, 11, 10, 0)


# ==================== 同构 ====================

def test_isomorphism_small_cases():
    assert is_isomorphic_small(nx.path_graph(3), nx.path_graph(3))
    assert not is_isomorphic_small(nx.cycle_graph(4), nx.path_graph(4))
    paw = nx.Graph([(0, 1), (1, 2), (2, 0), (2, 3)])
    assert not is_isomorphic_small(paw, nx.star_graph(3))


def test_isomorphism_size_limit():
    with pytest.raises(SizeLimitExceeded):
        is_isomorphic_small(nx.path_graph(13), nx.path_graph(13))
