"""
generators 测试
"""
import random

import networkx as nx
import pytest

from classifier import classify
from errors import NotCubic, NotTwoConnected, ParameterError, SizeLimitExceeded
from forbidden_oracle import Verdict
from generators import (K5MINUS, Y, GeneratorSpec, build, d_graph, d_mod, enumerate_small_graphs, k3r,
                        random_asp_corpus, random_cubic_3connected, random_d_sandwich,
                        random_wheel_sandwich, replace_edges, seed_graph, spoked, total_subdivision,
                        truncate_cubic, wheel, wheel_minus, wheel_minus_gadget, wheel_mod)


# ==================== 图族尺寸 ====================

@pytest.mark.parametrize("g, n, m", [
    (wheel(6), 7, 12),
    (wheel_mod(6), 13, 24),
    (spoked(6), 13, 18),
    (wheel_minus(5), 6, 9),
    (k3r(4), 7, 12),
    (d_graph(4), 7, 15),
    (d_mod(4), 10, 21),
    (truncate_cubic(nx.complete_graph(4)), 12, 18),
    (truncate_cubic(nx.complete_bipartite_graph(3, 3)), 18, 27),
    (total_subdivision(nx.complete_graph(4)), 10, 12),
])
def test_family_sizes(g, n, m):
    assert g.number_of_nodes() == n
    assert g.number_of_edges() == m


def test_wheel_mod_subset():
    g = wheel_mod(6, thread_subset={0, 3})
    assert g.number_of_nodes() == 9
    assert g.has_edge(1, 7) and g.has_edge(7, 2)


def test_spoked_custom_lengths():
    g = spoked(6, [0, 1, 2, 0, 0, 3])
    assert g.number_of_nodes() == 7 + 6
    assert g.has_edge(1, 2)


def test_parameter_errors():
    with pytest.raises(ParameterError):
        wheel(2)
    with pytest.raises(ParameterError):
        wheel_mod(6, thread_subset={6})
    with pytest.raises(ParameterError):
        spoked(5, [1, 1])
    with pytest.raises(ParameterError):
        seed_graph("nope")


def test_k3r_is_bipartite():
    assert nx.is_bipartite(k3r(4))


def test_truncated_petersen_is_3connected():
    g = truncate_cubic(nx.petersen_graph())
    assert g.number_of_nodes() == 30
    assert nx.node_connectivity(g) == 3


def test_truncate_requires_cubic():
    with pytest.raises(NotCubic):
        truncate_cubic(nx.complete_graph(5))


def test_random_generators_are_reproducible():
    a = random_wheel_sandwich(7, random.Random(5))
    b = random_wheel_sandwich(7, random.Random(5))
    assert sorted(a.edges()) == sorted(b.edges())
    g = random_d_sandwich(5, random.Random(1))
    assert nx.is_biconnected(g)
    h = random_cubic_3connected(10, random.Random(2))
    assert all(d == 3 for _, d in h.degree())


# ==================== 替换构造 ====================

def test_k5_minus_replacement():
    g = replace_edges(nx.cycle_graph(3), K5MINUS, skip=(0, 1))
    assert g.number_of_nodes() == 9
    assert g.has_edge(0, 1)
    assert classify(g).verdict.satisfies(Verdict.ASP)


def test_y_replacement_size():
    g = replace_edges(nx.cycle_graph(3), Y)
    assert g.number_of_nodes() == 27


def test_wheel_minus_replacement_size():
    g = replace_edges(nx.complete_graph(4), wheel_minus_gadget(4))
    assert g.number_of_nodes() == 22


def test_replace_edges_preconditions():
    with pytest.raises(NotTwoConnected):
        replace_edges(nx.path_graph(4), K5MINUS)
    with pytest.raises(ParameterError):
        replace_edges(nx.cycle_graph(4), K5MINUS, skip=(0, 2))


# ==================== 穷举 ====================

@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_connected_graph_counts(n, count):
    graphs = list(enumerate_small_graphs(n))
    assert len(graphs) == count
    assert all(nx.is_connected(g) for g in graphs)


@pytest.mark.slow
@pytest.mark.parametrize("n, count", [(7, 853), (8, 11117)])
def test_connected_graph_counts_slow(n, count):
    assert sum(1 for _ in enumerate_small_graphs(n)) == count


def test_enumeration_size_limit():
    with pytest.raises(SizeLimitExceeded):
        list(enumerate_small_graphs(9))


# ==================== 随机语料 ====================

def _edge_set(g):
    # 语料里整数顶点与替换构造的元组顶点混用，不能直接排序
    return set(map(frozenset, g.edges()))


def test_corpus_is_deterministic():
    a = random_asp_corpus(seed=7, count=8)
    b = random_asp_corpus(seed=7, count=8)
    assert [e.name for e in a] == [e.name for e in b]
    assert all(_edge_set(x.graph) == _edge_set(y.graph) for x, y in zip(a, b))


def test_corpus_respects_size_range():
    for e in random_asp_corpus(seed=2, count=12, size_range=(10, 40)):
        assert 10 <= e.graph.number_of_nodes() <= 40


def test_corpus_labels_match_classifier():
    for e in random_asp_corpus(seed=0, count=20, size_range=(4, 60)):
        assert classify(e.graph).verdict.satisfies(e.label), e.name


# ==================== GeneratorSpec ====================

def test_file_stem():
    assert GeneratorSpec("wheel", {'r': 6}).file_stem() == "wheel_r6"
    spec = GeneratorSpec("spoked", {'r': 3, 'lengths': (1, 2, 3)}, seed=4)
    assert spec.file_stem() == "spoked_lengths1-2-3_r3_seed4"


@pytest.mark.parametrize("spec, n", [
    (GeneratorSpec("wheel", {'r': 7}), 8),
    (GeneratorSpec("d-mod", {'r': 4}), 10),
    (GeneratorSpec("truncate-cubic", {'seed_graph': 'k4'}), 12),
    (GeneratorSpec("gadget-y", {'seed_graph': 'c3'}), 27),
    (GeneratorSpec("gadget-k5minus", {'seed_graph': 'c3', 'skip': 1}), 9),
    (GeneratorSpec("gadget-wheel-minus", {'seed_graph': 'k4', 'r': 4}), 22),
    (GeneratorSpec("petersen"), 10),
])
def test_build(spec, n):
    assert build(spec).number_of_nodes() == n


def test_build_unknown_family():
    with pytest.raises(ParameterError):
        build(GeneratorSpec("nope"))
