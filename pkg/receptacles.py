"""
块与容器（receptacle）分解

2-连通块按分离对递归拆分为 3-连通分支，每个分支的顶点集 X 生成一个容器：
G[X] 加上每个窗口上的一条单位线程（代替标记边）。
"""
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from forbidden_oracle import ALL_SHAPES, FORBIDDEN_ASP, FORBIDDEN_ASPP, Verdict, oracle_verdict
from graph_core import normalize_threads
from utils import ordered, pair, pair_key, vertex_key


@dataclass(frozen=True, eq=False)
class Receptacle:
    """容器：虚拟 3-连通子图，或退化的回路/路径/边分量"""
    graph: nx.Graph
    windows: frozenset
    extreme: bool
    skeleton_set: frozenset = frozenset()
    degenerate: bool = False
    bond: bool = False
    block_index: int = 0
    thread_origin: dict = field(default_factory=dict)

    def host_vertices(self):
        """容器中属于宿主图的顶点（不含插入的线程顶点）"""
        return [v for v in self.graph if v not in self.thread_origin]


@dataclass(frozen=True, eq=False)
class Decomposition:
    host: nx.Graph
    blocks: tuple
    receptacles: tuple
    adjacency: dict

    def all_receptacles(self):
        return [r for group in self.receptacles for r in group]


@dataclass(frozen=True)
class ReceptacleRuleResult:
    ok: bool
    verdicts: tuple


def blocks(g):
    """
    块分解；桥与孤立顶点是退化块

    Returns:
        [(块图, 块内割点集合)]，按块内最小顶点排序
    """
    cuts = set(nx.articulation_points(g))
    out = []
    for comp in nx.biconnected_components(g):
        out.append((g.subgraph(comp).copy(), frozenset(comp & cuts)))
    for v in g:
        if g.degree(v) == 0:
            h = nx.Graph()
            h.add_node(v)
            out.append((h, frozenset()))
    out.sort(key=lambda b: (min(vertex_key(v) for v in b[0]), b[0].number_of_nodes()))
    return out


def _separation_pair(h):
    for u in ordered(h):
        rest = h.subgraph([w for w in h if w != u])
        cuts = ordered(nx.articulation_points(rest))
        if cuts:
            return u, cuts[0]
    return None


def triconnected_sets(block):
    """
    递归按分离对拆分，返回顶点数不少于 4 的 3-连通分支的顶点集

    每次拆分把 {u, v} 两侧各自加上虚拟边 uv 后继续递归；多边形分支（回路）最终缩成三角形被丢弃。
    """
    if block.number_of_nodes() < 4:
        return []
    sep = _separation_pair(block)
    if sep is None:
        return [frozenset(block)]
    u, v = sep
    rest = block.subgraph([w for w in block if w not in (u, v)])
    found = []
    for comp in sorted(nx.connected_components(rest), key=lambda c: vertex_key(ordered(c)[0])):
        piece = nx.Graph(block.subgraph(comp | {u, v}))
        piece.add_edge(u, v)
        found.extend(triconnected_sets(piece))
    return found


def _outside(block, u, v, inside):
    """block - {u, v} 中不与 inside 相交的分量之并"""
    rest = block.subgraph([w for w in block if w not in (u, v)])
    out = set()
    for comp in nx.connected_components(rest):
        if not comp & inside:
            out |= comp
    return frozenset(out)


def _receptacle_for(block, x_set, block_index):
    g = nx.Graph(block.subgraph(x_set))
    windows = []
    origin = {}
    for u, v in combinations(ordered(x_set), 2):
        outside = _outside(block, u, v, x_set - {u, v})
        if not outside:
            continue
        windows.append(pair(u, v))
        t = ('thread', *pair(u, v))
        g.add_edge(u, t)
        g.add_edge(t, v)
        origin[t] = (u, v, outside)
    return Receptacle(
        graph=g,
        windows=frozenset(windows),
        extreme=len(windows) == 1,
        skeleton_set=frozenset(x_set),
        block_index=block_index,
        thread_origin=origin,
    )


def _bond_receptacles(block, x_sets, block_index):
    """
    不被任何 X 包含、且至少有三条分支的分离对 {u, v}

    容器为 u、v 两点，每个分支一条单位线程，边 uv 存在时保留。
    """
    out = []
    for u, v in combinations(ordered(w for w in block if block.degree(w) >= 3), 2):
        if any(u in x and v in x for x in x_sets):
            continue
        rest = block.subgraph([w for w in block if w not in (u, v)])
        comps = sorted(nx.connected_components(rest), key=lambda c: vertex_key(ordered(c)[0]))
        if len(comps) + block.has_edge(u, v) < 3 or len(comps) < 2:
            continue
        g = nx.Graph()
        g.add_nodes_from((u, v))
        if block.has_edge(u, v):
            g.add_edge(u, v)
        origin = {}
        for i, comp in enumerate(comps):
            t = ('thread', u, v, i)
            g.add_edge(u, t)
            g.add_edge(t, v)
            origin[t] = (u, v, frozenset(comp))
        out.append(Receptacle(
            graph=g,
            windows=frozenset({pair(u, v)}),
            extreme=True,
            bond=True,
            skeleton_set=frozenset((u, v)),
            block_index=block_index,
            thread_origin=origin,
        ))
    return out


def _bare_branch(block, comp):
    """分支内所有顶点在块中都是 2 度，即分支是一条裸路径"""
    return all(block.degree(w) == 2 for w in comp)


def _leftover(block, x_sets, bonds, block_index):
    """
    既不在任何 X 内、也不属于分离对裸路径分支的边，按连通分量组成退化容器

    没有其他容器的块（回路、单边、孤立点）整体成为一个退化容器。
    """
    covered = set()
    for r in bonds:
        covered |= {pair(a, b) for a, b in r.graph.edges() if a not in r.thread_origin and b not in r.thread_origin}
        for u, v, comp in r.thread_origin.values():
            if _bare_branch(block, comp):
                covered |= {pair(a, b) for a, b in block.subgraph(comp | {u, v}).edges()}
    rest = nx.Graph()
    for a, b in block.edges():
        if any(a in x and b in x for x in x_sets) or pair(a, b) in covered:
            continue
        rest.add_edge(a, b)
    if not x_sets and not bonds and block.number_of_edges() == 0:
        rest.add_nodes_from(block)
    out = []
    for comp in sorted(nx.connected_components(rest), key=lambda c: vertex_key(ordered(c)[0])):
        out.append(Receptacle(
            graph=rest.subgraph(comp).copy(),
            windows=frozenset(),
            extreme=False,
            degenerate=True,
            block_index=block_index,
        ))
    return out


def receptacles(g):
    """
    完整分解：块 -> 3-连通分支 -> 容器

    Returns:
        Decomposition；adjacency 记录共享窗口的容器 {'windows': {窗口: [(块, 容器)]}, 'cuts': {割点: [块]}}
    """
    block_list = blocks(g)
    groups = []
    shared = {}
    cut_map = {}
    for bi, (block, cuts) in enumerate(block_list):
        x_sets = sorted(triconnected_sets(block), key=lambda x: [vertex_key(v) for v in ordered(x)])
        group = [_receptacle_for(block, x, bi) for x in x_sets]
        bonds = _bond_receptacles(block, x_sets, bi)
        group.extend(bonds)
        group.extend(_leftover(block, x_sets, bonds, bi))
        for ri, r in enumerate(group):
            for w in r.windows:
                shared.setdefault(w, []).append((bi, ri))
        for c in cuts:
            cut_map.setdefault(c, []).append(bi)
        groups.append(tuple(group))
    adjacency = {
        'windows': {w: refs for w, refs in sorted(shared.items(), key=lambda kv: pair_key(kv[0]))},
        'cuts': {c: cut_map[c] for c in ordered(cut_map)},
    }
    return Decomposition(host=g, blocks=tuple(block_list), receptacles=tuple(groups), adjacency=adjacency)


def extreme_receptacles(decomp):
    """恰有一个窗口的非退化容器"""
    return [r for r in decomp.all_receptacles() if r.extreme and not r.degenerate]


def glue(decomp, block_index=None):
    """
    沿窗口把容器粘回去：去掉插入的单位线程，分离对容器的裸路径分支还原为原路径

    不指定块时返回所有块之并。
    """
    h = nx.Graph()
    for group in decomp.receptacles:
        for r in group:
            if block_index is not None and r.block_index != block_index:
                continue
            h.add_nodes_from(r.host_vertices())
            h.add_edges_from(
                (a, b) for a, b in r.graph.edges()
                if a not in r.thread_origin and b not in r.thread_origin
            )
            if not r.bond:
                continue
            block = decomp.blocks[r.block_index][0]
            for u, v, comp in r.thread_origin.values():
                if _bare_branch(block, comp):
                    h.add_edges_from(block.subgraph(comp | {u, v}).edges())
    return h


def lift_thread_vertex(decomp, receptacle, t):
    """
    把容器中的线程顶点还原为宿主图中窗口外侧的一条路径（不含端点）

    Returns:
        从 u 一侧到 v 一侧排列的内部顶点元组
    """
    u, v, outside = receptacle.thread_origin[t]
    h = nx.Graph(decomp.host.subgraph(outside | {u, v}))
    if h.has_edge(u, v):
        h.remove_edge(u, v)
    return tuple(nx.shortest_path(h, u, v)[1:-1])


def lift_path(decomp, receptacle, path):
    """把容器内路径中的线程顶点替换为宿主图中的路径"""
    out = []
    for i, v in enumerate(path):
        if v not in receptacle.thread_origin:
            out.append(v)
            continue
        u = receptacle.thread_origin[v][0]
        interior = lift_thread_vertex(decomp, receptacle, v)
        prev = path[i - 1] if i > 0 else None
        out.extend(interior if prev == u else reversed(interior))
    return tuple(out)


_THRESHOLD = {
    FORBIDDEN_ASP: Verdict.ASP,
    FORBIDDEN_ASPP: Verdict.ASP_P,
    ALL_SHAPES: Verdict.SP,
}


def is_asp_via_receptacles(g, forbidden=FORBIDDEN_ASP, oracle=False):
    """
    容器规则：图属于该类当且仅当每个容器都属于该类

    Args:
        g: 图
        forbidden: FORBIDDEN_ASP / FORBIDDEN_ASPP / ALL_SHAPES
        oracle: True 时每个容器用暴力 Oracle（线程规范化后）判定，否则用结构分类器

    Returns:
        ReceptacleRuleResult(ok, 每个容器的判定)
    """
    from classifier import classify_v3c  # classifier 依赖本模块

    threshold = _THRESHOLD[frozenset(forbidden)]
    decomp = receptacles(g)
    verdicts = []
    for r in decomp.all_receptacles():
        if r.degenerate:
            verdicts.append(Verdict.SP)
        elif oracle:
            verdicts.append(oracle_verdict(normalize_threads(r.graph)).verdict)
        else:
            verdicts.append(classify_v3c(r.graph).verdict)
    ok = all(v.satisfies(threshold) for v in verdicts)
    return ReceptacleRuleResult(ok=ok, verdicts=tuple(verdicts))
