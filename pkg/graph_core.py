"""
图核心模块
简单无向图上的骨架视图、Menger 路径计数、扇与回路原语

图统一使用 networkx.Graph 表示，顶点为任意可哈希标识。
"""
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx
from networkx.algorithms.connectivity import local_node_connectivity

import config
from errors import PreconditionViolated, SizeLimitExceeded
from utils import ordered, pair, pair_key, vertex_key


@dataclass(frozen=True)
class Thread:
    """线程：两端为骨架顶点、内部顶点均为 2 度的路径"""
    endpoints: tuple
    interior: tuple

    @property
    def window(self):
        return self.endpoints

    def vertices(self):
        """端点-内部-端点 的完整顶点序列"""
        return (self.endpoints[0],) + self.interior + (self.endpoints[1],)


@dataclass(frozen=True)
class DegenerateThread:
    """不含骨架顶点的连通分量（裸回路）"""
    cycle: tuple


@dataclass(frozen=True, eq=False)
class SkeletonView:
    """骨架视图 G*：V*、E*、线程、窗口、d*、N¹、N²"""
    base: nx.Graph
    skeleton_vertices: frozenset
    skeleton_edges: frozenset
    threads: tuple
    windows: frozenset
    star_degree: dict
    n1: dict
    n2: dict
    degenerate: tuple = ()

    @property
    def skeleton_graph(self):
        """由 V* 和 E* 构成的骨架图"""
        h = nx.Graph()
        h.add_nodes_from(self.skeleton_vertices)
        h.add_edges_from(self.skeleton_edges)
        return h

    def threads_on(self, u, v):
        """窗口 {u, v} 上的所有线程"""
        key = pair(u, v)
        return [t for t in self.threads if t.endpoints == key]

    def parallel_windows(self):
        """承载两条及以上线程的窗口"""
        counts = {}
        for t in self.threads:
            counts[t.endpoints] = counts.get(t.endpoints, 0) + 1
        return sorted((w for w, c in counts.items() if c > 1), key=pair_key)


@dataclass(frozen=True)
class Fan:
    """(v, H)-扇：从 apex 出发、除 apex 外两两不交的路径"""
    apex: object
    paths: tuple

    @property
    def ends(self):
        return tuple(p[-1] for p in self.paths)


@dataclass(frozen=True)
class Disconnector:
    """顶点数小于 k 的 (v, H)-分离集（Menger 证书）"""
    vertices: frozenset


@dataclass(frozen=True)
class K32Witness:
    """以 {x, y, z} 为大部的 K₃,₂ 细分"""
    larger_part: tuple
    smaller_part: tuple
    paths: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CircuitResult:
    found: bool
    circuit: tuple = None
    witness: K32Witness = None


def check_simple(g):
    """拒绝自环；networkx.Graph 本身不允许重边"""
    if g.is_directed() or g.is_multigraph():
        raise PreconditionViolated("只接受简单无向图")
    loops = list(nx.selfloop_edges(g))
    if loops:
        raise PreconditionViolated(f"图中存在自环: {loops[0]}")


def skeleton_view(g):
    """
    计算骨架视图

    沿最大 2 度链行走得到线程，内部顶点从较小端点开始排列。
    回到同一骨架顶点的链与悬挂链不是线程；裸回路分量记录在 degenerate 中。

    Args:
        g: 简单无向图

    Returns:
        SkeletonView
    """
    check_simple(g)
    deg = dict(g.degree())
    skel = frozenset(v for v in g if deg[v] >= 3)
    skel_edges = frozenset(pair(u, v) for u, v in g.edges() if u in skel and v in skel)

    threads = []
    walked = set()
    for s in ordered(skel):
        for w in ordered(g[s]):
            if deg[w] != 2 or w in walked:
                continue
            interior = [w]
            prev, cur = s, w
            end = None
            while True:
                walked.add(cur)
                nxt = next(u for u in g[cur] if u != prev)
                if deg[nxt] == 2:
                    if nxt in walked:
                        break
                    interior.append(nxt)
                    prev, cur = cur, nxt
                    continue
                if deg[nxt] >= 3:
                    end = nxt
                break
            if end is None or end == s:
                continue
            if vertex_key(end) < vertex_key(s):
                interior.reverse()
            threads.append(Thread(pair(s, end), tuple(interior)))
    threads.sort(key=lambda t: (pair_key(t.endpoints), [vertex_key(v) for v in t.interior]))

    degenerate = []
    for comp in nx.connected_components(g):
        if len(comp) >= 3 and all(deg[v] == 2 for v in comp):
            start = ordered(comp)[0]
            cycle = [start]
            prev, cur = None, start
            while True:
                nbrs = ordered(u for u in g[cur] if u != prev)
                nxt = nbrs[0]
                if nxt == start:
                    break
                cycle.append(nxt)
                prev, cur = cur, nxt
            degenerate.append(DegenerateThread(tuple(cycle)))
    degenerate.sort(key=lambda d: vertex_key(d.cycle[0]))

    windows = frozenset(t.endpoints for t in threads)
    n1 = {v: frozenset(u for u in g[v] if u in skel) for v in skel}
    n2 = {v: frozenset() for v in skel}
    for a, b in windows:
        n2[a] = n2[a] | {b}
        n2[b] = n2[b] | {a}
    star_degree = {v: len(n1[v]) for v in skel}
    return SkeletonView(
        base=g,
        skeleton_vertices=skel,
        skeleton_edges=skel_edges,
        threads=tuple(threads),
        windows=windows,
        star_degree=star_degree,
        n1=n1,
        n2=n2,
        degenerate=tuple(degenerate),
    )


def internally_disjoint_path_count(g, x, y):
    """
    x-y 之间内部不交路径的最大条数（顶点拆分的单位容量流）

    若 xy 是一条边，该边本身计为一条路径。
    """
    if x == y or x not in g or y not in g:
        raise PreconditionViolated(f"需要两个不同且存在的顶点: {x!r}, {y!r}")
    if g.has_edge(x, y):
        h = g.copy()
        h.remove_edge(x, y)
        return 1 + local_node_connectivity(h, x, y)
    return local_node_connectivity(g, x, y)


def is_virtually_3connected(g):
    """2-连通，且任意两个骨架顶点之间至少有 3 条内部不交路径"""
    if g.number_of_nodes() < 3 or not nx.is_biconnected(g):
        return False
    skel = ordered(v for v in g if g.degree(v) >= 3)
    return all(internally_disjoint_path_count(g, x, y) >= 3 for x, y in combinations(skel, 2))


def _split_digraph(g, v, targets):
    """顶点拆分有向图：非目标顶点 in->out 容量 1，目标顶点只能流向汇点"""
    d = nx.DiGraph()
    for u in g:
        if u == v:
            continue
        if u in targets:
            d.add_edge(('in', u), 'sink', capacity=1, weight=0)
        else:
            d.add_edge(('in', u), ('out', u), capacity=1, weight=0)
    for a, b in g.edges():
        for s, t in ((a, b), (b, a)):
            if s in targets or t == v:
                continue
            d.add_edge(('out', s), ('in', t), weight=0)
    return d


def _decompose_paths(flow, source, apex):
    """把整数流分解成 apex 出发的顶点路径"""
    residual = {u: {w: f for w, f in nbrs.items() if f > 0} for u, nbrs in flow.items()}
    paths = []
    while residual.get(source):
        path = [apex]
        node = source
        while node != 'sink':
            nxt = min(residual[node], key=lambda n: str(n))
            residual[node][nxt] -= 1
            if residual[node][nxt] == 0:
                del residual[node][nxt]
            if nxt != 'sink' and nxt[0] == 'in':
                path.append(nxt[1])
            node = nxt
        paths.append(tuple(path))
    return paths


def find_fan(g, v, target, k, hint=None):
    """
    寻找 k 阶 (v, H)-扇，或给出小于 k 的分离集

    Args:
        g: 图
        v: 扇的顶点
        target: 目标子图（networkx 图或顶点集合）
        k: 扇的阶数
        hint: 可选的部分扇；若存在 k 阶扇，则返回的扇端点包含 hint 的端点

    Returns:
        Fan 或 Disconnector
    """
    targets = frozenset(target.nodes() if isinstance(target, nx.Graph) else target)
    if v in targets:
        raise PreconditionViolated(f"扇的顶点 {v!r} 不能属于目标")
    if len(targets) < k:
        raise PreconditionViolated(f"目标只有 {len(targets)} 个顶点，少于 k={k}")

    d = _split_digraph(g, v, targets)
    source = ('out', v)
    d.add_node(source)
    d.add_edge('sink', 'final', capacity=k, weight=0)
    if hint is not None:
        for end in hint.ends:
            if d.has_edge(('in', end), 'sink'):
                d[('in', end)]['sink']['weight'] = -1

    flow = nx.max_flow_min_cost(d, source, 'final')
    value = sum(flow[source].values())
    if value >= k:
        paths = sorted(_decompose_paths(flow, source, v), key=lambda p: vertex_key(p[-1]))
        return Fan(apex=v, paths=tuple(paths))

    _, (reach, _) = nx.minimum_cut(d, source, 'final')
    cut = set()
    for u in g:
        if u == v:
            continue
        if u in targets:
            if ('in', u) in reach and 'sink' not in reach:
                cut.add(u)
        elif ('in', u) in reach and ('out', u) not in reach:
            cut.add(u)
    return Disconnector(frozenset(cut))


def _cycle_through(g, x, y):
    """经过 x 和 y 的一个回路，以 x 开头；不存在时返回 None"""
    try:
        paths = list(nx.node_disjoint_paths(g, x, y, cutoff=2))
    except nx.NetworkXNoPath:
        return None
    if len(paths) < 2:
        return None
    p1, p2 = sorted(paths, key=len)
    return tuple(p1) + tuple(reversed(p2[1:-1]))


def _brute_force_circuit(g, x, y, z):
    for p1 in nx.all_simple_paths(g, x, y):
        if z not in p1:
            continue
        h = g.subgraph(set(g) - set(p1[1:-1]))
        try:
            p2 = nx.shortest_path(h, y, x)
        except nx.NetworkXNoPath:
            continue
        return tuple(p1) + tuple(p2[1:-1])
    return None


def exists_circuit_through(g, x, y, z):
    """
    判断是否存在同时经过 x、y、z 的回路

    先取经过 x、y 的回路 C 与 z 到 C 的 2-扇；两端落在同一条 x-y 弧上即可改道。
    两端分居两弧时，该结构本身就是以 {x, y, z} 为大部的 K₃,₂ 细分，
    此时再穷举确认不存在回路。

    Returns:
        CircuitResult
    """
    if len({x, y, z}) < 3:
        raise PreconditionViolated("x, y, z 必须互不相同")
    for u in (x, y, z):
        if u not in g:
            raise PreconditionViolated(f"顶点 {u!r} 不在图中")

    cycle = _cycle_through(g, x, y)
    candidate = None
    if cycle is not None:
        if z in cycle:
            return CircuitResult(True, circuit=cycle)
        iy = cycle.index(y)
        arc1 = list(cycle[:iy + 1])
        arc2 = [x] + list(reversed(cycle[iy:]))
        fan = find_fan(g, z, set(cycle), 2)
        if isinstance(fan, Fan):
            (pa, pb) = fan.paths
            a, b = pa[-1], pb[-1]
            for arc in (arc1, arc2):
                if a in arc and b in arc:
                    ia, ib = arc.index(a), arc.index(b)
                    if ia > ib:
                        ia, ib, pa, pb = ib, ia, pb, pa
                    detour = list(arc[:ia]) + list(pa[::-1]) + list(pb[1:]) + list(arc[ib + 1:])
                    other = arc2 if arc is arc1 else arc1
                    return CircuitResult(True, circuit=tuple(detour) + tuple(reversed(other[1:-1])))
            if a not in arc1:
                pa, pb, a, b = pb, pa, b, a
            ia, ib = arc1.index(a), arc2.index(b)
            candidate = K32Witness(
                larger_part=(x, y, z),
                smaller_part=(a, b),
                paths={
                    (a, x): tuple(reversed(arc1[:ia + 1])),
                    (a, y): tuple(arc1[ia:]),
                    (a, z): tuple(reversed(pa)),
                    (b, x): tuple(reversed(arc2[:ib + 1])),
                    (b, y): tuple(arc2[ib:]),
                    (b, z): tuple(reversed(pb)),
                },
            )

    circuit = _brute_force_circuit(g, x, y, z)
    if circuit is not None:
        return CircuitResult(True, circuit=circuit)
    return CircuitResult(False, witness=candidate)


def _thread_map(g):
    view = skeleton_view(g)
    return [t for t in view.threads if len(t.interior) >= 2]


def normalize_threads_with_map(g):
    """
    线程规范化，同时返回被保留的内部顶点到原线程的映射

    Returns:
        (规范化后的图, {保留顶点: Thread})
    """
    h = g.copy()
    kept = {}
    for t in _thread_map(g):
        h.remove_nodes_from(t.interior[1:])
        h.add_edge(t.interior[0], t.endpoints[1])
        kept[t.interior[0]] = t
    return h, kept


def normalize_threads(g):
    """把内部长度不小于 2 的线程缩成内部长度恰为 1 的线程"""
    return normalize_threads_with_map(g)[0]


def lift_path(path, kept):
    """把规范化图中的路径还原到原图：保留顶点展开为整条线程内部"""
    out = []
    for i, v in enumerate(path):
        t = kept.get(v)
        if t is None:
            out.append(v)
            continue
        prev = path[i - 1] if i > 0 else None
        nxt = path[i + 1] if i + 1 < len(path) else None
        if prev == t.endpoints[0] or (prev is None and nxt == t.endpoints[1]):
            out.extend(t.interior)
        else:
            out.extend(reversed(t.interior))
    return tuple(out)


def is_isomorphic_small(g, h, limit=None):
    """
    小图精确同构判定

    Args:
        g, h: 图
        limit: 顶点数上限，默认 config.ISOMORPHISM_LIMIT

    Returns:
        bool
    """
    limit = config.ISOMORPHISM_LIMIT if limit is None else limit
    for graph in (g, h):
        if graph.number_of_nodes() > limit:
            raise SizeLimitExceeded(graph.number_of_nodes(), limit)
    if not nx.faster_could_be_isomorphic(g, h):
        return False
    return nx.vf2pp_is_isomorphic(g, h)
