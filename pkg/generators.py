"""
图族与构造生成器

轮图、Sᵣ、W̃ᵣ、K₃,ᵣ、Dᵣ、D̃ᵣ、截断三次图、全细分图，K₅⁻ / Y / Wᵣ⁻ 替换构造，
n ≤ 8 的连通图穷举，以及带标签的随机 ASP 语料。
"""
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import networkx as nx

import config
from errors import NotCubic, NotTwoConnected, ParameterError, SizeLimitExceeded
from graph_core import is_isomorphic_small
from utils import ordered, pair, pair_key, vertex_key


@dataclass(frozen=True)
class GeneratorSpec:
    """一次生成的族名与参数"""
    family: str
    parameters: dict = field(default_factory=dict)
    seed: int = None

    def file_stem(self):
        parts = [self.family]
        for k, v in sorted(self.parameters.items()):
            v = "-".join(str(x) for x in v) if isinstance(v, (tuple, list)) else v
            parts.append(f"{k}{v}")
        if self.seed is not None:
            parts.append(f"seed{self.seed}")
        return "_".join(str(p) for p in parts)


@dataclass(frozen=True)
class Gadget:
    """替换边用的小图，terminals 与被替换边的两端重合"""
    kind: str
    r: int = None

    def build(self):
        if self.kind == "K5minus":
            return k5_minus(), (0, 1)
        if self.kind == "Y":
            return y_gadget(), (1, 6)
        if self.kind == "WheelMinus":
            return wheel_minus(self.r), (1, self.r)
        raise ParameterError(f"未知的替换构件: {self.kind}")

    def __str__(self):
        return self.kind if self.r is None else f"{self.kind}({self.r})"


K5MINUS = Gadget("K5minus")
Y = Gadget("Y")


def wheel_minus_gadget(r):
    return Gadget("WheelMinus", r)


def _require(condition, message):
    if not condition:
        raise ParameterError(message)


def _relabel(h):
    """按 vertex_key 顺序重新编号为 0..n-1"""
    mapping = {v: i for i, v in enumerate(ordered(h))}
    return nx.relabel_nodes(h, mapping, copy=True)


# ==================== 轮图族 ====================

def wheel(r):
    """Wᵣ：轮毂 0，轮辋 1..r"""
    _require(r >= 3, f"轮图需要 r ≥ 3，实际 {r}")
    return nx.wheel_graph(r + 1)


def _rim_edge(r, i):
    return 1 + i, 1 + (i + 1) % r


def wheel_mod(r, thread_subset=None):
    """
    Wᵣ 加上与轮辋边平行的单位线程

    Args:
        r: 轮辋长度
        thread_subset: 轮辋边下标 i（连接 1+i 与 1+(i+1)%r）的集合，默认全部
    """
    g = wheel(r)
    subset = range(r) if thread_subset is None else sorted(thread_subset)
    nxt = r + 1
    for i in subset:
        _require(0 <= i < r, f"轮辋边下标越界: {i}")
        a, b = _rim_edge(r, i)
        g.add_edge(a, nxt)
        g.add_edge(nxt, b)
        nxt += 1
    return g


def spoked(r, rim_subdivision_lengths=None):
    """Sᵣ：保留辐条，第 i 条轮辋边细分 lengths[i] 次"""
    lengths = [1] * r if rim_subdivision_lengths is None else list(rim_subdivision_lengths)
    _require(r >= 3, f"Sᵣ 需要 r ≥ 3，实际 {r}")
    _require(len(lengths) == r and all(n >= 0 for n in lengths), "细分长度需要 r 个非负整数")
    g = nx.Graph()
    g.add_edges_from((0, i) for i in range(1, r + 1))
    nxt = r + 1
    for i, n in enumerate(lengths):
        a, b = _rim_edge(r, i)
        path = [a] + list(range(nxt, nxt + n)) + [b]
        nxt += n
        nx.add_path(g, path)
    return g


def random_wheel_sandwich(r, rng, max_thread_length=3):
    """
    Sᵣ ⊆ H ⊆ W̃ᵣ 的随机成员

    每条轮辋边独立地取：只保留边、只保留线程、边与平行线程都保留；线程长度随机。
    """
    _require(r >= 3, f"轮图需要 r ≥ 3，实际 {r}")
    g = nx.Graph()
    g.add_edges_from((0, i) for i in range(1, r + 1))
    nxt = r + 1
    for i in range(r):
        a, b = _rim_edge(r, i)
        state = rng.choice(("edge", "thread", "both"))
        if state in ("edge", "both"):
            g.add_edge(a, b)
        if state in ("thread", "both"):
            n = rng.randint(1, max_thread_length)
            nx.add_path(g, [a] + list(range(nxt, nxt + n)) + [b])
            nxt += n
    return g


def wheel_minus(r):
    """Wᵣ⁻：去掉轮辋边 1-r"""
    g = wheel(r)
    g.remove_edge(1, r)
    return g


# ==================== K₃,ᵣ 族 ====================

def k3r(r):
    """K₃,ᵣ：3-部 0,1,2，r-部 3..r+2"""
    _require(r >= 1, f"K₃,ᵣ 需要 r ≥ 1，实际 {r}")
    return nx.complete_bipartite_graph(3, r)


def d_graph(r):
    """Dᵣ = K₃,ᵣ 加上 3-部三角形"""
    g = k3r(r)
    g.add_edges_from(((0, 1), (0, 2), (1, 2)))
    return g


def d_mod(r):
    """D̃ᵣ = Dᵣ 加上与三角形三条边平行的单位线程"""
    g = d_graph(r)
    for i, (a, b) in enumerate(((0, 1), (0, 2), (1, 2))):
        t = r + 3 + i
        g.add_edge(a, t)
        g.add_edge(t, b)
    return g


def random_d_sandwich(r, rng, max_thread_length=3):
    """K₃,ᵣ ⊆ H ⊆ D̃ᵣ 的随机成员：三角形每条边与其平行线程各自随机保留"""
    g = k3r(r)
    nxt = r + 3
    for a, b in ((0, 1), (0, 2), (1, 2)):
        if rng.random() < 0.5:
            g.add_edge(a, b)
        if rng.random() < 0.5:
            n = rng.randint(1, max_thread_length)
            nx.add_path(g, [a] + list(range(nxt, nxt + n)) + [b])
            nxt += n
    return g


# ==================== 三次图与细分 ====================

def truncate_cubic(g):
    """
    每个顶点换成三角形，原来的边连接对应的三角形顶点

    Raises:
        NotCubic: g 不是 3-正则图
    """
    if g.number_of_nodes() == 0 or any(d != 3 for _, d in g.degree()):
        raise NotCubic("truncate_cubic 需要 3-正则图")
    h = nx.Graph()
    for v in g:
        for a, b in combinations(ordered(g[v]), 2):
            h.add_edge((v, a), (v, b))
    for u, v in g.edges():
        h.add_edge((u, v), (v, u))
    return _relabel(h)


def total_subdivision(g):
    """每条边细分一次"""
    h = nx.Graph()
    h.add_nodes_from(g)
    for u, v in g.edges():
        s = ('s', *pair(u, v))
        h.add_edge(u, s)
        h.add_edge(s, v)
    return _relabel(h)


def random_cubic_3connected(n, rng, attempts=200):
    """随机 3-连通 3-正则图"""
    _require(n >= 4 and n % 2 == 0, f"3-正则图需要偶数 n ≥ 4，实际 {n}")
    for _ in range(attempts):
        g = nx.random_regular_graph(3, n, seed=rng.randrange(2 ** 31))
        if nx.is_connected(g) and nx.node_connectivity(g) >= 3:
            return g
    raise ParameterError(f"{attempts} 次尝试内没有得到 {n} 个顶点的 3-连通 3-正则图")


def random_fishpond(n, rng):
    """截断随机 3-连通 3-正则图，再随机细分部分三角形之间的边"""
    h = truncate_cubic(random_cubic_3connected(n, rng))
    between = [(u, v) for u, v in sorted(h.edges()) if not set(h[u]) & set(h[v])]
    nxt = h.number_of_nodes()
    for u, v in between:
        if rng.random() < 0.5:
            h.remove_edge(u, v)
            h.add_edge(u, nxt)
            h.add_edge(nxt, v)
            nxt += 1
    return h


# ==================== 命名小图 ====================

def k5_minus():
    """K₅ 去掉边 0-1"""
    g = nx.complete_graph(5)
    g.remove_edge(0, 1)
    return g


def y_gadget():
    """
    两个 K₅⁻（0..4 与 5..9，缺边 0-1 与 5-6）加边 0-5

    端点 (1, 6)：任何 4-着色中颜色不同。
    """
    g = nx.disjoint_union(k5_minus(), k5_minus())
    g.add_edge(0, 5)
    return g


def petersen():
    return nx.petersen_graph()


def prism():
    """三棱柱：两个三角形 0-1-2、3-4-5 加上匹配"""
    return nx.circular_ladder_graph(3)


_SEEDS = {
    'k4': lambda: nx.complete_graph(4),
    'k5': lambda: nx.complete_graph(5),
    'k6': lambda: nx.complete_graph(6),
    'k33': lambda: nx.complete_bipartite_graph(3, 3),
    'petersen': petersen,
    'prism': prism,
}


def seed_graph(name):
    """按名字取种子图：c<n>、k4、k5、k6、k33、petersen、prism"""
    key = name.lower()
    if key in _SEEDS:
        return _SEEDS[key]()
    if key.startswith('c') and key[1:].isdigit() and int(key[1:]) >= 3:
        return nx.cycle_graph(int(key[1:]))
    raise ParameterError(f"未知的种子图: {name}")


# ==================== 替换构造 ====================

def replace_edges(j, gadget, skip=None):
    """
    把 j 的每条边（skip 除外）替换为构件的一个新副本，构件端点与边的两端重合

    新顶点命名为 (u, v, i)，(u, v) 是被替换的边。

    Raises:
        NotTwoConnected: j 不是 2-连通的
        ParameterError: skip 不是 j 的边
    """
    if j.number_of_nodes() < 3 or not nx.is_biconnected(j):
        raise NotTwoConnected("replace_edges 需要 2-连通图")
    if skip is not None and not j.has_edge(*skip):
        raise ParameterError(f"{skip} 不是种子图的边")
    skip = pair(*skip) if skip is not None else None
    piece, (s, t) = gadget.build()
    out = nx.Graph()
    out.add_nodes_from(j)
    for u, v in sorted((pair(a, b) for a, b in j.edges()), key=lambda e: (vertex_key(e[0]), vertex_key(e[1]))):
        if (u, v) == skip:
            out.add_edge(u, v)
            continue
        names = {s: u, t: v}
        for x in piece:
            names.setdefault(x, (u, v, x))
        out.add_edges_from((names[a], names[b]) for a, b in piece.edges())
    return out


# ==================== 穷举 ====================

@lru_cache(maxsize=None)
def _connected_edge_sets(n):
    """n 个顶点的连通图（同构意义下），每个图表示为边元组"""
    if n == 1:
        return ((),)
    buckets = {}
    found = []
    for edges in _connected_edge_sets(n - 1):
        for size in range(1, n):
            for nbrs in combinations(range(n - 1), size):
                g = nx.Graph()
                g.add_nodes_from(range(n))
                g.add_edges_from(edges)
                g.add_edges_from((u, n - 1) for u in nbrs)
                key = (tuple(sorted(d for _, d in g.degree())), nx.weisfeiler_lehman_graph_hash(g))
                bucket = buckets.setdefault(key, [])
                if any(is_isomorphic_small(g, h) for h in bucket):
                    continue
                bucket.append(g)
                found.append(tuple(sorted(g.edges())))
    return tuple(found)


def enumerate_small_graphs(n):
    """
    n 个顶点的全部连通图（同构意义下）

    增广法：每个连通图都有非割点，因此由 n-1 个顶点的连通图加一个新顶点得到；
    用度序列与 WL 哈希分桶后做精确同构判定去重。
    """
    if n > config.SMALL_GRAPH_LIMIT:
        raise SizeLimitExceeded(n, config.SMALL_GRAPH_LIMIT)
    _require(n >= 1, f"n 需要 ≥ 1，实际 {n}")
    for edges in _connected_edge_sets(n):
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(edges)
        yield g


# ==================== 随机语料 ====================

@dataclass(frozen=True, eq=False)
class CorpusEntry:
    name: str
    graph: nx.Graph
    label: str


def _corpus_wheel(rng, hi):
    r = rng.randint(config.MIN_WHEEL_R, max(config.MIN_WHEEL_R, min(hi - 1, 40)))
    return f"wheel_r{r}", wheel(r), "ASP_P"


def _corpus_wheel_sandwich(rng, hi):
    r = rng.randint(config.MIN_WHEEL_R, max(config.MIN_WHEEL_R, min(hi // 3, 30)))
    return f"wheel_sandwich_r{r}", random_wheel_sandwich(r, rng), "ASP_P"


def _corpus_d_sandwich(rng, hi):
    r = rng.randint(config.MIN_KE3R_R, max(config.MIN_KE3R_R, min(hi - 12, 60)))
    return f"d_sandwich_r{r}", random_d_sandwich(r, rng), "ASP"


def _corpus_fishpond(rng, hi):
    n = 2 * rng.randint(2, max(2, min(hi // 9, 40)))
    return f"fishpond_n{n}", random_fishpond(n, rng), "ASP_P"


def _corpus_total_subdivision(rng, hi):
    n = 2 * rng.randint(2, max(2, min(hi // 5, 30)))
    return f"total_subdivision_n{n}", total_subdivision(random_cubic_3connected(n, rng)), "ASP_P"


def _corpus_k5minus_cycle(rng, hi):
    k = rng.randint(3, max(3, min(hi // 4, 20)))
    return f"k5minus_c{k}", replace_edges(nx.cycle_graph(k), K5MINUS, skip=(0, 1)), "ASP"


def _corpus_y_cycle(rng, hi):
    k = rng.randint(3, max(3, min(hi // 9, 12)))
    return f"y_c{k}", replace_edges(nx.cycle_graph(k), Y), "ASP"


def _corpus_wheel_minus_cycle(rng, hi):
    k = rng.randint(3, 6)
    r = rng.choice((3, 5, 7))
    return f"wheel_minus{r}_c{k}", replace_edges(nx.cycle_graph(k), wheel_minus_gadget(r), skip=(0, 1)), "ASP_P"


_CORPUS_FAMILIES = (
    _corpus_wheel,
    _corpus_wheel_sandwich,
    _corpus_d_sandwich,
    _corpus_fishpond,
    _corpus_total_subdivision,
    _corpus_k5minus_cycle,
    _corpus_y_cycle,
    _corpus_wheel_minus_cycle,
)


def random_asp_corpus(seed=0, count=10, size_range=(4, 60), attempts=50):
    """
    从 ASP / ASP-P 族中随机抽样，标签来自构造

    同一 seed 得到完全相同的序列；顶点数不在 size_range 内的样本丢弃重抽。

    Returns:
        [CorpusEntry]
    """
    lo, hi = size_range
    _require(lo <= hi, f"size_range 无效: {size_range}")
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        for _ in range(attempts):
            build = rng.choice(_CORPUS_FAMILIES)
            name, g, label = build(rng, hi)
            if lo <= g.number_of_nodes() <= hi:
                out.append(CorpusEntry(f"{len(out):04d}_{name}", g, label))
                break
        else:
            raise ParameterError(f"{attempts} 次尝试内没有得到顶点数在 {size_range} 内的样本")
    return out


# ==================== 命令行生成入口 ====================

def build(spec):
    """
    按 GeneratorSpec 构造图

    Returns:
        networkx.Graph
    """
    p = spec.parameters
    family = spec.family
    if family == "wheel":
        return wheel(p['r'])
    if family == "wheel-mod":
        return wheel_mod(p['r'], p.get('threads'))
    if family == "spoked":
        return spoked(p['r'], p.get('lengths'))
    if family == "wheel-minus":
        return wheel_minus(p['r'])
    if family == "k3r":
        return k3r(p['r'])
    if family == "d":
        return d_graph(p['r'])
    if family == "d-mod":
        return d_mod(p['r'])
    if family == "truncate-cubic":
        return truncate_cubic(seed_graph(p['seed_graph']))
    if family == "total-subdivision":
        return total_subdivision(seed_graph(p['seed_graph']))
    if family in ("k5-minus", "y", "petersen", "prism"):
        return {"k5-minus": k5_minus, "y": y_gadget, "petersen": petersen, "prism": prism}[family]()
    if family.startswith("gadget-"):
        kind = family[len("gadget-"):]
        gadget = {"k5minus": K5MINUS, "y": Y}.get(kind)
        if kind == "wheel-minus":
            gadget = wheel_minus_gadget(p['r'])
        if gadget is None:
            raise ParameterError(f"未知的替换构件: {kind}")
        j = seed_graph(p['seed_graph'])
        skip = None
        if p.get('skip'):
            skip = min((pair(*e) for e in j.edges()), key=pair_key)
        return replace_edges(j, gadget, skip=skip)
    raise ParameterError(f"未知的图族: {family}")