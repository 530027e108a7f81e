"""
着色模块

精确色数求解（DSATUR 回溯 + 团下界），ASP 图的构造性 5-着色、ASP-P 图的 4-着色，
3-正则图的 Brooks 3-着色，以及按族标签直接着色。
"""
from dataclasses import dataclass

import networkx as nx

import config
from classifier import (FamilyKind, classify, classify_3connected, is_fishpond,
                        is_truncated_cubic, is_wheel, match_family_KE3r, match_family_SrWr)
from errors import (InconsistentVerdict, K5Exception, K6Exception, NotASP, NotASPP,
                    PreconditionViolated, SizeLimitExceeded, TagMismatch)
from forbidden_oracle import Verdict
from graph_core import skeleton_view
from utils import ordered, vertex_key

SAME = "same"
DIFFERENT = "different"


@dataclass(frozen=True)
class Coloring:
    """顶点 -> 颜色编号（0..palette_size-1）"""
    assignment: dict
    palette_size: int

    @property
    def colors_used(self):
        return len(set(self.assignment.values()))

    def to_dict(self):
        return {
            'palette_size': self.palette_size,
            'colors_used': self.colors_used,
            'assignment': {str(v): c for v, c in sorted(self.assignment.items(), key=lambda kv: vertex_key(kv[0]))},
        }


class _Stuck(Exception):
    """构造性着色在当前分支无法继续"""


def canonicalize(assignment):
    """按顶点顺序重新编号颜色（首次出现的顺序）"""
    names = {}
    out = {}
    for v in ordered(assignment):
        c = assignment[v]
        if c not in names:
            names[c] = len(names)
        out[v] = names[c]
    return out


def verify_coloring(g, coloring):
    """
    独立校验：每个顶点都着色、颜色在调色板内、没有同色边

    Returns:
        bool
    """
    assignment = coloring.assignment if isinstance(coloring, Coloring) else coloring
    palette = coloring.palette_size if isinstance(coloring, Coloring) else None
    if any(v not in assignment for v in g):
        return False
    if palette is not None and any(not 0 <= assignment[v] < palette for v in g):
        return False
    return all(assignment[u] != assignment[v] for u, v in g.edges())


# ==================== 精确求解 ====================

def _solve_k(g, k, precolored=None):
    """DSATUR 顺序回溯；新颜色只开一种（颜色对称性）"""
    adj = {v: set(g[v]) for v in g}
    colors = dict(precolored or {})
    for v, c in colors.items():
        if c >= k or any(colors.get(u) == c for u in adj[v]):
            return None
    # 度数降序，同度按顶点顺序
    order = sorted(g, key=lambda v: (-len(adj[v]), vertex_key(v)))

    def pick():
        best, best_key = None, None
        for v in order:
            if v in colors:
                continue
            key = (len({colors[u] for u in adj[v] if u in colors}), len(adj[v]))
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def solve():
        v = pick()
        if v is None:
            return True
        used = {colors[u] for u in adj[v] if u in colors}
        top = max(colors.values(), default=-1)
        for c in range(min(k, top + 2)):
            if c in used:
                continue
            colors[v] = c
            if solve():
                return True
            del colors[v]
        return False

    return dict(colors) if solve() else None


def is_k_colorable(g, k):
    """
    精确判定 k-可着色性

    Returns:
        Coloring 或 None
    """
    if g.number_of_nodes() > config.EXACT_COLORING_LIMIT:
        raise SizeLimitExceeded(g.number_of_nodes(), config.EXACT_COLORING_LIMIT)
    assignment = _solve_k(g, k)
    return Coloring(canonicalize(assignment), k) if assignment is not None else None


def exact_coloring(g, limit=None):
    """
    最优着色：团数为下界，贪心着色为上界，从下界逐个尝试

    Raises:
        SizeLimitExceeded: 顶点数超过 limit（默认 config.EXACT_COLORING_LIMIT）
    """
    limit = config.EXACT_COLORING_LIMIT if limit is None else limit
    n = g.number_of_nodes()
    if n > limit:
        raise SizeLimitExceeded(n, limit)
    if n == 0:
        return Coloring({}, 0)
    greedy = nx.greedy_color(g, strategy='DSATUR')
    upper = max(greedy.values()) + 1
    lower = max(len(c) for c in nx.find_cliques(g))
    for k in range(lower, upper):
        assignment = _solve_k(g, k)
        if assignment is not None:
            return Coloring(canonicalize(assignment), k)
    return Coloring(canonicalize(greedy), upper)


def chromatic_number_exact(g, limit=None):
    """精确色数"""
    return exact_coloring(g, limit).palette_size


def enumerate_colorings_boundary(g, boundary, k, limit=None):
    """
    边界顶点对在 k-着色中可实现的关系

    Args:
        g: 小图
        boundary: (x, y)
        k: 颜色数

    Returns:
        {"same", "different"} 的子集
    """
    limit = config.BOUNDARY_ENUMERATION_LIMIT if limit is None else limit
    if g.number_of_nodes() > limit:
        raise SizeLimitExceeded(g.number_of_nodes(), limit)
    x, y = boundary
    patterns = set()
    if not g.has_edge(x, y) and _solve_k(g, k, {x: 0, y: 0}) is not None:
        patterns.add(SAME)
    if k >= 2 and _solve_k(g, k, {x: 0, y: 1}) is not None:
        patterns.add(DIFFERENT)
    return frozenset(patterns)


# ==================== Brooks ====================

def _greedy(g, order, colors, palette):
    for v in order:
        if v in colors:
            continue
        used = {colors[u] for u in g[v] if u in colors}
        c = next((c for c in range(palette) if c not in used), None)
        if c is None:
            raise _Stuck(f"顶点 {v} 没有可用颜色")
        colors[v] = c
    return colors


def _toward_root(h, root, skip=()):
    """按到 root 的 BFS 距离降序排列，root 最后"""
    dist = nx.single_source_shortest_path_length(h, root)
    return sorted((v for v in dist if v not in skip), key=lambda v: (-dist[v], vertex_key(v)))


def _glue_blocks(g, color_block):
    """逐块着色后沿割点置换颜色拼接"""
    pending = sorted((frozenset(c) for c in nx.biconnected_components(g)),
                     key=lambda c: vertex_key(ordered(c)[0]))
    colors = {}
    while pending:
        for b in pending:
            shared = [v for v in ordered(b) if v in colors]
            if colors and not shared:
                continue
            local = color_block(g.subgraph(b))
            if shared:
                c = shared[0]
                swap = {local[c]: colors[c], colors[c]: local[c]}
                local = {v: swap.get(x, x) for v, x in local.items()}
            colors.update(local)
            pending.remove(b)
            break
    for v in g:
        colors.setdefault(v, 0)
    return colors


def _brooks_block(b):
    low = [v for v in ordered(b) if b.degree(v) < 3]
    if low:
        return _greedy(b, _toward_root(b, low[0]), {}, 3)
    # 3-正则 2-连通且不是 K₄：找 v 的两个不相邻邻点 a、b，使 G - {a, b} 连通
    for v in ordered(b):
        nbrs = ordered(b[v])
        for i, a in enumerate(nbrs):
            for c in nbrs[i + 1:]:
                if b.has_edge(a, c):
                    continue
                rest = b.subgraph([w for w in b if w not in (a, c)])
                if not nx.is_connected(rest):
                    continue
                colors = {a: 0, c: 0}
                return _greedy(b, _toward_root(rest, v), colors, 3)
    raise _Stuck("没有找到 Brooks 三元组")


def brooks_color3(g):
    """
    Brooks 3-着色

    含度数 < 3 的顶点时按到该顶点的距离降序贪心；3-正则时先把某顶点的两个不相邻邻点
    涂同色；有割点时逐块着色再拼接。

    Raises:
        PreconditionViolated: 不连通、Δ ≠ 3 或 g 是 K₄
    """
    if g.number_of_nodes() == 0 or not nx.is_connected(g):
        raise PreconditionViolated("brooks_color3 需要连通图")
    if max(d for _, d in g.degree()) != 3:
        raise PreconditionViolated("brooks_color3 需要 Δ = 3")
    if g.number_of_nodes() == 4 and g.number_of_edges() == 6:
        raise PreconditionViolated("K₄ 不是 3-可着色的")
    colors = _glue_blocks(g, _brooks_block)
    return Coloring(canonicalize(colors), 3)


# ==================== 按族着色 ====================

def _peel_color(g, palette):
    """退化序贪心：反复删去度 < palette 的顶点，逆序着色"""
    core, stack = _peel(g, palette)
    if core.number_of_nodes():
        raise _Stuck(f"{core.number_of_nodes()} 个顶点的度都不小于 {palette}")
    return _reinsert(g, stack, {}, palette)


def _color_rim(h, palette=3):
    """回路按奇偶 2 或 3 色；否则退化序贪心"""
    if h.number_of_nodes() >= 3 and all(d == 2 for _, d in h.degree()) and nx.is_connected(h):
        cycle = [u for u, _ in nx.find_cycle(h, source=ordered(h)[0])]
        colors = {v: i % 2 for i, v in enumerate(cycle)}
        if len(cycle) % 2:
            colors[cycle[-1]] = 2
        return colors
    return _peel_color(h, palette)


def _color_with_hub(g, hub):
    rest = g.subgraph([v for v in g if v != hub])
    colors = _color_rim(rest)
    colors[hub] = max(colors.values(), default=-1) + 1
    return colors


def _color_threads(g, view, colors, palette):
    for t in view.threads:
        _greedy(g, t.interior, colors, palette)
    return colors


def _color_fishpond(g, view):
    star = view.skeleton_graph
    colors = {}
    for comp in sorted(nx.connected_components(star), key=lambda c: vertex_key(ordered(c)[0])):
        j = star.subgraph(comp)
        if max((d for _, d in j.degree()), default=0) == 3 and not (len(j) == 4 and j.number_of_edges() == 6):
            colors.update(brooks_color3(j).assignment)
        else:
            colors.update(_solve_k(j, 3) or _greedy(j, ordered(j), {}, 4))
    return _color_threads(g, view, colors, 3)


def color_family(g, tag):
    """
    按族标签直接着色

    轮图与 Sᵣ..W̃ᵣ：轮辋按奇偶 2/3 色，轮毂另用一色；K₃,ᵣ..D̃ᵣ：3-部三色，r-部第四色，
    线程贪心；鱼塘与截断三次图：骨架分量 Brooks，线程贪心。

    Raises:
        TagMismatch: 图不属于该族
    """
    kind = tag.kind
    view = skeleton_view(g)
    if kind is FamilyKind.WHEEL:
        if is_wheel(g) != tag.r:
            raise TagMismatch(f"图不是 {tag}")
        hub = next(v for v in ordered(g) if g.degree(v) == g.number_of_nodes() - 1)
        colors = _color_with_hub(g, hub)
    elif kind is FamilyKind.SR_WR:
        if match_family_SrWr(g, view) != tag.r:
            raise TagMismatch(f"图不属于 {tag}")
        n_star = len(view.skeleton_vertices)
        hub = next(v for v in ordered(view.skeleton_vertices)
                   if view.star_degree[v] == n_star - 1 and not view.n2[v])
        colors = _color_with_hub(g, hub)
    elif kind in (FamilyKind.KE3R_DR, FamilyKind.K3R_DR_3CONN):
        if match_family_KE3r(g, view) != tag.r:
            raise TagMismatch(f"图不属于 {tag}")
        a_part = ordered(v for v in view.skeleton_vertices if view.star_degree[v] >= config.MIN_KE3R_R)
        colors = {v: i for i, v in enumerate(a_part)}
        colors.update({v: 3 for v in view.skeleton_vertices if v not in colors})
        colors = _color_threads(g, view, colors, 4)
    elif kind is FamilyKind.TRUNCATED_CUBIC:
        if not is_truncated_cubic(g):
            raise TagMismatch("图不是截断三次图")
        colors = dict(brooks_color3(g).assignment)
    elif kind is FamilyKind.FISHPOND:
        if not is_fishpond(g, view):
            raise TagMismatch("图不是鱼塘")
        colors = _color_fishpond(g, view)
    elif kind is FamilyKind.SP:
        colors = _peel_color(g, 3)
    elif kind is FamilyKind.SMALL_CASE:
        colors = dict(exact_coloring(g).assignment)
    else:
        raise TagMismatch(f"{tag} 没有对应的直接着色")
    colors = canonicalize(colors)
    return Coloring(colors, max(colors.values(), default=-1) + 1)


# ==================== 构造性着色 ====================

def _peel(g, palette):
    """
    反复删去度 < palette 的顶点

    Returns:
        (剩余核心, 删除顺序)
    """
    h = nx.Graph(g)
    queue = [v for v in ordered(h) if h.degree(v) < palette]
    queued = set(queue)
    stack = []
    i = 0
    while i < len(queue):
        v = queue[i]
        i += 1
        nbrs = ordered(h[v])
        h.remove_node(v)
        stack.append(v)
        for u in nbrs:
            if u not in queued and h.degree(u) < palette:
                queue.append(u)
                queued.add(u)
    return h, stack


def _reinsert(g, stack, colors, palette):
    for v in reversed(stack):
        used = {colors[u] for u in g[v] if u in colors}
        colors[v] = next(c for c in range(palette) if c not in used)
    return colors


def _is_complete(h, size):
    n = h.number_of_nodes()
    return n == size and h.number_of_edges() == n * (n - 1) // 2


def _merge_sides(a, b, x, y, palette):
    """置换 b 的颜色使 x、y 与 a 一致，然后合并"""
    mapping = {b[x]: a[x], b[y]: a[y]}
    free = [c for c in range(palette) if c not in mapping.values()]
    for c in sorted(set(b.values())):
        if c not in mapping:
            mapping[c] = free.pop(0)
    merged = dict(a)
    merged.update({v: mapping[c] for v, c in b.items() if v not in a})
    return merged


def _color_side(side, x, y, pattern, palette, threshold):
    h = nx.Graph(side)
    if pattern == DIFFERENT:
        h.add_edge(x, y)
        return _color_graph(h, palette, threshold)
    if side.has_edge(x, y):
        raise _Stuck("x、y 相邻，不能同色")
    h = nx.contracted_nodes(h, x, y, self_loops=False, copy=True)
    colors = _color_graph(h, palette, threshold)
    colors[y] = colors[x]
    return colors


def _color_two_cut(h, x, y, palette, threshold):
    rest = h.subgraph([v for v in h if v not in (x, y)])
    comps = sorted(nx.connected_components(rest), key=lambda c: vertex_key(ordered(c)[0]))
    left = h.subgraph(comps[0] | {x, y})
    right = h.subgraph(set().union(*comps[1:]) | {x, y})
    for pattern in (DIFFERENT, SAME):
        try:
            a = _color_side(left, x, y, pattern, palette, threshold)
            b = _color_side(right, x, y, pattern, palette, threshold)
        except _Stuck:
            continue
        return _merge_sides(a, b, x, y, palette)
    raise _Stuck(f"分离对 {x}, {y} 两侧没有共同的边界模式")


def _color_core(h, palette, threshold):
    """最小度 ≥ palette 的连通核心"""
    if _is_complete(h, palette + 1):
        raise _Stuck(f"核心是 K{palette + 1}")
    if not nx.is_biconnected(h):
        return _glue_blocks(h, lambda b: _color_graph(nx.Graph(b), palette, threshold))
    cut = nx.minimum_node_cut(h)
    if len(cut) == 2:
        x, y = ordered(cut)
        return _color_two_cut(h, x, y, palette, threshold)
    c = classify_3connected(h)
    if not c.verdict.satisfies(threshold):
        raise _Stuck(f"3-连通核心判定为 {c.verdict.value}")
    colors = color_family(h, c.family).assignment
    if max(colors.values()) >= palette:
        raise _Stuck(f"{c.family} 的直接着色超出 {palette} 色")
    return dict(colors)


def _color_graph(g, palette, threshold):
    core, stack = _peel(g, palette)
    colors = {}
    for comp in sorted(nx.connected_components(core), key=lambda c: vertex_key(ordered(c)[0])):
        colors.update(_color_core(nx.Graph(core.subgraph(comp)), palette, threshold))
    return _reinsert(g, stack, colors, palette)


def _constructive(g, palette, threshold, exception_cls, failure_cls):
    core, stack = _peel(g, palette)
    colors = {}
    exceptional = []
    for comp in sorted(nx.connected_components(core), key=lambda c: vertex_key(ordered(c)[0])):
        h = nx.Graph(core.subgraph(comp))
        if _is_complete(h, palette + 1):
            exceptional.append(h)
            colors.update({v: i for i, v in enumerate(ordered(h))})
            continue
        try:
            colors.update(_color_core(h, palette, threshold))
        except _Stuck as exc:
            verdict = classify(g)
            if verdict.verdict.satisfies(threshold):
                raise InconsistentVerdict(
                    f"分类器判定为 {verdict.verdict.value}，构造性着色却失败: {exc}") from exc
            raise failure_cls(f"输入不是 {threshold.value} 图", witness=verdict.witness) from exc
    colors = canonicalize(_reinsert(g, stack, colors, palette + 1 if exceptional else palette))
    if exceptional:
        raise exception_cls(f"输入包含 K{palette + 1}",
                            coloring=Coloring(colors, palette + 1))
    return Coloring(colors, palette)


def color_asp(g):
    """
    ASP 图的构造性 5-着色

    度 ≤ 4 的顶点逐个删去后逆序补色；最小度 ≥ 5 的核心按割点或分离对拆分，
    3-连通核心按族着色。

    Raises:
        K6Exception: 核心含 K₆ 分量（附 6-着色）
        NotASP: 输入不是 ASP 图（附见证）
        InconsistentVerdict: 分类器认为是 ASP 但构造失败
    """
    return _constructive(g, config.ASP_PALETTE, Verdict.ASP, K6Exception, NotASP)


def color_aspp(g):
    """ASP-P 图的构造性 4-着色，阈值整体下移一档"""
    return _constructive(g, config.ASPP_PALETTE, Verdict.ASP_P, K5Exception, NotASPP)
