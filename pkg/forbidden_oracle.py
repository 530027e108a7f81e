"""
K₄ 细分暴力判定（基准真值）

枚举所有拓扑 K₄，按骨架形状（未细分的分支边集合）分类，
据此判定 SP / ASP-P / ASP 成员关系与红链。
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import networkx as nx

import config
from errors import InvalidWitness, NotASPInput, PreconditionViolated, SizeLimitExceeded
from graph_core import skeleton_view
from utils import ordered, pair, vertex_key

# K₄ 的六条边槽位，下标指向 branch_vertices
SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class SkeletonShape(Enum):
    EMPTY = "Empty"
    ONE_EDGE = "OneEdge"
    TWO_MATCHING = "TwoMatching"
    P3 = "P3"
    P4 = "P4"
    TRIANGLE = "Triangle"
    CLAW = "Claw"
    C4 = "C4"
    PAW = "Paw"
    DIAMOND = "Diamond"
    K4 = "K4"


class Verdict(Enum):
    """SP ⊂ ASP-P ⊂ ASP，NonASP 在层级之外"""
    SP = "SP"
    ASP_P = "ASP_P"
    ASP = "ASP"
    NON_ASP = "NonASP"

    @property
    def rank(self):
        return _RANK[self]

    def satisfies(self, label):
        """
        判定结果是否满足语料标签（成员声明）

        Args:
            label: Verdict 或其字符串值；"ASP" 表示"至少是 ASP"

        Returns:
            bool
        """
        label = Verdict(label) if not isinstance(label, Verdict) else label
        if label is Verdict.NON_ASP:
            return self is Verdict.NON_ASP
        return self.rank <= label.rank

    @staticmethod
    def worst(verdicts):
        """层级中最弱的判定（空序列视为 SP）"""
        return max(verdicts, key=lambda v: v.rank, default=Verdict.SP)


_RANK = {Verdict.SP: 0, Verdict.ASP_P: 1, Verdict.ASP: 2, Verdict.NON_ASP: 3}

FORBIDDEN_ASP = frozenset({SkeletonShape.P3, SkeletonShape.P4})
FORBIDDEN_ASPP = frozenset({SkeletonShape.P3, SkeletonShape.P4, SkeletonShape.C4})
ALL_SHAPES = frozenset(SkeletonShape)


def _classify_slots(slots):
    edges = [SLOTS[i] for i in slots]
    deg = [0, 0, 0, 0]
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    m = len(edges)
    if m == 0:
        return SkeletonShape.EMPTY
    if m == 1:
        return SkeletonShape.ONE_EDGE
    if m == 2:
        return SkeletonShape.P3 if max(deg) == 2 else SkeletonShape.TWO_MATCHING
    if m == 3:
        if max(deg) == 3:
            return SkeletonShape.CLAW
        if deg.count(0) == 1:
            return SkeletonShape.TRIANGLE
        return SkeletonShape.P4
    if m == 4:
        return SkeletonShape.C4 if max(deg) == 2 else SkeletonShape.PAW
    if m == 5:
        return SkeletonShape.DIAMOND
    return SkeletonShape.K4


# 64 个槽位子集的形状表
SHAPE_TABLE = {
    frozenset(s): _classify_slots(s)
    for k in range(7)
    for s in combinations(range(6), k)
}


@dataclass(frozen=True)
class ForbiddenWitness:
    """嵌入的 K₄ 细分：4 个分支顶点与按 SLOTS 排列的 6 条分支路径"""
    branch_vertices: tuple
    branch_paths: tuple
    shape: SkeletonShape

    def vertices(self):
        seen = set(self.branch_vertices)
        for p in self.branch_paths:
            seen.update(p)
        return seen

    def edges(self):
        return {pair(a, b) for p in self.branch_paths for a, b in zip(p, p[1:])}

    def to_dict(self):
        return {
            'branch_vertices': [str(v) for v in self.branch_vertices],
            'branch_paths': [[str(v) for v in p] for p in self.branch_paths],
            'shape': self.shape.value,
        }


def skeleton_shape_of(w):
    """由未细分的分支路径（单边）查表得到骨架形状"""
    return SHAPE_TABLE[frozenset(i for i, p in enumerate(w.branch_paths) if len(p) == 2)]


def validate_witness(g, w):
    """
    独立校验见证：端点、连边、内部不交、形状重算

    Raises:
        InvalidWitness: 任一条件不满足
    """
    branch = w.branch_vertices
    if len(branch) != 4 or len(set(branch)) != 4:
        raise InvalidWitness("分支顶点必须是 4 个互不相同的顶点")
    if len(w.branch_paths) != 6:
        raise InvalidWitness("必须恰有 6 条分支路径")
    used = set(branch)
    for (i, j), path in zip(SLOTS, w.branch_paths):
        if len(path) < 2 or {path[0], path[-1]} != {branch[i], branch[j]}:
            raise InvalidWitness(f"路径 {path} 的端点不是 {branch[i]}, {branch[j]}")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                raise InvalidWitness(f"{a}-{b} 不是图中的边")
        for v in path[1:-1]:
            if v in used:
                raise InvalidWitness(f"顶点 {v} 被重复使用")
            used.add(v)
    if skeleton_shape_of(w) != w.shape:
        raise InvalidWitness(f"形状应为 {skeleton_shape_of(w).value}，记录为 {w.shape.value}")
    return True


def _check_size(g, limit):
    limit = config.ORACLE_VERTEX_LIMIT if limit is None else limit
    if g.number_of_nodes() > limit:
        raise SizeLimitExceeded(g.number_of_nodes(), limit)


def _adjacency(g):
    return {v: ordered(g[v]) for v in g}


def _iter_paths(adj, s, t, blocked, min_len=1):
    """深度优先惰性生成 s 到 t 避开 blocked 的简单路径（至少 min_len 条边）"""
    path = [s]
    on_path = {s}

    def dfs(v):
        for u in adj[v]:
            if u == t:
                if len(path) >= min_len:
                    yield tuple(path) + (t,)
                continue
            if u in blocked or u in on_path:
                continue
            path.append(u)
            on_path.add(u)
            yield from dfs(u)
            path.pop()
            on_path.discard(u)

    yield from dfs(s)


def _paths(adj, s, t, blocked, min_len=1):
    """s 到 t 避开 blocked 的全部简单路径，短路径在前"""
    found = list(_iter_paths(adj, s, t, blocked, min_len))
    found.sort(key=lambda p: (len(p), [vertex_key(v) for v in p]))
    return found


def _reachable(adj, s, t, blocked):
    seen = {s}
    frontier = [s]
    while frontier:
        v = frontier.pop()
        for u in adj[v]:
            if u == t:
                return True
            if u not in seen and u not in blocked:
                seen.add(u)
                frontier.append(u)
    return False


def _search_areas(g):
    """K₄ 细分是 2-连通的，只需在每个块内搜索"""
    areas = []
    for comp in nx.biconnected_components(g):
        if len(comp) < 4:
            continue
        block = g.subgraph(comp)
        cands = ordered(v for v in comp if block.degree(v) >= 3)
        if len(cands) >= 4:
            areas.append((min(vertex_key(v) for v in comp), block, cands))
    areas.sort(key=lambda a: a[0])
    return [(block, cands) for _, block, cands in areas]


def _embed(adj, quad, slots_order, fixed, used, chosen, min_len):
    """按槽位顺序回溯填充内部不交的分支路径"""
    if len(chosen) == len(slots_order):
        yield dict(chosen)
        return
    slot = slots_order[len(chosen)]
    i, j = SLOTS[slot]
    if slot in fixed:
        chosen[slot] = (quad[i], quad[j])
        yield from _embed(adj, quad, slots_order, fixed, used, chosen, min_len)
        del chosen[slot]
        return
    # 完整枚举：按长度排序；剪枝模式：惰性深搜
    if min_len == 1:
        candidates = _paths(adj, quad[i], quad[j], used)
    else:
        candidates = _iter_paths(adj, quad[i], quad[j], used, min_len)
    for path in candidates:
        interior = path[1:-1]
        used.update(interior)
        chosen[slot] = path
        if min_len == 1 or _remaining_reachable(adj, quad, slots_order, fixed, used, chosen):
            yield from _embed(adj, quad, slots_order, fixed, used, chosen, min_len)
        del chosen[slot]
        used.difference_update(interior)


def _remaining_reachable(adj, quad, slots_order, fixed, used, chosen):
    for slot in slots_order:
        if slot in chosen or slot in fixed:
            continue
        i, j = SLOTS[slot]
        if not _reachable(adj, quad[i], quad[j], used):
            return False
    return True


def _witness(quad, chosen):
    paths = tuple(chosen[s] for s in range(6))
    shape = SHAPE_TABLE[frozenset(i for i, p in enumerate(paths) if len(p) == 2)]
    return ForbiddenWitness(tuple(quad), paths, shape)


def enumerate_k4_subdivisions(g, limit=None):
    """
    枚举全部 K₄ 细分（完整搜索）

    分支顶点四元组按顺序取自度数不小于 3 的顶点，六个槽位按固定顺序回溯，
    每个槽位先试短路径。

    Args:
        g: 图（通常已做线程规范化）
        limit: 顶点数上限，默认 config.ORACLE_VERTEX_LIMIT

    Yields:
        ForbiddenWitness
    """
    _check_size(g, limit)
    for block, cands in _search_areas(g):
        adj = _adjacency(block)
        for quad in combinations(cands, 4):
            used = set(quad)
            for chosen in _embed(adj, quad, tuple(range(6)), frozenset(), used, {}, 1):
                yield _witness(quad, chosen)


def _find_shape_pruned(g, forbidden, limit, prefer=None):
    """
    剪枝模式：对每个形状精确指定未细分槽位，其余槽位必须被细分

    prefer 中的顶点越多的四元组越先尝试，搜索仍是完整的。
    """
    _check_size(g, limit)
    targets = [s for s, shape in SHAPE_TABLE.items() if shape in forbidden]
    targets.sort(key=lambda s: (-len(s), sorted(s)))
    prefer = frozenset(prefer or ())
    for block, cands in _search_areas(g):
        adj = _adjacency(block)
        quads = combinations(cands, 4)
        if prefer:
            quads = sorted(quads, key=lambda q: -len(prefer.intersection(q)))
        for quad in quads:
            for fixed in targets:
                if not all(block.has_edge(quad[i], quad[j]) for i, j in (SLOTS[s] for s in fixed)):
                    continue
                order = tuple(sorted(fixed)) + tuple(s for s in range(6) if s not in fixed)
                used = set(quad)
                if not _remaining_reachable(adj, quad, order, fixed, used, {}):
                    continue
                for chosen in _embed(adj, quad, order, fixed, used, {}, 2):
                    return _witness(quad, chosen)
    return None


def find_forbidden(g, forbidden, limit=None, prune=None, prefer=None):
    """
    返回第一个形状属于 forbidden 的 K₄ 细分

    Args:
        g: 图
        forbidden: SkeletonShape 集合；FORBIDDEN_ASP 判定 ASP，FORBIDDEN_ASPP 判定 ASP-P，
                   ALL_SHAPES 判定 SP
        limit: 顶点数上限
        prune: 是否使用剪枝搜索，默认 config.ORACLE_PRUNE
        prefer: 剪枝模式下优先尝试包含这些顶点的四元组

    Returns:
        ForbiddenWitness 或 None
    """
    forbidden = frozenset(forbidden)
    prune = config.ORACLE_PRUNE if prune is None else prune
    if prune:
        return _find_shape_pruned(g, forbidden, limit, prefer)
    for w in enumerate_k4_subdivisions(g, limit=limit):
        if w.shape in forbidden:
            return w
    return None


def achievable_shapes(g, limit=None):
    """可实现的全部骨架形状"""
    shapes = set()
    for w in enumerate_k4_subdivisions(g, limit=limit):
        shapes.add(w.shape)
        if len(shapes) == len(ALL_SHAPES):
            break
    return frozenset(shapes)


@dataclass(frozen=True)
class OracleResult:
    verdict: Verdict
    witness: ForbiddenWitness = None


def oracle_verdict(g, limit=None, prune=None):
    """
    按定义判定 SP / ASP-P / ASP / NonASP

    NonASP 附带 P3/P4 见证，ASP（非 ASP-P）附带 C4 见证。
    """
    prune = config.ORACLE_PRUNE if prune is None else prune
    if prune:
        w = _find_shape_pruned(g, FORBIDDEN_ASP, limit)
        if w is not None:
            return OracleResult(Verdict.NON_ASP, w)
        w = _find_shape_pruned(g, frozenset({SkeletonShape.C4}), limit)
        if w is not None:
            return OracleResult(Verdict.ASP, w)
        return OracleResult(Verdict.SP if is_sp(g) else Verdict.ASP_P)

    c4 = None
    any_k4 = False
    for w in enumerate_k4_subdivisions(g, limit=limit):
        any_k4 = True
        if w.shape in FORBIDDEN_ASP:
            return OracleResult(Verdict.NON_ASP, w)
        if c4 is None and w.shape is SkeletonShape.C4:
            c4 = w
    if c4 is not None:
        return OracleResult(Verdict.ASP, c4)
    return OracleResult(Verdict.ASP_P if any_k4 else Verdict.SP)


def is_sp(g):
    """
    串并联归约判定：每个块反复删去度 ≤ 1 的顶点、压缩 2 度顶点（平行边合并）

    块能归约为空当且仅当不含拓扑 K₄。
    """
    for comp in nx.biconnected_components(g):
        if len(comp) < 4:
            continue
        h = nx.Graph(g.subgraph(comp))
        changed = True
        while changed and h.number_of_nodes():
            changed = False
            for v in ordered(h):
                if v not in h:
                    continue
                d = h.degree(v)
                if d <= 1:
                    h.remove_node(v)
                    changed = True
                elif d == 2:
                    a, b = list(h[v])
                    h.remove_node(v)
                    h.add_edge(a, b)
                    changed = True
        if h.number_of_nodes():
            return False
    return True


def is_red_link(g, link, limit=None):
    """
    红链判定：加入一条相反类型的平行链后是否出现 P3/P4 形状

    Args:
        g: ASP 图
        link: 顶点对；若是骨架边则并联一条单位线程，若是窗口则并联一条边

    Raises:
        NotASPInput: g 本身已含禁止形状
    """
    u, v = link
    view = skeleton_view(g)
    h = nx.Graph(g)
    if g.has_edge(u, v) and u in view.skeleton_vertices and v in view.skeleton_vertices:
        h.add_edge(u, ('red', *pair(u, v)))
        h.add_edge(('red', *pair(u, v)), v)
    elif pair(u, v) in view.windows:
        h.add_edge(u, v)
    else:
        raise PreconditionViolated(f"{u}-{v} 既不是骨架边也不是窗口")
    w = find_forbidden(g, FORBIDDEN_ASP, limit=limit)
    if w is not None:
        raise NotASPInput(w)
    return find_forbidden(h, FORBIDDEN_ASP, limit=limit) is not None
