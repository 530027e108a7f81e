"""
ASP / ASP-P 结构识别

3-连通图按四类结构判定；虚拟 3-连通图在 |V*| ≤ 6 时交给 Oracle，
更大时按三族结构与"禁止骨架路径"判定。任意图先做容器分解再汇总。
"""
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

import networkx as nx

import config
from errors import (InconsistentVerdict, NotTriconnected, NotV3C, ParallelThreads,
                    ParameterError)
from forbidden_oracle import (FORBIDDEN_ASP, ForbiddenWitness, Verdict, find_forbidden, is_sp,
                              oracle_verdict, validate_witness)
from graph_core import (check_simple, is_virtually_3connected, lift_path,
                        normalize_threads_with_map, skeleton_view)
from receptacles import lift_path as lift_receptacle_path
from receptacles import receptacles
from utils import ordered


class FamilyKind(Enum):
    SMALL_CASE = "SmallCase"
    KE3R_DR = "KE3r_Dr"
    SR_WR = "Sr_Wr"
    FISHPOND = "Fishpond"
    TRUNCATED_CUBIC = "TruncatedCubic"
    WHEEL = "Wheel"
    K3R_DR_3CONN = "K3r_Dr_3conn"
    SP = "SP"
    NON_ASP = "NonASP"
    ORACLE = "Oracle"


@dataclass(frozen=True)
class FamilyTag:
    kind: FamilyKind
    r: int = None

    def __post_init__(self):
        minimum = {
            FamilyKind.KE3R_DR: config.MIN_KE3R_R,
            FamilyKind.K3R_DR_3CONN: config.MIN_KE3R_R,
            FamilyKind.SR_WR: config.MIN_WHEEL_R,
            FamilyKind.WHEEL: config.MIN_WHEEL_R,
        }.get(self.kind)
        if minimum is not None and (self.r is None or self.r < minimum):
            raise ParameterError(f"{self.kind.value} 需要 r ≥ {minimum}，实际 r={self.r}")

    def __str__(self):
        if self.r is None:
            return self.kind.value
        return f"{self.kind.value}({self.r})"


@dataclass(frozen=True, eq=False)
class Classification:
    verdict: Verdict
    family: FamilyTag
    witness: ForbiddenWitness = None
    per_receptacle: tuple = field(default_factory=tuple)

    def to_dict(self):
        return {
            'verdict': self.verdict.value,
            'family': str(self.family),
            'witness': self.witness.to_dict() if self.witness else None,
            'per_receptacle': list(self.per_receptacle),
        }


@dataclass(frozen=True)
class FishpondCheck:
    """鱼塘判定结果与未满足的条件"""
    ok: bool
    violations: tuple = ()

    def __bool__(self):
        return self.ok


# ==================== 家族匹配 ====================

def _only_threads_besides_skeleton(g, view):
    return g.number_of_nodes() == len(view.skeleton_vertices) + sum(len(t.interior) for t in view.threads)


def match_family_KE3r(g, view=None):
    """
    K₃,ᵣ ⊆ G ⊆ D̃ᵣ 匹配

    3-部为 d* ≥ 4 的三个顶点；r-部每个顶点恰与 3-部相邻且没有线程；
    多余的边只在 3-部三角形内，线程只平行于三角形的边。

    Returns:
        r 或 None
    """
    view = view or skeleton_view(g)
    skel = view.skeleton_vertices
    a_part = frozenset(v for v in skel if view.star_degree[v] >= config.MIN_KE3R_R)
    if len(a_part) != 3:
        return None
    b_part = skel - a_part
    if len(b_part) < config.MIN_KE3R_R:
        return None
    for b in b_part:
        if view.n1[b] != a_part or view.n2[b]:
            return None
    if any(not set(w) <= a_part for w in view.windows) or view.parallel_windows():
        return None
    if not _only_threads_besides_skeleton(g, view):
        return None
    return len(b_part)


def match_family_SrWr(g, view=None):
    """
    Sᵣ ⊆ G ⊆ W̃ᵣ 匹配

    轮毂与其余骨架顶点都有骨架边且不在任何窗口上；
    边与窗口在轮辋上组成一条经过全部轮辋顶点的回路。

    Returns:
        r 或 None
    """
    view = view or skeleton_view(g)
    skel = view.skeleton_vertices
    if view.parallel_windows() or not _only_threads_besides_skeleton(g, view):
        return None
    for hub in ordered(skel):
        if view.star_degree[hub] != len(skel) - 1 or view.n2[hub]:
            continue
        rim = skel - {hub}
        links = nx.Graph()
        links.add_nodes_from(rim)
        links.add_edges_from(e for e in view.skeleton_edges if hub not in e)
        links.add_edges_from(view.windows)
        if len(rim) < config.MIN_WHEEL_R:
            continue
        if all(d == 2 for _, d in links.degree()) and nx.is_connected(links):
            return len(rim)
    return None


def is_truncated_cubic(g):
    """3-正则且每个顶点恰在一个三角形中"""
    if g.number_of_nodes() == 0 or any(d != 3 for _, d in g.degree()):
        return False
    return all(t == 1 for t in nx.triangles(g).values())


def is_wheel(g):
    """轮毂与其余顶点都相邻、其余顶点构成回路；返回 r 或 None"""
    n = g.number_of_nodes()
    if n < 4 or g.number_of_edges() != 2 * (n - 1):
        return None
    for hub in ordered(v for v in g if g.degree(v) == n - 1):
        rim = g.subgraph([v for v in g if v != hub])
        if all(d == 2 for _, d in rim.degree()) and nx.is_connected(rim):
            return n - 1
    return None


def _skeleton_triangles(star):
    return [tuple(ordered(c)) for c in nx.enumerate_all_cliques(star) if len(c) == 3]


def _is_bowtie(j):
    """两个边不交、只共用一个顶点的三角形"""
    if j.number_of_nodes() != 5 or j.number_of_edges() != 6:
        return False
    degs = sorted(d for _, d in j.degree())
    return degs == [2, 2, 2, 2, 4] and sum(nx.triangles(j).values()) == 6


def is_fishpond(g, view=None, assume_v3c=False):
    """
    鱼塘判定

    Δ(G*) ≤ 4；每个 d* ≥ 2 的顶点在骨架三角形中；骨架三角形的边上没有平行线程，
    且至少两个顶点满足 |N(v)| = 3；每个骨架分量至多 3 个顶点，或 Δ(J) = 3 且是截断三次图的
    连通子图（每个顶点至多在一个三角形中、3 度顶点 |N(v)| = 3），或是共点的两个三角形。

    Args:
        g: 虚拟 3-连通图
        view: 可选的骨架视图
        assume_v3c: 调用方已保证虚拟 3-连通

    Returns:
        FishpondCheck
    """
    if not assume_v3c and not is_virtually_3connected(g):
        raise NotV3C("is_fishpond 需要虚拟 3-连通图")
    view = view or skeleton_view(g)
    star = view.skeleton_graph
    links = {v: view.n1[v] | view.n2[v] for v in view.skeleton_vertices}
    violations = []

    max_star = max(view.star_degree.values(), default=0)
    if max_star > 4:
        violations.append(f"Δ(G*) = {max_star} > 4")

    triangles = _skeleton_triangles(star)
    in_triangle = {v for t in triangles for v in t}
    for v in ordered(view.skeleton_vertices):
        if view.star_degree[v] >= 2 and v not in in_triangle:
            violations.append(f"A.1: 顶点 {v} 的 d* = {view.star_degree[v]} 但不在骨架三角形中")

    for t in triangles:
        for a, b in combinations(t, 2):
            if (a, b) in view.windows or (b, a) in view.windows:
                violations.append(f"A.2: 三角形 {t} 的边 {a}-{b} 上有平行线程")
        if sum(1 for v in t if len(links[v]) == 3) < 2:
            violations.append(f"A.2: 三角形 {t} 中 |N(v)| = 3 的顶点少于两个")

    for comp in nx.connected_components(star):
        j = star.subgraph(comp)
        if j.number_of_nodes() <= 3 or _is_bowtie(j):
            continue
        label = ordered(comp)
        if max(d for _, d in j.degree()) != 3:
            violations.append(f"A.3: 骨架分量 {label} 的最大度不是 3")
            continue
        tri = nx.triangles(j)
        if any(c > 1 for c in tri.values()):
            violations.append(f"A.3: 骨架分量 {label} 含 K₄⁻ 或共点三角形")
        if any(len(links[v]) != 3 for v, d in j.degree() if d == 3):
            violations.append(f"A.3: 骨架分量 {label} 中 3 度顶点还有额外的链")

    return FishpondCheck(ok=not violations, violations=tuple(violations))


# ==================== 禁止骨架路径 ====================

def _two_paths_avoiding(h, x, y, avoid):
    """
    h 中是否有两条内部不交的 x-y 路径，且 avoid 中至少一个顶点未被使用

    avoid 为空时只判断两条路径是否存在。
    """
    if x not in h or y not in h:
        return False
    d = nx.DiGraph()
    for u in h:
        if u in (x, y):
            continue
        d.add_edge(('in', u), ('out', u), capacity=1, weight=1 if u in avoid else 0)
    for a, b in h.edges():
        for s, t in ((a, b), (b, a)):
            if s == y or t == x:
                continue
            d.add_edge(('out', s), ('in', t), weight=0)
    source, target = ('out', x), ('in', y)
    if source not in d or target not in d:
        return False
    d.add_edge(target, 'final', capacity=2, weight=0)
    flow = nx.max_flow_min_cost(d, source, 'final')
    if flow[target]['final'] < 2:
        return False
    return not avoid or nx.cost_of_flow(d, flow) < len(avoid)


def has_forbidden_skeleton_path(g, view=None):
    """
    禁止骨架路径检测

    寻找骨架路径 [x, v, y] 与经过 x、y 但不经过 v 和 xy 边的回路 C，
    使 (N²(v) - {x, y}) ∪ (N¹(v) - C) 非空。存在即说明图不是 ASP-P。

    每个骨架顶点的每对骨架邻点各做一次最小费用流，共 Σ d*(v)² 次；
    高度数的轮毂（例如 W₃₅）或数百个顶点的鱼塘需要数秒。

    Returns:
        (x, v, y) 或 None
    """
    view = view or skeleton_view(g)
    for v in ordered(view.skeleton_vertices):
        nbrs = ordered(view.n1[v])
        for x, y in combinations(nbrs, 2):
            h = nx.Graph(g)
            h.remove_node(v)
            if h.has_edge(x, y):
                h.remove_edge(x, y)
            if view.n2[v] - {x, y}:
                if _two_paths_avoiding(h, x, y, frozenset()):
                    return (x, v, y)
                continue
            avoid = frozenset(nbrs) - {x, y}
            if avoid and _two_paths_avoiding(h, x, y, avoid):
                return (x, v, y)
    return None


# ==================== 见证 ====================

def _lift_witness(w, kept):
    paths = tuple(lift_path(p, kept) for p in w.branch_paths)
    return ForbiddenWitness(w.branch_vertices, paths, w.shape)


def _structural_witness(g, prefer=()):
    """对规范化图做剪枝搜索得到 P3/P4 见证，再展开线程"""
    h, kept = normalize_threads_with_map(g)
    w = find_forbidden(h, FORBIDDEN_ASP, limit=float('inf'), prune=True, prefer=prefer)
    if w is None:
        raise InconsistentVerdict("结构判定为 NonASP，但剪枝搜索没有找到 P3/P4 形状的见证")
    w = _lift_witness(w, kept)
    validate_witness(g, w)
    return w


def _small_case(g, view, limit):
    h, kept = normalize_threads_with_map(g)
    result = oracle_verdict(h, limit=limit)
    witness = _lift_witness(result.witness, kept) if result.witness else None
    if witness is not None:
        validate_witness(g, witness)
    if result.verdict is Verdict.SP:
        family = FamilyTag(FamilyKind.SP)
    elif result.verdict is Verdict.NON_ASP:
        family = FamilyTag(FamilyKind.NON_ASP)
    else:
        family = FamilyTag(FamilyKind.SMALL_CASE, len(view.skeleton_vertices))
    return Classification(result.verdict, family, witness)


# ==================== 判定入口 ====================

def _three_connected_aspp_tag(g):
    """没有线程的 ASP-P 容器：轮图或截断三次图给出 3-连通族标签"""
    r = is_wheel(g)
    if r is not None and r >= config.MIN_WHEEL_R:
        return FamilyTag(FamilyKind.WHEEL, r)
    if is_truncated_cubic(g) and nx.node_connectivity(g) >= 3:
        return FamilyTag(FamilyKind.TRUNCATED_CUBIC)
    return None


def _classify_receptacle(g, limit=None):
    view = skeleton_view(g)
    n_star = len(view.skeleton_vertices)
    if n_star == 0:
        return Classification(Verdict.SP, FamilyTag(FamilyKind.SP))
    if n_star <= config.SMALL_SKELETON_LIMIT:
        return _small_case(g, view, limit)

    parallel = view.parallel_windows()
    if parallel:
        raise ParallelThreads(parallel[0])

    path = has_forbidden_skeleton_path(g, view)
    if path is None:
        if is_sp(g):
            return Classification(Verdict.SP, FamilyTag(FamilyKind.SP))
        if not view.threads:
            tag = _three_connected_aspp_tag(g)
            if tag is not None:
                return Classification(Verdict.ASP_P, tag)
        r = match_family_SrWr(g, view)
        if r is not None:
            return Classification(Verdict.ASP_P, FamilyTag(FamilyKind.SR_WR, r))
        return Classification(Verdict.ASP_P, FamilyTag(FamilyKind.FISHPOND))

    r = match_family_KE3r(g, view)
    if r is not None:
        return Classification(Verdict.ASP, FamilyTag(FamilyKind.KE3R_DR, r))
    return Classification(Verdict.NON_ASP, FamilyTag(FamilyKind.NON_ASP), _structural_witness(g, path))


def classify_v3c(g, limit=None):
    """
    虚拟 3-连通图的判定

    |V*| ≤ 6 时对规范化图调用 Oracle；否则：没有禁止骨架路径即为 ASP-P（轮族或鱼塘），
    有禁止骨架路径时只有 K₃,ᵣ ⊆ G ⊆ D̃ᵣ 族是 ASP，其余 NonASP 并附见证。

    Args:
        g: 虚拟 3-连通图，或不含骨架顶点的退化分量
        limit: Oracle 顶点数上限

    Returns:
        Classification
    """
    check_simple(g)
    view = skeleton_view(g)
    if not view.skeleton_vertices:
        return Classification(Verdict.SP, FamilyTag(FamilyKind.SP))
    if not is_virtually_3connected(g):
        raise NotV3C("classify_v3c 需要虚拟 3-连通图")
    return _classify_receptacle(g, limit)


def classify_3connected(g, limit=None):
    """
    3-连通图的判定：|V| ≤ 6，K₃,ᵣ ⊆ G ⊆ Dᵣ (r ≥ 4)，Wᵣ (r ≥ 6)，或截断三次图

    Returns:
        Classification
    """
    check_simple(g)
    if g.number_of_nodes() < 4 or nx.node_connectivity(g) < 3:
        raise NotTriconnected("classify_3connected 需要 3-连通图")
    view = skeleton_view(g)
    if g.number_of_nodes() <= config.SMALL_SKELETON_LIMIT:
        return _small_case(g, view, limit)
    r = match_family_KE3r(g, view)
    if r is not None:
        return Classification(Verdict.ASP, FamilyTag(FamilyKind.K3R_DR_3CONN, r))
    r = is_wheel(g)
    if r is not None and r >= config.MIN_WHEEL_R:
        return Classification(Verdict.ASP_P, FamilyTag(FamilyKind.WHEEL, r))
    if is_truncated_cubic(g):
        return Classification(Verdict.ASP_P, FamilyTag(FamilyKind.TRUNCATED_CUBIC))
    return Classification(Verdict.NON_ASP, FamilyTag(FamilyKind.NON_ASP), _structural_witness(g))


def _receptacle_entry(r, c):
    return {
        'block': r.block_index,
        'vertices': [str(v) for v in ordered(r.host_vertices())],
        'windows': [[str(a), str(b)] for a, b in sorted(r.windows, key=lambda w: (str(w[0]), str(w[1])))],
        'extreme': r.extreme,
        'degenerate': r.degenerate,
        'verdict': c.verdict.value,
        'family': str(c.family),
    }


def classify(g, oracle=False, limit=None):
    """
    完整流程：块 -> 容器 -> 逐个判定 -> 取最弱判定，见证展开回原图

    Args:
        g: 任意简单图
        oracle: True 时直接对规范化后的整图调用暴力 Oracle
        limit: Oracle 顶点数上限

    Returns:
        Classification
    """
    check_simple(g)
    if oracle:
        h, kept = normalize_threads_with_map(g)
        result = oracle_verdict(h, limit=limit)
        witness = _lift_witness(result.witness, kept) if result.witness else None
        return Classification(result.verdict, FamilyTag(FamilyKind.ORACLE), witness)

    decomp = receptacles(g)
    entries = []
    for r in decomp.all_receptacles():
        if r.degenerate:
            c = Classification(Verdict.SP, FamilyTag(FamilyKind.SP))
        else:
            c = _classify_receptacle(r.graph, limit)
        entries.append((r, c))

    verdict = Verdict.worst(c.verdict for _, c in entries)
    family = FamilyTag(FamilyKind.SP)
    witness = None
    for r, c in entries:
        if c.verdict is verdict:
            family = c.family
            if c.witness is not None:
                paths = tuple(lift_receptacle_path(decomp, r, p) for p in c.witness.branch_paths)
                witness = ForbiddenWitness(c.witness.branch_vertices, paths, c.witness.shape)
                validate_witness(g, witness)
            break
    return Classification(
        verdict=verdict,
        family=family,
        witness=witness,
        per_receptacle=tuple(_receptacle_entry(r, c) for r, c in entries),
    )
