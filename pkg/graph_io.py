"""
图文件读写

格式：首行 "n m"，随后 m 行 "u v"（0 起的顶点编号），'#' 开头的行是注释。
"""
from pathlib import Path

import networkx as nx

from errors import GraphFormatError
from utils import ordered


def _int(token, line_number, what):
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"{what} 不是整数: {token!r}", line_number) from None


def parse_graph_text(text):
    """
    解析图文本

    Returns:
        顶点为 0..n-1 的 networkx.Graph

    Raises:
        GraphFormatError: 带行号
    """
    header = None
    g = nx.Graph()
    expected = 0
    last_line = 0
    for line_number, raw in enumerate(text.split('\n'), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        last_line = line_number
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"需要两个整数，实际为 {line!r}", line_number)
        a = _int(tokens[0], line_number, "第一个字段")
        b = _int(tokens[1], line_number, "第二个字段")
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError(f"首行 n、m 不能为负: {a} {b}", line_number)
            header = (a, b)
            expected = b
            g.add_nodes_from(range(a))
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"顶点编号越界（n={n}）: {a} {b}", line_number)
        if a == b:
            raise GraphFormatError(f"自环: {a} {b}", line_number)
        if g.has_edge(a, b):
            raise GraphFormatError(f"重复的边: {a} {b}", line_number)
        if g.number_of_edges() == expected:
            raise GraphFormatError(f"边数超过首行声明的 {expected}", line_number)
        g.add_edge(a, b)
    if header is None:
        raise GraphFormatError("缺少首行 \"n m\"", 1)
    if g.number_of_edges() != expected:
        raise GraphFormatError(f"首行声明 {expected} 条边，实际 {g.number_of_edges()} 条", last_line)
    return g


def read_graph(path):
    """
    读取图文件

    Raises:
        GraphFormatError: 格式错误或含非 ASCII 字节（带行号）
    """
    data = Path(path).read_bytes()
    try:
        text = data.decode('ascii')
    except UnicodeDecodeError as e:
        line_number = data.count(b"\n", 0, e.start) + 1
        raise GraphFormatError(f"非 ASCII 字节 0x{data[e.start]:02x}", line_number) from None
    return parse_graph_text(text)


def integer_labels(g):
    """顶点 -> 0..n-1 的映射；已经是 0..n-1 的图保持原编号"""
    if set(g) == set(range(g.number_of_nodes())):
        return {v: v for v in g}
    return {v: i for i, v in enumerate(ordered(g))}


def format_graph(g, comment=None):
    """
    生成图文本（ASCII，LF 换行）

    非整数顶点按 vertex_key 顺序编号。
    """
    mapping = integer_labels(g)
    edges = sorted(tuple(sorted((mapping[u], mapping[v]))) for u, v in g.edges())
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.number_of_nodes()} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def write_graph(g, path, comment=None):
    """写入图文件，返回顶点编号映射"""
    Path(path).write_bytes(format_graph(g, comment).encode('ascii'))
    return integer_labels(g)


def to_dot(g, witness=None):
    """
    DOT 文本；给定见证时分支顶点加粗、分支路径标红

    Args:
        g: 图
        witness: 可选的 ForbiddenWitness
    """
    def name(v):
        return '"' + str(v).replace('"', '\\"') + '"'

    branch = set(witness.branch_vertices) if witness else set()
    marked = {frozenset(e) for e in witness.edges()} if witness else set()
    lines = ["graph G {"]
    for v in ordered(g):
        attrs = ' [style=bold, color=red]' if v in branch else ''
        lines.append(f"  {name(v)}{attrs};")
    for u, v in sorted(g.edges(), key=lambda e: (str(e[0]), str(e[1]))):
        attrs = ' [color=red, penwidth=2]' if frozenset((u, v)) in marked else ''
        lines.append(f"  {name(u)} -- {name(v)}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"
