"""
辅助函数模块
"""
from datetime import datetime

from colorama import Fore, Style, init

# 初始化 colorama
init(autoreset=True)


def vertex_key(v):
    """
    顶点排序键：整数在前，其余按字符串表示

    Args:
        v: 任意可哈希的顶点标识

    Returns:
        可比较的排序键
    """
    if isinstance(v, bool):
        return (1, 0, str(v))
    if isinstance(v, int):
        return (0, v, '')
    return (1, 0, str(v))


def ordered(vertices):
    """按 vertex_key 排序后的列表"""
    return sorted(vertices, key=vertex_key)


def pair(u, v):
    """无序顶点对，按确定顺序存为元组"""
    return (u, v) if vertex_key(u) <= vertex_key(v) else (v, u)


def pair_key(p):
    """顶点对的排序键"""
    return (vertex_key(p[0]), vertex_key(p[1]))


def format_vertices(vertices):
    """格式化顶点序列显示"""
    return " ".join(str(v) for v in vertices)


def format_seconds(seconds):
    """格式化耗时"""
    if seconds < 1:
        return f"{seconds * 1000:.1f}ms"
    return f"{seconds:.2f}s"


def color_text(text, positive=True):
    """
    根据结果给文本上色

    Args:
        text: 要显示的文本
        positive: True 为绿色（通过），False 为红色（失败）

    Returns:
        带颜色的文本
    """
    color = Fore.GREEN if positive else Fore.RED
    return f"{color}{text}{Style.RESET_ALL}"


def warn_text(text):
    """黄色提示文本"""
    return f"{Fore.YELLOW}{text}{Style.RESET_ALL}"


def format_timestamp():
    """返回当前时间戳字符串"""
    return datetime.now().strftime("%Y-%m-%d %H:%M:%S")


def print_header(text):
    """打印标题"""
    print(f"\n{Fore.CYAN}{'=' * 80}")
    print(f"{text.center(80)}")
    print(f"{'=' * 80}{Style.RESET_ALL}\n")


def print_separator():
    """打印分隔线"""
    print(f"{Fore.YELLOW}{'-' * 80}{Style.RESET_ALL}")
