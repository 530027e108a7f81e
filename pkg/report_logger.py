"""
结果记录模块
每个图一条 JSON 记录（NDJSON），每项验证检查一行 CSV
"""
import csv
import json
from pathlib import Path

import config
import verify_config
from utils import (Fore, Style, color_text, format_seconds, format_timestamp, format_vertices, print_header,
                   print_separator)

REPORT_FIELDS = (
    'graph',
    'n',
    'm',
    'verdict',
    'family',
    'per_receptacle',
    'witness',
    'coloring',
    'timings',
    'error',
)

CHECK_FIELDS = (
    'timestamp',
    'check',
    'graph',
    'expected',
    'actual',
    'passed',
    'seconds',
    'notes',
)


def build_report(graph_name, g, classification=None, coloring=None, timings=None, error=None):
    """
    组装一条扁平记录，字段名固定

    Args:
        graph_name: 图的名字（文件名或语料编号）
        g: 图
        classification: Classification 或 None
        coloring: Coloring 或 None
        timings: {阶段: 秒}
        error: 错误描述
    """
    record = dict.fromkeys(REPORT_FIELDS)
    record.update({
        'graph': graph_name,
        'n': g.number_of_nodes(),
        'm': g.number_of_edges(),
        'timings': {k: round(v, 6) for k, v in sorted((timings or {}).items())},
        'error': error,
    })
    if classification is not None:
        data = classification.to_dict()
        record['verdict'] = data['verdict']
        record['family'] = data['family']
        record['per_receptacle'] = data['per_receptacle']
        record['witness'] = data['witness']
    if coloring is not None:
        record['coloring'] = coloring.to_dict()
    return record


class ReportLogger:
    """NDJSON 报告流与 CSV 验证日志"""

    def __init__(self, stream_file=None, log_file=None):
        """
        初始化记录器

        Args:
            stream_file: NDJSON 文件路径，默认使用配置中的路径
            log_file: 验证日志 CSV 路径，默认使用配置中的路径
        """
        self.stream_file = stream_file or config.REPORT_STREAM_FILE
        self.log_file = log_file or verify_config.VERIFY_LOG_FILE
        self._initialize_log_file()

    def _initialize_log_file(self):
        """日志文件不存在时创建并写入表头"""
        if not verify_config.LOG_RECORDS:
            return
        if not Path(self.log_file).exists():
            with open(self.log_file, 'w', newline='') as f:
                csv.writer(f).writerow(CHECK_FIELDS)

    def log_report(self, record):
        """追加一条 JSON 记录"""
        with open(self.stream_file, 'a', encoding='utf-8') as f:
            f.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")

    def log_check(self, check, graph, expected, actual, passed, seconds=0.0, notes=''):
        """
        记录一项验证检查

        Args:
            check: 检查名（oracle_agreement、receptacle_rule 等）
            graph: 图的名字
            expected / actual: 期望值与实际值
            passed: 是否通过
        """
        if not verify_config.LOG_RECORDS:
            return
        with open(self.log_file, 'a', newline='') as f:
            csv.writer(f).writerow([
                format_timestamp(),
                check,
                graph,
                expected,
                actual,
                int(bool(passed)),
                f"{seconds:.4f}",
                notes,
            ])


def print_report(record):
    """
    打印单个图的判定结果

    Args:
        record: build_report 的结果
    """
    print_header(f"{record['graph']}  (n={record['n']}, m={record['m']})")
    if record['error']:
        print(color_text(f"错误: {record['error']}", positive=False))
    if record['verdict']:
        ok = record['verdict'] != 'NonASP'
        print(f"判定: {color_text(record['verdict'], ok)}")
        print(f"族标签: {record['family']}")
    for entry in record['per_receptacle'] or []:
        windows = ", ".join("-".join(w) for w in entry['windows']) or "无"
        tag = " 退化" if entry['degenerate'] else (" 极端" if entry['extreme'] else "")
        print(f"  块 {entry['block']} 容器{tag}: {len(entry['vertices'])} 个顶点, 窗口 {windows} -> "
              f"{entry['verdict']} {entry['family']}")
    if record['witness']:
        w = record['witness']
        print_separator()
        print(f"见证（形状 {w['shape']}）分支顶点: {format_vertices(w['branch_vertices'])}")
        for path in w['branch_paths']:
            print(f"  {' - '.join(path)}")
    if record['coloring']:
        c = record['coloring']
        print_separator()
        print(f"着色: {c['colors_used']} 色（调色板 {c['palette_size']}）")
        for v, color in c['assignment'].items():
            print(f"{v}:{color}")
    if record['timings']:
        print(f"{Fore.CYAN}耗时: " + ", ".join(f"{k} {format_seconds(s)}" for k, s in record['timings'].items())
              + Style.RESET_ALL)


def print_summary(df):
    """
    打印验证汇总

    Args:
        df: 每项检查一行的 DataFrame（列同 CHECK_FIELDS）
    """
    print_header("验证汇总")
    if df.empty:
        print("没有执行任何检查")
        return
    grouped = df.groupby('check')['passed'].agg(['count', 'sum'])
    for check, row in grouped.iterrows():
        failed = int(row['count'] - row['sum'])
        status = color_text("通过", True) if failed == 0 else color_text(f"{failed} 项不一致", False)
        print(f"  {check:<24} {int(row['count']):>8} 项  {status}")
    print_separator()
    total_failed = int((~df['passed'].astype(bool)).sum())
    print(f"总计: {len(df)} 项检查, 总耗时 {format_seconds(df['seconds'].astype(float).sum())}")
    print(color_text("全部通过", True) if total_failed == 0 else color_text(f"{total_failed} 项不一致", False))
