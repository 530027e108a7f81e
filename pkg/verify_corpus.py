"""
批量验证
穷举 n ≤ max_n 的连通图，比较结构分类器与暴力 Oracle，检查容器规则、线程规范化不变性与着色上界
"""
import random
import time
from concurrent.futures import ProcessPoolExecutor

import networkx as nx
import pandas as pd

import config
import verify_config
from chromatic import chromatic_number_exact, color_asp, color_aspp, verify_coloring
from classifier import classify
from errors import AspKitError, ColoringOutcome
from forbidden_oracle import FORBIDDEN_ASP, FORBIDDEN_ASPP, Verdict, find_forbidden, oracle_verdict
from generators import enumerate_small_graphs
from graph_core import normalize_threads
from receptacles import is_asp_via_receptacles
from report_logger import CHECK_FIELDS, ReportLogger, print_summary
from utils import color_text, print_header

# 可注入的分类器变异，用于确认验证能发现错误
# small-skeleton: |V*| = 5、6 的虚拟 3-连通图不再交给 Oracle，n ≤ 6 的穷举就会出现分歧
MUTANTS = {
    'small-skeleton': ('SMALL_SKELETON_LIMIT', 4),
}


def _init_worker(mutant):
    if mutant:
        name, value = MUTANTS[mutant]
        setattr(config, name, value)


def _row(check, graph, expected, actual, passed, seconds, notes=''):
    return {
        'check': check,
        'graph': graph,
        'expected': str(expected),
        'actual': str(actual),
        'passed': bool(passed),
        'seconds': seconds,
        'notes': notes,
    }


def _graph_from(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def _check_coloring(name, g, verdict):
    rows = []
    for threshold, palette, color in ((Verdict.ASP, config.ASP_PALETTE, color_asp),
                                      (Verdict.ASP_P, config.ASPP_PALETTE, color_aspp)):
        if not verdict.satisfies(threshold):
            continue
        start = time.perf_counter()
        try:
            c = color(g)
            actual = c.colors_used
            ok = verify_coloring(g, c) and c.colors_used <= palette
        except ColoringOutcome as exc:
            # K₆ / K₅ 分量是唯一允许的例外
            c = exc.coloring
            actual = type(exc).__name__
            ok = c is not None and verify_coloring(g, c) and c.palette_size == palette + 1
        except AspKitError as exc:
            c, actual, ok = None, f"{type(exc).__name__}: {exc}", False
        if ok and c is not None and g.number_of_nodes() <= config.EXACT_COLORING_LIMIT:
            chi = chromatic_number_exact(g)
            ok = chi <= c.colors_used
        rows.append(_row(f"coloring_{threshold.value}", name, f"≤{palette}", actual, ok,
                         time.perf_counter() - start))
    return rows


def check_exhaustive_graph(task):
    """
    单个穷举图的全部检查（在 worker 进程中运行）

    Args:
        task: (名字, n, 边列表, 是否检查着色)

    Returns:
        检查行列表
    """
    name, n, edges, check_coloring = task
    g = _graph_from(n, edges)
    rows = []

    start = time.perf_counter()
    expected = oracle_verdict(normalize_threads(g)).verdict
    try:
        actual = classify(g).verdict
        notes = ''
    except AspKitError as exc:
        actual, notes = None, f"{type(exc).__name__}: {exc}"
    rows.append(_row('oracle_agreement', name, expected.value, actual.value if actual else 'error',
                     actual is expected, time.perf_counter() - start, notes))

    if n >= 3 and nx.is_biconnected(g):
        for label, forbidden in (('ASP', FORBIDDEN_ASP), ('ASP_P', FORBIDDEN_ASPP)):
            start = time.perf_counter()
            whole = find_forbidden(g, forbidden) is None
            parts = is_asp_via_receptacles(g, forbidden, oracle=True).ok
            rows.append(_row(f"receptacle_rule_{label}", name, whole, parts, whole == parts,
                             time.perf_counter() - start))

    if check_coloring and expected is not Verdict.NON_ASP:
        rows.extend(_check_coloring(name, g, expected))
    return rows


def check_normalization(task):
    """随机图在线程规范化前后的 Oracle 判定一致"""
    name, n, edges = task
    g = _graph_from(n, edges)
    start = time.perf_counter()
    before = oracle_verdict(g).verdict
    after = oracle_verdict(normalize_threads(g)).verdict
    return [_row('normalization', name, before.value, after.value, before is after, time.perf_counter() - start)]


def random_graph_tasks(count, max_n, probability, seed):
    """带种子的随机图（G(n, p)，n 在 4..max_n 中均匀选取）"""
    rng = random.Random(seed)
    tasks = []
    for i in range(count):
        n = rng.randint(4, max_n)
        g = nx.gnp_random_graph(n, probability, seed=rng.randrange(2 ** 31))
        tasks.append((f"random_{i:04d}_n{n}", n, sorted(g.edges())))
    return tasks


def exhaustive_tasks(max_n, check_coloring):
    tasks = []
    for n in range(1, max_n + 1):
        for i, g in enumerate(enumerate_small_graphs(n)):
            tasks.append((f"n{n}_{i:05d}", n, sorted(g.edges()), check_coloring))
    return tasks


def cmd_verify(max_n=None, jobs=None, random_count=None, mutant=None, logger=None):
    """
    执行全部验证检查

    Args:
        max_n: 穷举的最大顶点数
        jobs: 并行 worker 数
        random_count: 规范化检查用的随机图数量
        mutant: MUTANTS 中的名字；注入后应出现不一致
        logger: ReportLogger，None 时不写日志

    Returns:
        每项检查一行的 DataFrame
    """
    max_n = verify_config.DEFAULT_MAX_N if max_n is None else max_n
    jobs = verify_config.DEFAULT_JOBS if jobs is None else jobs
    random_count = verify_config.RANDOM_GRAPH_COUNT if random_count is None else random_count

    print_header(f"验证: n ≤ {max_n}, {jobs} 个 worker, {random_count} 个随机图")
    if mutant:
        print(color_text(f"注入变异: {mutant}", positive=False))

    exhaustive = exhaustive_tasks(max_n, verify_config.CHECK_COLORING)
    randoms = random_graph_tasks(random_count, verify_config.RANDOM_GRAPH_MAX_N,
                                 verify_config.RANDOM_EDGE_PROBABILITY, verify_config.RANDOM_SEED)
    rows = []
    if jobs <= 1:
        saved = {name: getattr(config, name) for name, _ in MUTANTS.values()}
        _init_worker(mutant)
        try:
            for task in exhaustive:
                rows.extend(check_exhaustive_graph(task))
            for task in randoms:
                rows.extend(check_normalization(task))
        finally:
            for name, value in saved.items():
                setattr(config, name, value)
    else:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(mutant,)) as pool:
            for result in pool.map(check_exhaustive_graph, exhaustive, chunksize=32):
                rows.extend(result)
            for result in pool.map(check_normalization, randoms, chunksize=8):
                rows.extend(result)

    df = pd.DataFrame(rows, columns=[c for c in CHECK_FIELDS if c != 'timestamp'])
    if logger is not None:
        for row in rows:
            logger.log_check(row['check'], row['graph'], row['expected'], row['actual'], row['passed'],
                             row['seconds'], row['notes'])
    print_summary(df)
    return df


def default_logger():
    return ReportLogger() if verify_config.LOG_RECORDS else None
