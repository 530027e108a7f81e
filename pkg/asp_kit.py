"""
asp-kit 命令行入口
classify / color / generate / verify 四个子命令

退出码：0 = 属于该类（或成功），1 = 不属于（或验证不一致），2 = 错误，3 = K₆/K₅ 例外
"""
import argparse
import json
import sys
import time
from pathlib import Path

import pandas as pd

import config
import verify_config
from chromatic import brooks_color3, color_asp, color_aspp, exact_coloring, verify_coloring
from classifier import classify
from errors import AspKitError, K5Exception, K6Exception, NotASP, NotASPP
from forbidden_oracle import Verdict
from generators import GeneratorSpec, build, random_asp_corpus
from graph_io import read_graph, to_dot, write_graph
from report_logger import ReportLogger, build_report, print_report
from utils import color_text, warn_text
from verify_corpus import MUTANTS, cmd_verify, default_logger

EXIT_MEMBER = 0
EXIT_NON_MEMBER = 1
EXIT_ERROR = 2
EXIT_EXCEPTION = 3


def _emit(record, as_json, log):
    if as_json:
        print(json.dumps(record, ensure_ascii=False, sort_keys=True))
    else:
        print_report(record)
    if log:
        ReportLogger().log_report(record)


def cmd_classify(args):
    """判定 ASP / ASP-P，--oracle 走暴力路径"""
    g = read_graph(args.input)
    start = time.perf_counter()
    result = classify(g, oracle=args.oracle)
    record = build_report(Path(args.input).name, g, classification=result,
                          timings={'classify': time.perf_counter() - start})
    _emit(record, args.json, args.log)
    if args.dot:
        Path(args.dot).write_text(to_dot(g, result.witness), encoding='ascii')
    target = Verdict.ASP_P if args.aspp else Verdict.ASP
    return EXIT_MEMBER if result.verdict.satisfies(target) else EXIT_NON_MEMBER


def cmd_color(args):
    """k=5 构造性 ASP 着色，k=4 ASP-P 着色，k=3 Brooks；--exact 用精确求解"""
    g = read_graph(args.input)
    name = Path(args.input).name
    start = time.perf_counter()
    try:
        if args.exact:
            coloring = exact_coloring(g)
        else:
            coloring = {5: color_asp, 4: color_aspp, 3: brooks_color3}[args.k](g)
    except (K6Exception, K5Exception) as exc:
        print(warn_text(f"{type(exc).__name__}: {exc}"), file=sys.stderr)
        record = build_report(name, g, coloring=exc.coloring, error=type(exc).__name__,
                              timings={'color': time.perf_counter() - start})
        _emit(record, args.json, args.log)
        return EXIT_EXCEPTION
    except (NotASP, NotASPP) as exc:
        print(color_text(f"{type(exc).__name__}: {exc}", positive=False), file=sys.stderr)
        record = build_report(name, g, error=type(exc).__name__)
        if exc.witness is not None:
            record['witness'] = exc.witness.to_dict()
        _emit(record, args.json, args.log)
        return EXIT_NON_MEMBER
    if not verify_coloring(g, coloring):
        raise AspKitError("着色未通过独立校验")
    record = build_report(name, g, coloring=coloring, timings={'color': time.perf_counter() - start})
    _emit(record, args.json, args.log)
    return EXIT_MEMBER


def _generator_spec(family, params, skip, seed):
    """把位置参数整理成 GeneratorSpec"""
    ints = lambda xs: [int(x) for x in xs]  # noqa: E731
    if family in ("wheel", "wheel-minus", "k3r", "d", "d-mod"):
        return GeneratorSpec(family, {'r': int(params[0])}, seed)
    if family == "wheel-mod":
        p = {'r': int(params[0])}
        if len(params) > 1:
            p['threads'] = tuple(ints(params[1:]))
        return GeneratorSpec(family, p, seed)
    if family == "spoked":
        p = {'r': int(params[0])}
        if len(params) > 1:
            p['lengths'] = tuple(ints(params[1:]))
        return GeneratorSpec(family, p, seed)
    if family in ("truncate-cubic", "total-subdivision"):
        return GeneratorSpec(family, {'seed_graph': params[0]}, seed)
    if family in ("gadget-k5minus", "gadget-y"):
        return GeneratorSpec(family, {'seed_graph': params[0], 'skip': int(skip)}, seed)
    if family == "gadget-wheel-minus":
        return GeneratorSpec(family, {'seed_graph': params[0], 'r': int(params[1]), 'skip': int(skip)}, seed)
    return GeneratorSpec(family, {}, seed)


def cmd_generate(args):
    """写出生成的图文件；corpus 同时写标签清单"""
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.family == "corpus":
        entries = random_asp_corpus(seed=args.seed, count=args.count,
                                    size_range=(args.min_n, args.max_n))
        rows = []
        for e in entries:
            path = out / f"{e.name}.txt"
            write_graph(e.graph, path, comment=f"{e.name} label={e.label}")
            rows.append({'name': e.name, 'file': path.name, 'label': e.label,
                         'n': e.graph.number_of_nodes(), 'm': e.graph.number_of_edges()})
        manifest = out / config.CORPUS_MANIFEST_FILE
        pd.DataFrame(rows, columns=['name', 'file', 'label', 'n', 'm']).to_csv(manifest, index=False)
        print(color_text(f"已写出 {len(rows)} 个图与清单 {manifest}"))
        return EXIT_MEMBER
    try:
        spec = _generator_spec(args.family, args.params, args.skip, None)
    except (IndexError, ValueError):
        raise AspKitError(f"{args.family} 的参数无效: {' '.join(args.params)}") from None
    g = build(spec)
    path = out / f"{spec.file_stem()}.txt"
    write_graph(g, path, comment=spec.file_stem())
    print(color_text(f"已写出 {path}（{g.number_of_nodes()} 个顶点, {g.number_of_edges()} 条边）"))
    return EXIT_MEMBER


def cmd_verify_entry(args):
    df = cmd_verify(max_n=args.max_n, jobs=args.jobs, random_count=args.random_count,
                    mutant=args.mutant, logger=default_logger())
    return EXIT_MEMBER if bool(df['passed'].all()) else EXIT_NON_MEMBER


def build_parser():
    parser = argparse.ArgumentParser(description='ASP / ASP-P 图识别、分解与着色')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('classify', help='判定 ASP / ASP-P')
    p.add_argument('input', help='图文件（首行 "n m"）')
    p.add_argument('--oracle', action='store_true', help='使用暴力 Oracle 判定整图')
    p.add_argument('--aspp', action='store_true', help='以 ASP-P 成员关系决定退出码')
    p.add_argument('--json', action='store_true', help='输出 JSON 记录')
    p.add_argument('--dot', metavar='FILE', help='把图与见证写成 DOT')
    p.add_argument('--log', action='store_true', help=f'追加记录到 {config.REPORT_STREAM_FILE}')
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser('color', help='构造性着色')
    p.add_argument('input', help='图文件')
    p.add_argument('--k', type=int, choices=(3, 4, 5), default=5, help='调色板大小')
    p.add_argument('--exact', action='store_true', help='精确求解色数')
    p.add_argument('--json', action='store_true', help='输出 JSON 记录')
    p.add_argument('--log', action='store_true', help=f'追加记录到 {config.REPORT_STREAM_FILE}')
    p.set_defaults(func=cmd_color)

    p = sub.add_parser('generate', help='生成图族、替换构造或随机语料')
    p.add_argument('family', help='wheel / wheel-mod / spoked / wheel-minus / k3r / d / d-mod / '
                                  'truncate-cubic / total-subdivision / gadget-k5minus / gadget-y / '
                                  'gadget-wheel-minus / k5-minus / y / petersen / prism / corpus')
    p.add_argument('params', nargs='*', help='族参数，例如 r 或种子图名')
    p.add_argument('--skip', action='store_true', help='替换构造保留种子图的第一条边')
    p.add_argument('--seed', type=int, default=0, help='随机种子（corpus）')
    p.add_argument('--count', type=int, default=10, help='样本数量（corpus）')
    p.add_argument('--min-n', type=int, default=4, help='最少顶点数（corpus）')
    p.add_argument('--max-n', type=int, default=60, help='最多顶点数（corpus）')
    p.add_argument('--out', default='.', help='输出目录')
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser('verify', help='穷举与随机验证')
    p.add_argument('--max-n', type=int, default=verify_config.DEFAULT_MAX_N)
    p.add_argument('--jobs', type=int, default=verify_config.DEFAULT_JOBS)
    p.add_argument('--random-count', type=int, default=verify_config.RANDOM_GRAPH_COUNT)
    p.add_argument('--mutant', choices=sorted(MUTANTS), help='注入分类器变异：small-skeleton 把交给 Oracle 的阈值降到 |V*| ≤ 4。'
                   '轮族 r 下界的变异只在 n ≥ 9 时才有差异，n ≤ 8 的穷举发现不了，因此不提供')
    p.set_defaults(func=cmd_verify_entry)
    return parser


def main(argv=None):
    """主函数"""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AspKitError as e:
        print(color_text(f"错误: {e}", positive=False), file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print(color_text(f"错误: {e}", positive=False), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
