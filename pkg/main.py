"""主程序入口"""
import argparse
import logging
import sys
from typing import List, Optional

from config import (
    CSV_LOG_DIR,
    DEFAULT_DEPTH,
    DEFAULT_SEED,
    ENABLE_CSV_LOG,
    LOG_DATE_FORMAT,
    LOG_FORMAT,
    LOG_LEVEL,
    MAX_DEPTH,
    MIN_DEPTH,
)
from csv_logger import CSVLogger
from models import Report, validate_report
from report_adapter import EngineReportAdapter, log_report_details, render_text
from LU_ClosureEngine.errors import EngineError
from LU_ClosureEngine.lu_signatures import parse_profile_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_ORACLE_MISMATCH = 3


class UsageError(Exception):
    """命令行用法错误（退出码 1）"""


class _ArgumentParser(argparse.ArgumentParser):
    """用法错误抛出 UsageError，而不是以退出码 2 结束进程"""

    def error(self, message):
        raise UsageError(message)


def _depth(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid depth: {text!r}") from None
    if not MIN_DEPTH <= value <= MAX_DEPTH:
        raise argparse.ArgumentTypeError(f"depth must be in [{MIN_DEPTH}, {MAX_DEPTH}]")
    return value


def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    common = _ArgumentParser(add_help=False)
    common.add_argument('--depth', type=_depth, default=DEFAULT_DEPTH,
                        help=f"oracle probe depth in [{MIN_DEPTH}, {MAX_DEPTH}]")
    common.add_argument('--seed', type=int, default=DEFAULT_SEED, help="realization seed")
    common.add_argument('--lambda', dest='lambda_tag', default=None,
                        help="language cardinality tag for continuum lower bounds")
    common.add_argument('--pretty', action='store_true', help="indent JSON output")
    common.add_argument('--format', choices=('json', 'text'), default='json')
    common.add_argument('--csv', action='store_true', help="append oracle/catalog rows to a CSV journal")
    common.add_argument('--log-level', default=LOG_LEVEL,
                        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'))

    parser = _ArgumentParser(prog='lu-engine',
                             description="Closure analysis of countable LU families")
    commands = parser.add_subparsers(dest='command', parser_class=_ArgumentParser)
    commands.required = True

    analyze = commands.add_parser('analyze', parents=[common], help="full report for a family")
    analyze.add_argument('expr')
    analyze.add_argument('--oracle', action='store_true', help="include the oracle check table")

    for name, text in (('closure', "completion only"), ('genset', "least generating set only"),
                       ('spectrum', "e-spectrum only")):
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.add_argument('expr')

    oracle = commands.add_parser('oracle', help="oracle verification")
    oracle_actions = oracle.add_subparsers(dest='action', parser_class=_ArgumentParser)
    oracle_actions.required = True
    verify = oracle_actions.add_parser('verify', parents=[common])
    verify.add_argument('expr')

    commands.add_parser('catalog', parents=[common], help="spectrum witness table")

    sig = commands.add_parser('sig', help="signature profile calculus")
    sig_actions = sig.add_subparsers(dest='action', parser_class=_ArgumentParser)
    sig_actions.required = True
    for name in ('supp', 'iilu'):
        sub = sig_actions.add_parser(name, parents=[common])
        sub.add_argument('profile', help="profile file ('-' for stdin)")
    for name in ('dom', 'similar'):
        sub = sig_actions.add_parser(name, parents=[common])
        sub.add_argument('profile')
        sub.add_argument('other')
    uniform = sig_actions.add_parser('uniformize', parents=[common])
    uniform.add_argument('arities', nargs='+', type=int)

    ptoy = commands.add_parser('ptoy', help="P-closures on the cardinality family")
    ptoy_actions = ptoy.add_subparsers(dest='action', parser_class=_ArgumentParser)
    ptoy_actions.required = True
    for name in ('clp', 'clpdr', 'genset'):
        sub = ptoy_actions.add_parser(name, parents=[common])
        sub.add_argument('subset', help="e.g. 3,5,omega | mod:2:0 | cofinite:1,2 | all")
    ptoy_actions.add_parser('hausdorff-demo', parents=[common])
    return parser


def _read_profile(path: str):
    if path == '-':
        return parse_profile_text(sys.stdin.read())
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return parse_profile_text(f.read())
    except OSError as e:
        raise UsageError(f"cannot read profile {path}: {e}") from e


def run_command(args: argparse.Namespace) -> Report:
    """执行一条已解析的命令并返回报告"""
    adapter = EngineReportAdapter(depth=args.depth, seed=args.seed, lambda_tag=args.lambda_tag)
    if args.command == 'analyze':
        return adapter.analyze(args.expr, with_oracle=args.oracle)
    if args.command == 'closure':
        return adapter.closure(args.expr)
    if args.command == 'genset':
        return adapter.genset(args.expr)
    if args.command == 'spectrum':
        return adapter.spectrum(args.expr)
    if args.command == 'oracle':
        return adapter.oracle(args.expr)
    if args.command == 'catalog':
        return adapter.catalog()
    if args.command == 'sig':
        if args.action == 'uniformize':
            return adapter.signature('uniformize', arities=args.arities)
        profiles = [_read_profile(args.profile)]
        if args.action in ('dom', 'similar'):
            profiles.append(_read_profile(args.other))
        return adapter.signature(args.action, profiles=profiles)
    if args.command == 'ptoy':
        return adapter.card_family(args.action, getattr(args, 'subset', None))
    raise UsageError(f"unknown command {args.command}")


def main(argv: Optional[List[str]] = None) -> int:
    """
    主函数

    Returns:
        退出码：0 成功，1 用法错误，2 校验错误，3 预言机不一致
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE

    # 日志写 stderr，stdout 只放报告
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format=LOG_FORMAT,
        datefmt=LOG_DATE_FORMAT,
        stream=sys.stderr,
    )

    try:
        report = run_command(args)
        validate_report(report.to_dict())
    except UsageError as e:
        logger.error(f"✗ {e}")
        return EXIT_USAGE
    except EngineError as e:
        logger.error(f"✗ {type(e).__name__}: {e}")
        return EXIT_VALIDATION
    except ValueError as e:
        logger.error(f"✗ {e}")
        return EXIT_USAGE

    log_report_details(report)
    if args.format == 'text':
        print(render_text(report))
    else:
        print(report.to_json(pretty=args.pretty))

    if args.csv or ENABLE_CSV_LOG:
        try:
            with CSVLogger(base_dir=CSV_LOG_DIR) as csv_logger:
                csv_logger.log_report(report)
        except OSError as e:
            logger.warning(f"Continuing without CSV logging: {e}")

    if report.oracle is not None and not report.oracle.passed:
        logger.error("✗ Oracle disagrees with the symbolic engine")
        return EXIT_ORACLE_MISMATCH
    if report.catalog is not None and not all(row['matches'] for row in report.catalog):
        logger.error("✗ Catalog witness spectrum mismatch")
        return EXIT_ORACLE_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
