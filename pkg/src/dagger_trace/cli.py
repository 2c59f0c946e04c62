"""
Command-line front end for dagger-trace.

    dagger-trace eval session.json
    dagger-trace check --suite contraction-closure --seed 42 --cases 200
    dagger-trace corpus
    dagger-trace pinv --matrix "1, 1; 0, 1"
    dagger-trace trace --rig Integers --matrix "1, 0; 0, -1" --traced 1
    dagger-trace rigs

Reports are JSON on stdout (or ``--output``); logs go to stderr.
Exit codes: 0 pass, 1 assertion failure, 2 usage or parse error,
3 Unknown where existence was asserted.
"""

import argparse
import logging
import os
import sys
from dataclasses import asdict
from typing import List, Optional

from dotenv import load_dotenv

from . import __version__
from .common.config import Config, set_default_config
from .common.errors import DaggerTraceError, SessionError
from .corpus import CASES, CorpusSummary, run_all, run_case
from .generators import SAMPLE_CLASSES, GenConfig
from .laws import SUITES, run_suite
from .rigs import RIGS, get_rig
from .session import (
    EXIT_FAILED, EXIT_OK, EXIT_USAGE, REPORT_SCHEMA, SessionDocument, dumps, evaluate,
    per_binding_session, single_matrix_session,
)

logger = logging.getLogger(__name__)


def _config(args: argparse.Namespace) -> Config:
    config = Config(seed=getattr(args, 'seed', None), cases=getattr(args, 'cases', None),
                    rig=getattr(args, 'rig', None))
    set_default_config(config)
    return config


def _emit(report: dict, output: Optional[str]) -> None:
    text = dumps(report)
    if output:
        with open(output, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"Report written to {output}")
    else:
        sys.stdout.write(text)


def cmd_eval(args: argparse.Namespace) -> int:
    config = _config(args)
    report = evaluate(args.session, config, args.rig)
    _emit(report.as_dict(), args.output)
    return report.exit_code


def _matrix_document(args: argparse.Namespace, config: Config, op: str, **statement) -> SessionDocument:
    if bool(args.session) == bool(args.matrix):
        raise SessionError("give either a session file or --matrix")
    if args.matrix:
        return single_matrix_session(get_rig(args.rig or config.rig), args.matrix, op, **statement)
    return per_binding_session(SessionDocument.load(args.session, args.rig, config), op, **statement)


def cmd_pinv(args: argparse.Namespace) -> int:
    config = _config(args)
    document = _matrix_document(args, config, 'pinv', expect=args.expect)
    report = evaluate(document, config)
    _emit(report.as_dict(), args.output)
    return report.exit_code


def cmd_trace(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.traced is None and (args.dom is None or args.cod is None):
        raise SessionError("give --traced or both --dom and --cod")
    document = _matrix_document(args, config, 'trace', traced=args.traced, dom=args.dom, cod=args.cod,
                                expect=args.expect)
    report = evaluate(document, config)
    _emit(report.as_dict(), args.output)
    return report.exit_code


def cmd_check(args: argparse.Namespace) -> int:
    config = _config(args)
    gen = GenConfig.from_config(config)
    logger.info(f"Running suite {args.suite} over {gen.rig.name} (seed {gen.seed}, {config.cases} cases)")
    report = run_suite(args.suite, gen, config.cases, args.cls)
    _emit({'schema': REPORT_SCHEMA, 'command': 'check', 'config': config.as_dict(),
           'report': report.as_dict()}, args.output)
    if report.passed:
        logger.info(f"Suite {args.suite} passed")
        return EXIT_OK
    logger.error(f"Suite {args.suite} failed with {len(report.failures)} failures")
    return EXIT_FAILED


def cmd_corpus(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.case:
        summary = CorpusSummary([run_case(case_id, config) for case_id in sorted(set(args.case))])
    else:
        summary = run_all(config)
    _emit({'schema': REPORT_SCHEMA, 'command': 'corpus', **summary.as_dict()}, args.output)
    return EXIT_OK if summary.ok else EXIT_FAILED


def cmd_rigs(args: argparse.Namespace) -> int:
    _emit({'schema': REPORT_SCHEMA, 'command': 'rigs',
           'rigs': [asdict(rig.descriptor) for rig in RIGS.values()]}, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog='dagger-trace',
                                 description="Exact pseudoinverses and traces in dagger matrix categories")
    ap.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest='cmd', required=True)

    def common(p: argparse.ArgumentParser, rig: bool = True) -> None:
        if rig:
            p.add_argument('--rig', default=None, help="Rig name (overrides DAGGER_TRACE_RIG and the session)")
        p.add_argument('--output', '-o', default='', help="Write the report here instead of stdout")

    e = sub.add_parser('eval', help="Evaluate a session file")
    e.add_argument('session')
    common(e)
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser('check', help="Run a seeded law suite")
    c.add_argument('--suite', required=True, choices=sorted(SUITES))
    c.add_argument('--seed', type=int, default=None, help="Sampler seed (overrides DAGGER_TRACE_SEED)")
    c.add_argument('--cases', type=int, default=None, help="Samples per suite (overrides DAGGER_TRACE_CASES)")
    c.add_argument('--class', dest='cls', default=None, choices=SAMPLE_CLASSES,
                   help="Arrow class for the trace-axiom suite")
    common(c)
    c.set_defaults(func=cmd_check)

    k = sub.add_parser('corpus', help="Run the counterexample corpus")
    k.add_argument('--case', action='append', choices=sorted(CASES), help="Run only this case (repeatable)")
    common(k, rig=False)
    k.set_defaults(func=cmd_corpus)

    p = sub.add_parser('pinv', help="Pseudoinverse of a matrix or of every binding in a session")
    p.add_argument('session', nargs='?', default='')
    p.add_argument('--matrix', default='', help='Matrix literal, rows separated by ";", e.g. "1, 1; 0, 1"')
    p.add_argument('--expect', choices=('exists', 'not_exists'), default=None)
    common(p)
    p.set_defaults(func=cmd_pinv)

    t = sub.add_parser('trace', help="Kernel-image trace and pseudotrace")
    t.add_argument('session', nargs='?', default='')
    t.add_argument('--matrix', default='')
    t.add_argument('--traced', type=int, default=None, help="Trace out the last N coordinates")
    t.add_argument('--dom', type=int, nargs=2, default=None, metavar=('A', 'X'))
    t.add_argument('--cod', type=int, nargs=2, default=None, metavar=('B', 'X'))
    t.add_argument('--expect', choices=('exists', 'not_exists'), default=None)
    common(t)
    t.set_defaults(func=cmd_trace)

    r = sub.add_parser('rigs', help="List the shipped rigs")
    common(r, rig=False)
    r.set_defaults(func=cmd_rigs)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the command line."""
    load_dotenv()
    logging.basicConfig(
        level=os.getenv('LOG_LEVEL', 'INFO').strip().upper() or 'INFO',
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SessionError as e:
        logger.error(f"Session error: {e}")
        return EXIT_USAGE
    except (DaggerTraceError, ValueError, OSError) as e:
        logger.error(f"Fatal error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
