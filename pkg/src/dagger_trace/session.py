"""
Session documents and reports.

A session is a JSON document naming a rig, a set of matrix bindings and a
program of statements evaluated in order:

    {
      "schema": "dagger-trace-session/1",
      "rig": "Integers",
      "bindings": {"f": [["1", "0"], ["0", "-1"]]},
      "program": [
        {"op": "trace", "args": ["f"], "dom": [1, 1], "cod": [1, 1], "expect": [["1"]]},
        {"op": "pseudotrace", "args": ["f"], "traced": 1, "expect": "not_exists"}
      ]
    }

Evaluating it yields a report (schema ``dagger-trace-report/1``) with one
result object per statement. Element strings are always in the rig's own
grammar, so every reported matrix parses back to the same value.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, List, Optional, Union

from .common.config import Config, default_config
from .common.errors import DaggerTraceError, SessionError
from .common.verdict import Exists, NotExists, Unknown, Verdict
from .matrix import BlockPartition, Matrix, add, compose_all, dagger, oplus
from .positivity import is_positive, leq_identity
from .predicates import (
    is_cocontraction, is_coisometry, is_contraction, is_dagger_idempotent, is_idempotent,
    is_isometry, is_mono, is_self_adjoint, is_unitary, is_unitary_component,
)
from .pseudoinverse import is_ep, pinv
from .rigs import Rig, get_rig
from .trace import TraceProblem, TraceResult, kernel_image_trace, pseudotrace

logger = logging.getLogger(__name__)

SESSION_SCHEMA = 'dagger-trace-session/1'
REPORT_SCHEMA = 'dagger-trace-report/1'

# Exit codes shared with the command line.
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3

_BOOL_PREDICATES = {
    'is_isometry': is_isometry,
    'is_coisometry': is_coisometry,
    'is_unitary': is_unitary,
    'is_self_adjoint': is_self_adjoint,
    'is_idempotent': is_idempotent,
    'is_dagger_idempotent': is_dagger_idempotent,
}

_VERDICT_PREDICATES = {
    'is_contraction': is_contraction,
    'is_cocontraction': is_cocontraction,
    'is_unitary_component': is_unitary_component,
    'is_mono': is_mono,
    'is_ep': is_ep,
    'is_positive': is_positive,
    'leq_identity': leq_identity,
}

MATRIX_OPS = ('compose', 'dagger', 'oplus', 'add')
PARTIAL_OPS = ('trace', 'pseudotrace', 'pinv')
OPERATIONS = MATRIX_OPS + PARTIAL_OPS + tuple(_BOOL_PREDICATES) + tuple(_VERDICT_PREDICATES)

_KIND_EXPECTATIONS = ('exists', 'not_exists', 'unknown')


# -- literals -----------------------------------------------------------------

def parse_matrix(rig: Rig, literal: Any) -> Matrix:
    """A matrix literal: nested rows, ``{"shape": [r, c], "entries": rows}`` or ``"1, 0; 0, 1"``."""
    if isinstance(literal, str):
        return Matrix.from_text(rig, literal)
    if isinstance(literal, dict):
        shape = literal.get('shape')
        entries = literal.get('entries', [])
        if not (isinstance(shape, list) and len(shape) == 2):
            raise SessionError("matrix object needs a two-element 'shape'")
        m = parse_matrix(rig, entries) if entries else Matrix(rig, shape[0], shape[1], [[]] * shape[0])
        if list(m.shape) != list(shape):
            raise SessionError(f"entries form a {m.rows}x{m.cols} matrix, shape says {shape[0]}x{shape[1]}")
        return m
    if not isinstance(literal, list) or not all(isinstance(row, list) for row in literal):
        raise SessionError(f"not a matrix literal: {literal!r}")
    for row in literal:
        for cell in row:
            if isinstance(cell, bool) or not isinstance(cell, (str, int)):
                raise SessionError(f"matrix entries must be element strings or integers, got {cell!r}")
    return Matrix.from_rows(rig, [[str(cell) for cell in row] for row in literal])


def matrix_json(m: Matrix) -> Dict[str, Any]:
    return {'shape': [m.rows, m.cols], 'entries': m.to_strings()}


def verdict_json(verdict: Verdict) -> Dict[str, Any]:
    out: Dict[str, Any] = {'verdict': verdict.kind}
    if isinstance(verdict, Exists):
        if isinstance(verdict.witness, Matrix):
            out['value'] = matrix_json(verdict.witness)
        if verdict.note:
            out['note'] = verdict.note
    elif isinstance(verdict, NotExists):
        out['certificate'] = verdict.certificate
    elif isinstance(verdict, Unknown):
        out['reason'] = verdict.reason
    return out


def _trace_json(result: TraceResult) -> Dict[str, Any]:
    out = verdict_json(result.verdict)
    out['method'] = result.method
    if result.witnesses:
        out['witnesses'] = [matrix_json(w) for w in result.witnesses]
    return out


# -- documents ----------------------------------------------------------------

@dataclass
class Statement:
    index: int
    op: str
    args: List[Any]
    name: Optional[str] = None
    expect: Any = None
    dom: Optional[List[int]] = None
    cod: Optional[List[int]] = None
    traced: Optional[int] = None

    @classmethod
    def from_json(cls, index: int, raw: Any) -> "Statement":
        if not isinstance(raw, dict):
            raise SessionError("statement must be an object", statement=index)
        op = raw.get('op')
        if op not in OPERATIONS:
            raise SessionError(f"unknown operation {op!r}, expected one of {', '.join(OPERATIONS)}",
                               statement=index)
        args = raw.get('args', [])
        if not isinstance(args, list) or not args:
            raise SessionError("'args' must be a non-empty list", statement=index)
        unknown = set(raw) - {'op', 'args', 'as', 'expect', 'dom', 'cod', 'traced'}
        if unknown:
            raise SessionError(f"unknown statement keys: {', '.join(sorted(unknown))}", statement=index)
        return cls(index, op, args, raw.get('as'), raw.get('expect'),
                   raw.get('dom'), raw.get('cod'), raw.get('traced'))


@dataclass
class SessionDocument:
    rig: Rig
    bindings: Dict[str, Matrix]
    program: List[Statement]

    @classmethod
    def from_json(cls, data: Any, rig_override: Optional[str] = None,
                  config: Optional[Config] = None) -> "SessionDocument":
        if not isinstance(data, dict):
            raise SessionError("session document must be a JSON object")
        schema = data.get('schema', SESSION_SCHEMA)
        if schema != SESSION_SCHEMA:
            raise SessionError(f"unsupported schema {schema!r}, expected {SESSION_SCHEMA}")
        config = config or default_config()
        try:
            rig = get_rig(rig_override or data.get('rig') or config.rig)
        except ValueError as e:
            raise SessionError(str(e)) from e
        raw_bindings = data.get('bindings', {})
        if not isinstance(raw_bindings, dict):
            raise SessionError("'bindings' must be an object")
        bindings = {}
        for name in sorted(raw_bindings):
            try:
                bindings[name] = parse_matrix(rig, raw_bindings[name])
            except SessionError:
                raise
            except (DaggerTraceError, ValueError) as e:
                raise SessionError(f"binding '{name}': {e}") from e
        raw_program = data.get('program', [])
        if not isinstance(raw_program, list):
            raise SessionError("'program' must be a list")
        program = [Statement.from_json(i, raw) for i, raw in enumerate(raw_program)]
        return cls(rig, bindings, program)

    @classmethod
    def loads(cls, text: str, rig_override: Optional[str] = None,
              config: Optional[Config] = None) -> "SessionDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SessionError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno) from e
        return cls.from_json(data, rig_override, config)

    @classmethod
    def load(cls, path: str, rig_override: Optional[str] = None,
             config: Optional[Config] = None) -> "SessionDocument":
        try:
            with open(path, 'r', encoding='utf-8') as f:
                text = f.read()
        except OSError as e:
            raise SessionError(f"cannot read session file {path}: {e}") from e
        return cls.loads(text, rig_override, config)


# -- reports ------------------------------------------------------------------

@dataclass
class SessionReport:
    rig: str
    results: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if r.get('status') == 'failed')

    @property
    def unknown(self) -> int:
        return sum(1 for r in self.results if r.get('status') == 'unknown')

    @property
    def assertions(self) -> int:
        return sum(1 for r in self.results if 'status' in r)

    @property
    def exit_code(self) -> int:
        if self.failed:
            return EXIT_FAILED
        if self.unknown:
            return EXIT_UNKNOWN
        return EXIT_OK

    def as_dict(self) -> dict:
        return {
            'schema': REPORT_SCHEMA,
            'rig': self.rig,
            'results': self.results,
            'summary': {
                'statements': len(self.results),
                'assertions': self.assertions,
                'failed': self.failed,
                'unknown': self.unknown,
            },
            'passed': self.exit_code == EXIT_OK,
        }

    def to_json(self) -> str:
        return dumps(self.as_dict())


def dumps(report: dict) -> str:
    """Serialize a report; key order is fixed so equal reports are byte-identical."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + '\n'


# -- evaluation ---------------------------------------------------------------

class Session:
    """Evaluates the program of a session document against its bindings."""

    def __init__(self, document: SessionDocument, config: Optional[Config] = None):
        self.document = document
        self.config = config or default_config()
        self.env: Dict[str, Matrix] = dict(document.bindings)

    @property
    def rig(self) -> Rig:
        return self.document.rig

    def _arg(self, stmt: Statement, arg: Any) -> Matrix:
        if isinstance(arg, str) and arg in self.env:
            return self.env[arg]
        if isinstance(arg, str) and arg.isidentifier():
            raise SessionError(f"'{arg}' is not bound", statement=stmt.index)
        try:
            return parse_matrix(self.rig, arg)
        except SessionError as e:
            raise SessionError(str(e), statement=stmt.index) from e

    def _trace_problem(self, stmt: Statement, f: Matrix) -> TraceProblem:
        if stmt.dom is not None or stmt.cod is not None:
            if stmt.dom is None or stmt.cod is None:
                raise SessionError("give both 'dom' and 'cod' partitions", statement=stmt.index)
            return TraceProblem(f, BlockPartition(stmt.dom), BlockPartition(stmt.cod))
        if stmt.traced is None:
            raise SessionError("trace needs 'dom' and 'cod' partitions or 'traced'", statement=stmt.index)
        return TraceProblem.trace_out(f, stmt.traced)

    def _evaluate(self, stmt: Statement) -> Dict[str, Any]:
        """The result object for one statement; ``primary`` is what ``expect`` is checked against."""
        ms = [self._arg(stmt, a) for a in stmt.args]
        op = stmt.op
        if op in MATRIX_OPS:
            if op == 'dagger':
                if len(ms) != 1:
                    raise SessionError("dagger takes one argument", statement=stmt.index)
                value = dagger(ms[0])
            elif op == 'compose':
                value = compose_all(*ms)
            elif op == 'oplus':
                value = oplus(*ms)
            else:
                value = reduce(add, ms)
            return {'primary': Exists(value), 'out': verdict_json(Exists(value))}
        if len(ms) != 1:
            raise SessionError(f"{op} takes one argument", statement=stmt.index)
        f = ms[0]
        if op == 'pinv':
            result = pinv(f, self.config)
            out = verdict_json(result.verdict)
            out['method'] = result.method
            return {'primary': result.verdict, 'out': out}
        if op == 'trace':
            tp = self._trace_problem(stmt, f)
            ki = kernel_image_trace(tp, self.config)
            out = {'verdict': ki.verdict.kind, 'kernel_image': _trace_json(ki)}
            if f.rig.descriptor.has_negatives and f.rig.descriptor.has_dagger:
                out['pseudotrace'] = _trace_json(pseudotrace(tp, self.config))
            return {'primary': ki.verdict, 'out': out}
        if op == 'pseudotrace':
            pt = pseudotrace(self._trace_problem(stmt, f), self.config)
            return {'primary': pt.verdict, 'out': _trace_json(pt)}
        if op in _BOOL_PREDICATES:
            holds = _BOOL_PREDICATES[op](f)
            verdict = Exists(None) if holds else NotExists(f"{op} does not hold")
            return {'primary': verdict, 'out': {'verdict': verdict.kind, 'holds': holds}}
        verdict = _VERDICT_PREDICATES[op](f, self.config)
        out = verdict_json(verdict)
        out['holds'] = None if isinstance(verdict, Unknown) else isinstance(verdict, Exists)
        return {'primary': verdict, 'out': out}

    def _check(self, stmt: Statement, primary: Verdict) -> Optional[str]:
        """``passed``, ``failed`` or ``unknown`` (existence asserted, undecided); None without ``expect``."""
        expect = stmt.expect
        if expect is None:
            return None
        asserts_existence = expect is not False
        if isinstance(expect, str) and expect in _KIND_EXPECTATIONS:
            asserts_existence = expect == 'exists'
            ok = primary.kind == expect
        elif isinstance(expect, bool):
            ok = isinstance(primary, Exists) == expect and not isinstance(primary, Unknown)
        else:
            wanted = self._arg(stmt, expect)
            ok = isinstance(primary, Exists) and primary.witness == wanted
        if ok:
            return 'passed'
        if asserts_existence and isinstance(primary, Unknown):
            return 'unknown'
        return 'failed'

    def run(self) -> SessionReport:
        report = SessionReport(self.rig.name)
        logger.info(f"Evaluating {len(self.document.program)} statements over {self.rig.name}")
        for stmt in self.document.program:
            try:
                evaluated = self._evaluate(stmt)
                status = self._check(stmt, evaluated['primary'])
            except SessionError:
                raise
            except (DaggerTraceError, ValueError) as e:
                raise SessionError(f"{stmt.op}: {e}", statement=stmt.index) from e
            primary = evaluated['primary']
            result = {'index': stmt.index, 'op': stmt.op, **evaluated['out']}
            if stmt.name:
                if stmt.name in self.env:
                    raise SessionError(f"'{stmt.name}' is already bound", statement=stmt.index)
                if isinstance(primary, Exists) and isinstance(primary.witness, Matrix):
                    self.env[stmt.name] = primary.witness
                result['as'] = stmt.name
            if status is not None:
                result['status'] = status
                if status != 'passed':
                    logger.error(f"Statement {stmt.index} ({stmt.op}) {status}: got {primary.kind}")
            logger.debug(f"Statement {stmt.index} ({stmt.op}): {primary.kind}")
            report.results.append(result)
        logger.info(f"Session finished: {report.failed} failed, {report.unknown} unknown "
                    f"of {report.assertions} assertions")
        return report


def evaluate(document: Union[SessionDocument, str], config: Optional[Config] = None,
             rig_override: Optional[str] = None) -> SessionReport:
    """Evaluate a session document or the session file at ``document``."""
    if isinstance(document, str):
        document = SessionDocument.load(document, rig_override, config)
    return Session(document, config).run()


def single_matrix_session(rig: Rig, literal: Any, op: str, **statement: Any) -> SessionDocument:
    """A one-binding session applying ``op`` to ``m`` (for ``pinv``/``trace`` on a literal)."""
    m = parse_matrix(rig, literal)
    return SessionDocument(rig, {'m': m}, [Statement(0, op, ['m'], **statement)])


def per_binding_session(document: SessionDocument, op: str, **statement: Any) -> SessionDocument:
    """Replace the program with ``op`` applied to every binding in name order."""
    program = [Statement(i, op, [name], **statement) for i, name in enumerate(sorted(document.bindings))]
    return SessionDocument(document.rig, document.bindings, program)
