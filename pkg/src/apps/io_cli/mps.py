"""Reader and writer for the Netlib subset of the MPS format."""
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from loguru import logger

from apps.core_lp.models import LpProblem, ProblemForm, Sense
from common.exceptions import ParseError, UnsupportedFeature

SECTIONS = ('NAME', 'OBJSENSE', 'ROWS', 'COLUMNS', 'RHS', 'RANGES', 'BOUNDS', 'ENDATA')
ROW_TYPES = ('N', 'L', 'G', 'E')
VALUE_BOUNDS = ('UP', 'LO', 'FX')
FLAG_BOUNDS = ('FR', 'MI', 'PL')
INTEGER_BOUNDS = ('BV', 'LI', 'UI', 'SC')
EQUALITY_MODES = ('standard', 'paired')

# 1-based columns of the fixed format fields
FIXED_FIELDS = ((2, 3), (5, 12), (15, 22), (25, 36), (40, 47), (50, 61))


@dataclass(eq=True)
class MpsDocument:
    """Sparse MPS content: rows in declaration order, column entries as ``(column, row, value)``."""

    name: str = ''
    rows: List[Tuple[str, str]] = field(default_factory=list)
    columns: List[Tuple[str, str, float]] = field(default_factory=list)
    rhs: Dict[str, float] = field(default_factory=dict)
    ranges: Dict[str, float] = field(default_factory=dict)
    bounds: List[Tuple[str, str, Optional[float]]] = field(default_factory=list)
    objective: Optional[str] = None
    sense: Sense = Sense.MIN

    @property
    def column_names(self) -> List[str]:
        return list(dict.fromkeys(column for column, _, _ in self.columns))

    @property
    def constraint_rows(self) -> List[Tuple[str, str]]:
        return [(kind, name) for kind, name in self.rows if kind != 'N']

    @property
    def n_variables(self) -> int:
        return len(self.column_names)

    @property
    def n_constraints(self) -> int:
        return len(self.constraint_rows)


def _fields(line: str, format: str) -> List[str]:
    if format == 'free':
        return line.split()
    if format == 'fixed':
        padded = line.ljust(61)
        return [padded[start - 1:end].strip() for start, end in FIXED_FIELDS if padded[start - 1:end].strip()]
    raise ValueError(f'Invalid format: {format}')


def _number(token: str, line_no: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f'{token!r} is not a number', line=line_no)


class _MpsParser:
    def __init__(self, format: str = 'free', objective: Optional[str] = None):
        self.format = format
        self.requested_objective = objective
        self.doc = MpsDocument()
        self.row_types: Dict[str, str] = {}
        self.seen_entries = set()
        self.seen_columns = set()
        self.rhs_set = self.ranges_set = self.bounds_set = None

    def parse(self, text: str) -> MpsDocument:
        section = None
        finished = False
        line_no = 0
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.rstrip()
            if not line.strip() or line.lstrip().startswith('*'):
                continue
            if not line[0].isspace():
                keyword, _, rest = line.partition(' ')
                keyword = keyword.upper()
                if keyword not in SECTIONS:
                    raise ParseError(f'unknown section {keyword!r}', line=line_no)
                section = keyword
                if keyword == 'NAME':
                    self.doc.name = rest.strip()
                elif keyword == 'OBJSENSE' and rest.strip():
                    self._sense(rest.strip(), line_no)
                elif keyword == 'ENDATA':
                    finished = True
                    break
                continue

            tokens = _fields(line, self.format)
            if section is None or section == 'NAME':
                raise ParseError('data line outside of a section', line=line_no)
            getattr(self, f'_{section.lower()}')(tokens, line_no)

        if not finished:
            raise ParseError('missing ENDATA', line=line_no)
        self._select_objective()
        return self.doc

    def _sense(self, word: str, line_no: int) -> None:
        word = word.upper()
        if word in ('MAX', 'MAXIMIZE'):
            self.doc.sense = Sense.MAX
        elif word in ('MIN', 'MINIMIZE'):
            self.doc.sense = Sense.MIN
        else:
            raise ParseError(f'invalid objective sense {word!r}', line=line_no)

    def _objsense(self, tokens: List[str], line_no: int) -> None:
        self._sense(tokens[0], line_no)

    def _rows(self, tokens: List[str], line_no: int) -> None:
        if len(tokens) != 2:
            raise ParseError('ROWS lines hold a type and a name', line=line_no)
        kind, name = tokens[0].upper(), tokens[1]
        if kind not in ROW_TYPES:
            raise ParseError(f'unknown row type {kind!r}', line=line_no)
        if name in self.row_types:
            raise ParseError(f'row {name!r} declared twice', line=line_no)
        self.row_types[name] = kind
        self.doc.rows.append((kind, name))

    def _row(self, name: str, line_no: int) -> str:
        if name not in self.row_types:
            raise ParseError(f'undeclared row {name!r}', line=line_no)
        return self.row_types[name]

    def _columns(self, tokens: List[str], line_no: int) -> None:
        if "'MARKER'" in tokens:
            raise UnsupportedFeature(f'line {line_no}: integrality markers are not supported')
        if len(tokens) not in (3, 5):
            raise ParseError('COLUMNS lines hold a column and one or two (row, value) pairs', line=line_no)
        column = tokens[0]
        for row, value in zip(tokens[1::2], tokens[2::2]):
            self._row(row, line_no)
            if (column, row) in self.seen_entries:
                raise ParseError(f'entry ({column}, {row}) given twice', line=line_no)
            self.seen_entries.add((column, row))
            self.seen_columns.add(column)
            self.doc.columns.append((column, row, _number(value, line_no)))

    def _pairs(self, tokens: List[str], line_no: int, section: str) -> Tuple[Optional[str], List[Tuple[str, str]]]:
        if len(tokens) in (2, 4):
            set_name, pairs = None, tokens
        elif len(tokens) in (3, 5):
            set_name, pairs = tokens[0], tokens[1:]
        else:
            raise ParseError(f'{section} lines hold an optional set name and one or two (row, value) pairs', line=line_no)
        return set_name, list(zip(pairs[0::2], pairs[1::2]))

    def _rhs(self, tokens: List[str], line_no: int) -> None:
        set_name, pairs = self._pairs(tokens, line_no, 'RHS')
        if self.rhs_set is None:
            self.rhs_set = set_name
        elif set_name != self.rhs_set:
            logger.warning(f'line {line_no}: ignoring RHS set {set_name!r}')
            return
        for row, value in pairs:
            if self._row(row, line_no) == 'N':
                raise UnsupportedFeature(f'line {line_no}: a constant on the objective row is not supported')
            self.doc.rhs[row] = _number(value, line_no)

    def _ranges(self, tokens: List[str], line_no: int) -> None:
        set_name, pairs = self._pairs(tokens, line_no, 'RANGES')
        if self.ranges_set is None:
            self.ranges_set = set_name
        elif set_name != self.ranges_set:
            logger.warning(f'line {line_no}: ignoring RANGES set {set_name!r}')
            return
        for row, value in pairs:
            if self._row(row, line_no) == 'N':
                raise ParseError(f'range on the objective row {row!r}', line=line_no)
            self.doc.ranges[row] = _number(value, line_no)

    def _bounds(self, tokens: List[str], line_no: int) -> None:
        kind = tokens[0].upper() if tokens else ''
        if kind in INTEGER_BOUNDS:
            raise UnsupportedFeature(f'line {line_no}: integer bound type {kind} is not supported')
        if kind in VALUE_BOUNDS:
            if len(tokens) == 3:
                set_name, column, value = None, tokens[1], tokens[2]
            elif len(tokens) == 4:
                set_name, column, value = tokens[1:]
            else:
                raise ParseError(f'{kind} bound needs a column and a value', line=line_no)
            value = _number(value, line_no)
        elif kind in FLAG_BOUNDS:
            if len(tokens) == 2:
                set_name, column = None, tokens[1]
            elif len(tokens) in (3, 4):
                set_name, column = tokens[1], tokens[2]
            else:
                raise ParseError(f'malformed {kind} bound', line=line_no)
            value = None
        else:
            raise ParseError(f'unknown bound type {kind!r}', line=line_no)

        if self.bounds_set is None:
            self.bounds_set = set_name
        elif set_name != self.bounds_set:
            logger.warning(f'line {line_no}: ignoring BOUNDS set {set_name!r}')
            return
        if column not in self.seen_columns:
            raise ParseError(f'bound on undeclared column {column!r}', line=line_no)
        self.doc.bounds.append((kind, column, value))

    def _select_objective(self) -> None:
        objectives = [name for kind, name in self.doc.rows if kind == 'N']
        if not objectives:
            raise ParseError('no objective (N) row')
        chosen = self.requested_objective or objectives[0]
        if chosen not in objectives:
            raise ParseError(f'{chosen!r} is not an N row')
        self.doc.objective = chosen


def parse_mps_document(text: str, format: str = 'free', objective: Optional[str] = None) -> MpsDocument:
    return _MpsParser(format=format, objective=objective).parse(text)


def read_mps_document(
    source: Union[str, os.PathLike], format: str = 'free', objective: Optional[str] = None
) -> MpsDocument:
    """Parse an MPS file; ``format`` is ``free`` (whitespace separated) or ``fixed`` (column positions)."""
    path = Path(source)
    logger.info(f'reading {path}')
    return parse_mps_document(path.read_text(), format=format, objective=objective)


def _format_number(value: float) -> str:
    return str(int(value)) if float(value).is_integer() and abs(value) < 1e15 else repr(float(value))


def write_mps(doc: MpsDocument, path: Optional[Union[str, os.PathLike]] = None) -> str:
    """Free-format MPS text of ``doc``; ``parse_mps_document`` reads it back to an equal document."""
    lines = [f'NAME {doc.name}'.rstrip()]
    if doc.sense == Sense.MAX:
        lines += ['OBJSENSE', '    MAX']
    lines.append('ROWS')
    lines += [f' {kind}  {name}' for kind, name in doc.rows]
    lines.append('COLUMNS')
    lines += [f'    {column}  {row}  {_format_number(value)}' for column, row, value in doc.columns]
    if doc.rhs:
        lines.append('RHS')
        lines += [f'    RHS  {row}  {_format_number(value)}' for row, value in doc.rhs.items()]
    if doc.ranges:
        lines.append('RANGES')
        lines += [f'    RNG  {row}  {_format_number(value)}' for row, value in doc.ranges.items()]
    if doc.bounds:
        lines.append('BOUNDS')
        for kind, column, value in doc.bounds:
            suffix = '' if value is None else f'  {_format_number(value)}'
            lines.append(f' {kind} BND  {column}{suffix}')
    lines.append('ENDATA')
    text = '\n'.join(lines) + '\n'
    if path is not None:
        Path(path).write_text(text)
    return text


class _ProblemBuilder:
    """Turns an ``MpsDocument`` into inequality rows ``a x ≤ β`` and equality rows ``a x = β`` over ``x ≥ 0``."""

    def __init__(self, doc: MpsDocument):
        self.doc = doc
        self.columns = doc.column_names
        self.position = {name: j for j, name in enumerate(self.columns)}
        self.rows: Dict[str, Dict[int, float]] = {name: {} for _, name in doc.rows}
        for column, row, value in doc.columns:
            self.rows[row][self.position[column]] = value

    def bounds(self) -> Tuple[List[float], List[float]]:
        lower = [0.0] * len(self.columns)
        upper = [math.inf] * len(self.columns)
        for kind, column, value in self.doc.bounds:
            j = self.position[column]
            if kind == 'UP':
                if value < 0 and lower[j] == 0:
                    logger.warning(f'negative upper bound on {column}; lower bound set to -inf')
                    lower[j] = -math.inf
                upper[j] = value
            elif kind == 'LO':
                lower[j] = value
            elif kind == 'FX':
                lower[j] = upper[j] = value
            elif kind == 'FR':
                lower[j], upper[j] = -math.inf, math.inf
            elif kind == 'MI':
                lower[j] = -math.inf
            elif kind == 'PL':
                upper[j] = math.inf
        return lower, upper

    def dense(self, entries: Dict[int, float], sign: float = 1.0) -> np.ndarray:
        row = np.zeros(len(self.columns))
        for j, value in entries.items():
            row[j] = sign * value
        return row

    def constraints(self) -> Tuple[List[Tuple[np.ndarray, float]], List[Tuple[np.ndarray, float]]]:
        inequalities, equalities = [], []
        for kind, name in self.doc.constraint_rows:
            a, rhs = self.dense(self.rows[name]), self.doc.rhs.get(name, 0.0)
            spread = self.doc.ranges.get(name)
            if spread is None:
                if kind == 'L':
                    inequalities.append((a, rhs))
                elif kind == 'G':
                    inequalities.append((-a, -rhs))
                else:
                    equalities.append((a, rhs))
                continue
            if kind == 'L':
                low, high = rhs - abs(spread), rhs
            elif kind == 'G':
                low, high = rhs, rhs + abs(spread)
            else:
                low, high = (rhs, rhs + spread) if spread >= 0 else (rhs + spread, rhs)
            inequalities += [(a, high), (-a, -low)]

        lower, upper = self.bounds()
        for j, (low, high) in enumerate(zip(lower, upper)):
            unit = np.zeros(len(self.columns))
            unit[j] = 1.0
            if math.isfinite(high):
                inequalities.append((unit, high))
            if math.isfinite(low) and low != 0:
                inequalities.append((-unit, -low))
        return inequalities, equalities

    def free_columns(self) -> List[int]:
        lower, _ = self.bounds()
        return [j for j, low in enumerate(lower) if low < 0]

    def objective(self) -> np.ndarray:
        return self.dense(self.rows[self.doc.objective])


def to_problem(doc: MpsDocument, equality: str = 'standard', backend=None) -> LpProblem:
    """Build the LP of ``doc`` over nonnegative variables.

    Without equality rows the result is ``ineq_nonneg`` (G rows negated, ranges
    and bounds written as extra rows). With equality rows, ``standard`` adds a
    slack column per inequality row and ``paired`` writes each equality as two
    inequalities. Variables that may go negative are split into two columns.
    """
    if equality not in EQUALITY_MODES:
        raise ValueError(f'equality must be one of {EQUALITY_MODES}, got {equality!r}')
    builder = _ProblemBuilder(doc)
    inequalities, equalities = builder.constraints()
    c = builder.objective()

    free = builder.free_columns()
    if free:
        logger.debug(f'splitting {len(free)} free columns of {doc.name}')

    def widen(a: np.ndarray) -> np.ndarray:
        return np.concatenate([a, -a[free]])

    inequalities = [(widen(a), rhs) for a, rhs in inequalities]
    equalities = [(widen(a), rhs) for a, rhs in equalities]
    c = widen(c)
    n = c.shape[0]

    if not equalities or equality == 'paired':
        rows = inequalities + [pair for a, rhs in equalities for pair in ((a, rhs), (-a, -rhs))]
        A = np.array([a for a, _ in rows]).reshape(len(rows), n)
        b = np.array([rhs for _, rhs in rows])
        return LpProblem(A=A, b=b, c=c, form=ProblemForm.INEQ_NONNEG, sense=doc.sense, backend=backend, name=doc.name)

    m_eq, m_ub = len(equalities), len(inequalities)
    A_eq = np.array([a for a, _ in equalities]).reshape(m_eq, n)
    A_ub = np.array([a for a, _ in inequalities]).reshape(m_ub, n)
    A = np.block([
        [A_eq, np.zeros((m_eq, m_ub))],
        [A_ub, np.eye(m_ub)],
    ])
    b = np.array([rhs for _, rhs in equalities] + [rhs for _, rhs in inequalities])
    return LpProblem(
        A=A,
        b=b,
        c=np.concatenate([c, np.zeros(m_ub)]),
        form=ProblemForm.STANDARD,
        sense=doc.sense,
        backend=backend,
        n_structural=n,
        name=doc.name,
    )


def parse_mps(
    text: str,
    format: str = 'free',
    objective: Optional[str] = None,
    equality: str = 'standard',
    backend=None,
) -> LpProblem:
    """The LP written in MPS ``text``; see ``to_problem`` for how rows and bounds are mapped."""
    return to_problem(parse_mps_document(text, format=format, objective=objective), equality=equality, backend=backend)


def read_mps(
    source: Union[str, os.PathLike],
    format: str = 'free',
    objective: Optional[str] = None,
    equality: str = 'standard',
    backend=None,
) -> LpProblem:
    return to_problem(read_mps_document(source, format=format, objective=objective), equality=equality, backend=backend)
