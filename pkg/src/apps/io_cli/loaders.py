import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

from loguru import logger

from apps.core_lp.models import LpProblem
from apps.lp_forms.models import PerturbationPattern
from common.exceptions import DimensionMismatch
from .mps import read_mps_document, to_problem
from .serializers import load_pattern_json, load_problem_json

PATTERN_HELP = 'relative | absolute | entry:i,j | rhs:i | obj:j | json:<path> | embedded'


@dataclass(frozen=True, eq=False)
class LoadedProblem:
    """A problem read from disk with the sizes reported for it.

    ``sizes`` is ``(variables, constraints)`` of the input file; for MPS that is
    the column and row count before any form conversion.
    """

    problem: LpProblem
    pattern: Optional[PerturbationPattern]
    sizes: Tuple[int, int]
    problem_id: str


def load_problem(
    path: Union[str, os.PathLike],
    equality: str = 'standard',
    backend=None,
    mps_format: str = 'free',
) -> LoadedProblem:
    """JSON for ``.json`` files, MPS for everything else (Netlib files carry no suffix)."""
    path = Path(path)
    if path.suffix.lower() == '.json':
        problem, pattern = load_problem_json(path, backend)
        logger.debug(f'loaded {problem!r} from {path}')
        return LoadedProblem(problem, pattern, (problem.n, problem.m), problem.name or path.stem)

    doc = read_mps_document(path, format=mps_format)
    problem = to_problem(doc, equality=equality, backend=backend)
    logger.debug(f'loaded {problem!r} from {path} ({doc.n_variables} columns, {doc.n_constraints} rows)')
    return LoadedProblem(problem, None, (doc.n_variables, doc.n_constraints), doc.name or path.stem)


def _indices(text: str, count: int) -> Tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(','))
    except ValueError:
        raise ValueError(f'expected {count} comma-separated indices, got {text!r}')
    if len(values) != count:
        raise ValueError(f'expected {count} comma-separated indices, got {text!r}')
    return values


def _check_index(index: int, size: int, what: str) -> None:
    if not 0 <= index < size:
        raise DimensionMismatch(f'{what} index {index} outside 0..{size - 1}')


def parse_pattern_option(
    option: Optional[str],
    problem: LpProblem,
    embedded: Optional[PerturbationPattern] = None,
) -> Tuple[PerturbationPattern, str]:
    """Pattern named by ``--pattern`` and the descriptor written to reports.

    Without an option the pattern embedded in a JSON problem wins over the
    relative one. Indices are 0-based and refer to the loaded problem.
    """
    if option is None:
        option = 'embedded' if embedded is not None else 'relative'

    kind, _, argument = option.partition(':')
    if kind == 'relative':
        return PerturbationPattern.relative(problem), 'relative'
    if kind == 'absolute':
        return PerturbationPattern.absolute(problem), 'absolute'
    if kind == 'embedded':
        if embedded is None:
            raise ValueError('problem file has no embedded pattern')
        return embedded, 'embedded'
    if kind == 'entry':
        i, j = _indices(argument, 2)
        _check_index(i, problem.m, 'row')
        _check_index(j, problem.n, 'column')
        return PerturbationPattern.matrix_entry(problem, i, j), option
    if kind == 'rhs':
        (i,) = _indices(argument, 1)
        _check_index(i, problem.m, 'row')
        return PerturbationPattern.rhs_entry(problem, i), option
    if kind == 'obj':
        (j,) = _indices(argument, 1)
        _check_index(j, problem.n, 'column')
        return PerturbationPattern.objective_entry(problem, j), option
    if kind == 'json':
        if not argument:
            raise ValueError('json pattern needs a path, e.g. json:pattern.json')
        return load_pattern_json(argument, problem), option
    raise ValueError(f'unknown pattern {option!r}, expected {PATTERN_HELP}')
