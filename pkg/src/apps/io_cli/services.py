import os
import time
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

import numpy as np
from loguru import logger

from apps.core_lp.models import LpSolution, SolveStatus
from apps.interval_lp.models import OptimalValueRange
from apps.interval_lp.ranges import optimal_value_range
from apps.lp_forms.transforms import perturb_uniformly, solve_in_standard_form
from apps.oracle.models import SweepConfig
from apps.sensitivity.analysis import analyze
from apps.sensitivity.models import AnalysisOptions
from common.exceptions import InfeasibleProblem, UnboundedProblem
from .loaders import LoadedProblem, load_problem, parse_pattern_option
from .models import ReportDocument

PathLike = Union[str, os.PathLike]


@dataclass(frozen=True, eq=False)
class SolvedFile:
    loaded: LoadedProblem
    solution: LpSolution
    x: np.ndarray


def _load(path: PathLike, options: Dict[str, Any]) -> LoadedProblem:
    loaded = load_problem(
        path,
        equality=options.get('equality') or 'standard',
        backend=options.get('backend'),
        mps_format=options.get('mps_format') or 'free',
    )
    magnitude = options.get('seed_perturb')
    if not magnitude:
        return loaded
    problem = perturb_uniformly(loaded.problem, magnitude, seed=options.get('seed') or 0)
    return LoadedProblem(problem, loaded.pattern, loaded.sizes, loaded.problem_id)


def analysis_options(options: Dict[str, Any]) -> AnalysisOptions:
    """Build analysis options from the plain dict the command and the celery task share."""
    sweep = None
    if options.get('alpha_grid') or options.get('extrapolation'):
        kwargs = {'backend': options.get('backend')}
        if options.get('alpha_grid'):
            kwargs['alphas'] = tuple(options['alpha_grid'])
        if options.get('extrapolation'):
            kwargs['extrapolation'] = options['extrapolation']
        sweep = SweepConfig(**kwargs)
    return AnalysisOptions(
        method=options.get('method') or 'auto',
        oracle=options.get('oracle') or 'auto',
        sweep=sweep,
        basis_cap=options.get('basis_cap'),
        backend=options.get('backend'),
        max_sign_rows=options.get('max_sign_rows'),
        drop_dependent_rows=bool(options.get('drop_dependent_rows')),
        workers=options.get('threads'),
    )


def analyze_file(path: PathLike, options: Optional[Dict[str, Any]] = None) -> ReportDocument:
    options = options or {}
    started = time.perf_counter()
    loaded = _load(path, options)
    pattern, descriptor = parse_pattern_option(options.get('pattern'), loaded.problem, loaded.pattern)
    report = analyze(loaded.problem, pattern, analysis_options(options))
    elapsed = time.perf_counter() - started
    logger.info(f'analyzed {path} in {elapsed:.3f}s')
    return ReportDocument.from_report(
        report,
        problem_id=loaded.problem_id,
        form=loaded.problem.form.value,
        sizes=loaded.sizes,
        pattern=descriptor,
        timing=elapsed,
    )


def solve_file(path: PathLike, options: Optional[Dict[str, Any]] = None) -> SolvedFile:
    options = options or {}
    loaded = _load(path, options)
    transformed, solution = solve_in_standard_form(loaded.problem)
    if solution.status == SolveStatus.INFEASIBLE:
        raise InfeasibleProblem(f'{loaded.problem!r} is infeasible')
    if solution.status == SolveStatus.UNBOUNDED:
        raise UnboundedProblem(f'{loaded.problem!r} is unbounded')
    return SolvedFile(loaded, solution, transformed.back_map.recover_x(solution.x_star))


def range_file(path: PathLike, alpha, options: Optional[Dict[str, Any]] = None) -> OptimalValueRange:
    options = options or {}
    loaded = _load(path, options)
    pattern, _ = parse_pattern_option(options.get('pattern'), loaded.problem, loaded.pattern)
    return optimal_value_range(
        loaded.problem,
        pattern,
        loaded.problem.backend.scalar(alpha),
        max_m=options.get('max_sign_rows'),
        workers=options.get('threads'),
    )
