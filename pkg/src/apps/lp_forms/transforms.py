from typing import Optional, Tuple

import numpy as np
from loguru import logger

from apps.core_lp.models import LpProblem, LpSolution, ProblemForm, Sense
from apps.core_lp.simplex import solve
from common.exceptions import WrongForm
from .models import BackMap, PerturbationPattern, TransformedProblem


def to_standard(problem: LpProblem, pattern: Optional[PerturbationPattern] = None) -> TransformedProblem:
    """Rewrite an inequality-form problem with slack columns (and split variables for free x).

    The slack block of the pattern is zero; split blocks repeat the original
    pattern columns, and the objective of ``x²`` is ``-c`` with radius ``dc``.
    """
    bk = problem.backend
    if pattern is None:
        pattern = PerturbationPattern.zero(problem)
    pattern = pattern.with_backend(bk)
    pattern.validate_for(problem)

    if problem.form == ProblemForm.STANDARD:
        back_map = BackMap(ProblemForm.STANDARD, problem.n)
        return TransformedProblem(problem, pattern, back_map, original=problem, original_pattern=pattern)

    m, n = problem.m, problem.n
    slack = bk.eye(m)
    slack_pattern = bk.zeros((m, m))
    slack_cost = bk.zeros(m)

    if problem.form == ProblemForm.INEQ_NONNEG:
        A = np.hstack([problem.A, slack])
        c = np.concatenate([problem.c, slack_cost])
        dA = np.hstack([pattern.dA, slack_pattern])
        dc = np.concatenate([pattern.dc, slack_cost])
        back_map = BackMap(ProblemForm.INEQ_NONNEG, n, split=False, n_slack=m)
    else:
        A = np.hstack([problem.A, -problem.A, slack])
        c = np.concatenate([problem.c, -problem.c, slack_cost])
        dA = np.hstack([pattern.dA, pattern.dA, slack_pattern])
        dc = np.concatenate([pattern.dc, pattern.dc, slack_cost])
        back_map = BackMap(ProblemForm.INEQ_FREE, n, split=True, n_slack=m)

    standard = LpProblem(
        A=A,
        b=problem.b,
        c=c,
        form=ProblemForm.STANDARD,
        sense=problem.sense,
        backend=bk,
        n_structural=back_map.slack_start,
        name=problem.name,
    )
    standard_pattern = PerturbationPattern(dA, pattern.db, dc, kind=pattern.kind, backend=bk)
    logger.debug(f'{problem!r} rewritten as {standard!r}')
    return TransformedProblem(standard, standard_pattern, back_map, original=problem, original_pattern=pattern)


def worst_case_realization_ineq(problem: LpProblem, pattern: PerturbationPattern, alpha) -> LpProblem:
    """The realization whose optimal value is the worst case at inflation ``alpha``.

    Returns a minimization problem in ``ineq_nonneg`` form: ``(A + αdA, b - αdb,
    c + αdc)`` for nonnegative variables. Free variables are split, each half
    taking its own worst-case column ``±A + αdA`` and cost ``±c + αdc``.
    """
    if problem.form == ProblemForm.STANDARD:
        raise WrongForm('worst-case realization needs an inequality-form problem')
    bk = problem.backend
    pattern = pattern.with_backend(bk)
    pattern.validate_for(problem)
    alpha = bk.scalar(alpha)
    if alpha < 0:
        raise ValueError(f'inflation must be nonnegative, got {alpha}')

    c = problem.min_objective
    b = problem.b - alpha * pattern.db
    if problem.form == ProblemForm.INEQ_NONNEG:
        A = problem.A + alpha * pattern.dA
        cost = c + alpha * pattern.dc
    else:
        A = np.hstack([problem.A + alpha * pattern.dA, -problem.A + alpha * pattern.dA])
        cost = np.concatenate([c + alpha * pattern.dc, -c + alpha * pattern.dc])

    return LpProblem(
        A=A,
        b=b,
        c=cost,
        form=ProblemForm.INEQ_NONNEG,
        sense=Sense.MIN,
        backend=bk,
        name=f'{problem.name}@{alpha}' if problem.name else '',
    )


def solve_in_standard_form(problem: LpProblem) -> Tuple[TransformedProblem, LpSolution]:
    transformed = to_standard(problem)
    return transformed, solve(transformed.problem)


def perturb_uniformly(problem: LpProblem, magnitude: float = 5e-5, seed: Optional[int] = None) -> LpProblem:
    """Scale every entry of ``A``, ``b`` and ``c`` by an independent factor in ``[1 - magnitude, 1 + magnitude]``.

    Breaks degeneracy of benchmark instances; slack columns stay untouched.
    """
    rng = np.random.default_rng(seed)
    bk = problem.backend

    def jitter(data: np.ndarray) -> np.ndarray:
        factors = 1.0 + rng.uniform(-magnitude, magnitude, size=data.shape)
        return bk.to_float(data) * factors

    A = jitter(problem.A)
    c = jitter(problem.c)
    start = problem.structural_columns
    A[:, start:] = bk.to_float(problem.A[:, start:])
    c[start:] = bk.to_float(problem.c[start:])
    logger.info(f'perturbed {problem!r} by up to {magnitude:.1e} relative (seed {seed})')
    return problem.with_data(A=A, b=jitter(problem.b), c=c)
