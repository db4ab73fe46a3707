import itertools
import warnings
from functools import reduce
from typing import Iterable, Optional, Tuple

import numpy as np
from django.conf import settings
from loguru import logger

from apps.core_lp.models import LpProblem, LpSolution, ProblemForm, Sense, SolveStatus
from apps.core_lp.simplex import drop_dependent_rows, solve
from apps.lp_forms.transforms import to_standard, worst_case_realization_ineq
from common.concurrency import parallel_map
from common.exceptions import RankDeficient, RegularityWarning, TooManyConstraints
from shared.arithmetic import Scalar
from .models import InflatedIntervalLp, OptimalValueRange, SignVector

INFINITY = float('inf')


def solve_realization(problem: LpProblem) -> LpSolution:
    """Solve one member of the interval family; dependent rows are dropped, inconsistent ones mean infeasible."""
    try:
        return solve(problem)
    except RankDeficient:
        try:
            reduced, _ = drop_dependent_rows(problem)
        except RankDeficient:
            return LpSolution(status=SolveStatus.INFEASIBLE)
        return solve(reduced)


def value_of(solution: LpSolution) -> Scalar:
    if solution.status == SolveStatus.INFEASIBLE:
        return INFINITY
    if solution.status == SolveStatus.UNBOUNDED:
        return -INFINITY
    return solution.objective


def realization(ilp: InflatedIntervalLp, sign: SignVector) -> LpProblem:
    """``(A - α·diag(s)·dA, b + α·diag(s)·db, c + α·dc)`` as a minimization problem."""
    bk = ilp.base.backend
    s = bk.asarray(np.array(sign.s, dtype=int))
    A = ilp.base.A - ilp.alpha * (s[:, None] * ilp.pattern.dA)
    b = ilp.base.b + ilp.alpha * (s * ilp.pattern.db)
    return LpProblem(A=A, b=b, c=ilp.c_upper, form=ProblemForm.STANDARD, sense=Sense.MIN, backend=bk)


def best_case(ilp: InflatedIntervalLp) -> Scalar:
    """Minimum optimal value over the family: one LP with ``A̲x ≤ b̄``, ``Āx ≥ b̲``, objective ``c̲``."""
    bk = ilp.base.backend
    relaxed = LpProblem(
        A=np.vstack([ilp.A_lower, -ilp.A_upper]),
        b=np.concatenate([ilp.b_upper, -ilp.b_lower]),
        c=ilp.c_lower,
        form=ProblemForm.INEQ_NONNEG,
        sense=Sense.MIN,
        backend=bk,
    )
    value = value_of(solve(to_standard(relaxed).problem))
    logger.debug(f'best case at alpha={ilp.alpha}: {value}')
    return value


def worst_case_parallel_reduce(values: Iterable[Tuple[int, Scalar]]) -> Tuple[Scalar, int]:
    """Maximum of ``(sign index, value)`` pairs; ties go to the smallest index whatever the order."""

    def better(left, right):
        (left_index, left_value), (right_index, right_value) = left, right
        if right_value > left_value or (right_value == left_value and right_index < left_index):
            return right
        return left

    index, value = reduce(better, values)
    return value, index


def worst_case(
    ilp: InflatedIntervalLp,
    max_m: Optional[int] = None,
    workers: Optional[int] = None,
) -> OptimalValueRange:
    """Maximum optimal value over the family, by solving the ``2^m`` sign-vector realizations.

    Infeasible realizations count as ``+inf`` and raise a ``RegularityWarning``.
    The result is in minimization sense with ``f_low`` unset.
    """
    max_m = max_m if max_m is not None else settings.LPSENS_MAX_SIGN_ROWS
    m = ilp.m
    if m > max_m:
        raise TooManyConstraints(f'{m} rows exceed the sign-enumeration limit of {max_m}')

    signs = [SignVector(s) for s in itertools.product((1, -1), repeat=m)]
    logger.debug(f'worst case at alpha={ilp.alpha}: solving {len(signs)} realizations')
    solutions = parallel_map(lambda sign: solve_realization(realization(ilp, sign)), signs, workers)

    value, index = worst_case_parallel_reduce((k, value_of(sol)) for k, sol in enumerate(solutions))
    infeasible = sum(1 for sol in solutions if sol.status == SolveStatus.INFEASIBLE)
    if infeasible:
        message = f'{infeasible} of {len(signs)} realizations at alpha={ilp.alpha} are infeasible'
        logger.warning(message)
        warnings.warn(message, RegularityWarning)

    return OptimalValueRange(
        f_low=None,
        f_high=value,
        argmax_sign=signs[index],
        argmax_basis=solutions[index].basis,
        infeasible_realizations=infeasible,
        sense=Sense.MIN,
    )


def best_case_ineq(problem: LpProblem, pattern, alpha, max_n: Optional[int] = None) -> Scalar:
    """Best optimal value of an inequality-form family, in minimization sense.

    Rows may only relax: ``(A - αdA)x ≤ b + αdb`` on ``x ≥ 0``. Free variables
    are handled one orthant at a time, ``x = diag(σ)z`` with ``z ≥ 0``.
    """
    bk = problem.backend
    pattern = pattern.with_backend(bk)
    pattern.validate_for(problem)
    alpha = bk.scalar(alpha)
    c = problem.min_objective

    if problem.form == ProblemForm.INEQ_NONNEG:
        orthants = [(1,) * problem.n]
    else:
        max_n = max_n if max_n is not None else settings.LPSENS_MAX_SIGN_ROWS
        if problem.n > max_n:
            raise TooManyConstraints(f'{problem.n} free variables exceed the orthant limit of {max_n}')
        orthants = list(itertools.product((1, -1), repeat=problem.n))

    def orthant_value(orthant) -> Scalar:
        sigma = bk.asarray(np.array(orthant, dtype=int))
        relaxed = LpProblem(
            A=problem.A * sigma[None, :] - alpha * pattern.dA,
            b=problem.b + alpha * pattern.db,
            c=c * sigma - alpha * pattern.dc,
            form=ProblemForm.INEQ_NONNEG,
            sense=Sense.MIN,
            backend=bk,
        )
        return value_of(solve(to_standard(relaxed).problem))

    values = parallel_map(orthant_value, orthants)
    return min(values)


def optimal_value_range(
    problem: LpProblem,
    pattern,
    alpha,
    max_m: Optional[int] = None,
    workers: Optional[int] = None,
) -> OptimalValueRange:
    """``[f_low, f_high]`` in the sense of ``problem``; any form is accepted.

    Standard problems use the relaxation LP and sign enumeration. Inequality
    forms need neither: the worst case is the single realization and the best
    case is solved per orthant of the free variables.
    """
    if problem.form == ProblemForm.STANDARD:
        ilp = InflatedIntervalLp(problem, pattern, alpha)
        low = best_case(ilp)
        high = worst_case(ilp, max_m=max_m, workers=workers)
    else:
        low = best_case_ineq(problem, pattern, alpha, max_n=max_m)
        worst = solve_realization(to_standard(worst_case_realization_ineq(problem, pattern, alpha)).problem)
        if worst.status == SolveStatus.INFEASIBLE:
            message = f'worst-case realization at alpha={alpha} is infeasible'
            logger.warning(message)
            warnings.warn(message, RegularityWarning)
        high = OptimalValueRange(
            f_low=None,
            f_high=value_of(worst),
            argmax_basis=worst.basis,
            infeasible_realizations=int(worst.status == SolveStatus.INFEASIBLE),
        )

    if problem.sense == Sense.MAX:
        low, upper = -high.f_high, -low
    else:
        upper = high.f_high
    return OptimalValueRange(
        f_low=low,
        f_high=upper,
        argmax_sign=high.argmax_sign,
        argmax_basis=high.argmax_basis,
        infeasible_realizations=high.infeasible_realizations,
        sense=problem.sense,
    )
