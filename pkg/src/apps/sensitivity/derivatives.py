import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from apps.core_lp.bases import basis_entry, enumerate_optimal_bases
from apps.core_lp.models import Basis, LpProblem, LpSolution, OptimalBasis, ProblemForm, Sense, SolveStatus
from apps.core_lp.simplex import solve
from apps.interval_lp.models import SignVector
from apps.lp_forms.models import PerturbationPattern
from apps.lp_forms.transforms import to_standard
from common.concurrency import parallel_map
from common.exceptions import (
    DegenerateInput,
    DimensionMismatch,
    InfeasibleProblem,
    InternalInconsistency,
    MethodNotApplicable,
    PatternNotObjectiveOnly,
    UnboundedProblem,
    ZeroPattern,
)
from shared.arithmetic import Scalar
from .models import BasisDerivative, Grade, Method, SensitivityReport


def pattern_norm(pattern: PerturbationPattern) -> float:
    """Frobenius norm of ``dA``, ``db`` and ``dc`` taken together."""
    total = sum(v * v for block in (pattern.dA, pattern.db, pattern.dc) for v in block.ravel())
    return math.sqrt(float(total))


def d_r_normalize(d_w: Scalar, pattern: PerturbationPattern, norm: Optional[float] = None) -> float:
    norm = pattern_norm(pattern) if norm is None else norm
    if norm == 0:
        raise ZeroPattern()
    return float(d_w) / norm


def dw_formula(x: np.ndarray, y: np.ndarray, pattern: PerturbationPattern) -> Scalar:
    """``|y|ᵀ dA x + |y|ᵀ db + xᵀ dc``."""
    if len(x) != pattern.dc.shape[0] or len(y) != pattern.db.shape[0]:
        raise DimensionMismatch(f'solution is {len(y)}x{len(x)}, pattern is {pattern.shape[0]}x{pattern.shape[1]}')
    abs_y = abs(np.asarray(y))
    return abs_y @ pattern.dA @ x + abs_y @ pattern.db + x @ pattern.dc


def dw_nondegenerate(solution: LpSolution, pattern: PerturbationPattern) -> Scalar:
    if not solution.is_optimal:
        raise DegenerateInput(f'solution status is {solution.status.value}')
    if solution.primal_degenerate or solution.dual_degenerate:
        raise DegenerateInput('optimal solution is degenerate; use the basis or tractable methods')
    return dw_formula(solution.x_star, solution.y_star, pattern)


def dw_of_basis(problem: LpProblem, entry: Union[OptimalBasis, Basis], pattern: PerturbationPattern) -> Scalar:
    if isinstance(entry, Basis):
        found = basis_entry(problem, entry)
        if found is None:
            raise MethodNotApplicable(f'basis {entry.indices} is not optimal')
        entry = found
    return dw_formula(entry.x, entry.y, pattern.with_backend(problem.backend))


@dataclass(frozen=True)
class ObjectiveEntry:
    j: int


@dataclass(frozen=True)
class RhsEntry:
    i: int


@dataclass(frozen=True)
class MatrixEntry:
    i: int
    j: int


def single_coefficient(solution: LpSolution, which: Union[ObjectiveEntry, RhsEntry, MatrixEntry]) -> Scalar:
    """d_w for a pattern with a single unit entry: ``x_j``, ``|y_i|`` or ``|y_i x_j|``."""
    if not solution.is_unique_nondegenerate:
        raise DegenerateInput()
    if isinstance(which, ObjectiveEntry):
        return solution.x_star[which.j]
    if isinstance(which, RhsEntry):
        return abs(solution.y_star[which.i])
    if isinstance(which, MatrixEntry):
        return abs(solution.y_star[which.i] * solution.x_star[which.j])
    raise TypeError(f'unknown coefficient selector {which!r}')


def _standard(problem: LpProblem, pattern: PerturbationPattern) -> Tuple[LpProblem, PerturbationPattern]:
    if problem.form == ProblemForm.STANDARD:
        pattern = pattern.with_backend(problem.backend)
        pattern.validate_for(problem)
        return problem, pattern
    transformed = to_standard(problem, pattern)
    return transformed.problem, transformed.pattern


def _optimal(problem: LpProblem, solution: Optional[LpSolution] = None) -> LpSolution:
    solution = solution or solve(problem)
    if solution.status == SolveStatus.INFEASIBLE:
        raise InfeasibleProblem(f'{problem!r} is infeasible')
    if solution.status == SolveStatus.UNBOUNDED:
        raise UnboundedProblem(f'{problem!r} is unbounded')
    return solution


def max_over_optimal_set(problem: LpProblem, y: np.ndarray, weights: np.ndarray) -> Scalar:
    """Maximum of ``weightsᵀx`` over the optimal solutions of a standard-form problem.

    With ``y`` dual optimal, the optimal set is the feasible set restricted to the
    columns whose reduced cost vanishes. Raises ``MethodNotApplicable`` when the
    maximum is unbounded.
    """
    minimization = problem.as_minimization()
    bk = problem.backend
    reduced = minimization.c - minimization.A.T @ y
    scale = bk.norm_inf(minimization.c)
    face = [j for j in range(problem.n) if bk.is_zero(reduced[j], scale)]
    if not face:
        raise InternalInconsistency('no column has a zero reduced cost')

    restricted = LpProblem(
        A=minimization.A[:, face],
        b=minimization.b,
        c=weights[face],
        form=ProblemForm.STANDARD,
        sense=Sense.MAX,
        backend=bk,
    )
    solution = solve(restricted)
    if solution.status == SolveStatus.INFEASIBLE:
        raise InternalInconsistency('the optimal set of a solved problem came out empty')
    if solution.status == SolveStatus.UNBOUNDED:
        raise MethodNotApplicable('the optimal set is unbounded along the pattern')
    logger.debug(f'optimal face of {len(face)} columns, maximum {solution.objective}')
    return solution.objective


def dw_tractable_unique_dual(problem: LpProblem, y_star: np.ndarray, pattern: PerturbationPattern) -> Scalar:
    """``max |y|ᵀdA x + |y|ᵀdb + xᵀdc`` over the optimal set, for a unique dual optimum ``y``.

    Equals the largest ``d_w(B)`` over the optimal bases.
    """
    problem, pattern = _standard(problem, pattern)
    y = problem.backend.asarray(y_star)
    abs_y = abs(y)
    weights = abs_y @ pattern.dA + pattern.dc
    return max_over_optimal_set(problem, y, weights) + abs_y @ pattern.db


def dw_objective_only(
    problem: LpProblem,
    pattern: PerturbationPattern,
    solution: Optional[LpSolution] = None,
) -> Scalar:
    """``max xᵀdc`` over the optimal set when only the objective is perturbed.

    Shortcuts: ``f`` itself when ``dc = c ≥ 0``; ``x*ᵀdc`` when the optimum is unique.
    """
    if not pattern.is_objective_only:
        raise PatternNotObjectiveOnly()
    problem, pattern = _standard(problem, pattern)
    solution = _optimal(problem, solution)
    bk = problem.backend
    c = problem.min_objective

    if all(bk.is_zero(d - v) and not bk.is_negative(v) for d, v in zip(pattern.dc, c)):
        return c @ solution.x_star
    if not solution.dual_degenerate:
        return solution.x_star @ pattern.dc
    return max_over_optimal_set(problem, solution.y_star, pattern.dc)


def dw_rhs_only(solution: LpSolution, pattern: PerturbationPattern) -> Scalar:
    """``|y*|ᵀdb`` when only ``b`` is perturbed and the dual optimum is unique."""
    if not pattern.is_rhs_only:
        raise MethodNotApplicable('pattern perturbs A or c')
    if solution.primal_degenerate:
        raise DegenerateInput('dual optimum may not be unique')
    return abs(np.asarray(solution.y_star)) @ pattern.db


def basis_derivatives(
    entries: Sequence[OptimalBasis],
    pattern: PerturbationPattern,
    norm: float,
    workers: Optional[int] = None,
) -> Tuple[BasisDerivative, ...]:
    def evaluate(entry: OptimalBasis) -> BasisDerivative:
        value = dw_formula(entry.x, entry.y, pattern)
        return BasisDerivative(entry.basis, value, d_r_normalize(value, pattern, norm))

    return tuple(parallel_map(evaluate, entries, workers))


def seed_first(entries: Sequence[OptimalBasis], seed: Basis) -> Tuple[OptimalBasis, ...]:
    first = [e for e in entries if e.basis.key == seed.key]
    return tuple(first + [e for e in entries if e.basis.key != seed.key])


def dw_upper_bound(
    problem: LpProblem,
    pattern: PerturbationPattern,
    cap: Optional[int] = None,
    solution: Optional[LpSolution] = None,
    norm: Optional[float] = None,
    workers: Optional[int] = None,
) -> SensitivityReport:
    """``max d_w(B)`` over the optimal bases found by enumeration.

    Exact when the only optimal basis is primal nondegenerate; a truncated
    enumeration gives a basis estimate.
    """
    norm = pattern_norm(pattern) if norm is None else norm
    problem, pattern = _standard(problem, pattern)
    solution = _optimal(problem, solution)

    enumeration = enumerate_optimal_bases(problem, solution, cap=cap, workers=workers)
    entries = seed_first(enumeration.entries, solution.basis)
    per_basis = basis_derivatives(entries, pattern, norm, workers)
    best = max(range(len(per_basis)), key=lambda k: (per_basis[k].d_w, -k))

    if enumeration.truncated:
        grade = Grade.BASIS_ESTIMATE
    elif len(entries) == 1 and not entries[0].primal_degenerate:
        grade = Grade.EXACT
    else:
        grade = Grade.UPPER_BOUND

    return SensitivityReport(
        d_w=per_basis[best].d_w,
        d_r=per_basis[best].d_r,
        grade=grade,
        per_basis=per_basis,
        pattern_norm=norm,
        worst_sign=SignVector.of(entries[best].y),
        method=Method.BASIS,
        objective=solution.objective,
        primal_degenerate=solution.primal_degenerate,
        dual_degenerate=solution.dual_degenerate,
        n_bases=len(entries),
        truncated=enumeration.truncated,
    )
