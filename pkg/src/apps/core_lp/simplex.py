from typing import List, Optional, Tuple

import numpy as np
from django.conf import settings
from loguru import logger

from common.exceptions import (
    NumericBreakdown,
    RankDeficient,
    SingularBasis,
    WrongForm,
)
from .models import Basis, LpProblem, LpSolution, ProblemForm, Sense, SolveStatus


class RevisedSimplexSolver:
    """Two-phase revised simplex with Bland's rule for ``min cᵀx s.t. Ax = b, x ≥ 0``.

    The basis inverse is kept explicitly and updated by elementary row operations;
    on the float backend it is recomputed every ``LPSENS_REFACTOR_EVERY`` pivots.
    Once the final basis is known, primal and dual solutions are recomputed from
    the original data. Instances are single-use.
    """

    def __init__(self, problem: LpProblem, max_iterations: Optional[int] = None):
        if problem.form != ProblemForm.STANDARD:
            raise WrongForm(f'solve() needs a standard-form problem, got {problem.form.value}')
        self.original = problem
        self.problem = problem.as_minimization()
        self.backend = problem.backend
        self.max_iterations = max_iterations or settings.LPSENS_MAX_ITERATIONS
        self.refactor_every = settings.LPSENS_REFACTOR_EVERY
        self.iterations = 0
        self._used = False

    def solve(self) -> LpSolution:
        if self._used:
            raise RuntimeError('RevisedSimplexSolver instances are single-use')
        self._used = True

        problem, bk = self.problem, self.backend
        A, b, c = problem.A, problem.b, problem.c
        m, n = A.shape

        if bk.rank(A) < m:
            raise RankDeficient(f'rank(A) < {m}; drop dependent rows first')

        # Phase one on rows scaled so that b >= 0, artificial columns n..n+m-1.
        signs = np.array([-1 if v < 0 else 1 for v in b], dtype=int)
        A1 = A * signs[:, None]
        b1 = b * signs
        augmented = np.hstack([A1, bk.eye(m)])
        phase_one_cost = np.concatenate([bk.zeros(n), bk.asarray(np.ones(m))])
        basis = list(range(n, n + m))
        inverse = bk.eye(m)

        status, basis, inverse = self._iterate(augmented, b1, phase_one_cost, basis, inverse, n + m)
        x_basic = inverse @ b1
        infeasibility = sum(x_basic[pos] for pos, var in enumerate(basis) if var >= n)
        if bk.is_negative(-infeasibility, bk.norm_inf(b)):
            logger.debug(f'Phase one ended with infeasibility {infeasibility}')
            return LpSolution(status=SolveStatus.INFEASIBLE, iterations=self.iterations)

        basis, inverse = self._drive_out_artificials(A1, basis, inverse, n)

        status, basis, inverse = self._iterate(A1, b1, c, basis, inverse, n)
        if status == SolveStatus.UNBOUNDED:
            return LpSolution(status=SolveStatus.UNBOUNDED, iterations=self.iterations)

        return self._finalize(Basis(tuple(basis)))

    def _iterate(
        self,
        A: np.ndarray,
        b: np.ndarray,
        c: np.ndarray,
        basis: List[int],
        inverse: np.ndarray,
        allowed: int,
    ) -> Tuple[SolveStatus, List[int], np.ndarray]:
        bk = self.backend
        cost_scale = bk.norm_inf(c)
        since_refactor = 0

        while True:
            if self.iterations >= self.max_iterations:
                raise NumericBreakdown(f'simplex did not terminate in {self.max_iterations} iterations')
            if not bk.exact and since_refactor >= self.refactor_every:
                inverse = bk.inverse(A[:, basis])
                since_refactor = 0

            x_basic = inverse @ b
            y = inverse.T @ c[basis]
            in_basis = set(basis)

            entering = None
            for j in range(allowed):
                if j in in_basis:
                    continue
                if bk.is_negative(c[j] - A[:, j] @ y, cost_scale):
                    entering = j
                    break
            if entering is None:
                return SolveStatus.OPTIMAL, basis, inverse

            column = inverse @ A[:, entering]
            leaving_pos = None
            best = None
            for pos in range(len(basis)):
                if not bk.is_positive_pivot(column[pos]):
                    continue
                ratio = x_basic[pos] / column[pos]
                if best is None or (ratio < best and not bk.ties(best, ratio)):
                    best, leaving_pos = ratio, pos
                elif bk.ties(ratio, best) and basis[pos] < basis[leaving_pos]:
                    leaving_pos = pos
            if leaving_pos is None:
                return SolveStatus.UNBOUNDED, basis, inverse

            logger.debug(f'pivot: x{entering} enters, x{basis[leaving_pos]} leaves (ratio {best})')
            inverse = _pivot_inverse(inverse, column, leaving_pos)
            basis[leaving_pos] = entering
            self.iterations += 1
            since_refactor += 1

    def _drive_out_artificials(
        self,
        A: np.ndarray,
        basis: List[int],
        inverse: np.ndarray,
        n: int,
    ) -> Tuple[List[int], np.ndarray]:
        bk = self.backend
        for pos, var in enumerate(basis):
            if var < n:
                continue
            row = inverse[pos] @ A
            in_basis = set(basis)
            entering = next(
                (j for j in range(n) if j not in in_basis and bk.is_nonzero_pivot(row[j])),
                None,
            )
            if entering is None:
                raise RankDeficient('artificial variable cannot leave the basis')
            column = inverse @ A[:, entering]
            inverse = _pivot_inverse(inverse, column, pos)
            basis[pos] = entering
            self.iterations += 1
        return basis, inverse

    def _finalize(self, basis: Basis) -> LpSolution:
        problem, bk = self.problem, self.backend
        A_B = problem.A[:, list(basis.indices)]
        if not bk.exact:
            condition = bk.condition(A_B)
            if condition > settings.LPSENS_CONDITION_LIMIT:
                raise NumericBreakdown(
                    f'basis condition estimate {condition:.3g} exceeds {settings.LPSENS_CONDITION_LIMIT:.3g}; '
                    'retry with the rational backend'
                )

        x, y, reduced = basic_solution(problem, basis)
        primal_degenerate, dual_degenerate = degeneracy_flags(problem, basis, x, reduced)
        objective = problem.c @ x
        if self.original.sense == Sense.MAX:
            objective = -objective

        logger.debug(
            f'optimal basis {basis.indices} after {self.iterations} pivots, '
            f'objective {objective}, degenerate primal={primal_degenerate} dual={dual_degenerate}'
        )
        return LpSolution(
            status=SolveStatus.OPTIMAL,
            x_star=x,
            y_star=y,
            basis=basis,
            objective=objective,
            primal_degenerate=primal_degenerate,
            dual_degenerate=dual_degenerate,
            reduced_costs=reduced,
            iterations=self.iterations,
        )


def _pivot_inverse(inverse: np.ndarray, column: np.ndarray, pos: int) -> np.ndarray:
    pivot_row = inverse[pos] / column[pos]
    updated = inverse - np.outer(column, pivot_row)
    updated[pos] = pivot_row
    return updated


def solve(problem: LpProblem) -> LpSolution:
    return RevisedSimplexSolver(problem).solve()


def dual_solution(problem: LpProblem, basis: Basis) -> np.ndarray:
    """``y = A_B^{-T} c_B`` for the minimization form of ``problem``."""
    basis.validate_for(problem)
    problem = problem.as_minimization()
    A_B = problem.A[:, list(basis.indices)]
    return problem.backend.solve(A_B.T, problem.c[list(basis.indices)])


def basic_solution(problem: LpProblem, basis: Basis) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Primal basic solution, dual solution and reduced costs of ``basis`` (minimization form)."""
    basis.validate_for(problem)
    problem = problem.as_minimization()
    bk = problem.backend
    indices = list(basis.indices)
    inverse = bk.inverse(problem.A[:, indices])
    x = bk.zeros(problem.n)
    x[indices] = inverse @ problem.b
    y = inverse.T @ problem.c[indices]
    reduced = problem.c - problem.A.T @ y
    reduced[indices] = bk.scalar(0)
    return x, y, reduced


def degeneracy_flags(problem: LpProblem, basis: Basis, x: np.ndarray, reduced: np.ndarray) -> Tuple[bool, bool]:
    bk = problem.backend
    b_scale = bk.norm_inf(problem.b)
    c_scale = bk.norm_inf(problem.c)
    primal = any(bk.is_zero(x[i], b_scale) for i in basis.indices)
    dual = any(bk.is_zero(reduced[j], c_scale) for j in basis.nonbasic(problem.n))
    return primal, dual


def is_optimal_basis(problem: LpProblem, basis: Basis) -> bool:
    try:
        x, _, reduced = basic_solution(problem, basis)
    except SingularBasis:
        return False
    bk = problem.backend
    b_scale = bk.norm_inf(problem.b)
    c_scale = bk.norm_inf(problem.c)
    return (
        not any(bk.is_negative(x[i], b_scale) for i in basis.indices)
        and not any(bk.is_negative(reduced[j], c_scale) for j in basis.nonbasic(problem.n))
    )


def drop_dependent_rows(problem: LpProblem) -> Tuple[LpProblem, Tuple[int, ...]]:
    """Remove rows that are linear combinations of earlier rows.

    Returns the reduced problem and the kept row indices. Raises ``RankDeficient``
    when a dependent row has an inconsistent right-hand side.
    """
    bk = problem.backend
    kept: List[int] = []
    rank = 0
    for i in range(problem.m):
        candidate = kept + [i]
        new_rank = bk.rank(problem.A[candidate])
        if new_rank > rank:
            kept.append(i)
            rank = new_rank
            continue
        augmented = np.hstack([problem.A[candidate], problem.b[candidate].reshape(-1, 1)])
        if bk.rank(augmented) > rank:
            raise RankDeficient(f'row {i} is dependent but its right-hand side is inconsistent')
        logger.warning(f'dropping dependent row {i} of {problem!r}')

    if len(kept) == problem.m:
        return problem, tuple(kept)
    return problem.with_data(A=problem.A[kept], b=problem.b[kept]), tuple(kept)
