import time
from dataclasses import replace
from typing import List, Optional

from django.conf import settings
from loguru import logger

from apps.core_lp.bases import basis_entry
from apps.core_lp.models import LpProblem, LpSolution, SolveStatus
from apps.core_lp.simplex import drop_dependent_rows, solve
from apps.interval_lp.models import SignVector
from apps.lp_forms.models import PerturbationPattern
from apps.lp_forms.transforms import to_standard
from apps.oracle.sweep import estimate_dw
from common.exceptions import (
    DegenerateInput,
    InfeasibleProblem,
    MethodNotApplicable,
    RegularityViolation,
    TooManyConstraints,
    UnboundedProblem,
    ZeroPattern,
)
from .derivatives import (
    basis_derivatives,
    d_r_normalize,
    dw_nondegenerate,
    dw_objective_only,
    dw_rhs_only,
    dw_tractable_unique_dual,
    dw_upper_bound,
    pattern_norm,
)
from .models import AnalysisOptions, Grade, Method, OracleMode, SensitivityReport


class SensitivityAnalyzer:
    """Picks the cheapest method that applies to a solved problem and grades the result.

    Order for ``auto``: the closed form for a unique nondegenerate optimum, then the
    tractable cases (objective-only or right-hand-side-only patterns, unique dual),
    then enumeration of the optimal bases. The finite-difference oracle can be
    attached afterwards; agreement upgrades an upper bound to exact.
    """

    def __init__(self, problem: LpProblem, pattern: Optional[PerturbationPattern] = None, options: Optional[AnalysisOptions] = None):
        self.options = options or AnalysisOptions()
        if self.options.backend:
            problem = problem.with_backend(self.options.backend)
        pattern = pattern if pattern is not None else PerturbationPattern.relative(problem)
        pattern = pattern.with_backend(problem.backend)
        pattern.validate_for(problem)
        if pattern.is_zero:
            raise ZeroPattern()

        self.problem = problem
        self.pattern = pattern
        self.norm = pattern_norm(pattern)
        self.notes: List[str] = []

        transformed = to_standard(problem, pattern)
        self.standard, self.standard_pattern = transformed.problem, transformed.pattern
        if self.options.drop_dependent_rows:
            self._drop_dependent_rows()

    def _drop_dependent_rows(self) -> None:
        reduced, kept = drop_dependent_rows(self.standard)
        if len(kept) == self.standard.m:
            return
        rows = list(kept)
        pattern = self.standard_pattern
        self.standard = reduced
        self.standard_pattern = replace(pattern, dA=pattern.dA[rows], db=pattern.db[rows])
        self.notes.append(f'dropped {self.problem.m - len(rows)} dependent rows')

    def analyze(self) -> SensitivityReport:
        started = time.perf_counter()
        solution = solve(self.standard)
        if solution.status == SolveStatus.INFEASIBLE:
            raise InfeasibleProblem(f'{self.problem!r} is infeasible')
        if solution.status == SolveStatus.UNBOUNDED:
            raise UnboundedProblem(f'{self.problem!r} is unbounded')

        method = self.options.method
        if method == Method.NONDEG:
            report = self._nondegenerate(solution)
        elif method == Method.BASIS:
            report = self._enumerate(solution)
        elif method == Method.TRACTABLE:
            report = self._tractable(solution)
        elif method == Method.ORACLE:
            report = self._oracle_only(solution)
        else:
            report = self._auto(solution)

        if method != Method.ORACLE and self._wants_oracle(report):
            report = self._attach_oracle(report)

        elapsed = time.perf_counter() - started
        logger.info(f'{self.problem!r}: d_w={report.d_w} ({report.grade.value}) in {elapsed:.3f}s')
        return replace(report, notes=tuple(self.notes) + report.notes)

    def _auto(self, solution: LpSolution) -> SensitivityReport:
        if solution.is_unique_nondegenerate:
            return self._nondegenerate(solution)
        try:
            return self._tractable(solution)
        except MethodNotApplicable as exc:
            logger.debug(f'tractable cases do not apply: {exc.detail}')
            self.notes.append(exc.detail)
        return self._enumerate(solution)

    def _report(self, solution: LpSolution, d_w, grade: Grade, method: Method) -> SensitivityReport:
        entry = basis_entry(self.standard, solution.basis)
        per_basis = basis_derivatives([entry], self.standard_pattern, self.norm) if entry else ()
        return SensitivityReport(
            d_w=d_w,
            d_r=d_r_normalize(d_w, self.pattern, self.norm),
            grade=grade,
            per_basis=per_basis,
            pattern_norm=self.norm,
            worst_sign=SignVector.of(solution.y_star),
            method=method,
            objective=solution.objective,
            primal_degenerate=solution.primal_degenerate,
            dual_degenerate=solution.dual_degenerate,
            n_bases=1,
        )

    def _nondegenerate(self, solution: LpSolution) -> SensitivityReport:
        if not solution.is_unique_nondegenerate:
            raise DegenerateInput('optimal solution is degenerate; use --method basis or tractable')
        d_w = dw_nondegenerate(solution, self.standard_pattern)
        return self._report(solution, d_w, Grade.EXACT, Method.NONDEG)

    def _tractable(self, solution: LpSolution) -> SensitivityReport:
        pattern = self.standard_pattern
        if pattern.is_objective_only:
            d_w = dw_objective_only(self.standard, pattern, solution)
            c = self.standard.min_objective
            bk = self.standard.backend
            shortcut = all(bk.is_zero(d - v) and not bk.is_negative(v) for d, v in zip(pattern.dc, c))
            exact = shortcut or not solution.dual_degenerate
            return self._report(solution, d_w, Grade.EXACT if exact else Grade.UPPER_BOUND, Method.TRACTABLE)
        if solution.primal_degenerate:
            raise MethodNotApplicable('dual optimum is not certified unique')
        if pattern.is_rhs_only:
            return self._report(solution, dw_rhs_only(solution, pattern), Grade.EXACT, Method.TRACTABLE)
        d_w = dw_tractable_unique_dual(self.standard, solution.y_star, pattern)
        return self._report(solution, d_w, Grade.UPPER_BOUND, Method.TRACTABLE)

    def _enumerate(self, solution: LpSolution) -> SensitivityReport:
        return dw_upper_bound(
            self.standard,
            self.standard_pattern,
            cap=self.options.basis_cap,
            solution=solution,
            norm=self.norm,
            workers=self.options.workers,
        )

    def _oracle_only(self, solution: LpSolution) -> SensitivityReport:
        oracle = self._run_oracle()
        if oracle is None:
            raise MethodNotApplicable('oracle could not evaluate this problem: ' + '; '.join(self.notes))
        report = self._report(solution, oracle.estimate, Grade.ORACLE_APPROX, Method.ORACLE)
        return replace(report, oracle=oracle)

    def _wants_oracle(self, report: SensitivityReport) -> bool:
        mode = self.options.oracle
        if mode == OracleMode.ALWAYS:
            return True
        if mode == OracleMode.NEVER:
            return False
        return report.grade != Grade.EXACT and self.problem.m <= settings.LPSENS_ORACLE_AUTO_ROWS

    def _run_oracle(self):
        try:
            return estimate_dw(
                self.problem,
                self.pattern,
                self.options.sweep,
                max_m=self.options.max_sign_rows,
                workers=self.options.workers,
            )
        except (RegularityViolation, TooManyConstraints) as exc:
            logger.warning(f'oracle skipped: {exc.detail}')
            self.notes.append(f'oracle skipped: {exc.detail}')
            return None

    def _attach_oracle(self, report: SensitivityReport) -> SensitivityReport:
        oracle = self._run_oracle()
        if oracle is None:
            return report
        report = replace(report, oracle=oracle)
        if report.grade != Grade.UPPER_BOUND:
            return report

        threshold = settings.LPSENS_AGREEMENT_TOL * (1 + abs(float(report.d_w)))
        bound, estimate, residual = float(report.d_w), float(oracle.estimate), float(oracle.residual)
        if abs(bound - estimate) <= threshold and residual <= threshold:
            self.notes.append('upper bound corroborated by the oracle')
            return replace(report, grade=Grade.EXACT)
        if estimate > bound + threshold:
            logger.warning(f'oracle estimate {estimate} exceeds the upper bound {bound}')
            self.notes.append('oracle estimate exceeds the upper bound')
        return report


def analyze(
    problem: LpProblem,
    pattern: Optional[PerturbationPattern] = None,
    options: Optional[AnalysisOptions] = None,
) -> SensitivityReport:
    return SensitivityAnalyzer(problem, pattern, options).analyze()
