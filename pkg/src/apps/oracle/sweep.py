from typing import Optional, Sequence, Tuple

from loguru import logger

from apps.core_lp.models import LpProblem, ProblemForm, Sense
from apps.interval_lp.models import InflatedIntervalLp, SignVector
from apps.interval_lp.ranges import realization, solve_realization, value_of, worst_case
from apps.lp_forms.models import PerturbationPattern
from apps.lp_forms.transforms import solve_in_standard_form, to_standard, worst_case_realization_ineq
from common.concurrency import parallel_map
from common.exceptions import InfeasibleProblem, RegularityViolation, UnboundedProblem
from shared.arithmetic import Scalar
from .models import Extrapolation, OracleEstimate, SweepConfig

INFINITY = float('inf')


def _prepare(problem: LpProblem, pattern: PerturbationPattern, cfg: Optional[SweepConfig]):
    cfg = cfg or SweepConfig()
    if cfg.backend:
        problem = problem.with_backend(cfg.backend)
    pattern = pattern.with_backend(problem.backend)
    pattern.validate_for(problem)
    alphas = tuple(problem.backend.scalar(a) for a in cfg.alphas)
    return problem, pattern, cfg, alphas


def nominal_value(problem: LpProblem) -> Scalar:
    """Optimal value of the minimization form; the oracle measures increases of this number."""
    _, solution = solve_in_standard_form(problem)
    if not solution.is_optimal:
        raise InfeasibleProblem() if value_of(solution) == INFINITY else UnboundedProblem()
    return -solution.objective if problem.sense == Sense.MAX else solution.objective


def _checked(value: Scalar, alpha) -> Scalar:
    if value in (INFINITY, -INFINITY):
        kind = 'infeasible' if value == INFINITY else 'unbounded'
        raise RegularityViolation(f'worst-case realization at alpha={alpha} is {kind}')
    return value


def worst_value(problem: LpProblem, pattern: PerturbationPattern, alpha, max_m=None, workers=None) -> Scalar:
    if problem.form == ProblemForm.STANDARD:
        result = worst_case(InflatedIntervalLp(problem, pattern, alpha), max_m=max_m, workers=workers)
        if not result.regular:
            raise RegularityViolation(f'{result.infeasible_realizations} realizations at alpha={alpha} are infeasible')
        return _checked(result.f_high, alpha)
    realized = to_standard(worst_case_realization_ineq(problem, pattern, alpha)).problem
    return _checked(value_of(solve_realization(realized)), alpha)


def extrapolate(alphas: Sequence, quotients: Sequence, method: Extrapolation) -> Tuple[Scalar, Scalar]:
    """Limit of the quotients as alpha goes to zero, and the distance of the last quotient from it.

    Richardson fits ``q(α) = d + kα`` through the two smallest grid points.
    """
    if method == Extrapolation.RICHARDSON and len(quotients) >= 2:
        (a1, a2), (q1, q2) = alphas[-2:], quotients[-2:]
        slope = (q1 - q2) / (a1 - a2)
        estimate = q2 - slope * a2
        return estimate, abs(q2 - estimate)
    if len(quotients) >= 2:
        return quotients[-1], abs(quotients[-1] - quotients[-2])
    return quotients[-1], 0 * quotients[-1]


def estimate_dw(
    problem: LpProblem,
    pattern: PerturbationPattern,
    cfg: Optional[SweepConfig] = None,
    max_m: Optional[int] = None,
    workers: Optional[int] = None,
) -> OracleEstimate:
    """Estimate d_w from difference quotients ``(f̄(α) - f) / α`` of the worst optimal value."""
    problem, pattern, cfg, alphas = _prepare(problem, pattern, cfg)
    nominal = nominal_value(problem)

    def quotient(alpha):
        return (worst_value(problem, pattern, alpha, max_m, workers) - nominal) / alpha

    quotients = tuple(parallel_map(quotient, alphas, workers))
    for alpha, q in zip(alphas, quotients):
        logger.debug(f'oracle q({alpha}) = {q}')
    estimate, residual = extrapolate(alphas, quotients, cfg.extrapolation)
    logger.info(f'oracle estimate {estimate} (residual {residual}) for {problem!r}')
    return OracleEstimate(estimate, residual, quotients)


def fixed_sign_derivative(
    problem: LpProblem,
    pattern: PerturbationPattern,
    s: SignVector,
    cfg: Optional[SweepConfig] = None,
) -> Scalar:
    """Derivative of the optimal value along ``A - α·diag(s)·dA``, ``b + α·diag(s)·db``, ``c + α·dc``."""
    problem, pattern, cfg, alphas = _prepare(problem, pattern, cfg)
    nominal = nominal_value(problem)
    transformed = to_standard(problem, pattern)

    def quotient(alpha):
        ilp = InflatedIntervalLp(transformed.problem, transformed.pattern, alpha)
        value = _checked(value_of(solve_realization(realization(ilp, s))), alpha)
        return (value - nominal) / alpha

    quotients = parallel_map(quotient, alphas)
    estimate, _ = extrapolate(alphas, quotients, cfg.extrapolation)
    return estimate
