from fractions import Fraction

import numpy as np
import pytest

from apps.core_lp.models import LpProblem, ProblemForm, Sense
from apps.core_lp.simplex import solve
from apps.interval_lp.models import InflatedIntervalLp
from apps.interval_lp.ranges import solve_realization, value_of, worst_case
from apps.io_cli.generators import example1, hypercube
from apps.lp_forms.models import PerturbationPattern
from apps.lp_forms.transforms import (
    perturb_uniformly,
    solve_in_standard_form,
    to_standard,
    worst_case_realization_ineq,
)
from common.exceptions import DimensionMismatch, WrongForm


def realization_value(problem, pattern, alpha):
    realized = worst_case_realization_ineq(problem, pattern, alpha)
    return value_of(solve_realization(to_standard(realized).problem))


def test_free_variables_are_split_and_slacks_appended():
    """Hypercube n=2: 4 rows, 2 + 2 split columns and 4 slacks."""
    problem = hypercube(2)
    pattern = PerturbationPattern.relative(problem)

    transformed = to_standard(problem, pattern)

    standard, mapped = transformed.problem, transformed.pattern
    assert standard.form == ProblemForm.STANDARD
    assert standard.A.shape == (4, 8)
    np.testing.assert_array_equal(standard.A[:, 2:4], -problem.A)
    np.testing.assert_array_equal(standard.A[:, 4:], np.eye(4))
    np.testing.assert_array_equal(standard.c, [1, 1, -1, -1, 0, 0, 0, 0])
    np.testing.assert_array_equal(mapped.dA[:, :2], pattern.dA)
    np.testing.assert_array_equal(mapped.dA[:, 2:4], pattern.dA)
    np.testing.assert_array_equal(mapped.dA[:, 4:], 0)
    np.testing.assert_array_equal(mapped.dc, [1, 1, 1, 1, 0, 0, 0, 0])
    assert standard.n_structural == 4


def test_nonnegative_inequalities_get_slacks_only():
    problem = LpProblem(A=[[1, 2, 3], [-1, 0, 2]], b=[4, -1], c=[1, 1, 1], form=ProblemForm.INEQ_NONNEG)

    transformed = to_standard(problem, PerturbationPattern.absolute(problem))

    assert transformed.problem.n == 5
    np.testing.assert_array_equal(transformed.problem.b, [4, -1])
    np.testing.assert_array_equal(transformed.pattern.dA[:, 3:], 0)
    np.testing.assert_array_equal(transformed.pattern.dc, [1, 1, 1, 0, 0])


def test_standard_problems_pass_through():
    problem = example1()

    transformed = to_standard(problem)

    assert transformed.problem is problem
    assert transformed.pattern.is_zero


def test_pattern_must_match_problem():
    with pytest.raises(DimensionMismatch):
        to_standard(hypercube(2), PerturbationPattern.absolute(hypercube(3)))


def test_back_map_recovers_free_variables():
    transformed, solution = solve_in_standard_form(hypercube(3))

    x = transformed.back_map.recover_x(np.asarray(solution.x_star, dtype=float))

    np.testing.assert_allclose(x, [1, 1, 1])
    assert solution.objective == pytest.approx(3.0)


def test_hypercube_realization_relative():
    """α = 0.5: rows 1.5x ≤ 0.5 and objective -0.5·eᵀx give -1/3."""
    problem = hypercube(2, backend='rational')

    value = realization_value(problem, PerturbationPattern.relative(problem), Fraction(1, 2))

    assert value == Fraction(-1, 3)


def test_hypercube_realization_absolute():
    problem = hypercube(3)

    value = realization_value(problem, PerturbationPattern.absolute(problem), 0.1)

    assert value == pytest.approx(-3 * 0.9 ** 2 / 1.3)


def test_zero_inflation_keeps_the_problem():
    problem = LpProblem(A=[[1, 2], [3, 1]], b=[4, 5], c=[-1, -1], form=ProblemForm.INEQ_NONNEG)

    realized = worst_case_realization_ineq(problem, PerturbationPattern.relative(problem), 0)

    np.testing.assert_array_equal(realized.A, problem.A)
    np.testing.assert_array_equal(realized.b, problem.b)
    np.testing.assert_array_equal(realized.c, problem.c)


def test_realization_of_max_problem_is_a_minimization():
    problem = LpProblem(A=[[1, 1]], b=[2], c=[1, 3], form=ProblemForm.INEQ_NONNEG, sense=Sense.MAX)

    realized = worst_case_realization_ineq(problem, PerturbationPattern.relative(problem), 0)

    assert realized.sense == Sense.MIN
    np.testing.assert_array_equal(realized.c, [-1, -3])


def test_realization_needs_inequality_form():
    problem = example1()

    with pytest.raises(WrongForm):
        worst_case_realization_ineq(problem, PerturbationPattern.relative(problem), 0.1)


@pytest.mark.parametrize('form', [ProblemForm.INEQ_NONNEG, ProblemForm.INEQ_FREE])
@pytest.mark.parametrize('alpha', [Fraction(0), Fraction(1, 20), Fraction(1, 10)])
@pytest.mark.filterwarnings('ignore::common.exceptions.RegularityWarning')
def test_worst_case_is_invariant_under_the_transformation(rng, form, alpha):
    for _ in range(50):
        m = int(rng.integers(1, 4))
        n = int(rng.integers(1, 5))
        problem = LpProblem(
            A=rng.integers(-3, 4, size=(m, n)),
            b=rng.integers(-3, 4, size=m),
            c=rng.integers(-3, 4, size=n),
            form=form,
            backend='rational',
        )
        pattern = PerturbationPattern.relative(problem)

        enumerated = worst_case(InflatedIntervalLp.from_problem(problem, pattern, alpha))

        assert enumerated.f_high == realization_value(problem, pattern, alpha)


def test_uniform_perturbation_is_small_and_reproducible():
    problem = LpProblem(A=[[1, 2, 1, 0], [3, 4, 0, 1]], b=[5, 6], c=[1, 1, 0, 0], n_structural=2)

    first = perturb_uniformly(problem, magnitude=5e-5, seed=7)
    second = perturb_uniformly(problem, magnitude=5e-5, seed=7)

    np.testing.assert_array_equal(first.A, second.A)
    np.testing.assert_allclose(first.A, problem.A, rtol=5e-5)
    np.testing.assert_allclose(first.b, problem.b, rtol=5e-5)
    np.testing.assert_array_equal(first.A[:, 2:], problem.A[:, 2:])
    assert not np.array_equal(first.A[:, :2], problem.A[:, :2])
    assert solve(first).is_optimal
