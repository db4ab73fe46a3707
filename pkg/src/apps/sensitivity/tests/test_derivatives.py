from fractions import Fraction

import numpy as np
import pytest

from apps.core_lp.models import Basis, LpProblem
from apps.core_lp.simplex import solve
from apps.interval_lp.models import SignVector
from apps.io_cli.generators import example1
from apps.lp_forms.models import PerturbationPattern
from apps.sensitivity.derivatives import (
    MatrixEntry,
    ObjectiveEntry,
    RhsEntry,
    d_r_normalize,
    dw_formula,
    dw_nondegenerate,
    dw_objective_only,
    dw_of_basis,
    dw_rhs_only,
    dw_tractable_unique_dual,
    dw_upper_bound,
    max_over_optimal_set,
    pattern_norm,
    single_coefficient,
)
from apps.sensitivity.models import Grade
from common.exceptions import (
    DegenerateInput,
    DimensionMismatch,
    MethodNotApplicable,
    PatternNotObjectiveOnly,
    ZeroPattern,
)
from conftest import random_bounded_problem, random_regular_problem


def solved(problem):
    solution = solve(problem)
    assert solution.is_optimal
    return solution


def objective_pattern(problem, dc):
    bk = problem.backend
    return PerturbationPattern(bk.zeros((problem.m, problem.n)), bk.zeros(problem.m), dc, backend=bk)


def nondegenerate_instances(rng, count, backend='rational'):
    found = []
    while len(found) < count:
        m = int(rng.integers(1, 4))
        n = int(rng.integers(m + 1, 7))
        problem = random_regular_problem(rng, m, n, backend=backend)
        solution = solve(problem)
        if solution.is_unique_nondegenerate:
            found.append((problem, solution))
    return found


@pytest.mark.parametrize('backend', ['float', 'rational'])
def test_example1_nondegenerate_values(backend):
    problem = example1(Fraction(3, 2), backend=backend)
    pattern = PerturbationPattern.relative(problem)

    d_w = dw_nondegenerate(solved(problem), pattern)

    assert float(d_w) == pytest.approx(29.556, abs=1e-3)
    assert d_r_normalize(d_w, pattern) == pytest.approx(1.1494, abs=1e-4)


def test_example1_nondegenerate_value_is_exact_on_rationals():
    problem = example1(Fraction(3, 2), backend='rational')

    assert dw_nondegenerate(solved(problem), PerturbationPattern.relative(problem)) == Fraction(266, 9)


def test_example1_second_cost_vector():
    problem = example1(Fraction(5, 2), backend='rational')
    pattern = PerturbationPattern.relative(problem)

    d_w = dw_nondegenerate(solved(problem), pattern)

    assert d_w == 479
    assert pattern_norm(pattern) ** 2 == pytest.approx(665.25)
    assert d_r_normalize(d_w, pattern) == pytest.approx(18.571, abs=1e-3)


def test_zero_pattern_gives_zero():
    problem = example1(Fraction(3, 2), backend='rational')

    assert dw_nondegenerate(solved(problem), PerturbationPattern.zero(problem)) == 0


def test_absolute_pattern_closed_form():
    """(|y|ᵀe + 1)(xᵀe + 1) - 1 for an all-ones pattern."""
    problem = example1(Fraction(3, 2), backend='rational')
    solution = solved(problem)

    d_w = dw_nondegenerate(solution, PerturbationPattern.absolute(problem))
    closed = (sum(abs(solution.y_star)) + 1) * (sum(solution.x_star) + 1) - 1

    assert d_w == closed == Fraction(152, 9)


def test_absolute_pattern_closed_form_on_random_instances(rng):
    for problem, solution in nondegenerate_instances(rng, 25):
        closed = (sum(abs(solution.y_star)) + 1) * (sum(solution.x_star) + 1) - 1

        assert dw_nondegenerate(solution, PerturbationPattern.absolute(problem)) == closed


def test_degenerate_solution_is_rejected():
    problem = example1(2, backend='rational')

    with pytest.raises(DegenerateInput):
        dw_nondegenerate(solved(problem), PerturbationPattern.relative(problem))


def test_formula_checks_dimensions():
    problem = example1(Fraction(3, 2))
    solution = solved(problem)
    other = PerturbationPattern.relative(LpProblem(A=[[1, 1]], b=[1], c=[1, 1]))

    with pytest.raises(DimensionMismatch):
        dw_formula(solution.x_star, solution.y_star, other)


@pytest.mark.parametrize('indices, expected', [((0, 1), 479), ((1, 2), Fraction(77, 3))])
def test_example1_per_basis_values(indices, expected):
    problem = example1(2, backend='rational')

    assert dw_of_basis(problem, Basis(indices), PerturbationPattern.relative(problem)) == expected


def test_per_basis_value_with_zero_pattern():
    problem = example1(2, backend='rational')

    assert dw_of_basis(problem, Basis((0, 1)), PerturbationPattern.zero(problem)) == 0


def test_per_basis_value_of_a_non_optimal_basis():
    problem = example1(Fraction(3, 2), backend='rational')

    with pytest.raises(MethodNotApplicable):
        dw_of_basis(problem, Basis((0, 1)), PerturbationPattern.relative(problem))


def test_upper_bound_lists_both_bases_of_example1():
    problem = example1(2, backend='rational')

    report = dw_upper_bound(problem, PerturbationPattern.relative(problem))

    assert report.d_w == 479
    assert report.grade == Grade.UPPER_BOUND
    assert report.n_bases == 2
    assert sorted(entry.d_w for entry in report.per_basis) == [Fraction(77, 3), 479]
    assert report.worst_sign == SignVector((1, 1))
    assert report.pattern_norm ** 2 == pytest.approx(663)
    assert report.d_r * report.pattern_norm == pytest.approx(float(report.d_w), rel=1e-12)


def test_upper_bound_starts_with_the_solver_basis():
    problem = example1(2, backend='rational')
    solution = solved(problem)

    report = dw_upper_bound(problem, PerturbationPattern.relative(problem), solution=solution)

    assert report.per_basis[0].basis.key == solution.basis.key


def test_upper_bound_on_nondegenerate_instance_is_exact():
    problem = example1(Fraction(3, 2), backend='rational')
    pattern = PerturbationPattern.relative(problem)

    report = dw_upper_bound(problem, pattern)

    assert report.grade == Grade.EXACT
    assert report.n_bases == 1
    assert report.d_w == dw_nondegenerate(solved(problem), pattern)


def test_upper_bound_truncated_enumeration_is_an_estimate():
    problem = example1(2, backend='rational')

    report = dw_upper_bound(problem, PerturbationPattern.relative(problem), cap=1)

    assert report.grade == Grade.BASIS_ESTIMATE
    assert report.truncated
    assert report.n_bases == 1


def test_per_basis_values_are_nonnegative(rng):
    for _ in range(20):
        problem = random_bounded_problem(rng, 3, 6)
        pattern = PerturbationPattern.relative(problem)

        report = dw_upper_bound(problem, pattern)

        assert all(entry.d_w >= 0 for entry in report.per_basis)
        assert report.d_w == max(entry.d_w for entry in report.per_basis)


def test_tractable_unique_dual_matches_enumeration():
    problem = example1(2, backend='rational')
    pattern = PerturbationPattern.relative(problem)
    solution = solved(problem)

    assert list(solution.y_star) == [1, 1]
    assert dw_tractable_unique_dual(problem, solution.y_star, pattern) == 479


def test_tractable_unique_dual_on_nondegenerate_instance(rng):
    for problem, solution in nondegenerate_instances(rng, 10):
        pattern = PerturbationPattern.relative(problem)

        assert dw_tractable_unique_dual(problem, solution.y_star, pattern) == dw_nondegenerate(solution, pattern)


def test_tractable_unique_dual_reduces_to_objective_only():
    problem = example1(2, backend='rational')
    pattern = objective_pattern(problem, [0, 0, 1])
    solution = solved(problem)

    assert dw_tractable_unique_dual(problem, solution.y_star, pattern) == dw_objective_only(problem, pattern)


def test_objective_only_maximizes_over_the_optimal_segment():
    """The optimal set of Example 1 at c3 = 2 joins (10, 7, 0) and (0, 1/3, 10/3)."""
    problem = example1(2, backend='rational')

    assert dw_objective_only(problem, objective_pattern(problem, [0, 0, 1])) == Fraction(10, 3)


def test_objective_only_with_pattern_equal_to_nonnegative_costs():
    problem = LpProblem(A=[[1, 1]], b=[7], c=[1, 2], backend='rational')

    assert dw_objective_only(problem, objective_pattern(problem, [1, 2])) == 7


def test_objective_only_unique_optimum_reads_the_entry():
    problem = example1(Fraction(3, 2), backend='rational')
    solution = solved(problem)

    assert dw_objective_only(problem, objective_pattern(problem, [0, 1, 0])) == solution.x_star[1]


def test_objective_only_rejects_matrix_patterns():
    problem = example1(2)

    with pytest.raises(PatternNotObjectiveOnly):
        dw_objective_only(problem, PerturbationPattern.relative(problem))


def test_unbounded_optimal_set_is_not_tractable():
    """min x1 - x2 on x1 - x2 = 0: every point of the ray is optimal."""
    problem = LpProblem(A=[[1, -1]], b=[0], c=[0, 0], backend='rational')

    with pytest.raises(MethodNotApplicable):
        max_over_optimal_set(problem, problem.backend.asarray([0]), problem.backend.asarray([1, 1]))


def test_rhs_only_pattern():
    problem = example1(Fraction(3, 2), backend='rational')
    solution = solved(problem)
    pattern = PerturbationPattern.rhs_entry(problem, 1)

    assert dw_rhs_only(solution, pattern) == Fraction(13, 6)


def test_rhs_only_rejects_other_patterns():
    problem = example1(Fraction(3, 2))

    with pytest.raises(MethodNotApplicable):
        dw_rhs_only(solved(problem), PerturbationPattern.relative(problem))


def test_single_coefficients_of_example1():
    solution = solved(example1(Fraction(3, 2), backend='rational'))

    assert single_coefficient(solution, ObjectiveEntry(1)) == Fraction(1, 3)
    assert single_coefficient(solution, RhsEntry(0)) == Fraction(2, 3)
    assert single_coefficient(solution, MatrixEntry(1, 2)) == Fraction(65, 9)


def test_single_coefficient_needs_nondegenerate_solution():
    with pytest.raises(DegenerateInput):
        single_coefficient(solved(example1(2)), ObjectiveEntry(0))


def test_single_coefficient_patterns_match_the_general_formula(rng):
    for problem, solution in nondegenerate_instances(rng, 20):
        for j in range(problem.n):
            pattern = PerturbationPattern.objective_entry(problem, j)
            value = single_coefficient(solution, ObjectiveEntry(j))
            assert dw_nondegenerate(solution, pattern) == value
            assert d_r_normalize(value, pattern) == pytest.approx(float(value))
        for i in range(problem.m):
            pattern = PerturbationPattern.rhs_entry(problem, i)
            assert dw_nondegenerate(solution, pattern) == single_coefficient(solution, RhsEntry(i))
            for j in range(problem.n):
                pattern = PerturbationPattern.matrix_entry(problem, i, j)
                assert dw_nondegenerate(solution, pattern) == single_coefficient(solution, MatrixEntry(i, j))


@pytest.mark.parametrize('beta', [Fraction(1, 2), 2, 10])
@pytest.mark.parametrize('gamma', [Fraction(1, 2), 2, 10])
def test_scaling_law(rng, beta, gamma):
    for problem, solution in nondegenerate_instances(rng, 10):
        pattern = PerturbationPattern.relative(problem)
        scaled = problem.with_data(A=beta * problem.A, b=beta * problem.b, c=beta * problem.c)
        scaled_pattern = PerturbationPattern(
            gamma * pattern.dA, gamma * pattern.db, gamma * pattern.dc, backend=problem.backend
        )

        d_w = dw_nondegenerate(solution, pattern)
        scaled_d_w = dw_nondegenerate(solved(scaled), scaled_pattern)

        assert scaled_d_w == gamma * d_w
        assert d_r_normalize(scaled_d_w, scaled_pattern) == pytest.approx(d_r_normalize(d_w, pattern), rel=1e-9)


def test_normalizing_a_zero_pattern_fails():
    problem = example1(2)

    with pytest.raises(ZeroPattern):
        d_r_normalize(1.0, PerturbationPattern.zero(problem))


def test_normalized_value_times_norm_is_the_derivative():
    problem = example1(Fraction(3, 2))
    pattern = PerturbationPattern.relative(problem)
    d_w = dw_nondegenerate(solved(problem), pattern)

    np.testing.assert_allclose(d_r_normalize(d_w, pattern) * pattern_norm(pattern), d_w, rtol=1e-12)
