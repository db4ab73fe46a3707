import itertools

import numpy as np
import pytest

from apps.core_lp.models import Basis, LpProblem
from apps.core_lp.simplex import is_optimal_basis


@pytest.fixture
def rng():
    return np.random.default_rng(20231105)


@pytest.fixture
def brute_force_optimal_bases():
    """All optimal bases of a standard-form problem, found by testing every index set."""

    def collect(problem: LpProblem):
        return sorted(
            key
            for key in itertools.combinations(range(problem.n), problem.m)
            if is_optimal_basis(problem, Basis(key))
        )

    return collect


def random_bounded_problem(rng, m, n, backend='rational', degenerate=True) -> LpProblem:
    """A standard-form problem with a feasible point and a dual feasible point, so an optimum exists.

    Integer data; with ``degenerate`` the planted points carry zeros, which makes
    primal and dual degeneracy likely.
    """
    while True:
        A = rng.integers(-5, 6, size=(m, n))
        if np.linalg.matrix_rank(A) == m:
            break
    high = 2 if degenerate else 4
    x0 = rng.integers(0, high, size=n)
    y0 = rng.integers(-3, 4, size=m)
    c = A.T @ y0 + rng.integers(0, high, size=n)
    return LpProblem(A=A, b=A @ x0, c=c, backend=backend)


def random_regular_problem(rng, m, n, backend='float') -> LpProblem:
    """Strictly feasible and strictly dual feasible, so small inflations keep an optimum."""
    while True:
        A = rng.integers(-5, 6, size=(m, n))
        if np.linalg.matrix_rank(A) == m:
            break
    x0 = rng.integers(1, 4, size=n)
    y0 = rng.integers(-3, 4, size=m)
    c = A.T @ y0 + rng.integers(1, 3, size=n)
    return LpProblem(A=A, b=A @ x0, c=c, backend=backend)
