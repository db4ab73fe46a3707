"""Example problems for the ``generate`` command: the two-row example1 family, unit hypercubes and their linear images."""
from fractions import Fraction

import numpy as np

from apps.core_lp.models import LpProblem, ProblemForm, Sense

TRANSFORM_KINDS = ('identity', 'random', 'vandermonde', 'hilbert')


def example1(c3=Fraction(3, 2), backend=None) -> LpProblem:
    """``min 12x1 - 17x2 + c3*x3`` over two equality rows; two optimal bases at ``c3 = 2``."""
    return LpProblem(
        A=[[5, -7, 1], [7, -10, 1]],
        b=[1, 0],
        c=[12, -17, c3],
        form=ProblemForm.STANDARD,
        sense=Sense.MIN,
        backend=backend,
        name=f'example1(c3={c3})',
    )


def hypercube(n: int, backend=None) -> LpProblem:
    """``max eᵀx s.t. -e ≤ x ≤ e`` written as ``(I; -I) x ≤ (e; e)`` with free x."""
    identity = np.eye(n, dtype=int)
    return LpProblem(
        A=np.vstack([identity, -identity]),
        b=np.ones(2 * n, dtype=int),
        c=np.ones(n, dtype=int),
        form=ProblemForm.INEQ_FREE,
        sense=Sense.MAX,
        backend=backend,
        name=f'hypercube({n})',
    )


def transform_matrix(kind: str, n: int, rng: np.random.Generator) -> np.ndarray:
    if kind == 'identity':
        return np.eye(n)
    if kind == 'random':
        return rng.uniform(-1.0, 1.0, size=(n, n))
    if kind == 'vandermonde':
        return np.vander(np.linspace(0.5, 1.5, n), increasing=True)
    if kind == 'hilbert':
        index = np.arange(n)
        return 1.0 / (index[:, None] + index[None, :] + 1.0)
    raise ValueError(f'Unknown transform kind {kind!r}, expected one of {TRANSFORM_KINDS}')


def transformed_hypercube(kind: str, n: int, seed: int = 0, backend=None) -> LpProblem:
    """``max cᵀx s.t. -e ≤ Ax ≤ e`` with a seeded objective drawn from [-1, 1]."""
    rng = np.random.default_rng(seed)
    matrix = transform_matrix(kind, n, rng)
    objective = rng.uniform(-1.0, 1.0, size=n)
    return LpProblem(
        A=np.vstack([matrix, -matrix]),
        b=np.ones(2 * n),
        c=objective,
        form=ProblemForm.INEQ_FREE,
        sense=Sense.MAX,
        backend=backend,
        name=f'{kind}-hypercube({n})',
    )
