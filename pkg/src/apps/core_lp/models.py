from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from common.exceptions import DimensionMismatch
from shared.arithmetic import IScalarBackend, Scalar, ScalarBackendFactory


class ProblemForm(str, Enum):
    STANDARD = 'standard'
    INEQ_NONNEG = 'ineq_nonneg'
    INEQ_FREE = 'ineq_free'


class Sense(str, Enum):
    MIN = 'min'
    MAX = 'max'


class SolveStatus(str, Enum):
    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class LpProblem:
    """Dense LP data ``(A, b, c)`` tagged with its canonical form.

    * ``standard``:    min cᵀx  s.t. Ax = b, x ≥ 0
    * ``ineq_nonneg``: min cᵀx  s.t. Ax ≤ b, x ≥ 0
    * ``ineq_free``:   min cᵀx  s.t. Ax ≤ b

    ``n_structural`` marks the first slack column of problems that already carry
    slacks (MPS rows converted to equalities); relative and absolute patterns
    leave those columns unperturbed.
    """

    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    form: ProblemForm = ProblemForm.STANDARD
    sense: Sense = Sense.MIN
    backend: IScalarBackend = field(default_factory=ScalarBackendFactory.create_backend)
    n_structural: Optional[int] = None
    name: str = ''

    def __post_init__(self):
        backend = self.backend
        if backend is None or isinstance(backend, str):
            backend = ScalarBackendFactory.create_backend(backend)
            object.__setattr__(self, 'backend', backend)

        A = backend.asarray(self.A)
        if A.ndim == 1 and A.size == 0:
            A = A.reshape(0, len(self.c))
        b = backend.asarray(self.b).reshape(-1)
        c = backend.asarray(self.c).reshape(-1)
        if A.ndim != 2:
            raise DimensionMismatch(f'A must be a matrix, got {A.ndim} dimensions')
        if A.shape[0] != b.shape[0]:
            raise DimensionMismatch(f'A has {A.shape[0]} rows but b has {b.shape[0]} entries')
        if A.shape[1] != c.shape[0]:
            raise DimensionMismatch(f'A has {A.shape[1]} columns but c has {c.shape[0]} entries')
        if self.n_structural is not None and not 0 <= self.n_structural <= A.shape[1]:
            raise DimensionMismatch(f'n_structural={self.n_structural} outside 0..{A.shape[1]}')

        object.__setattr__(self, 'A', _frozen(A))
        object.__setattr__(self, 'b', _frozen(b))
        object.__setattr__(self, 'c', _frozen(c))
        object.__setattr__(self, 'form', ProblemForm(self.form))
        object.__setattr__(self, 'sense', Sense(self.sense))

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def structural_columns(self) -> int:
        return self.n if self.n_structural is None else self.n_structural

    @property
    def min_objective(self) -> np.ndarray:
        return self.c if self.sense == Sense.MIN else -self.c

    def as_minimization(self) -> 'LpProblem':
        if self.sense == Sense.MIN:
            return self
        return replace(self, c=-self.c, sense=Sense.MIN)

    def with_backend(self, backend) -> 'LpProblem':
        if isinstance(backend, str):
            backend = ScalarBackendFactory.create_backend(backend)
        if backend.name == self.backend.name:
            return self
        if backend.exact:
            return replace(self, A=self.A, b=self.b, c=self.c, backend=backend)
        return replace(
            self,
            A=self.backend.to_float(self.A),
            b=self.backend.to_float(self.b),
            c=self.backend.to_float(self.c),
            backend=backend,
        )

    def with_data(self, A=None, b=None, c=None, **changes) -> 'LpProblem':
        return replace(
            self,
            A=self.A if A is None else A,
            b=self.b if b is None else b,
            c=self.c if c is None else c,
            **changes,
        )

    def __repr__(self) -> str:
        label = f' {self.name}' if self.name else ''
        return f'<LpProblem{label} {self.form.value} {self.sense.value} {self.m}x{self.n} {self.backend.name}>'


@dataclass(frozen=True)
class Basis:
    indices: Tuple[int, ...]

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        if len(set(indices)) != len(indices):
            raise DimensionMismatch(f'Basis indices are not distinct: {indices}')
        if any(i < 0 for i in indices):
            raise DimensionMismatch(f'Basis indices must be nonnegative: {indices}')
        object.__setattr__(self, 'indices', indices)

    @property
    def key(self) -> Tuple[int, ...]:
        return tuple(sorted(self.indices))

    def nonbasic(self, n: int) -> Tuple[int, ...]:
        members = set(self.indices)
        return tuple(j for j in range(n) if j not in members)

    def validate_for(self, problem: LpProblem) -> None:
        if len(self.indices) != problem.m:
            raise DimensionMismatch(f'Basis has {len(self.indices)} indices, problem has {problem.m} rows')
        if any(i >= problem.n for i in self.indices):
            raise DimensionMismatch(f'Basis index out of range 0..{problem.n - 1}: {self.indices}')

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: SolveStatus
    x_star: Optional[np.ndarray] = None
    y_star: Optional[np.ndarray] = None
    basis: Optional[Basis] = None
    objective: Optional[Scalar] = None
    primal_degenerate: bool = False
    dual_degenerate: bool = False
    reduced_costs: Optional[np.ndarray] = None
    iterations: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == SolveStatus.OPTIMAL

    @property
    def is_unique_nondegenerate(self) -> bool:
        return self.is_optimal and not self.primal_degenerate and not self.dual_degenerate


@dataclass(frozen=True, eq=False)
class OptimalBasis:
    """An optimal basis together with its basic primal and dual solutions."""

    basis: Basis
    x: np.ndarray
    y: np.ndarray
    primal_degenerate: bool = False
    dual_degenerate: bool = False


@dataclass(frozen=True, eq=False)
class BasisEnumeration:
    entries: Tuple[OptimalBasis, ...]
    truncated: bool = False

    @property
    def keys(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(entry.basis.key for entry in self.entries)

    def __len__(self) -> int:
        return len(self.entries)
