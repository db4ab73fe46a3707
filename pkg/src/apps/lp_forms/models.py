from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np

from apps.core_lp.models import LpProblem, ProblemForm
from common.exceptions import DimensionMismatch, NegativePattern
from shared.arithmetic import IScalarBackend, ScalarBackendFactory


class PatternKind(str, Enum):
    RELATIVE = 'relative'
    ABSOLUTE = 'absolute'
    CUSTOM = 'custom'


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PerturbationPattern:
    """Nonnegative radii ``(dA, db, dc)`` of an interval inflation of ``(A, b, c)``."""

    dA: np.ndarray
    db: np.ndarray
    dc: np.ndarray
    kind: PatternKind = PatternKind.CUSTOM
    backend: IScalarBackend = field(default_factory=ScalarBackendFactory.create_backend)

    def __post_init__(self):
        backend = self.backend
        if backend is None or isinstance(backend, str):
            backend = ScalarBackendFactory.create_backend(backend)
            object.__setattr__(self, 'backend', backend)

        dA = backend.asarray(self.dA)
        db = backend.asarray(self.db).reshape(-1)
        dc = backend.asarray(self.dc).reshape(-1)
        if dA.ndim == 1 and dA.size == 0:
            dA = dA.reshape(0, dc.shape[0])
        if dA.ndim != 2 or dA.shape != (db.shape[0], dc.shape[0]):
            raise DimensionMismatch(f'pattern blocks have shapes {dA.shape}, {db.shape}, {dc.shape}')
        for name, block in (('dA', dA), ('db', db), ('dc', dc)):
            if any(v < 0 for v in block.ravel()):
                raise NegativePattern(f'{name} has negative entries')

        object.__setattr__(self, 'dA', _frozen(dA))
        object.__setattr__(self, 'db', _frozen(db))
        object.__setattr__(self, 'dc', _frozen(dc))
        object.__setattr__(self, 'kind', PatternKind(self.kind))

    @classmethod
    def relative(cls, problem: LpProblem) -> 'PerturbationPattern':
        """``|A|, |b|, |c|`` on the structural columns; slack columns stay fixed."""
        pattern = cls._structural(problem, abs(problem.A), abs(problem.b), abs(problem.c))
        return replace(pattern, kind=PatternKind.RELATIVE)

    @classmethod
    def absolute(cls, problem: LpProblem) -> 'PerturbationPattern':
        bk = problem.backend
        ones = bk.asarray(np.ones((problem.m, problem.n), dtype=int))
        pattern = cls._structural(
            problem,
            ones,
            bk.asarray(np.ones(problem.m, dtype=int)),
            bk.asarray(np.ones(problem.n, dtype=int)),
        )
        return replace(pattern, kind=PatternKind.ABSOLUTE)

    @classmethod
    def zero(cls, problem: LpProblem) -> 'PerturbationPattern':
        bk = problem.backend
        return cls(bk.zeros((problem.m, problem.n)), bk.zeros(problem.m), bk.zeros(problem.n), backend=bk)

    @classmethod
    def objective_entry(cls, problem: LpProblem, j: int) -> 'PerturbationPattern':
        pattern = cls.zero(problem)
        dc = pattern.dc.copy()
        dc[j] = problem.backend.scalar(1)
        return replace(pattern, dc=dc)

    @classmethod
    def rhs_entry(cls, problem: LpProblem, i: int) -> 'PerturbationPattern':
        pattern = cls.zero(problem)
        db = pattern.db.copy()
        db[i] = problem.backend.scalar(1)
        return replace(pattern, db=db)

    @classmethod
    def matrix_entry(cls, problem: LpProblem, i: int, j: int) -> 'PerturbationPattern':
        pattern = cls.zero(problem)
        dA = pattern.dA.copy()
        dA[i, j] = problem.backend.scalar(1)
        return replace(pattern, dA=dA)

    @classmethod
    def _structural(cls, problem: LpProblem, dA, db, dc) -> 'PerturbationPattern':
        dA = np.array(dA, dtype=dA.dtype)
        dc = np.array(dc, dtype=dc.dtype)
        start = problem.structural_columns
        dA[:, start:] = problem.backend.scalar(0)
        dc[start:] = problem.backend.scalar(0)
        return cls(dA, db, dc, backend=problem.backend)

    @property
    def shape(self):
        return self.dA.shape

    @property
    def is_objective_only(self) -> bool:
        bk = self.backend
        return all(bk.is_zero(v) for v in self.dA.ravel()) and all(bk.is_zero(v) for v in self.db)

    @property
    def is_rhs_only(self) -> bool:
        bk = self.backend
        return all(bk.is_zero(v) for v in self.dA.ravel()) and all(bk.is_zero(v) for v in self.dc)

    @property
    def is_zero(self) -> bool:
        return self.is_objective_only and all(self.backend.is_zero(v) for v in self.dc)

    def validate_for(self, problem: LpProblem) -> None:
        if self.shape != (problem.m, problem.n):
            raise DimensionMismatch(f'pattern is {self.shape[0]}x{self.shape[1]}, problem is {problem.m}x{problem.n}')

    def with_backend(self, backend) -> 'PerturbationPattern':
        if isinstance(backend, str):
            backend = ScalarBackendFactory.create_backend(backend)
        if backend.name == self.backend.name:
            return self
        convert = (lambda a: a) if backend.exact else self.backend.to_float
        return replace(self, dA=convert(self.dA), db=convert(self.db), dc=convert(self.dc), backend=backend)

    def __repr__(self) -> str:
        return f'<PerturbationPattern {self.kind.value} {self.shape[0]}x{self.shape[1]}>'


@dataclass(frozen=True)
class BackMap:
    """How the columns of a standard-form problem relate to the variables it was built from."""

    source_form: ProblemForm
    n_original: int
    split: bool = False
    n_slack: int = 0

    @property
    def slack_start(self) -> int:
        return self.n_original * (2 if self.split else 1)

    def recover_x(self, x: np.ndarray) -> np.ndarray:
        if self.split:
            return x[:self.n_original] - x[self.n_original:2 * self.n_original]
        return x[:self.n_original]


@dataclass(frozen=True, eq=False)
class TransformedProblem:
    problem: LpProblem
    pattern: PerturbationPattern
    back_map: BackMap
    original: Optional[LpProblem] = None
    original_pattern: Optional[PerturbationPattern] = None
