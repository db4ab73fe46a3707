from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from apps.core_lp.models import Basis, LpProblem, ProblemForm, Sense
from apps.lp_forms.models import PerturbationPattern
from apps.lp_forms.transforms import to_standard
from common.exceptions import DimensionMismatch, WrongForm
from shared.arithmetic import Scalar


@dataclass(frozen=True, eq=False)
class InflatedIntervalLp:
    """The interval family ``[A - αdA, A + αdA]``, ``[b - αdb, b + αdb]``, ``[c - αdc, c + αdc]``.

    ``base`` is a standard-form problem; bounds are taken on its minimization form.
    """

    base: LpProblem
    pattern: PerturbationPattern
    alpha: Scalar = 0

    def __post_init__(self):
        if self.base.form != ProblemForm.STANDARD:
            raise WrongForm('interval family needs a standard-form base; use InflatedIntervalLp.from_problem')
        pattern = self.pattern.with_backend(self.base.backend)
        pattern.validate_for(self.base)
        alpha = self.base.backend.scalar(self.alpha)
        if alpha < 0:
            raise ValueError(f'inflation must be nonnegative, got {alpha}')
        object.__setattr__(self, 'pattern', pattern)
        object.__setattr__(self, 'alpha', alpha)

    @classmethod
    def from_problem(cls, problem: LpProblem, pattern: PerturbationPattern, alpha) -> 'InflatedIntervalLp':
        transformed = to_standard(problem, pattern)
        return cls(transformed.problem, transformed.pattern, alpha)

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def c(self) -> np.ndarray:
        return self.base.min_objective

    @property
    def A_lower(self) -> np.ndarray:
        return self.base.A - self.alpha * self.pattern.dA

    @property
    def A_upper(self) -> np.ndarray:
        return self.base.A + self.alpha * self.pattern.dA

    @property
    def b_lower(self) -> np.ndarray:
        return self.base.b - self.alpha * self.pattern.db

    @property
    def b_upper(self) -> np.ndarray:
        return self.base.b + self.alpha * self.pattern.db

    @property
    def c_lower(self) -> np.ndarray:
        return self.c - self.alpha * self.pattern.dc

    @property
    def c_upper(self) -> np.ndarray:
        return self.c + self.alpha * self.pattern.dc

    def at(self, alpha) -> 'InflatedIntervalLp':
        return InflatedIntervalLp(self.base, self.pattern, alpha)


@dataclass(frozen=True)
class SignVector:
    """Entries in {+1, -1}; as a binary number the most significant bit is row 0 and -1 reads as 1."""

    s: Tuple[int, ...]

    def __post_init__(self):
        s = tuple(int(v) for v in self.s)
        if any(v not in (1, -1) for v in s):
            raise DimensionMismatch(f'sign vector entries must be +1 or -1, got {s}')
        object.__setattr__(self, 's', s)

    @classmethod
    def of(cls, values) -> 'SignVector':
        return cls(tuple(1 if v >= 0 else -1 for v in values))

    @classmethod
    def from_integer(cls, number: int, m: int) -> 'SignVector':
        bits = format(number, f'0{m}b') if m else ''
        return cls(tuple(-1 if bit == '1' else 1 for bit in bits))

    @property
    def as_integer(self) -> int:
        return int(''.join('1' if v < 0 else '0' for v in self.s) or '0', 2)

    def __len__(self) -> int:
        return len(self.s)

    def __iter__(self):
        return iter(self.s)

    def __str__(self) -> str:
        return ''.join('+' if v > 0 else '-' for v in self.s)


@dataclass(frozen=True, eq=False)
class OptimalValueRange:
    """Best and worst optimal values of an interval family.

    Values are in the sense of the problem they were asked for; ``f_low`` is
    ``None`` for a worst-case-only result. ``infeasible_realizations`` counts
    sign vectors whose realization had no feasible point.
    """

    f_low: Optional[Scalar]
    f_high: Scalar
    argmax_sign: Optional[SignVector] = None
    argmax_basis: Optional[Basis] = None
    infeasible_realizations: int = 0
    sense: Sense = Sense.MIN

    @property
    def regular(self) -> bool:
        return self.infeasible_realizations == 0
