from fractions import Fraction
from typing import Optional

import numpy as np
from django.conf import settings

from common.exceptions import SingularBasis
from .interfaces import IScalarBackend


def _as_float(value) -> float:
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return float(value)


class FloatBackend(IScalarBackend):
    name = 'float'
    exact = False

    def __init__(
        self,
        degeneracy_tol: Optional[float] = None,
        pivot_tol: Optional[float] = None,
    ):
        self.degeneracy_tol = degeneracy_tol if degeneracy_tol is not None else settings.LPSENS_DEGENERACY_TOL
        self.pivot_tol = pivot_tol if pivot_tol is not None else settings.LPSENS_PIVOT_TOL

    def scalar(self, value) -> float:
        return _as_float(value)

    def asarray(self, data) -> np.ndarray:
        array = np.asarray(data)
        if array.dtype.kind in 'biuf':
            return array.astype(float)
        return np.vectorize(_as_float, otypes=[float])(np.asarray(data, dtype=object))

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=float)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=float)

    def is_zero(self, value, scale=0) -> bool:
        return abs(value) <= self.degeneracy_tol * (1.0 + abs(float(scale)))

    def is_negative(self, value, scale=0) -> bool:
        return value < -self.degeneracy_tol * (1.0 + abs(float(scale)))

    def is_positive_pivot(self, value) -> bool:
        return value > self.pivot_tol

    def is_nonzero_pivot(self, value) -> bool:
        return abs(value) > self.pivot_tol

    def ties(self, value, best) -> bool:
        return value <= best + self.pivot_tol * (1.0 + abs(best))

    def inverse(self, matrix: np.ndarray) -> np.ndarray:
        try:
            return np.linalg.inv(np.asarray(matrix, dtype=float))
        except np.linalg.LinAlgError as exc:
            raise SingularBasis(str(exc)) from exc

    def solve(self, matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
        try:
            return np.linalg.solve(np.asarray(matrix, dtype=float), np.asarray(rhs, dtype=float))
        except np.linalg.LinAlgError as exc:
            raise SingularBasis(str(exc)) from exc

    def rank(self, matrix: np.ndarray) -> int:
        if matrix.size == 0:
            return 0
        return int(np.linalg.matrix_rank(np.asarray(matrix, dtype=float)))

    def condition(self, matrix: np.ndarray) -> float:
        if matrix.size == 0:
            return 1.0
        return float(np.linalg.cond(np.asarray(matrix, dtype=float)))

    def norm_inf(self, data: np.ndarray) -> float:
        if data.size == 0:
            return 0.0
        return float(np.max(np.abs(data)))
