from decimal import Decimal
from fractions import Fraction
from typing import Tuple

import numpy as np

from common.exceptions import SingularBasis
from .interfaces import IScalarBackend


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        # shortest decimal repr, so 0.1 becomes 1/10 and not the binary expansion
        return Fraction(repr(float(value)))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f'Cannot convert {value!r} to a rational number')


_to_fraction_array = np.frompyfunc(to_fraction, 1, 1)


class RationalBackend(IScalarBackend):
    """Exact arithmetic on numpy object arrays holding ``fractions.Fraction``."""

    name = 'rational'
    exact = True

    def scalar(self, value) -> Fraction:
        return to_fraction(value)

    def asarray(self, data) -> np.ndarray:
        array = np.asarray(data, dtype=object)
        if array.ndim == 0:
            return np.asarray(to_fraction(array.item()), dtype=object)
        return _to_fraction_array(array).astype(object)

    def zeros(self, shape) -> np.ndarray:
        return np.full(shape, Fraction(0), dtype=object)

    def eye(self, n: int) -> np.ndarray:
        identity = self.zeros((n, n))
        for i in range(n):
            identity[i, i] = Fraction(1)
        return identity

    def is_zero(self, value, scale=0) -> bool:
        return value == 0

    def is_negative(self, value, scale=0) -> bool:
        return value < 0

    def is_positive_pivot(self, value) -> bool:
        return value > 0

    def is_nonzero_pivot(self, value) -> bool:
        return value != 0

    def ties(self, value, best) -> bool:
        return value == best

    def _eliminate(self, matrix: np.ndarray, augment: np.ndarray = None) -> Tuple[np.ndarray, list]:
        rows, cols = matrix.shape
        work = matrix.copy() if augment is None else np.hstack([matrix, augment])
        pivots = []
        row = 0
        for col in range(cols):
            pivot = next((r for r in range(row, rows) if work[r, col] != 0), None)
            if pivot is None:
                continue
            if pivot != row:
                work[[row, pivot]] = work[[pivot, row]]
            work[row] = work[row] / work[row, col]
            for r in range(rows):
                if r != row and work[r, col] != 0:
                    work[r] = work[r] - work[r, col] * work[row]
            pivots.append(col)
            row += 1
            if row == rows:
                break
        return work, pivots

    def inverse(self, matrix: np.ndarray) -> np.ndarray:
        matrix = self.asarray(matrix)
        n, k = matrix.shape
        if n != k:
            raise SingularBasis(f'Basis matrix is {n}x{k}, not square')
        work, pivots = self._eliminate(matrix, self.eye(n))
        if len(pivots) < n:
            raise SingularBasis()
        return work[:, n:]

    def rank(self, matrix: np.ndarray) -> int:
        if matrix.size == 0:
            return 0
        _, pivots = self._eliminate(self.asarray(matrix))
        return len(pivots)

    def condition(self, matrix: np.ndarray) -> float:
        if matrix.size == 0:
            return 1.0
        return float(np.linalg.cond(self.to_float(matrix)))
