from abc import ABC, abstractmethod
from typing import Any, Sequence, Tuple, Union

import numpy as np

Scalar = Any
ArrayLike = Union[np.ndarray, Sequence]


class IScalarBackend(ABC):
    """Arithmetic used by the solver: dense arrays plus the zero/sign tests of the backend."""

    name: str = ''
    exact: bool = False

    @abstractmethod
    def scalar(self, value) -> Scalar:
        pass

    @abstractmethod
    def asarray(self, data: ArrayLike) -> np.ndarray:
        pass

    @abstractmethod
    def zeros(self, shape: Union[int, Tuple[int, ...]]) -> np.ndarray:
        pass

    @abstractmethod
    def eye(self, n: int) -> np.ndarray:
        pass

    @abstractmethod
    def is_zero(self, value: Scalar, scale: Scalar = 0) -> bool:
        pass

    @abstractmethod
    def is_negative(self, value: Scalar, scale: Scalar = 0) -> bool:
        pass

    @abstractmethod
    def is_positive_pivot(self, value: Scalar) -> bool:
        pass

    @abstractmethod
    def is_nonzero_pivot(self, value: Scalar) -> bool:
        pass

    @abstractmethod
    def ties(self, value: Scalar, best: Scalar) -> bool:
        pass

    @abstractmethod
    def inverse(self, matrix: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def rank(self, matrix: np.ndarray) -> int:
        pass

    @abstractmethod
    def condition(self, matrix: np.ndarray) -> float:
        pass

    def solve(self, matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
        return self.inverse(matrix) @ rhs

    def to_float(self, data: ArrayLike) -> np.ndarray:
        return np.asarray(data, dtype=object).astype(float)

    def norm_inf(self, data: np.ndarray) -> Scalar:
        if data.size == 0:
            return self.scalar(0)
        return max(abs(v) for v in data.ravel())

    def __repr__(self) -> str:
        return f'<{type(self).__name__} {self.name}>'
