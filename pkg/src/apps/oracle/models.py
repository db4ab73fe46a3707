from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional, Tuple

from django.conf import settings
from loguru import logger

from shared.arithmetic import Scalar

FLOAT_ALPHA_FLOOR = 1e-5


class Extrapolation(str, Enum):
    NONE = 'none'
    RICHARDSON = 'richardson'


def _default_alphas() -> Tuple[float, ...]:
    return tuple(settings.LPSENS_ORACLE_ALPHAS)


@dataclass(frozen=True)
class SweepConfig:
    """Inflation grid of the difference quotients, largest first."""

    alphas: Tuple = field(default_factory=_default_alphas)
    extrapolation: Extrapolation = Extrapolation.RICHARDSON
    backend: Optional[str] = None

    def __post_init__(self):
        alphas = tuple(self.alphas)
        if not alphas:
            raise ValueError('sweep grid is empty')
        if any(a <= 0 for a in alphas):
            raise ValueError(f'sweep grid must be positive, got {alphas}')
        if any(later >= earlier for earlier, later in zip(alphas, alphas[1:])):
            raise ValueError(f'sweep grid must be strictly decreasing, got {alphas}')
        if (self.backend or settings.LPSENS_BACKEND) != 'rational' and min(alphas) < FLOAT_ALPHA_FLOOR:
            logger.warning(f'alpha={min(alphas)} below {FLOAT_ALPHA_FLOOR} loses digits to cancellation on floats')
        object.__setattr__(self, 'alphas', alphas)
        object.__setattr__(self, 'extrapolation', Extrapolation(self.extrapolation))


class OracleEstimate(NamedTuple):
    estimate: Scalar
    residual: Scalar
    quotients: Tuple[Scalar, ...] = ()
