from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from apps.core_lp.models import Basis
from apps.interval_lp.models import SignVector
from apps.oracle.models import OracleEstimate, SweepConfig
from shared.arithmetic import Scalar


class Grade(str, Enum):
    EXACT = 'exact'
    UPPER_BOUND = 'upper_bound'
    BASIS_ESTIMATE = 'basis_estimate'
    ORACLE_APPROX = 'oracle_approx'


class Method(str, Enum):
    AUTO = 'auto'
    NONDEG = 'nondeg'
    BASIS = 'basis'
    TRACTABLE = 'tractable'
    ORACLE = 'oracle'


class OracleMode(str, Enum):
    AUTO = 'auto'
    ALWAYS = 'always'
    NEVER = 'never'


@dataclass(frozen=True, eq=False)
class BasisDerivative:
    basis: Basis
    d_w: Scalar
    d_r: float


@dataclass(frozen=True)
class AnalysisOptions:
    method: Method = Method.AUTO
    oracle: OracleMode = OracleMode.AUTO
    sweep: Optional[SweepConfig] = None
    basis_cap: Optional[int] = None
    backend: Optional[str] = None
    max_sign_rows: Optional[int] = None
    drop_dependent_rows: bool = False
    workers: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'method', Method(self.method))
        object.__setattr__(self, 'oracle', OracleMode(self.oracle))


@dataclass(frozen=True, eq=False)
class SensitivityReport:
    """Worst-case derivative ``d_w``, its normalization ``d_r`` and how much to trust them.

    ``per_basis`` starts with the basis returned by the solver. ``objective`` is
    in the problem's own sense; ``worst_sign`` is ``sgn(y)`` of the basis that
    attains ``d_w``.
    """

    d_w: Scalar
    d_r: float
    grade: Grade
    per_basis: Tuple[BasisDerivative, ...] = ()
    pattern_norm: float = 0.0
    worst_sign: Optional[SignVector] = None
    method: Method = Method.AUTO
    objective: Optional[Scalar] = None
    primal_degenerate: bool = False
    dual_degenerate: bool = False
    n_bases: int = 0
    truncated: bool = False
    oracle: Optional[OracleEstimate] = None
    notes: Tuple[str, ...] = field(default=())

    @property
    def oracle_estimate(self) -> Optional[Scalar]:
        return None if self.oracle is None else self.oracle.estimate

    @property
    def oracle_residual(self) -> Optional[Scalar]:
        return None if self.oracle is None else self.oracle.residual

    @property
    def oracle_d_r(self) -> Optional[float]:
        if self.oracle is None or not self.pattern_norm:
            return None
        return float(self.oracle.estimate) / self.pattern_norm
