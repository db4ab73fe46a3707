from typing import Optional


class LpSensError(Exception):
    """Base class of every error raised by the solver and the sensitivity tools."""

    default_detail = 'LP sensitivity error'

    def __init__(self, detail: Optional[str] = None):
        self.detail = detail or self.default_detail
        super().__init__(self.detail)


class DimensionMismatch(LpSensError, ValueError):
    default_detail = 'Dimensions of A, b, c or the pattern do not agree'


class NegativePattern(LpSensError, ValueError):
    default_detail = 'Perturbation pattern entries must be nonnegative'


class WrongForm(LpSensError, ValueError):
    default_detail = 'Operation is not defined for this problem form'


class RankDeficient(LpSensError):
    default_detail = 'Constraint matrix does not have full row rank'


class NumericBreakdown(LpSensError, ArithmeticError):
    default_detail = 'Basis is too ill-conditioned for the float backend'


class SingularBasis(LpSensError, ArithmeticError):
    default_detail = 'Basis matrix is singular'


class CapExceeded(LpSensError):
    default_detail = 'Optimal-basis enumeration cap reached'


class TooManyConstraints(LpSensError):
    default_detail = 'Too many constraints for sign-vector enumeration'


class DegenerateInput(LpSensError):
    default_detail = 'Optimal solution is degenerate or not unique'


class PatternNotObjectiveOnly(LpSensError, ValueError):
    default_detail = 'Pattern perturbs A or b, not only the objective'


class ZeroPattern(LpSensError, ValueError):
    default_detail = 'Perturbation pattern is identically zero'


class RegularityViolation(LpSensError):
    default_detail = 'A realization near the nominal data is infeasible or unbounded'


class InfeasibleProblem(LpSensError):
    default_detail = 'Linear program is infeasible'


class UnboundedProblem(LpSensError):
    default_detail = 'Linear program is unbounded'


class InternalInconsistency(LpSensError):
    default_detail = 'Auxiliary linear program has no optimum although the nominal one has'


class MethodNotApplicable(LpSensError, ValueError):
    default_detail = 'Requested method does not apply to this problem'


class ParseError(LpSensError, ValueError):
    default_detail = 'Malformed MPS input'

    def __init__(self, detail: Optional[str] = None, line: Optional[int] = None):
        self.line = line
        if line is not None:
            detail = f'line {line}: {detail or self.default_detail}'
        super().__init__(detail)


class UnsupportedFeature(LpSensError):
    default_detail = 'Input uses a feature that is not supported'


class SchemaError(LpSensError, ValueError):
    default_detail = 'Document does not match the schema'

    def __init__(self, detail: Optional[str] = None, path: str = '$'):
        self.path = path
        super().__init__(f'{path}: {detail or self.default_detail}')


class RegularityWarning(UserWarning):
    pass
