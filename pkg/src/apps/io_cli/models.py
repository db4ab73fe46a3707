from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from apps.sensitivity.models import SensitivityReport
from shared.arithmetic import Scalar


@dataclass(frozen=True)
class BasisRow:
    basis: Tuple[int, ...]
    d_w: Scalar
    d_r: float


@dataclass(frozen=True)
class ReportDocument:
    """One analyzed problem as written to JSON or printed as text.

    ``variables`` and ``constraints`` are the sizes of the input (MPS columns and
    rows for MPS files), not of its standard form.
    """

    problem_id: str
    form: str
    variables: int
    constraints: int
    objective: Optional[Scalar]
    d_w: Scalar
    d_r: float
    grade: str
    method: str
    pattern: str
    pattern_norm: float
    per_basis: Tuple[BasisRow, ...] = ()
    oracle_estimate: Optional[Scalar] = None
    oracle_residual: Optional[Scalar] = None
    worst_sign: Optional[str] = None
    n_bases: int = 0
    truncated: bool = False
    primal_degenerate: bool = False
    dual_degenerate: bool = False
    notes: Tuple[str, ...] = field(default=())
    timing: float = 0.0

    @classmethod
    def from_report(
        cls,
        report: SensitivityReport,
        problem_id: str,
        form: str,
        sizes: Tuple[int, int],
        pattern: str,
        timing: float = 0.0,
    ) -> 'ReportDocument':
        return cls(
            problem_id=problem_id,
            form=form,
            variables=sizes[0],
            constraints=sizes[1],
            objective=report.objective,
            d_w=report.d_w,
            d_r=report.d_r,
            grade=report.grade.value,
            method=report.method.value,
            pattern=pattern,
            pattern_norm=report.pattern_norm,
            per_basis=tuple(BasisRow(entry.basis.key, entry.d_w, entry.d_r) for entry in report.per_basis),
            oracle_estimate=report.oracle_estimate,
            oracle_residual=report.oracle_residual,
            worst_sign=None if report.worst_sign is None else str(report.worst_sign),
            n_bases=report.n_bases,
            truncated=report.truncated,
            primal_degenerate=report.primal_degenerate,
            dual_degenerate=report.dual_degenerate,
            notes=tuple(report.notes),
            timing=timing,
        )

    def summary_lines(self) -> List[str]:
        lines = [
            f'problem     {self.problem_id} ({self.form}, {self.variables} vars, {self.constraints} constr)',
            f'f(A,b,c)    {format_scalar(self.objective)}',
            f'd_w         {format_scalar(self.d_w)}',
            f'd_r         {format_scalar(self.d_r)}',
            f'grade       {self.grade} via {self.method}',
            f'pattern     {self.pattern} (norm {self.pattern_norm:.6g})',
        ]
        if self.worst_sign:
            lines.append(f'worst sign  {self.worst_sign}')
        if self.oracle_estimate is not None:
            lines.append(f'oracle      {format_scalar(self.oracle_estimate)} (residual {format_scalar(self.oracle_residual)})')
        if self.per_basis:
            lines.append(f'bases       {self.n_bases}{" (truncated)" if self.truncated else ""}')
            for row in self.per_basis:
                lines.append(f'  {list(row.basis)}  d_w(B)={format_scalar(row.d_w)}  d_r(B)={format_scalar(row.d_r)}')
        lines += [f'note        {note}' for note in self.notes]
        lines.append(f'time        {self.timing:.3f}s')
        return lines


def format_scalar(value) -> str:
    if value is None:
        return '-'
    return f'{float(value):.6g}'
