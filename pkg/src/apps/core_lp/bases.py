from typing import Dict, List, Optional, Tuple

from django.conf import settings
from loguru import logger

from common.concurrency import parallel_map
from common.exceptions import CapExceeded, InfeasibleProblem, SingularBasis, UnboundedProblem
from .models import Basis, BasisEnumeration, LpProblem, LpSolution, OptimalBasis, SolveStatus

Key = Tuple[int, ...]


class _BasisExplorer:
    """Checks one basis for optimality and lists the single-pivot neighbours that may also be optimal."""

    def __init__(self, problem: LpProblem):
        self.problem = problem.as_minimization()
        self.backend = problem.backend
        self.b_scale = self.backend.norm_inf(self.problem.b)
        self.c_scale = self.backend.norm_inf(self.problem.c)

    def expand(self, key: Key) -> Tuple[Optional[OptimalBasis], List[Key]]:
        problem, bk = self.problem, self.backend
        indices = list(key)
        try:
            inverse = bk.inverse(problem.A[:, indices])
        except SingularBasis:
            return None, []

        x_basic = inverse @ problem.b
        y = inverse.T @ problem.c[indices]
        reduced = problem.c - problem.A.T @ y
        members = set(indices)
        nonbasic = [j for j in range(problem.n) if j not in members]

        if any(bk.is_negative(v, self.b_scale) for v in x_basic):
            return None, []
        if any(bk.is_negative(reduced[j], self.c_scale) for j in nonbasic):
            return None, []

        x = bk.zeros(problem.n)
        x[indices] = x_basic
        zero_basic = [bk.is_zero(v, self.b_scale) for v in x_basic]
        zero_reduced = {j: bk.is_zero(reduced[j], self.c_scale) for j in nonbasic}
        entry = OptimalBasis(
            basis=Basis(tuple(indices)),
            x=x,
            y=y,
            primal_degenerate=any(zero_basic),
            dual_degenerate=any(zero_reduced.values()),
        )

        tableau = inverse @ problem.A
        neighbours = []
        for i in range(len(indices)):
            for j in nonbasic:
                if not (zero_basic[i] or zero_reduced[j]):
                    continue
                pivot = tableau[i, j]
                if not bk.is_nonzero_pivot(pivot):
                    continue
                if self._pivot_keeps_optimality(x_basic, reduced, tableau, nonbasic, i, j):
                    neighbours.append(tuple(sorted(indices[:i] + [j] + indices[i + 1:])))
        return entry, neighbours

    def _pivot_keeps_optimality(self, x_basic, reduced, tableau, nonbasic, i, j) -> bool:
        bk = self.backend
        pivot = tableau[i, j]

        theta = x_basic[i] / pivot
        if bk.is_negative(theta, self.b_scale):
            return False
        updated_x = x_basic - theta * tableau[:, j]
        if any(bk.is_negative(v, self.b_scale) for pos, v in enumerate(updated_x) if pos != i):
            return False

        ratio = reduced[j] / pivot
        if bk.is_negative(-ratio, self.c_scale):
            return False
        for k in nonbasic:
            if k != j and bk.is_negative(reduced[k] - ratio * tableau[i, k], self.c_scale):
                return False
        return True


def enumerate_optimal_bases(
    problem: LpProblem,
    seed: LpSolution,
    cap: Optional[int] = None,
    strict: bool = False,
    workers: Optional[int] = None,
) -> BasisEnumeration:
    """Breadth-first search over optimal bases connected by single pivots.

    Starts at the basis of ``seed``. Each layer is expanded concurrently; the
    result is ordered by sorted index set. When more than ``cap`` optimal bases
    exist the result is truncated, or ``CapExceeded`` is raised with ``strict``.
    Primal and dual vectors of the entries belong to the minimization form.
    """
    if seed.status == SolveStatus.INFEASIBLE:
        raise InfeasibleProblem()
    if seed.status == SolveStatus.UNBOUNDED:
        raise UnboundedProblem()
    seed.basis.validate_for(problem)

    cap = cap if cap is not None else settings.LPSENS_BASIS_CAP
    explorer = _BasisExplorer(problem)

    found: Dict[Key, OptimalBasis] = {}
    seen = {seed.basis.key}
    frontier = [seed.basis.key]
    truncated = False
    layer = 0

    while frontier and not truncated:
        results = parallel_map(explorer.expand, frontier, workers)
        upcoming = []
        for key, (entry, neighbours) in zip(frontier, results):
            if entry is None:
                continue
            if len(found) >= cap:
                truncated = True
                break
            found[key] = entry
            for neighbour in neighbours:
                if neighbour not in seen:
                    seen.add(neighbour)
                    upcoming.append(neighbour)
        layer += 1
        logger.debug(f'basis enumeration layer {layer}: {len(found)} optimal, {len(upcoming)} to check')
        frontier = sorted(upcoming)

    if truncated:
        if strict:
            raise CapExceeded(f'more than {cap} optimal bases')
        logger.warning(f'optimal-basis enumeration stopped at the cap of {cap} bases')

    entries = tuple(found[key] for key in sorted(found))
    return BasisEnumeration(entries=entries, truncated=truncated)


def basis_entry(problem: LpProblem, basis: Basis) -> Optional[OptimalBasis]:
    """The optimal-basis record of ``basis``, or ``None`` when it is singular or not optimal."""
    basis.validate_for(problem)
    entry, _ = _BasisExplorer(problem).expand(basis.key)
    return entry
