"""Netlib-sized MPS input.

The staircase case always runs; the real instances need NETLIB_DIR pointing at
a directory holding the uncompressed MPS files.
"""
import os
from pathlib import Path

import numpy as np
import pytest

from apps.core_lp.models import LpProblem, ProblemForm
from apps.io_cli.loaders import load_problem
from apps.io_cli.mps import MpsDocument, write_mps
from apps.io_cli.services import analyze_file
from apps.lp_forms.transforms import solve_in_standard_form

NETLIB_DIR = os.environ.get('NETLIB_DIR')

needs_netlib = pytest.mark.skipif(not NETLIB_DIR, reason='NETLIB_DIR is not set')


def netlib_file(name):
    for candidate in (name, name.lower(), f'{name}.mps', f'{name.lower()}.mps', f'{name}.MPS'):
        path = Path(NETLIB_DIR) / candidate
        if path.exists():
            return path
    pytest.skip(f'{name} not found in {NETLIB_DIR}')


def staircase(rng, rows=105, columns=103):
    """A banded L/G problem with upper bounds, as an MPS document and as dense ``Ax ≤ b, x ≥ 0`` data."""
    x0 = rng.integers(1, 4, size=columns)
    c = rng.integers(-3, 4, size=columns)
    doc = MpsDocument(name='STAIR', rows=[('N', 'COST')], objective='COST')
    A, b = [], []
    entries = {j: [('COST', float(c[j]))] if c[j] else [] for j in range(columns)}

    for i in range(rows):
        name, kind = f'R{i:03d}', 'L' if i % 3 else 'G'
        start = min(i * columns // rows, columns - 4)
        row = np.zeros(columns, dtype=int)
        row[start:start + 4] = rng.integers(1, 4, size=4) * rng.choice([-1, 1], size=4)
        activity = int(row @ x0)
        rhs = activity + int(rng.integers(0, 3)) if kind == 'L' else activity - int(rng.integers(0, 3))
        doc.rows.append((kind, name))
        doc.rhs[name] = float(rhs)
        for j in np.flatnonzero(row):
            entries[j].append((name, float(row[j])))
        A.append(row if kind == 'L' else -row)
        b.append(rhs if kind == 'L' else -rhs)

    for j in range(columns):
        doc.columns += [(f'X{j:03d}', name, value) for name, value in entries[j]]
        if c[j] < 0:
            doc.bounds.append(('UP', f'X{j:03d}', 5.0))
            bound = np.zeros(columns, dtype=int)
            bound[j] = 1
            A.append(bound)
            b.append(5)

    return doc, LpProblem(A=np.array(A), b=np.array(b), c=c, form=ProblemForm.INEQ_NONNEG, backend='float')


def test_staircase_file_at_netlib_size(tmp_path, rng):
    doc, expected = staircase(rng)
    path = tmp_path / 'STAIR'
    write_mps(doc, path)

    loaded = load_problem(path, backend='float')
    _, solution = solve_in_standard_form(loaded.problem)
    _, reference = solve_in_standard_form(expected)

    assert loaded.sizes == (103, 105)
    assert loaded.problem_id == 'STAIR'
    assert loaded.problem.A.shape == expected.A.shape
    assert float(solution.objective) == pytest.approx(float(reference.objective), rel=1e-9, abs=1e-9)


@needs_netlib
@pytest.mark.parametrize(
    'name, sizes, optimum',
    [('SC105', (103, 105), -52.2), ('SCSD1', (760, 77), 8.667)],
)
def test_sizes_and_optimum(name, sizes, optimum):
    loaded = load_problem(netlib_file(name))

    _, solution = solve_in_standard_form(loaded.problem)

    assert loaded.sizes == sizes
    assert float(solution.objective) == pytest.approx(optimum, rel=1e-3)


@needs_netlib
@pytest.mark.parametrize('name', ['SC105', 'SCSD1'])
def test_basis_report_is_consistent(name):
    document = analyze_file(netlib_file(name), {'pattern': 'relative', 'method': 'basis', 'oracle': 'never', 'basis_cap': 50})

    assert document.per_basis
    seed = document.per_basis[0]
    assert seed.d_r * document.pattern_norm == pytest.approx(float(seed.d_w), rel=1e-9)
    assert float(document.d_w) >= float(seed.d_w)
