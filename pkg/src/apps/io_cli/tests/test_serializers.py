import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from apps.core_lp.models import ProblemForm, Sense
from apps.io_cli.generators import example1
from apps.io_cli.models import ReportDocument
from apps.io_cli.serializers import (
    load_problem_json,
    load_report_json,
    parse_problem,
    report_from_dict,
    report_to_dict,
    save_problem_json,
    save_report_json,
)
from apps.io_cli.services import analyze_file
from common.exceptions import SchemaError

FIXTURES = Path(__file__).resolve().parent.parent / 'fixtures'


def problem_data(**changes):
    data = {'A': [[1, 2], [3, 4]], 'b': [1, 2], 'c': [1, 1]}
    data.update(changes)
    return data


def test_example1_fixture():
    problem, pattern = load_problem_json(FIXTURES / 'example1_c15.json', backend='rational')

    assert problem.A.shape == (2, 3)
    assert problem.form == ProblemForm.STANDARD
    assert problem.sense == Sense.MIN
    assert problem.c[2] == Fraction(3, 2)
    assert pattern is None


def test_fraction_strings_are_exact_on_rationals():
    problem, _ = parse_problem({'A': [[1]], 'b': ['1/3'], 'c': ['0.1']}, backend='rational')

    assert problem.b[0] == Fraction(1, 3)
    assert problem.c[0] == Fraction(1, 10)


def test_fraction_strings_on_floats():
    problem, _ = parse_problem({'A': [[1]], 'b': ['1/3'], 'c': [1]}, backend='float')

    assert problem.b[0] == pytest.approx(1 / 3)


def test_defaults_and_embedded_pattern():
    data = problem_data(form='ineq_free', sense='max', pattern={'dA': [[0, 1], [0, 0]], 'db': [0, '1/2'], 'dc': [1, 0]})

    problem, pattern = parse_problem(data, backend='rational')

    assert problem.form == ProblemForm.INEQ_FREE
    assert problem.sense == Sense.MAX
    assert pattern.db[1] == Fraction(1, 2)
    np.testing.assert_array_equal(pattern.dc, [1, 0])


@pytest.mark.parametrize(
    'data, path',
    [
        (problem_data(A=[[1, 'x'], [3, 4]]), '$.A[0][1]'),
        (problem_data(A=[[1, 2], [3]]), '$.A[1]'),
        (problem_data(b=[1]), '$.b'),
        ({'A': [[1, 2]], 'b': [1]}, '$.c'),
        (problem_data(form='canonical'), '$.form'),
        (problem_data(c=[1, True]), '$.c[1]'),
        (problem_data(pattern={'dA': [[0, 0], [0, 0]], 'db': [0, 0], 'dc': [-1, 0]}), '$.pattern.dc[0]'),
        (problem_data(pattern={'dA': [[0, 0]], 'db': [0], 'dc': [0, 0]}), '$.pattern.dA'),
    ],
    ids=['entry', 'row-length', 'rhs-length', 'missing', 'form', 'boolean', 'negative-pattern', 'pattern-shape'],
)
def test_schema_errors_name_the_path(data, path):
    with pytest.raises(SchemaError) as excinfo:
        parse_problem(data)

    assert excinfo.value.path == path
    assert str(excinfo.value).startswith(path)


def test_invalid_json(tmp_path):
    source = tmp_path / 'broken.json'
    source.write_text('{"A": [[1]],')

    with pytest.raises(SchemaError) as excinfo:
        load_problem_json(source)

    assert excinfo.value.path == '$'


def test_problem_file_round_trip(tmp_path):
    problem = example1(Fraction(3, 2), backend='rational')

    save_problem_json(problem, tmp_path / 'example1.json')
    loaded, _ = load_problem_json(tmp_path / 'example1.json', backend='rational')

    assert json.loads((tmp_path / 'example1.json').read_text())['c'] == [12, -17, '3/2']
    np.testing.assert_array_equal(loaded.A, problem.A)
    np.testing.assert_array_equal(loaded.c, problem.c)
    assert loaded.name == problem.name


@pytest.mark.parametrize('backend', ['float', 'rational'])
def test_report_round_trip(backend):
    options = {'backend': backend, 'method': 'basis', 'oracle': 'never'}
    document = analyze_file(FIXTURES / 'example1_c2.json', options)

    restored = report_from_dict(json.loads(json.dumps(report_to_dict(document))))

    assert restored == document
    assert len(restored.per_basis) == 2


def test_rational_report_keeps_fractions():
    document = analyze_file(FIXTURES / 'example1_c15.json', {'backend': 'rational', 'oracle': 'never'})

    data = report_to_dict(document)

    assert data['d_w'] == '266/9'
    assert data['grade'] == 'exact'
    assert data['per_basis'][0]['basis'] == [1, 2]


def test_report_files(tmp_path):
    documents = [
        analyze_file(FIXTURES / name, {'backend': 'rational', 'oracle': 'never'})
        for name in ('example1_c15.json', 'example1_c25.json')
    ]

    save_report_json(documents[0], tmp_path / 'one.json')
    save_report_json(documents, tmp_path / 'two.json')

    assert load_report_json(tmp_path / 'one.json') == documents[0]
    assert load_report_json(tmp_path / 'two.json') == documents


def test_report_schema_error():
    with pytest.raises(SchemaError) as excinfo:
        report_from_dict({'problem_id': 'p', 'grade': 'exact'})

    assert excinfo.value.path.startswith('$.')


def test_report_text():
    document = ReportDocument(
        problem_id='p', form='standard', variables=3, constraints=2, objective=Fraction(-2, 3),
        d_w=Fraction(266, 9), d_r=1.14936, grade='exact', method='nondeg', pattern='relative', pattern_norm=25.71,
    )

    lines = document.summary_lines()

    assert 'd_w         29.5556' in lines
    assert 'f(A,b,c)    -0.666667' in lines
