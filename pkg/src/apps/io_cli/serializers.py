import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional, Tuple, Union

import numpy as np
from rest_framework import serializers

from apps.core_lp.models import LpProblem, ProblemForm, Sense
from apps.lp_forms.models import PerturbationPattern
from apps.sensitivity.models import Grade, Method
from common.exceptions import SchemaError
from .models import BasisRow, ReportDocument

PathLike = Union[str, os.PathLike]


class ScalarField(serializers.Field):
    """A JSON number, or a string holding a decimal or an exact ``p/q`` fraction."""

    default_error_messages = {
        'invalid': 'A number or a "p/q" string is required.',
    }

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        if isinstance(data, (int, float)):
            return data
        if isinstance(data, str):
            try:
                return Fraction(data.strip())
            except (ValueError, ZeroDivisionError):
                self.fail('invalid')
        self.fail('invalid')

    def to_representation(self, value):
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return value.numerator
            return f'{value.numerator}/{value.denominator}'
        if isinstance(value, np.integer):
            return int(value)
        if isinstance(value, np.floating):
            return float(value)
        return value


def _vector():
    return serializers.ListField(child=ScalarField(), allow_empty=True)


def _matrix():
    return serializers.ListField(child=_vector(), allow_empty=True)


class PatternSerializer(serializers.Serializer):
    dA = _matrix()
    db = _vector()
    dc = _vector()

    def validate(self, attrs):
        for name in ('db', 'dc'):
            for index, value in enumerate(attrs[name]):
                if value < 0:
                    raise serializers.ValidationError({name: {index: ['Pattern entries must be nonnegative.']}})
        for i, row in enumerate(attrs['dA']):
            if len(row) != len(attrs['dc']):
                raise serializers.ValidationError({'dA': {i: [f'Row has {len(row)} entries, expected {len(attrs["dc"])}.']}})
            for j, value in enumerate(row):
                if value < 0:
                    raise serializers.ValidationError({'dA': {i: {j: ['Pattern entries must be nonnegative.']}}})
        if len(attrs['dA']) != len(attrs['db']):
            raise serializers.ValidationError({'db': [f'Expected {len(attrs["dA"])} entries, one per row of dA.']})
        return attrs


class ProblemSerializer(serializers.Serializer):
    A = _matrix()
    b = _vector()
    c = _vector()
    form = serializers.ChoiceField(choices=[form.value for form in ProblemForm], default=ProblemForm.STANDARD.value)
    sense = serializers.ChoiceField(choices=[sense.value for sense in Sense], default=Sense.MIN.value)
    name = serializers.CharField(required=False, allow_blank=True, default='')
    n_structural = serializers.IntegerField(required=False, allow_null=True, min_value=0, default=None)
    pattern = PatternSerializer(required=False, allow_null=True, default=None)

    def validate(self, attrs):
        n = len(attrs['c'])
        for i, row in enumerate(attrs['A']):
            if len(row) != n:
                raise serializers.ValidationError({'A': {i: [f'Row has {len(row)} entries, expected {n}.']}})
        if len(attrs['b']) != len(attrs['A']):
            raise serializers.ValidationError({'b': [f'Expected {len(attrs["A"])} entries, one per row of A.']})
        pattern = attrs.get('pattern')
        if pattern is not None and (len(pattern['dA']), len(pattern['dc'])) != (len(attrs['A']), n):
            raise serializers.ValidationError({'pattern': {'dA': [f'Pattern must be {len(attrs["A"])}x{n}.']}})
        return attrs

    def to_problem(self, backend=None) -> Tuple[LpProblem, Optional[PerturbationPattern]]:
        data = self.validated_data
        n = len(data['c'])
        problem = LpProblem(
            A=np.array(data['A'], dtype=object).reshape(len(data['A']), n),
            b=np.array(data['b'], dtype=object),
            c=np.array(data['c'], dtype=object),
            form=data['form'],
            sense=data['sense'],
            backend=backend,
            n_structural=data.get('n_structural'),
            name=data.get('name', ''),
        )
        pattern = data.get('pattern')
        if pattern is None:
            return problem, None
        return problem, PerturbationPattern(
            np.array(pattern['dA'], dtype=object).reshape(len(pattern['dA']), n),
            np.array(pattern['db'], dtype=object),
            np.array(pattern['dc'], dtype=object),
            backend=problem.backend,
        )


class BasisRowSerializer(serializers.Serializer):
    basis = serializers.ListField(child=serializers.IntegerField(min_value=0))
    d_w = ScalarField()
    d_r = serializers.FloatField()

    def create(self, validated_data):
        return BasisRow(tuple(validated_data['basis']), validated_data['d_w'], validated_data['d_r'])


class ReportDocumentSerializer(serializers.Serializer):
    problem_id = serializers.CharField(allow_blank=True)
    form = serializers.ChoiceField(choices=[form.value for form in ProblemForm])
    variables = serializers.IntegerField(min_value=0)
    constraints = serializers.IntegerField(min_value=0)
    objective = ScalarField(allow_null=True)
    d_w = ScalarField()
    d_r = serializers.FloatField()
    grade = serializers.ChoiceField(choices=[grade.value for grade in Grade])
    method = serializers.ChoiceField(choices=[method.value for method in Method])
    pattern = serializers.CharField()
    pattern_norm = serializers.FloatField()
    per_basis = BasisRowSerializer(many=True, required=False, default=())
    oracle_estimate = ScalarField(allow_null=True, required=False, default=None)
    oracle_residual = ScalarField(allow_null=True, required=False, default=None)
    worst_sign = serializers.CharField(allow_null=True, required=False, default=None)
    n_bases = serializers.IntegerField(min_value=0, default=0)
    truncated = serializers.BooleanField(default=False)
    primal_degenerate = serializers.BooleanField(default=False)
    dual_degenerate = serializers.BooleanField(default=False)
    notes = serializers.ListField(child=serializers.CharField(), required=False, default=())
    timing = serializers.FloatField(min_value=0, default=0.0)

    def create(self, validated_data):
        rows = tuple(BasisRow(tuple(row['basis']), row['d_w'], row['d_r']) for row in validated_data.pop('per_basis'))
        notes = tuple(validated_data.pop('notes'))
        return ReportDocument(per_basis=rows, notes=notes, **validated_data)


def first_error(errors: Any, path: str = '$') -> Tuple[str, str]:
    """JSON path and message of the first entry of a DRF error structure."""
    if isinstance(errors, dict):
        for key, value in errors.items():
            if not value:
                continue
            if key == 'non_field_errors':
                return first_error(value, path)
            step = f'[{key}]' if isinstance(key, int) or str(key).isdigit() else f'.{key}'
            return first_error(value, path + step)
    if isinstance(errors, list):
        for index, item in enumerate(errors):
            if isinstance(item, (dict, list)):
                if item:
                    return first_error(item, f'{path}[{index}]')
            elif item:
                return path, str(item)
    return path, str(errors)


def _validated(serializer: serializers.Serializer) -> serializers.Serializer:
    if not serializer.is_valid():
        path, message = first_error(serializer.errors)
        raise SchemaError(message, path=path)
    return serializer


def _read_json(source: PathLike) -> Any:
    try:
        return json.loads(Path(source).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f'invalid JSON at line {exc.lineno}: {exc.msg}')


def parse_problem(data: Any, backend=None) -> Tuple[LpProblem, Optional[PerturbationPattern]]:
    return _validated(ProblemSerializer(data=data)).to_problem(backend)


def load_problem_json(source: PathLike, backend=None) -> Tuple[LpProblem, Optional[PerturbationPattern]]:
    """Problem and optional embedded pattern of a JSON problem file."""
    return parse_problem(_read_json(source), backend)


def parse_pattern(data: Any, problem: LpProblem) -> PerturbationPattern:
    validated = _validated(PatternSerializer(data=data)).validated_data
    pattern = PerturbationPattern(
        np.array(validated['dA'], dtype=object).reshape(len(validated['dA']), len(validated['dc'])),
        np.array(validated['db'], dtype=object),
        np.array(validated['dc'], dtype=object),
        backend=problem.backend,
    )
    pattern.validate_for(problem)
    return pattern


def load_pattern_json(source: PathLike, problem: LpProblem) -> PerturbationPattern:
    data = _read_json(source)
    if isinstance(data, dict) and 'pattern' in data:
        data = data['pattern']
    return parse_pattern(data, problem)


def problem_to_dict(problem: LpProblem, pattern: Optional[PerturbationPattern] = None) -> dict:
    data = {
        'A': problem.A.tolist(),
        'b': problem.b.tolist(),
        'c': problem.c.tolist(),
        'form': problem.form.value,
        'sense': problem.sense.value,
        'name': problem.name,
        'n_structural': problem.n_structural,
        'pattern': None,
    }
    if pattern is not None:
        data['pattern'] = {'dA': pattern.dA.tolist(), 'db': pattern.db.tolist(), 'dc': pattern.dc.tolist()}
    return ProblemSerializer(data).data


def save_problem_json(problem: LpProblem, path: PathLike, pattern: Optional[PerturbationPattern] = None) -> None:
    Path(path).write_text(json.dumps(problem_to_dict(problem, pattern), indent=2) + '\n')


def report_to_dict(document: ReportDocument) -> dict:
    return ReportDocumentSerializer(document).data


def report_from_dict(data: Any) -> ReportDocument:
    return _validated(ReportDocumentSerializer(data=data)).save()


def save_report_json(documents: Union[ReportDocument, Iterable[ReportDocument]], path: PathLike) -> None:
    """Write one report as an object, several as a list."""
    if isinstance(documents, ReportDocument):
        payload = report_to_dict(documents)
    else:
        payload = [report_to_dict(document) for document in documents]
    Path(path).write_text(json.dumps(payload, indent=2) + '\n')


def load_report_json(path: PathLike) -> Union[ReportDocument, list]:
    data = _read_json(path)
    if isinstance(data, list):
        return [report_from_dict(item) for item in data]
    return report_from_dict(data)
