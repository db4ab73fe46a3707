import json
from pathlib import Path

from celery import group
from decouple import Csv
from django.core.management.base import CommandError
from loguru import logger

from apps.io_cli.management.base import LpCommand
from apps.io_cli.serializers import report_from_dict, report_to_dict
from apps.io_cli.services import analyze_file
from apps.io_cli.tasks import analyze_problem_file
from apps.oracle.models import Extrapolation
from apps.sensitivity.models import Method, OracleMode


class Command(LpCommand):
    help = 'Compute the worst-case derivative d_w and its normalization d_r of one or more LPs.'

    def add_arguments(self, parser):
        parser.add_argument('files', nargs='+')
        self.add_input_arguments(parser)
        parser.add_argument('--method', choices=[m.value for m in Method], default=Method.AUTO.value)
        parser.add_argument('--oracle', choices=[m.value for m in OracleMode], default=OracleMode.AUTO.value)
        parser.add_argument('--alpha-grid', type=Csv(cast=float), default=None, help='comma-separated, decreasing')
        parser.add_argument('--extrapolation', choices=[e.value for e in Extrapolation], default=None)
        parser.add_argument('--basis-cap', type=int, default=None)
        parser.add_argument('--drop-dependent-rows', action='store_true')
        parser.add_argument('--format', choices=('text', 'json'), default='text')
        parser.add_argument('--output', default=None, help='write the reports here instead of stdout')

    def analysis_options(self, options: dict) -> dict:
        task_options = self.input_options(options)
        task_options.update(
            method=options.get('method'),
            oracle=options.get('oracle'),
            alpha_grid=list(options['alpha_grid']) if options.get('alpha_grid') else None,
            extrapolation=options.get('extrapolation'),
            basis_cap=options.get('basis_cap'),
            drop_dependent_rows=bool(options.get('drop_dependent_rows')),
        )
        return task_options

    def run(self, *args, **options):
        files = [str(path) for path in options['files']]
        task_options = self.analysis_options(options)

        if len(files) == 1:
            documents = [analyze_file(files[0], task_options)]
            failures = []
        else:
            documents, failures = self.fan_out(files, task_options)

        self.emit(documents, options['format'], options.get('output'))
        if failures:
            for failure in failures:
                self.stderr.write(f'{failure["path"]}: {failure["error"]}')
            raise CommandError(
                f'{len(failures)} of {len(files)} files failed',
                returncode=max(failure['returncode'] for failure in failures),
            )

    def fan_out(self, files, task_options):
        """One celery task per file; runs in-process while CELERY_TASK_ALWAYS_EAGER is set."""
        logger.info(f'dispatching {len(files)} files')
        results = group(analyze_problem_file.s(path, task_options) for path in files).apply_async().get()
        documents = [report_from_dict(result['report']) for result in results if result['status'] == 'success']
        failures = [result for result in results if result['status'] != 'success']
        return documents, failures

    def emit(self, documents, output_format, output):
        if output_format == 'json':
            payloads = [report_to_dict(document) for document in documents]
            text = json.dumps(payloads[0] if len(payloads) == 1 else payloads, indent=2)
        else:
            text = '\n\n'.join('\n'.join(document.summary_lines()) for document in documents)

        if output:
            Path(output).write_text(text + '\n')
            logger.info(f'wrote {len(documents)} reports to {output}')
        else:
            self.stdout.write(text)
