from apps.io_cli.management.base import LpCommand, scalar_argument
from apps.io_cli.models import format_scalar
from apps.io_cli.services import range_file


class Command(LpCommand):
    help = 'Print the range [f_low, f_high] of optimal values over the interval inflation at --alpha.'

    def add_arguments(self, parser):
        parser.add_argument('file')
        parser.add_argument('--alpha', type=scalar_argument, required=True, help='inflation, decimal or p/q')
        self.add_input_arguments(parser)

    def run(self, *args, **options):
        if options['alpha'] < 0:
            raise ValueError('--alpha must be nonnegative')
        value_range = range_file(options['file'], options['alpha'], self.input_options(options))
        self.stdout.write(f'[{format_scalar(value_range.f_low)}, {format_scalar(value_range.f_high)}]')
        if value_range.argmax_sign is not None:
            self.stdout.write(f'worst sign  {value_range.argmax_sign}')
        if not value_range.regular:
            self.stderr.write(f'{value_range.infeasible_realizations} realizations were infeasible')
