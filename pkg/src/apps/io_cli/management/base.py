import argparse
from fractions import Fraction

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from apps.io_cli.loaders import PATTERN_HELP
from apps.io_cli.mps import EQUALITY_MODES
from common.exceptions import InfeasibleProblem, LpSensError, UnboundedProblem
from config.logging import configure_logging, level_for_verbosity

BACKENDS = ('float', 'rational')
MPS_FORMATS = ('free', 'fixed')


def scalar_argument(text: str) -> Fraction:
    """Decimal or ``p/q``; the backend decides later whether it stays exact."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f'not a number: {text!r}')


class LpCommand(BaseCommand):
    """Input options shared by the commands, logging setup and exit codes.

    Infeasible or unbounded problems exit with 2, every other library error with 1.
    """

    def add_input_arguments(self, parser) -> None:
        parser.add_argument('--pattern', default=None, help=PATTERN_HELP)
        parser.add_argument('--backend', choices=BACKENDS, default=None, help='scalar backend (default LPSENS_BACKEND)')
        parser.add_argument('--equality', choices=EQUALITY_MODES, default='standard', help='how MPS equality rows are kept')
        parser.add_argument('--mps-format', choices=MPS_FORMATS, default='free')
        parser.add_argument('--seed-perturb', type=float, default=None, metavar='P', help='perturb data by up to P relative')
        parser.add_argument('--seed', type=int, default=0, help='seed of --seed-perturb (default 0)')
        parser.add_argument('--max-sign-rows', type=int, default=None)
        parser.add_argument('--threads', type=int, default=None, help='worker count (default LPSENS_THREADS)')

    def input_options(self, options: dict) -> dict:
        keys = ('pattern', 'backend', 'equality', 'mps_format', 'seed_perturb', 'seed', 'max_sign_rows', 'threads')
        return {key: options.get(key) for key in keys}

    def handle(self, *args, **options):
        verbosity = options.get('verbosity', 1)
        configure_logging(settings.LOG_LEVEL if verbosity == 1 else level_for_verbosity(verbosity))
        try:
            return self.run(*args, **options)
        except (InfeasibleProblem, UnboundedProblem) as exc:
            raise CommandError(exc.detail, returncode=2)
        except LpSensError as exc:
            raise CommandError(exc.detail, returncode=1)
        except (ValueError, OSError) as exc:
            raise CommandError(str(exc), returncode=1)

    def run(self, *args, **options):
        raise NotImplementedError('subclasses of LpCommand must provide a run() method')
