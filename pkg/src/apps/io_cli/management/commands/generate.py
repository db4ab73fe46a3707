import json
from fractions import Fraction

from apps.io_cli.generators import TRANSFORM_KINDS, example1, hypercube, transformed_hypercube
from apps.io_cli.management.base import BACKENDS, LpCommand, scalar_argument
from apps.io_cli.serializers import problem_to_dict, save_problem_json

GENERATORS = ('example1', 'hypercube', 'transformed-hypercube')


class Command(LpCommand):
    help = 'Write one of the built-in example problems as a JSON problem file.'

    def add_arguments(self, parser):
        parser.add_argument('kind', choices=GENERATORS)
        parser.add_argument('--c3', type=scalar_argument, default=Fraction(3, 2), help='example1 cost of x3')
        parser.add_argument('--n', type=int, default=2, help='hypercube dimension')
        parser.add_argument('--transform', choices=TRANSFORM_KINDS, default='random')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--backend', choices=BACKENDS, default=None)
        parser.add_argument('--output', default=None)

    def run(self, *args, **options):
        kind, backend = options['kind'], options['backend']
        if kind == 'example1':
            problem = example1(options['c3'], backend=backend)
        elif options['n'] < 1:
            raise ValueError('--n must be positive')
        elif kind == 'hypercube':
            problem = hypercube(options['n'], backend=backend)
        else:
            problem = transformed_hypercube(options['transform'], options['n'], seed=options['seed'], backend=backend)

        if options.get('output'):
            save_problem_json(problem, options['output'])
        else:
            self.stdout.write(json.dumps(problem_to_dict(problem), indent=2))
