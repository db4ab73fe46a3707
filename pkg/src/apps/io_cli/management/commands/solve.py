from apps.io_cli.management.base import LpCommand
from apps.io_cli.models import format_scalar
from apps.io_cli.services import solve_file


class Command(LpCommand):
    help = 'Solve an LP given as a JSON problem or an MPS file and print the optimum.'

    def add_arguments(self, parser):
        parser.add_argument('file')
        self.add_input_arguments(parser)

    def run(self, *args, **options):
        solved = solve_file(options['file'], self.input_options(options))
        solution = solved.solution
        self.stdout.write(f'problem     {solved.loaded.problem_id} ({solved.loaded.problem.form.value})')
        self.stdout.write(f'status      {solution.status.value} after {solution.iterations} pivots')
        self.stdout.write(f'f(A,b,c)    {format_scalar(solution.objective)}')
        self.stdout.write(f'basis       {list(solution.basis.indices)}')
        self.stdout.write(f'x           [{", ".join(format_scalar(v) for v in solved.x)}]')
        flags = [name for name, on in (('primal', solution.primal_degenerate), ('dual', solution.dual_degenerate)) if on]
        self.stdout.write(f'degenerate  {", ".join(flags) if flags else "no"}')
