import click

from analysis.lp import parse_lp_text, solve
from commands import emit, format_option, output_option
from datasets import read_text
from errors import InfeasibleModelError
from reports import render_lp


@click.command('lp')
@click.argument('path', type=click.Path(dir_okay=False))
@format_option
@output_option
def lp_cmd(path, output_format, output):
    """Solve a linear program written in the plain LP format.

    \b
    max
    3 2
    1 1 <= 4
    1 3 <= 6
    free 2
    """
    program = parse_lp_text(read_text(path))
    solution = solve(program)
    emit(render_lp(solution, output_format), output)
    if not solution.is_optimal:
        raise InfeasibleModelError(f'{path}: program is {solution.status}', status=solution.status,
                                   stage='lp')
