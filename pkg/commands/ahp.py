import click

from analysis.ahp import principal_eigenvector
from commands import emit, format_option, output_option
from datasets import ALL_FIXTURES, load_pairwise
from reports import render_priorities


@click.command('ahp')
@click.option('--matrix', 'source', default='table3-ahp', show_default=True,
              help=f'Pairwise comparison matrix file (.csv or .json) or fixture id ({", ".join(ALL_FIXTURES)}).')
@click.option('--published', is_flag=True, help='Show the priorities stored next to the matrix, if any.')
@format_option
@output_option
def ahp_cmd(source, published, output_format, output):
    """AHP priorities, lambda_max and consistency ratio of a pairwise matrix."""
    matrix, stored = load_pairwise(source)
    priorities = principal_eigenvector(matrix)
    emit(render_priorities(priorities, output_format, published=stored if published else None), output)
