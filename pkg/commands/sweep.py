import click

from config import Config
from models import RunConfig, Variant
from analysis.pipeline import full_pipeline, rank_agreement, sweep_beta, sweep_rho
from commands import dataset_options, emit, format_option, output_option, resolve_inputs
from errors import ParseError
from reports import render_beta_sweep, render_rho_sweep


def _parse_grid(text):
    try:
        values = [float(token) for token in text.split(',') if token.strip()]
    except ValueError:
        raise ParseError(f'cannot read parameter list {text!r}') from None
    if not values:
        raise ParseError('parameter list is empty')
    return values


@click.command('sweep')
@click.argument('parameter', type=click.Choice(['beta', 'rho']))
@dataset_options
@click.option('--values', 'grid', default='0,0.25,0.5,0.75,1', show_default=True,
              help='Comma-separated parameter values.')
@click.option('--alpha', type=float, default=Config.ALPHA, show_default=True)
@click.option('--rho', type=float, default=Config.RHO, show_default=True)
@click.option('--beta', type=float, default=Config.BETA, show_default=True)
@click.option('--variant', type=click.Choice(Variant.ALL_VARIANTS), default=Config.VARIANT,
              show_default=True)
@format_option
@output_option
def sweep_cmd(parameter, fixture, dataset_path, ahp_source, weights, grid, alpha, rho, beta, variant,
              output_format, output):
    """Compromise grades and ranks across a range of beta or rho values."""
    dataset, matrix, priorities = resolve_inputs(fixture, dataset_path, ahp_source, weights)
    config = RunConfig(alpha, rho, beta, variant, matrix, priorities, output_format)
    values = _parse_grid(grid)
    if parameter == 'beta':
        report = full_pipeline(dataset, config)
        content = render_beta_sweep(report.alternatives, sweep_beta(report, values), output_format)
    else:
        reports = sweep_rho(dataset, config, values)
        agreement = rank_agreement(reports[0][1].ranks, reports[-1][1].ranks)
        content = render_rho_sweep(reports, output_format, agreement=agreement)
    emit(content, output)
