import click

from config import Config
from models import RunConfig, Variant
from analysis.pipeline import full_pipeline
from commands import dataset_options, emit, format_option, output_option, resolve_inputs
from reports import render_report


@click.command('rank')
@dataset_options
@click.option('--alpha', type=float, default=Config.ALPHA, show_default=True,
              help='alpha-cut level applied to fuzzy cells.')
@click.option('--rho', type=float, default=Config.RHO, show_default=True,
              help='Distinguishing coefficient of the grey relational coefficient.')
@click.option('--beta', type=float, default=Config.BETA, show_default=True,
              help='Weight of the optimistic grade in the compromise grade.')
@click.option('--variant', type=click.Choice(Variant.ALL_VARIANTS), default=Config.VARIANT,
              show_default=True)
@format_option
@output_option
@click.option('--audit', is_flag=True, help='Include the intermediate matrices and per-alternative weights.')
@click.option('--slacks', is_flag=True, help='Solve the slack-form programs as a diagnostic.')
def rank_cmd(fixture, dataset_path, ahp_source, weights, alpha, rho, beta, variant,
             output_format, output, audit, slacks):
    """Rank alternatives by their compromise grey relational grade."""
    dataset, matrix, priorities = resolve_inputs(fixture, dataset_path, ahp_source, weights)
    config = RunConfig(alpha, rho, beta, variant, matrix, priorities, output_format, audit, slacks)
    report = full_pipeline(dataset, config)
    emit(render_report(report, output_format, dataset=dataset, config=config, audit=audit), output)
