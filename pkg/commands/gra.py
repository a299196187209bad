import click

from config import Config
from analysis.gra import classic_grades
from analysis.pipeline import compute_coefficients, resolve_priorities
from commands import dataset_options, emit, format_option, output_option, resolve_inputs
from models import RunConfig, Variant
from reports import render_coefficients


@click.command('gra')
@dataset_options
@click.option('--alpha', type=float, default=Config.ALPHA, show_default=True)
@click.option('--rho', type=float, default=Config.RHO, show_default=True)
@format_option
@output_option
def gra_cmd(fixture, dataset_path, ahp_source, weights, alpha, rho, output_format, output):
    """Grey relational coefficients, plus fixed-weight grades when priorities are given."""
    dataset, matrix, priorities = resolve_inputs(fixture, dataset_path, ahp_source, weights)
    config = RunConfig(alpha, rho, variant=Variant.CRS_UNBOUNDED, ahp_matrix=matrix,
                       weights=priorities, output_format=output_format)
    _, _, reference, coefficients = compute_coefficients(dataset, config.alpha, config.rho)
    resolved = resolve_priorities(config, dataset.attributes)
    classic = classic_grades(coefficients, resolved.weights) if resolved is not None else None
    emit(render_coefficients(coefficients, output_format, classic=classic, reference=reference), output)
