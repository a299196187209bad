# Commands package
import logging

import click

from config import Config
from models import OutputFormat
from datasets import (ALL_FIXTURES, BUNDLES, DATASET_FIXTURES, load_bundle, load_dataset,
                      load_pairwise, parse_weights)
from errors import DataIOError, ValidationError
from analysis.pipeline import stage

logger = logging.getLogger(__name__)

DATASET_CHOICES = sorted([*DATASET_FIXTURES, *BUNDLES])


def format_option(command):
    return click.option('--format', 'output_format', type=click.Choice(OutputFormat.ALL_FORMATS),
                        default=Config.OUTPUT_FORMAT, show_default=True,
                        help='Report format; pdf needs --output.')(command)


def output_option(command):
    return click.option('--output', '-o', type=click.Path(dir_okay=False), default=None,
                        help='Write the report to this file instead of standard output.')(command)


def dataset_options(command):
    command = click.option('--weights', default=None,
                           help='Comma-separated attribute priorities, e.g. 0.131,0.545,0.275,0.05.')(command)
    command = click.option('--ahp', 'ahp_source', default=None,
                           help=f'AHP matrix file or fixture id ({", ".join(ALL_FIXTURES)}).')(command)
    command = click.option('--dataset', 'dataset_path', type=click.Path(dir_okay=False), default=None,
                           help='Dataset file (.csv or .json, including a JSON report).')(command)
    command = click.option('--fixture', type=click.Choice(DATASET_CHOICES), default=None,
                           help='Embedded dataset fixture.')(command)
    return command


def resolve_inputs(fixture, dataset_path, ahp_source, weights):
    """Load the dataset and whichever priority source the flags select.

    Returns (dataset, pairwise matrix or None, PriorityVector or None). A bundle
    fixture brings its published priorities unless --ahp or --weights is given.
    """
    if fixture and dataset_path:
        raise click.UsageError('use either --fixture or --dataset, not both')
    if not fixture and not dataset_path:
        raise click.UsageError('one of --fixture or --dataset is required')
    if ahp_source and weights:
        raise click.UsageError('use either --ahp or --weights, not both')

    matrix = priorities = None
    with stage('load'):
        if fixture in BUNDLES:
            dataset, bundled_matrix, published = load_bundle(fixture)
            if not ahp_source and not weights:
                matrix, priorities = bundled_matrix, published
        else:
            dataset = load_dataset(fixture or dataset_path)
        logger.info('loaded dataset %r (%d x %d)', dataset.name, *dataset.shape)

        if ahp_source:
            matrix, _ = load_pairwise(ahp_source)
        if weights:
            priorities = parse_weights(weights, tuple(a.name for a in dataset.attributes))
    return dataset, matrix, priorities


def emit(content, output=None):
    """Write a rendered report to standard output or a file."""
    if output is None:
        if isinstance(content, bytes):
            raise ValidationError('pdf reports are binary; pass --output FILE')
        click.echo(content, nl=False)
        return
    try:
        if isinstance(content, bytes):
            with open(output, 'wb') as handle:
                handle.write(content)
        else:
            with open(output, 'w', encoding='utf-8') as handle:
                handle.write(content)
    except OSError as err:
        raise DataIOError(f'cannot write {output}: {err.strerror or err}') from None
    logger.info('report written to %s', output)
