import logging

import click

from config import Config
from errors import GreyRankError

logger = logging.getLogger(__name__)


class GreyRankGroup(click.Group):
    """Command group that turns library errors into `error [stage]: message` and an exit code."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except GreyRankError as err:
            prefix = f'error [{err.stage}]' if err.stage else 'error'
            click.echo(f'{prefix}: {err.message}', err=True)
            logger.debug('exit %d after %s', err.exit_code, type(err).__name__)
            ctx.exit(err.exit_code)


def configure_logging(level):
    logging.basicConfig(level=level, format=Config.LOG_FORMAT)
    logging.getLogger().setLevel(level)


def create_cli():
    @click.group(cls=GreyRankGroup, help=Config.APP_TAGLINE)
    @click.option('--verbose', '-v', is_flag=True, help='Log debug output to standard error.')
    @click.version_option(Config.VERSION, prog_name=Config.APP_NAME, message='%(prog)s %(version)s')
    def cli(verbose):
        configure_logging(logging.DEBUG if verbose else Config.LOG_LEVEL)

    from commands.rank import rank_cmd
    from commands.gra import gra_cmd
    from commands.ahp import ahp_cmd
    from commands.lp import lp_cmd
    from commands.sweep import sweep_cmd

    cli.add_command(rank_cmd)
    cli.add_command(gra_cmd)
    cli.add_command(ahp_cmd)
    cli.add_command(lp_cmd)
    cli.add_command(sweep_cmd)

    return cli
