"""deepr - an interpreter, REPL and conformance harness for a subset of R."""
import logging

import click
from rich.console import Console
from rich.logging import RichHandler

from . import __version__
from .commands import catalog, check, config, repl, run
from .config import ConfigError, load_config


def setup_logging(level: str) -> None:
    """Route the package logger through rich on stderr."""
    handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)
    logger = logging.getLogger('deepr')
    logger.handlers = [h for h in logger.handlers if not isinstance(h, RichHandler)]
    logger.addHandler(handler)
    logger.setLevel(level)


@click.group(invoke_without_command=True)
@click.version_option(version=__version__)
@click.option('--verbose', '-v', is_flag=True, help='Log interpreter internals to stderr')
@click.option('--config', 'config_file', default=None, metavar='PATH',
              help='Configuration file (default: $DEEPR_CONFIG or ~/.deepr/config.yml)')
@click.pass_context
def main(ctx, verbose, config_file):
    """
    deepr: a tree-walking interpreter for a subset of R.
    Without a command, starts the interactive REPL.
    """
    try:
        settings = load_config(config_file)
    except (ConfigError, OSError) as exc:
        raise click.UsageError(str(exc))
    if verbose:
        setup_logging('DEBUG')
    elif settings['log_level'] != 'WARNING':
        setup_logging(settings['log_level'])
    ctx.obj = {'config': settings, 'config_path': config_file}
    if ctx.invoked_subcommand is None:
        ctx.invoke(repl)


main.add_command(repl)
main.add_command(run)
main.add_command(check)
main.add_command(config)
main.add_command(catalog)
