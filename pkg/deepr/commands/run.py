"""Run command: evaluate an R script file."""
import logging
from pathlib import Path
from typing import Optional

import click
from rich.console import Console

from ..config import load_config
from ..core.conditions import QuitSignal
from ..core.evaluator import Interpreter
from .session import make_interpreter


logger = logging.getLogger(__name__)

err_console = Console(stderr=True, highlight=False)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def run_script(path: Path, interp: Optional[Interpreter] = None) -> int:
    """Evaluate every top-level expression of ``path`` in order; returns the exit code.

    Values are not auto-printed; the first uncaught error ends the run.
    """
    try:
        source = path.read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as exc:
        err_console.print(f"[red]✗[/red] cannot read {path}: {exc}")
        return EXIT_USAGE
    interp = interp or make_interpreter()
    logger.debug("running %s (%d bytes)", path, len(source))
    try:
        ok = interp.run_source(source, auto_print=False)
    except QuitSignal as signal:
        return signal.status
    return EXIT_OK if ok else EXIT_FAILURE


@click.command()
@click.argument('path', type=click.Path(path_type=Path))
@click.pass_context
def run(ctx, path):
    """Run an R script file."""
    config = (ctx.obj or {}).get('config') or load_config()
    ctx.exit(run_script(path, make_interpreter(config)))
