"""Interactive read-eval-print loop."""
import logging
import sys
from pathlib import Path
from typing import Callable, Optional, TextIO

import click
from rich.console import Console

from ..config import history_path, load_config
from ..core.values import mk_logical
from .session import LineSession, make_interpreter


logger = logging.getLogger(__name__)

console = Console(highlight=False)

Reader = Callable[[str], str]


def prompt_reader(history_file: Optional[Path]) -> Reader:
    """Line reader with editing and a persistent history, for terminals."""
    from prompt_toolkit import PromptSession
    from prompt_toolkit.history import FileHistory, InMemoryHistory

    history = InMemoryHistory()
    if history_file is not None:
        try:
            history_file.parent.mkdir(parents=True, exist_ok=True)
            history = FileHistory(str(history_file))
        except OSError as exc:
            logger.warning("history disabled: %s", exc)
    session = PromptSession(history=history)
    return lambda prompt: session.prompt(prompt)


def stream_reader(stream: TextIO) -> Reader:
    """Line reader over a plain stream; prompts are not echoed."""
    def read(prompt: str) -> str:
        line = stream.readline()
        if not line:
            raise EOFError
        return line.rstrip('\n').rstrip('\r')
    return read


def repl_loop(session: LineSession, read: Reader) -> int:
    """Read and evaluate until end of input or ``q()``; returns the exit status."""
    while session.quit_status is None:
        try:
            line = read(session.prompt)
        except EOFError:
            session.finish()
            break
        except KeyboardInterrupt:
            session.interrupt()
            continue
        try:
            session.feed(line)
        except KeyboardInterrupt:
            session.interrupt()
            session.interp.sink.err('\n')
    return session.quit_status or 0


@click.command()
@click.option('--no-history', is_flag=True, help='Do not read or write the history file')
@click.pass_context
def repl(ctx, no_history):
    """Start an interactive R session."""
    config = (ctx.obj or {}).get('config') or load_config()
    interp = make_interpreter(config)
    interactive = sys.stdin.isatty()
    if interactive:
        interp.options['deepr.interactive'] = mk_logical([True])
        console.print("[bold blue]deepr[/bold blue] [dim]type q() to quit[/dim]")
        read = prompt_reader(None if no_history else history_path(config))
    else:
        read = stream_reader(sys.stdin)
    status = repl_loop(LineSession(interp), read)
    ctx.exit(status)
