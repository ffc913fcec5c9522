"""Catalog command: list the functions of the base environment."""
import click
from rich.console import Console
from rich.columns import Columns

from ..builtins import catalog as base_catalog
from .session import make_interpreter


console = Console()


def render_markdown(names) -> str:
    """The catalog as the markdown table kept in ``docs/builtins.md``."""
    lines = ["# Base functions", "",
             "Every function bound in the base environment, as listed by `deepr catalog`.", "",
             "| Function |", "|---|"]
    lines.extend(f"| `{name.replace('|', chr(92) + '|')}` |" for name in names)
    return '\n'.join(lines) + '\n'


@click.command()
@click.option('--markdown', is_flag=True, help='Print the markdown reference table')
def catalog(markdown):
    """List the functions the base environment provides."""
    names = base_catalog(make_interpreter())
    if markdown:
        click.echo(render_markdown(names), nl=False)
        return
    if console.is_terminal:
        console.print(Columns(names, equal=True, column_first=True))
        console.print(f"[dim]{len(names)} functions[/dim]")
    else:
        click.echo('\n'.join(names))
