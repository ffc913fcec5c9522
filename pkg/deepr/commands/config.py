"""Config command for deepr."""
import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..config import DEFAULTS, ConfigError, coerce_value, config_path, load_config, save_config


console = Console()


@click.group()
def config():
    """Show or change the deepr configuration."""


@config.command()
@click.pass_context
def show(ctx):
    """Show the effective configuration."""
    path = (ctx.obj or {}).get('config_path')
    config_data = load_config(path)

    header = Panel(f"CONFIGURATION  [dim]{config_path(path)}[/dim]", style="bold blue",
                   border_style="blue", expand=False)
    console.print(header)

    config_table = Table(show_header=True, header_style="bold magenta")
    config_table.add_column("Key", style="cyan", no_wrap=True)
    config_table.add_column("Value", style="white")
    config_table.add_column("Default", style="dim")
    for key in DEFAULTS:
        config_table.add_row(key, str(config_data[key]), str(DEFAULTS[key]))
    console.print(config_table)


@config.command(name='set')
@click.argument('key')
@click.argument('value')
@click.pass_context
def set_value(ctx, key, value):
    """Persist KEY = VALUE in the configuration file."""
    path = (ctx.obj or {}).get('config_path')
    try:
        config_data = load_config(path)
        config_data[key] = coerce_value(key, value)
    except ConfigError as exc:
        raise click.BadParameter(str(exc), param_hint='KEY/VALUE')
    target = save_config(config_data, path)

    success_text = Text(f"✓ {key} = {config_data[key]}", style="bold green")
    console.print(Panel(success_text, title="CONFIGURATION UPDATED", border_style="green", expand=False))
    console.print(f"[dim]saved to {target}[/dim]")
