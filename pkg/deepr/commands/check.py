"""Check command: run the golden-file conformance corpus."""
import json
import logging
from pathlib import Path

import click
from rich.console import Console
from rich.panel import Panel
from rich.syntax import Syntax
from rich.table import Table

from .harness import ERROR_MISMATCH, FAIL, PASS, SKIPPED, ConformanceReport, HarnessError, run_conformance


logger = logging.getLogger(__name__)

console = Console()


def show_report(report: ConformanceReport, out: Console) -> None:
    """Per-file summary table followed by a diff for every failing chunk."""
    table = Table(title="Conformance", show_header=True, header_style="bold magenta")
    table.add_column("File", style="cyan", no_wrap=True)
    table.add_column("Pass", justify="right", style="green")
    table.add_column("Fail", justify="right", style="red")
    table.add_column("Error mismatch", justify="right", style="yellow")
    table.add_column("Skipped", justify="right", style="dim")
    for file, row in report.by_file().items():
        table.add_row(file, str(row[PASS]), str(row[FAIL]), str(row[ERROR_MISMATCH]), str(row[SKIPPED]))
    out.print(table)

    for result in report.failures:
        body = '\n'.join(result.diff()) or "(output matched; error expectation did not)"
        out.print(Panel(Syntax(body, "diff", theme="ansi_dark", word_wrap=True),
                        title=f"{result.status}: {result.location}", border_style="red", expand=False))

    summary = report.summary()
    style = "green" if report.ok else "red"
    mark = "✓" if report.ok else "✗"
    out.print(f"[{style}]{mark}[/{style}] {summary['passed']} passed, {summary['failed']} failed, "
              f"{summary['error_mismatch']} error mismatches, {summary['skipped']} skipped")


@click.command()
@click.argument('paths', nargs=-1, required=True, type=click.Path(path_type=Path))
@click.option('--filter', 'pattern', default=None, metavar='GLOB', help='Only run corpus files matching GLOB')
@click.option('--json', 'as_json', is_flag=True, help='Print the report as JSON')
@click.option('--jobs', '-j', default=1, show_default=True, type=click.IntRange(min=1),
              help='Evaluate files in N worker processes')
@click.pass_context
def check(ctx, paths, pattern, as_json, jobs):
    """Run golden-file corpus files and compare their output."""
    try:
        report = run_conformance(paths, pattern, jobs)
    except HarnessError as exc:
        Console(stderr=True).print(f"[red]✗[/red] {exc}", highlight=False)
        ctx.exit(2)
    if as_json:
        click.echo(json.dumps(report.to_json(), indent=2))
    else:
        show_report(report, console)
    ctx.exit(0 if report.ok else 1)
