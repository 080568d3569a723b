# cli/common.py
"""
Pieces shared by all commands: the console, the report/bounds options,
error handling and report rendering.
"""

from __future__ import annotations
import functools
import logging
from pathlib import Path
from typing import Callable, Optional

import click
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from algebra.errors import ConfextError
from models.report import Report, Verdict
from utils.exporters import export_report
from utils.storage import validation_message

console = Console()
logger = logging.getLogger(__name__)

session_argument = click.argument("session_path", metavar="SESSION", type=click.Path(dir_okay=False, path_type=Path))


def report_options(fn: Callable) -> Callable:
    """--json and --out for every command that produces a Report."""
    fn = click.option("--out", "out", type=click.Path(dir_okay=False, path_type=Path), help="Also write the report (.md or .json).")(fn)
    fn = click.option("--json", "as_json", is_flag=True, help="Print the report as JSON.")(fn)
    return fn


def bound_options(fn: Callable) -> Callable:
    fn = click.option("--ldeg", type=click.IntRange(min=0), help="λ-degree bound for truncated cochain spaces.")(fn)
    fn = click.option("--ddeg", type=click.IntRange(min=0), help="∂-degree bound for witness searches.")(fn)
    return fn


def guarded(fn: Callable) -> Callable:
    """Input errors become a red message and exit code 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as exc:
            console.print(f"[red]Invalid session file:[/red]\n{validation_message(exc)}")
            raise SystemExit(2)
        except ConfextError as exc:
            console.print(f"[red]Error:[/red] {exc}")
            logger.debug("input error", exc_info=True)
            raise SystemExit(2)

    return wrapper


def render(report: Report) -> None:
    colour = {"pass": "green", "fail": "red", "undecided": "yellow"}[report.verdict.value]
    head = f"[bold]{report.command}[/bold] {report.subject}: [{colour}]{report.verdict.value}[/{colour}]"
    if report.bound is not None:
        head += f" (∂-degree bound {report.bound})"
    console.print(head)
    if report.details:
        table = Table(title="Failing identities", show_lines=False)
        table.add_column("Identity", style="bold cyan")
        table.add_column("Arguments", style="magenta")
        table.add_column("Difference")
        for d in report.details:
            table.add_row(d.identity, ", ".join(d.args), d.difference)
        console.print(table)
    for name, value in report.witnesses.items():
        console.print(f"[green]{name}[/green]: {value}")
    for note in report.notes:
        console.print(f"[dim]{note}[/dim]")


def emit(report: Report, as_json: bool, out: Optional[Path]) -> None:
    """Print the report, optionally save it, and exit with its code."""
    if as_json:
        click.echo(report.to_json())
    else:
        render(report)
    if out is not None:
        path = export_report(report, out)
        if not as_json:
            console.print(f"[dim]report written to {path}[/dim]")
    raise SystemExit(report.exit_code)


def undecided(command: str, subject: str, bound: int, note: str) -> Report:
    return Report(command=command, subject=subject, verdict=Verdict.undecided, bound=bound, notes=[note])
