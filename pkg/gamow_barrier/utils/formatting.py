"""Utilities for formatting and displaying results"""
import json
from typing import Any, Dict, List, Sequence

from rich.panel import Panel
from rich.syntax import Syntax
from rich.table import Table

from ..models import BarrierParams, CheckResult, ResonancePole
from .logging import console


def format_complex(z: complex, digits: int = 10) -> str:
    """Signed fixed-width rendering used in tables"""
    return f"{z.real:+.{digits}f} {z.imag:+.{digits}f}i"


def format_json(data: Any) -> str:
    return json.dumps(data, indent=2, default=str)


def display_run_header(command: str, params: BarrierParams, k: float):
    """Display the barrier and incident momentum a command runs on"""
    console.print(Panel(
        f"[bold blue]{command}[/bold blue]  m={params.m!r}  V={params.V!r}  L={params.L!r}  k={k!r}",
        title="Square barrier",
        border_style="blue",
    ))


def display_pole_table(poles: Sequence[ResonancePole], limit: int = 20):
    """Display the first resonances with their norms and residuals"""
    table = Table(title="Resonance poles", border_style="cyan")
    table.add_column("n", justify="right", style="bold cyan")
    table.add_column("p_n")
    table.add_column("N_n")
    table.add_column("residual", justify="right")

    shown = [pole for pole in poles if pole.n > 0][:limit]
    for pole in shown:
        table.add_row(str(pole.n), format_complex(pole.p), format_complex(pole.norm, 6), f"{pole.residual:.1e}")
    console.print(table)


def display_rows(title: str, rows: List[Dict[str, Any]], limit: int = 40):
    """Display generic result rows as a table"""
    if not rows:
        console.print(f"[dim]{title}: no rows[/dim]")
        return
    table = Table(title=title, border_style="magenta")
    for column in rows[0]:
        table.add_column(column)
    for row in rows[:limit]:
        table.add_row(*(repr(value) if isinstance(value, float) else str(value) for value in row.values()))
    if len(rows) > limit:
        table.caption = f"{len(rows) - limit} more rows in the output file"
    console.print(table)


def display_checks(results: Sequence[CheckResult]):
    """Display the validation report"""
    table = Table(title="Validation", border_style="green")
    table.add_column("check", style="bold")
    table.add_column("measured", justify="right")
    table.add_column("threshold", justify="right")
    table.add_column("status")
    for result in results:
        status = "[green]pass[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(result.name, f"{result.measured:.3e}", f"{result.threshold:.1e}", status)
    console.print(table)


def display_summary(summary: Dict[str, Any]):
    console.print(Panel(
        Syntax(format_json(summary), "json", theme="monokai", word_wrap=True),
        title="Summary",
        border_style="yellow",
    ))


def display_error(error: str):
    """Display error message"""
    console.print(Panel(
        f"[bold red]Error:[/bold red] {error}",
        title="Error",
        border_style="red",
    ))
