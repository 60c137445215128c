"""Rich terminal UI components for tables, verification reports and settings."""

from pathlib import Path

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ..config import Settings
from ..models import CriterionResult, CsvTable, format_cell

console = Console()


def display_table(table: CsvTable, title: str | None = None, max_rows: int = 20) -> None:
    """Display a CSV table, eliding the middle rows of long tables.

    Args:
        table: Table to display
        title: Table title, defaults to the file name
        max_rows: Rows shown before eliding
    """
    if not table.rows:
        console.print(f"[yellow]{table.name} has no rows.[/yellow]")
        return

    out = Table(title=title or table.name, show_header=True, header_style="bold cyan")
    for name in table.header:
        out.add_column(name, justify="right")

    rows = table.rows
    if len(rows) > max_rows:
        half = max_rows // 2
        shown = rows[:half] + [None] + rows[-half:]
    else:
        shown = rows
    for row in shown:
        if row is None:
            out.add_row(*["[dim]...[/dim]"] * len(table.header))
        else:
            out.add_row(*(format_cell(cell) for cell in row))

    console.print(out)


def display_written(paths: list[Path]) -> None:
    """List the files a command wrote."""
    for path in paths:
        console.print(f"[green]wrote[/green] {path}")


def display_verify_report(results: list[CriterionResult]) -> None:
    """Display one pass/fail line per criterion and a summary panel.

    Args:
        results: Outcomes in run order
    """
    table = Table(title="Verification", show_header=True, header_style="bold cyan")
    table.add_column("Criterion", style="white")
    table.add_column("Result", justify="center")
    table.add_column("Measured", justify="right", style="yellow")
    table.add_column("Tolerance", justify="right", style="dim")
    table.add_column("Detail", style="dim", max_width=60)

    for result in results:
        status = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(result.criterion, status, f"{result.measured:.3e}", f"{result.tolerance:.1e}", result.detail)
    console.print(table)

    failed = [r.criterion for r in results if not r.passed]
    if failed:
        display_error(f"{len(failed)} of {len(results)} criteria failed: {', '.join(failed)}", title="Verify")
    else:
        display_success(f"All {len(results)} criteria passed", title="Verify")


def display_settings(settings: Settings) -> None:
    """Display the effective configuration."""
    table = Table(title="Configuration", show_header=True, header_style="bold cyan")
    table.add_column("Setting", style="cyan")
    table.add_column("Value", style="green")
    table.add_column("Description", style="dim")

    for name, field in Settings.model_fields.items():
        table.add_row(name, str(getattr(settings, name)), field.description or "")
    console.print(table)


def display_error(message: str, title: str = "Error") -> None:
    """Display an error message.

    Args:
        message: Error message
        title: Panel title
    """
    console.print(Panel(f"[red]{message}[/red]", title=title, border_style="red"))


def display_success(message: str, title: str = "Success") -> None:
    """Display a success message.

    Args:
        message: Success message
        title: Panel title
    """
    console.print(Panel(f"[green]{message}[/green]", title=title, border_style="green"))


def display_info(message: str) -> None:
    """Display an info message."""
    console.print(f"[blue]Info:[/blue] {message}")
