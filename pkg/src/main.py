"""Main CLI entry point for ctqw."""

import logging
from enum import Enum
from pathlib import Path
from typing import Annotated, NoReturn, Optional

import typer
from pydantic import TypeAdapter, ValidationError
from rich.console import Console

from .config import Settings, load_settings
from .display.ui import (
    display_error,
    display_info,
    display_settings,
    display_table,
    display_verify_report,
    display_written,
)
from .errors import CtqwError
from .figures import fig3_table, fig4_table, nmr_table, walk_tables
from .models import CriterionResult, CsvTable
from .spin.experiment import MAX_STEPS
from .verify import run_all


# Global state for verbose mode
class AppState:
    verbose: bool = False


state = AppState()


class Switch(str, Enum):
    on = "on"
    off = "off"


def verbose_callback(value: bool) -> None:
    """Enable verbose output."""
    if value:
        state.verbose = True
        logging.basicConfig(level=logging.DEBUG)


def parse_steps(value: Optional[str]) -> Optional[list[int]]:
    """Parse the comma-separated --n list; every entry must lie in 0..12."""
    if value is None:
        return None
    steps = []
    for item in value.split(","):
        item = item.strip()
        try:
            n = int(item)
        except ValueError:
            raise typer.BadParameter(f"{item!r} is not an integer")
        if not 0 <= n <= MAX_STEPS:
            raise typer.BadParameter(f"{n} is outside 0..{MAX_STEPS}")
        steps.append(n)
    return steps


ConfigFile = Annotated[
    Optional[Path],
    typer.Option("--config", exists=True, dir_okay=False, help="key=value configuration file"),
]
OutDir = Annotated[Optional[Path], typer.Option("--out", help="Output directory for CSV files")]
Gamma = Annotated[Optional[float], typer.Option("--gamma", help="Jumping rate for theory sweeps")]
Noise = Annotated[Optional[Switch], typer.Option("--noise", help="T2 dephasing during delays")]
Points = Annotated[Optional[int], typer.Option("--points", help="Points per theory curve")]
Verbose = Annotated[
    bool,
    typer.Option("-v", "--verbose", help="Show debug logging", callback=verbose_callback, is_eager=True),
]

app = typer.Typer(
    name="ctqw",
    help="Continuous-time classical and quantum walks, with an emulated two-spin NMR experiment.",
    add_completion=False,
)
console = Console()


def _settings(
    config: Optional[Path],
    out: Optional[Path] = None,
    gamma: Optional[float] = None,
    noise: Optional[Switch] = None,
    points: Optional[int] = None,
) -> Settings:
    """Merge flags over the config file; an invalid value is a usage error."""
    try:
        return load_settings(
            config,
            output_dir=out,
            gamma=gamma,
            noise=None if noise is None else noise is Switch.on,
            grid_points=points,
        )
    except ValidationError as e:
        display_error(str(e), title="Invalid configuration")
        raise typer.Exit(2)


def _write(tables: list[CsvTable], settings: Settings) -> list[Path]:
    """Write tables into the output directory; I/O failures name the path and exit 1."""
    try:
        directory = settings.ensure_output_dir()
        return [table.write(directory) for table in tables]
    except OSError as e:
        display_error(f"Cannot write {e.filename or settings.output_dir}: {e.strerror or e}", title="I/O error")
        raise typer.Exit(1)


def _fail(error: CtqwError) -> NoReturn:
    display_error(str(error), title=type(error).__name__)
    if state.verbose:
        console.print_exception()
    raise typer.Exit(1)


@app.command()
def walk(
    config: ConfigFile = None,
    out: OutDir = None,
    gamma: Gamma = None,
    points: Points = None,
    verbose: Verbose = False,
) -> None:
    """Write classical.csv and quantum.csv: node probabilities on the circle over time.

    Examples:
        ctqw walk                       # 4-node circle, gamma = 1
        ctqw walk --gamma 0.5 --points 50
    """
    settings = _settings(config, out, gamma, points=points)
    try:
        tables = walk_tables(settings)
    except CtqwError as e:
        _fail(e)
    display_written(_write(tables, settings))


@app.command()
def figures(
    config: ConfigFile = None,
    out: OutDir = None,
    gamma: Gamma = None,
    noise: Noise = None,
    points: Points = None,
    verbose: Verbose = False,
) -> None:
    """Write fig3.csv (distance to uniform against time) and fig4.csv (against entanglement)."""
    settings = _settings(config, out, gamma, noise, points)
    try:
        tables = [fig3_table(settings), fig4_table(settings)]
    except CtqwError as e:
        _fail(e)
    display_written(_write(tables, settings))


@app.command()
def nmr(
    steps: Annotated[
        Optional[str],
        typer.Option("--n", help="Comma-separated experiment indices in 0..12", callback=parse_steps),
    ] = None,
    config: ConfigFile = None,
    out: OutDir = None,
    noise: Noise = None,
    verbose: Verbose = False,
) -> None:
    """Run the emulated NMR walk experiment for each n and write nmr.csv.

    Examples:
        ctqw nmr                        # n = 0..12, noise per configuration
        ctqw nmr --n 3,12 --noise off
    """
    settings = _settings(config, out, noise=noise)
    n_list = steps if steps is not None else list(range(MAX_STEPS + 1))
    try:
        table = nmr_table(settings, n_list)
    except CtqwError as e:
        _fail(e)
    display_table(table, title=f"NMR experiment (noise {'on' if settings.noise else 'off'})")
    display_written(_write([table], settings))


@app.command()
def verify(
    config: ConfigFile = None,
    noise: Noise = None,
    points: Points = None,
    json_output: Annotated[bool, typer.Option("--json", help="Emit a machine-readable report")] = False,
    verbose: Verbose = False,
) -> None:
    """Run the acceptance criteria; exit 1 if any fails.

    Examples:
        ctqw verify
        ctqw verify --noise off --json
    """
    settings = _settings(config, noise=noise, points=points)
    results = run_all(settings)
    if json_output:
        report = TypeAdapter(list[CriterionResult]).dump_json(results, indent=2, exclude={"__all__": {"detail"}})
        typer.echo(report.decode())
    else:
        display_verify_report(results)
    if not all(r.passed for r in results):
        raise typer.Exit(1)


@app.command()
def config(
    show_config: bool = typer.Option(False, "--show", help="Show the effective configuration"),
    config_file: ConfigFile = None,
) -> None:
    """Manage configuration."""
    if show_config:
        display_settings(_settings(config_file))
    else:
        display_info("Use --show to display the effective configuration.")
        console.print("Configuration comes from flags, a --config key=value file and environment variables.")


def main() -> None:
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
