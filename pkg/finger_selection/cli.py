"""Command line entry point: run, validate and check finger selection experiments."""

import dataclasses
import sys
from pathlib import Path
from typing import Annotated, Optional

import typer
from loguru import logger

from finger_selection.errors import FingerSelectionError
from finger_selection.harness.experiment import ExperimentSpec, load_spec
from finger_selection.harness.oracle import OracleReport, check_oracle
from finger_selection.harness.report import emit
from finger_selection.harness.runner import SweepResult, run_sweep

LOG_FORMAT: str = "{time:HH:mm:ss.SS} | {process} | {level} | {message}"
DEFAULT_OUTPUT_DIR: Path = Path("results")
USAGE_ERROR: int = 2
ORACLE_VIOLATION: int = 1

app = typer.Typer(
    help="Monte Carlo comparison of Rake finger selection algorithms.",
    no_args_is_help=True,
)

ConfigArgument = Annotated[
    Path, typer.Argument(help="YAML experiment document.", show_default=False)
]
SeedOption = Annotated[
    Optional[int], typer.Option("--seed", min=0, help="Override the master seed.")
]
RealizationsOption = Annotated[
    Optional[int],
    typer.Option("--realizations", min=1, help="Override realizations per point."),
]
VerboseOption = Annotated[
    bool, typer.Option("--verbose", "-v", help="Log debug messages.")
]


def _configure_logging(verbose: bool) -> None:  # noqa: FBT001
    logger.enable("finger_selection")
    logger.remove()
    logger.add(sys.stderr, format=LOG_FORMAT, level="DEBUG" if verbose else "INFO")


def _load(
    config: Path, seed: Optional[int], realizations: Optional[int]
) -> ExperimentSpec:
    spec: ExperimentSpec = load_spec(config)
    overrides: dict[str, int] = {}
    if seed is not None:
        overrides["seed"] = seed
    if realizations is not None:
        overrides["realizations"] = realizations
    return dataclasses.replace(spec, **overrides) if overrides else spec


def _fail(error: Exception) -> typer.Exit:
    logger.error("{}", error)
    return typer.Exit(code=USAGE_ERROR)


@app.command()
def run(  # noqa: PLR0913
    config: ConfigArgument,
    out: Annotated[
        Optional[Path],
        typer.Option("--out", help="CSV destination [default: results/<name>.csv]."),
    ] = None,
    seed: SeedOption = None,
    realizations: RealizationsOption = None,
    jobs: Annotated[int, typer.Option("--jobs", min=1, help="Worker processes.")] = 1,
    verbose: VerboseOption = False,  # noqa: FBT002
) -> None:
    """Run a sweep and write the averaged SINR table."""
    _configure_logging(verbose)
    try:
        spec: ExperimentSpec = _load(config, seed, realizations)
        result: SweepResult = run_sweep(spec, jobs=jobs)
        path: Path = emit(result, out or DEFAULT_OUTPUT_DIR / f"{spec.name}.csv")
    except (FingerSelectionError, OSError) as error:
        raise _fail(error) from error

    for row in result.rows:
        typer.echo(
            f"{row.sweep_value:>8g}  {row.algorithm:<12} {row.mean_db:8.3f} dB  "
            f"{row.mean_evals:10.1f} evals"
        )
    typer.echo(f"wrote {path} in {result.elapsed_seconds:.1f} s")


@app.command()
def validate(
    config: ConfigArgument,
    verbose: VerboseOption = False,  # noqa: FBT002
) -> None:
    """Parse an experiment document and report what it would run."""
    _configure_logging(verbose)
    try:
        spec: ExperimentSpec = load_spec(config)
    except (FingerSelectionError, OSError) as error:
        raise _fail(error) from error

    algorithms: str = ", ".join(algorithm.value for algorithm in spec.algorithms)
    typer.echo(
        f"{spec.name}: {len(spec.sweep_values)} {spec.sweep_axis.value} points x "
        f"{spec.realizations} realizations [{algorithms}]"
    )


@app.command()
def oracle(
    config: ConfigArgument,
    seed: SeedOption = None,
    realizations: RealizationsOption = None,
    verbose: VerboseOption = False,  # noqa: FBT002
) -> None:
    """Check conventional <= GA <= exhaustive on every small realization."""
    _configure_logging(verbose)
    try:
        spec: ExperimentSpec = _load(config, seed, None)
        report: OracleReport = check_oracle(spec, realizations)
    except (FingerSelectionError, OSError) as error:
        raise _fail(error) from error

    for violation in report.violations:
        logger.error(violation)
    typer.echo(
        f"checked {report.checked} realizations, "
        f"{len(report.violations)} violations"
    )
    if not report.passed:
        raise typer.Exit(code=ORACLE_VIOLATION)
