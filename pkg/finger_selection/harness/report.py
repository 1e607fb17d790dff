"""CSV tables of sweep results with a commented metadata header."""

from __future__ import annotations

import csv
import dataclasses
from pathlib import Path
from typing import TYPE_CHECKING

import yaml
from loguru import logger

from finger_selection.harness.runner import SweepResult, SweepRow, sweep_metadata

if TYPE_CHECKING:
    from collections.abc import Iterator

METADATA_PREFIX: str = "#"
COLUMNS: tuple[str, ...] = tuple(f.name for f in dataclasses.fields(SweepRow))


def _metadata_lines(result: SweepResult) -> Iterator[str]:
    yield f"{METADATA_PREFIX} finger selection sweep"
    for key, value in sweep_metadata(result).items():
        yield f"{METADATA_PREFIX} {key}: {value}"
    yield f"{METADATA_PREFIX} spec:"
    spec_text: str = yaml.safe_dump(result.spec.to_document(), sort_keys=False)
    for line in spec_text.splitlines():
        yield f"{METADATA_PREFIX}   {line}"


def emit(result: SweepResult, output_path: Path | str) -> Path:
    """Write one row per sweep point and algorithm, preceded by metadata lines.

    Floats are written with their shortest round-trip representation.

    :param result: averaged sweep
    :param output_path: destination CSV file; parent directories are created
    :return: path of the written file
    """
    path = Path(output_path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            for line in _metadata_lines(result):
                handle.write(line + "\n")
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(COLUMNS)
            for row in result.rows:
                writer.writerow(dataclasses.astuple(row))
    except OSError as error:
        error_msg: str = f"cannot write sweep table to {path}: {error}"
        raise OSError(error_msg) from error

    logger.info("wrote {} rows to {}", len(result.rows), path)
    return path


def read_sweep_csv(path: Path | str) -> tuple[list[str], list[SweepRow]]:
    """Read a table written by emit.

    :param path: CSV file produced by emit
    :return: (metadata lines without their prefix, rows)
    """
    metadata: list[str] = []
    data_lines: list[str] = []
    with Path(path).open(encoding="utf-8", newline="") as handle:
        for line in handle:
            if line.startswith(METADATA_PREFIX):
                metadata.append(line[len(METADATA_PREFIX) :].rstrip("\n"))
            else:
                data_lines.append(line)

    reader = csv.DictReader(data_lines)
    rows: list[SweepRow] = [
        SweepRow(
            sweep_value=float(record["sweep_value"]),
            algorithm=record["algorithm"],
            mean_db=float(record["mean_db"]),
            mean_linear=float(record["mean_linear"]),
            std_error=float(record["std_error"]),
            mean_evals=float(record["mean_evals"]),
            realizations=int(record["realizations"]),
        )
        for record in reader
    ]
    return metadata, rows
