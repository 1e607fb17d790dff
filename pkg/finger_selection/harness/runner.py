"""Seeded Monte Carlo sweeps comparing finger selection algorithms.

Every (sweep point, realization) pair is an independent work item. Random
streams are keyed by realization index only, so all algorithms and all sweep
points of one realization see the same channels and codes, and results do not
depend on how work items are scheduled.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import TYPE_CHECKING, Any

import numpy as np
from loguru import logger

from finger_selection.algorithm.conventional import conventional_select
from finger_selection.algorithm.exhaustive import exhaustive_select
from finger_selection.algorithm.genetic.selector import ga_select
from finger_selection.algorithm.selection import (
    Algorithm,
    SelectionResult,
    arake_select,
)
from finger_selection.harness.experiment import Averaging, iteration_label
from finger_selection.system.channel import gen_scenario
from finger_selection.system.signature import build_signature
from finger_selection.system.sinr import from_db, overall_sinr, to_db
from finger_selection.system.streams import Stream, realization_streams

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from finger_selection.harness.experiment import ExperimentSpec
    from finger_selection.system.config import SystemConfig
    from finger_selection.system.signature import Signature
    from finger_selection.system.sinr import Assignment


@dataclass(frozen=True)
class SweepRow:
    """Average performance of one algorithm at one sweep point.

    :param sweep_value: Eb/N0 in dB or finger count
    :param algorithm: algorithm name
    :param mean_db: 10 log10 of mean_linear
    :param mean_linear: average SINR in linear scale
    :param std_error: standard error of the average (linear, or dB when
        averaging in dB)
    :param mean_evals: average number of overall-SINR evaluations
    :param realizations: realizations averaged
    """

    sweep_value: float
    algorithm: str
    mean_db: float
    mean_linear: float
    std_error: float
    mean_evals: float
    realizations: int


@dataclass(frozen=True)
class SweepResult:
    """All rows of a sweep together with the spec that produced them."""

    spec: ExperimentSpec
    rows: tuple[SweepRow, ...]
    skipped: tuple[tuple[float, str], ...] = ()
    elapsed_seconds: float = field(default=0.0, compare=False)

    def row(self, sweep_value: float, algorithm: Algorithm | str) -> SweepRow:
        """Look up the row of one algorithm at one sweep point."""
        name: str = algorithm.value if isinstance(algorithm, Algorithm) else algorithm
        for candidate in self.rows:
            if candidate.sweep_value == sweep_value and candidate.algorithm == name:
                return candidate
        error_msg: str = f"no row for {name} at sweep value {sweep_value}"
        raise KeyError(error_msg)


def _select(
    algorithm: Algorithm,
    signature: Signature,
    config: SystemConfig,
    spec: ExperimentSpec,
    rng: np.random.Generator,
) -> SelectionResult:
    if algorithm is Algorithm.GA:
        return ga_select(signature, config, spec.ga, rng)
    if algorithm is Algorithm.EXHAUSTIVE:
        return exhaustive_select(signature, config, cap=spec.exhaustive_cap)

    assignment: Assignment = (
        conventional_select(signature, config)
        if algorithm is Algorithm.CONVENTIONAL
        else arake_select(config)
    )
    return SelectionResult(
        algorithm=algorithm,
        assignment=assignment,
        sinr_linear=overall_sinr(
            signature, assignment, config.energies, config.noise_var
        ),
        eval_count=0,
    )


def run_realization(
    spec: ExperimentSpec, sweep_value: float, realization_index: int
) -> dict[Algorithm, SelectionResult]:
    """Run every requested algorithm on one realization at one sweep point.

    Exhaustive search is left out where C(L, M) exceeds the enumeration cap.

    :param spec: experiment description
    :param sweep_value: Eb/N0 in dB or finger count
    :param realization_index: index selecting the random sub-streams
    :return: result of each algorithm that ran, in spec order
    """
    config: SystemConfig = spec.config_at(sweep_value)
    streams: dict[Stream, np.random.Generator] = realization_streams(
        spec.seed, realization_index
    )
    signature: Signature = build_signature(config, gen_scenario(config, streams))

    results: dict[Algorithm, SelectionResult] = {}
    for algorithm in spec.algorithms:
        if algorithm is Algorithm.EXHAUSTIVE and not spec.exhaustive_feasible(
            sweep_value
        ):
            continue
        results[algorithm] = _select(
            algorithm, signature, config, spec, streams[Stream.GA]
        )
    return results


def _realization_task(
    spec: ExperimentSpec, sweep_value: float, realization_index: int
) -> dict[str, tuple[float, int]]:
    """Picklable summary of run_realization for worker processes.

    Keys are row labels; the GA also reports its best SINR and evaluation
    count after each of spec.report_iterations.
    """
    outcomes: dict[str, tuple[float, int]] = {}
    for algorithm, result in run_realization(
        spec, sweep_value, realization_index
    ).items():
        outcomes[algorithm.value] = (result.sinr_linear, result.eval_count)
        if algorithm is Algorithm.GA:
            for iteration in spec.report_iterations:
                outcomes[iteration_label(iteration)] = (
                    result.best_history[iteration],
                    result.eval_history[iteration],
                )
    return outcomes


def _summarize(
    spec: ExperimentSpec,
    sweep_value: float,
    algorithm: str,
    outcomes: list[tuple[float, int]],
) -> SweepRow:
    sinrs: NDArray[np.float64] = np.array([sinr for sinr, _ in outcomes])
    counts: NDArray[np.float64] = np.array([n for _, n in outcomes], dtype=float)
    num_outcomes: int = len(outcomes)

    samples: NDArray[np.float64] = (
        sinrs if spec.averaging is Averaging.LINEAR else 10.0 * np.log10(sinrs)
    )
    mean: float = float(samples.mean())
    std_error: float = (
        float(samples.std(ddof=1)) / math.sqrt(num_outcomes)
        if num_outcomes > 1
        else 0.0
    )
    mean_linear: float = mean if spec.averaging is Averaging.LINEAR else from_db(mean)
    return SweepRow(
        sweep_value=sweep_value,
        algorithm=algorithm,
        mean_db=to_db(mean_linear),
        mean_linear=mean_linear,
        std_error=std_error,
        mean_evals=float(counts.mean()),
        realizations=num_outcomes,
    )


def run_sweep(spec: ExperimentSpec, jobs: int = 1) -> SweepResult:
    """Average every algorithm over all realizations at every sweep point.

    :param spec: experiment description
    :param jobs: worker processes; 1 runs everything in this process
    :return: one row per sweep point and algorithm, in spec order
    """
    start: float = time.perf_counter()
    tasks: list[tuple[ExperimentSpec, float, int]] = [
        (spec, value, index)
        for value in spec.sweep_values
        for index in range(spec.realizations)
    ]

    outputs: list[dict[str, tuple[float, int]]]
    if jobs > 1:
        with Pool(processes=jobs) as pool:
            # starmap returns results in task order
            outputs = pool.starmap(
                _realization_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))
            )
    else:
        outputs = [_realization_task(*task) for task in tasks]

    rows: list[SweepRow] = []
    skipped: list[tuple[float, str]] = []
    for position, value in enumerate(spec.sweep_values):
        chunk: list[dict[str, tuple[float, int]]] = outputs[
            position * spec.realizations : (position + 1) * spec.realizations
        ]
        for label in spec.row_labels:
            if label not in chunk[0]:
                logger.info(
                    "skipping {} at {} = {}: C(L, M) exceeds the cap of {}",
                    label,
                    spec.sweep_axis.value,
                    value,
                    spec.exhaustive_cap,
                )
                skipped.append((value, label))
                continue
            outcomes: list[tuple[float, int]] = [out[label] for out in chunk]
            rows.append(_summarize(spec, value, label, outcomes))
        logger.info("finished {} = {}", spec.sweep_axis.value, value)

    return SweepResult(
        spec=spec,
        rows=tuple(rows),
        skipped=tuple(skipped),
        elapsed_seconds=time.perf_counter() - start,
    )


def sweep_metadata(result: SweepResult) -> dict[str, Any]:
    """Run-level facts echoed next to the averaged rows."""
    return {
        "name": result.spec.name,
        "seed": result.spec.seed,
        "realizations": result.spec.realizations,
        "averaging": result.spec.averaging.value,
        "ebn0_definition": "E_1 / sigma_n^2",
        "skipped": [f"{algorithm}@{value}" for value, algorithm in result.skipped],
        "elapsed_seconds": round(result.elapsed_seconds, 3),
    }
