"""Check the genetic search against exhaustive search on small instances."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from loguru import logger

from finger_selection.algorithm.selection import Algorithm
from finger_selection.harness.runner import run_realization

if TYPE_CHECKING:
    from finger_selection.algorithm.selection import SelectionResult
    from finger_selection.harness.experiment import ExperimentSpec

RELATIVE_TOLERANCE: float = 1e-9


@dataclass
class OracleReport:
    """Outcome of the sandwich check.

    :param checked: number of (sweep point, realization) pairs compared
    :param violations: description of every pair breaking an ordering
    """

    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when no ordering was violated."""
        return not self.violations


def _exceeds(lower: float, upper: float) -> bool:
    """Whether lower is larger than upper beyond rounding."""
    return lower > upper * (1.0 + RELATIVE_TOLERANCE)


def check_oracle(spec: ExperimentSpec, realizations: int | None = None) -> OracleReport:
    """Compare conventional, genetic and exhaustive selection on every realization.

    At every sweep point where exhaustive search fits under the cap, checks
    GA <= exhaustive, plus conventional <= GA when the conventional assignment
    is injected into the initial population. Evaluation counts are checked
    against C(L, M) and the genetic bound.

    :param spec: experiment description; its algorithm list is ignored
    :param realizations: realizations per point instead of spec.realizations
    :return: report listing every violation
    """
    checked_spec: ExperimentSpec = dataclasses.replace(
        spec,
        algorithms=(Algorithm.CONVENTIONAL, Algorithm.GA, Algorithm.EXHAUSTIVE),
        realizations=spec.realizations if realizations is None else realizations,
    )
    report = OracleReport()
    for value in checked_spec.sweep_values:
        if not checked_spec.exhaustive_feasible(value):
            logger.info(
                "oracle skips {} = {}: above the cap", spec.sweep_axis.value, value
            )
            continue

        num_subsets: int = checked_spec.config_at(value).num_subsets
        for index in range(checked_spec.realizations):
            results: dict[Algorithm, SelectionResult] = run_realization(
                checked_spec, value, index
            )
            conventional: float = results[Algorithm.CONVENTIONAL].sinr_linear
            genetic: SelectionResult = results[Algorithm.GA]
            exhaustive: SelectionResult = results[Algorithm.EXHAUSTIVE]
            where: str = f"{spec.sweep_axis.value}={value}, realization {index}"

            if _exceeds(genetic.sinr_linear, exhaustive.sinr_linear):
                report.violations.append(
                    f"{where}: GA {genetic.sinr_linear} > exhaustive "
                    f"{exhaustive.sinr_linear}"
                )
            if spec.ga.inject_conventional and _exceeds(
                conventional, genetic.sinr_linear
            ):
                report.violations.append(
                    f"{where}: conventional {conventional} > GA {genetic.sinr_linear}"
                )
            if genetic.eval_count > spec.ga.max_evaluations:
                report.violations.append(
                    f"{where}: GA spent {genetic.eval_count} evaluations, bound is "
                    f"{spec.ga.max_evaluations}"
                )
            if exhaustive.eval_count != num_subsets:
                report.violations.append(
                    f"{where}: exhaustive spent {exhaustive.eval_count} evaluations, "
                    f"expected {num_subsets}"
                )
            report.checked += 1

    return report
