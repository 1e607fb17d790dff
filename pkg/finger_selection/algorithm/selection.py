"""Names and results of finger selection algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

from finger_selection.system.sinr import Assignment

if TYPE_CHECKING:
    from finger_selection.system.config import SystemConfig


class Algorithm(str, Enum):
    """Finger selection algorithms known to the experiment runner."""

    CONVENTIONAL = "conventional"
    GA = "ga"
    EXHAUSTIVE = "exhaustive"
    ARAKE = "arake"


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of one algorithm on one realization.

    :param algorithm: which algorithm produced the assignment
    :param assignment: selected paths
    :param sinr_linear: overall SINR of the assignment
    :param eval_count: overall-SINR evaluations spent searching
    :param best_history: best SINR after initialization and after every
        iteration; empty for non-iterative algorithms
    :param eval_history: evaluations spent by the same points as best_history
    """

    algorithm: Algorithm
    assignment: Assignment
    sinr_linear: float
    eval_count: int
    best_history: tuple[float, ...] = field(default=())
    eval_history: tuple[int, ...] = field(default=())


def arake_select(config: SystemConfig) -> Assignment:
    """All-Rake benchmark: every path gets a finger, regardless of M.

    :param config: scenario constants providing L
    :return: assignment of all L paths
    """
    return Assignment.all_paths(config.num_paths)
