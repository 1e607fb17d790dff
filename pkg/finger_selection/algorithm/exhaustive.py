"""Optimal finger selection by enumerating every M-subset of the L paths."""

from __future__ import annotations

import itertools
from typing import TYPE_CHECKING

from finger_selection.algorithm.selection import Algorithm, SelectionResult
from finger_selection.algorithm.utils import SinrObjective
from finger_selection.errors import EnumerationCapError
from finger_selection.system.sinr import Assignment

if TYPE_CHECKING:
    from finger_selection.system.config import SystemConfig
    from finger_selection.system.signature import Signature

DEFAULT_ENUMERATION_CAP: int = 1_000_000


def exhaustive_select(
    signature: Signature,
    config: SystemConfig,
    *,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> SelectionResult:
    """Evaluate the overall SINR of all C(L, M) assignments and keep the best.

    Subsets are visited in lexicographic order and only a strictly larger SINR
    replaces the incumbent, so ties go to the lexicographically smallest p_x.

    :param signature: per-path signature of the desired user
    :param config: scenario constants providing L, M, energies and noise
    :param cap: refuse to enumerate more than this many subsets
    :return: best assignment, its SINR and eval_count = C(L, M)
    """
    if config.num_subsets > cap:
        raise EnumerationCapError(config.num_subsets, cap)

    objective = SinrObjective(signature, config)
    best: Assignment | None = None
    best_sinr: float = -1.0
    for indices in itertools.combinations(range(config.num_paths), config.num_fingers):
        assignment = Assignment(indices, config.num_paths)
        sinr: float = objective(assignment)
        if sinr > best_sinr:
            best, best_sinr = assignment, sinr

    if best is None:
        error_msg: str = "no assignment was enumerated"
        raise RuntimeError(error_msg)

    return SelectionResult(
        algorithm=Algorithm.EXHAUSTIVE,
        assignment=best,
        sinr_linear=best_sinr,
        eval_count=objective.eval_count,
    )
