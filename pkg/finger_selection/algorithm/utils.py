"""Common helpers shared by the finger selection algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from finger_selection.system.sinr import Assignment, overall_sinr

if TYPE_CHECKING:
    import numpy as np

    from finger_selection.system.config import SystemConfig
    from finger_selection.system.signature import Signature


@dataclass
class SinrObjective:
    """Overall SINR of one realization, counting every evaluation.

    Nothing is cached: evaluating the same assignment twice costs two
    evaluations.
    """

    signature: Signature
    config: SystemConfig
    eval_count: int = field(default=0, init=False)

    def __call__(self, assignment: Assignment) -> float:
        """Evaluate the overall SINR of an assignment.

        :param assignment: selected paths
        :return: linear SINR
        """
        self.eval_count += 1
        return overall_sinr(
            self.signature, assignment, self.config.energies, self.config.noise_var
        )


def make_assignment(
    indices: list[int] | tuple[int, ...], config: SystemConfig
) -> Assignment:
    """Create an assignment and check it has exactly M fingers.

    :param indices: distinct zero-based path indices
    :param config: scenario constants providing L and M
    :return: new Assignment
    """
    assignment: Assignment = Assignment.from_indices(indices, config.num_paths)
    if assignment.num_fingers != config.num_fingers:
        error_msg: str = (
            f"assignment {assignment.indices} has {assignment.num_fingers} fingers, "
            f"expected M = {config.num_fingers}"
        )
        raise ValueError(error_msg)
    return assignment


def random_assignment(config: SystemConfig, rng: np.random.Generator) -> Assignment:
    """Draw an M-subset of the L paths uniformly at random.

    :param config: scenario constants providing L and M
    :param rng: generator to draw from
    :return: new Assignment
    """
    indices = rng.choice(config.num_paths, size=config.num_fingers, replace=False)
    return make_assignment(indices.tolist(), config)


def swap_mutation(assignment: Assignment, rng: np.random.Generator) -> Assignment:
    """Move one finger from a selected path to an unselected one.

    Equivalent to flipping one 1 and one 0 of the selection vector, so the
    number of fingers is preserved.

    :param assignment: assignment to mutate; left untouched
    :param rng: generator choosing the two flipped positions
    :return: new Assignment, or the same one when every path is selected
    """
    free: tuple[int, ...] = assignment.unselected()
    if not free:
        return assignment

    removed: int = assignment.indices[int(rng.integers(assignment.num_fingers))]
    added: int = free[int(rng.integers(len(free)))]
    kept: list[int] = [i for i in assignment.indices if i != removed]
    return Assignment.from_indices([*kept, added], assignment.num_paths)
