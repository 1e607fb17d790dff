"""Desired-signal and multiple-access interference signatures.

Users are chip-synchronous and taps are chip-spaced, so path m of user k lands
on path l of the desired user exactly when th_1 + l == th_k + m.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from finger_selection.system.channel import Scenario
    from finger_selection.system.config import SystemConfig


@dataclass(frozen=True, eq=False)
class Signature:
    """Per-path view of the received samples.

    :param alpha1: length-L taps of the desired user
    :param mai: L x K matrix whose row l is the interference signature of path l;
        column 0 (the desired user) is identically zero
    """

    alpha1: NDArray[np.float64]
    mai: NDArray[np.float64]

    @property
    def num_paths(self) -> int:
        """Number of paths L."""
        return int(self.alpha1.shape[0])

    @property
    def num_users(self) -> int:
        """Number of users K."""
        return int(self.mai.shape[1])


def collision_indicator(
    desired_code: int, interferer_code: int, path: int, interferer_path: int
) -> int:
    """Whether a path of an interferer collides with a path of the desired user.

    :param desired_code: time-hopping code of the desired user
    :param interferer_code: time-hopping code of the interfering user
    :param path: zero-based path index of the desired user
    :param interferer_path: zero-based path index of the interfering user
    :return: 1 when both arrive in the same chip, 0 otherwise
    """
    return int(desired_code + path == interferer_code + interferer_path)


def build_signature(config: SystemConfig, scenario: Scenario) -> Signature:
    """Assemble the desired taps and the interference signature matrix.

    mai[l, k] = d_1 d_k alpha_k[m] where m = th_1 + l - th_k, for k >= 1 and
    0 <= m < L; the collision equation has at most one solution per (l, k).

    :param config: scenario constants the realization was drawn for
    :param scenario: one realization
    :return: Signature of the desired user
    """
    if scenario.taps.shape != (config.num_users, config.num_paths):
        error_msg: str = (
            f"scenario taps have shape {scenario.taps.shape}, expected "
            f"({config.num_users}, {config.num_paths})"
        )
        raise ValueError(error_msg)

    num_paths: int = config.num_paths
    mai: NDArray[np.float64] = np.zeros((num_paths, config.num_users))
    paths: NDArray[np.int64] = np.arange(num_paths)
    desired_code: int = int(scenario.th_codes[0])

    for user in range(1, config.num_users):
        colliding: NDArray[np.int64] = (
            desired_code + paths - int(scenario.th_codes[user])
        )
        hit: NDArray[np.bool_] = (colliding >= 0) & (colliding < num_paths)
        sign: int = int(scenario.polarities[0] * scenario.polarities[user])
        mai[hit, user] = sign * scenario.taps[user, colliding[hit]]

    return Signature(alpha1=scenario.taps[0].copy(), mai=mai)
