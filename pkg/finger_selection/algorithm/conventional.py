"""Conventional finger selection: the M paths with the largest individual SINR."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from finger_selection.algorithm.utils import make_assignment
from finger_selection.system.sinr import per_path_sinrs

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from finger_selection.system.config import SystemConfig
    from finger_selection.system.signature import Signature
    from finger_selection.system.sinr import Assignment


def conventional_select(signature: Signature, config: SystemConfig) -> Assignment:
    """Pick the fingers ranked by per-path SINR, ignoring noise correlation.

    Ties are broken toward the lower path index.

    :param signature: per-path signature of the desired user
    :param config: scenario constants providing M, energies and noise
    :return: assignment of the M strongest paths
    """
    sinrs: NDArray[np.float64] = per_path_sinrs(
        signature, config.energies, config.noise_var
    )
    # stable sort keeps lower indices first among equal values
    ranking: NDArray[np.int64] = np.argsort(-sinrs, kind="stable")
    return make_assignment(ranking[: config.num_fingers].tolist(), config)
