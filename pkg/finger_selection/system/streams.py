"""Named random sub-streams derived from one master seed."""

from __future__ import annotations

from enum import Enum

import numpy as np


class Stream(Enum):
    """Independent consumers of randomness within one realization."""

    TAPS = 0
    CODES = 1
    GA = 2


def stream_generator(
    master_seed: int, realization_index: int, stream: Stream
) -> np.random.Generator:
    """Create the generator for one named stream of one realization.

    Streams are keyed by (realization_index, stream) rather than by the order in
    which realizations execute, so results do not depend on scheduling.

    :param master_seed: experiment-wide seed
    :param realization_index: index of the Monte Carlo realization
    :param stream: which consumer the generator is for
    :return: freshly seeded generator
    """
    seed_sequence = np.random.SeedSequence(
        entropy=master_seed, spawn_key=(realization_index, stream.value)
    )
    return np.random.default_rng(seed_sequence)


def realization_streams(
    master_seed: int, realization_index: int
) -> dict[Stream, np.random.Generator]:
    """Create every named stream of one realization.

    :param master_seed: experiment-wide seed
    :param realization_index: index of the Monte Carlo realization
    :return: mapping from stream name to its generator
    """
    return {
        stream: stream_generator(master_seed, realization_index, stream)
        for stream in Stream
    }
