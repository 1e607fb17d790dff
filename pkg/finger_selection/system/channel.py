"""Random channel realizations and user codes.

Every tap is a random sign times a lognormal magnitude. Tap energies decay
exponentially along the delay axis and sum to one on average:
E{|alpha_l|^2} = Omega_0 * exp(-decay * l) for zero-based path index l.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from finger_selection.system.streams import Stream

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from finger_selection.system.config import SystemConfig


@dataclass(frozen=True, eq=False)
class Scenario:
    """One realization of every user's channel and codes (single frame).

    :param taps: K x L array, row k holding the real tap gains of user k
    :param th_codes: K time-hopping chip offsets in {0, ..., N_T - 1}
    :param polarities: K polarity codes in {-1, +1}
    """

    taps: NDArray[np.float64]
    th_codes: NDArray[np.int64]
    polarities: NDArray[np.int64]

    @property
    def num_users(self) -> int:
        """Number of users K."""
        return int(self.taps.shape[0])

    @property
    def num_paths(self) -> int:
        """Number of paths per user L."""
        return int(self.taps.shape[1])


def _peak_power(decay: float, num_paths: int) -> float:
    """Second moment Omega_0 of the first tap; uniform profile when decay is 0."""
    if decay == 0.0:
        return 1.0 / num_paths
    return math.expm1(-decay) / math.expm1(-decay * num_paths)


def mean_profile(
    path_index: int, decay: float, log_variance: float, num_paths: int
) -> float:
    """Log-mean mu_l of the lognormal magnitude of one tap.

    Chosen so that exp(2 mu_l + 2 sigma^2) = Omega_0 exp(-decay * path_index).

    :param path_index: zero-based path index, 0 <= path_index < num_paths
    :param decay: exponential decay factor lambda >= 0
    :param log_variance: variance sigma^2 of the log-magnitude
    :param num_paths: number of paths L
    :return: mu_l
    """
    if not 0 <= path_index < num_paths:
        error_msg: str = f"path index {path_index} outside [0, {num_paths})"
        raise IndexError(error_msg)

    omega_0: float = _peak_power(decay, num_paths)
    return 0.5 * (math.log(omega_0) - decay * path_index - 2.0 * log_variance)


def power_profile(config: SystemConfig) -> NDArray[np.float64]:
    """Analytic second moments E{|alpha_l|^2} of every path.

    :param config: scenario constants
    :return: length-L vector summing to one
    """
    omega_0: float = _peak_power(config.decay, config.num_paths)
    return omega_0 * np.exp(-config.decay * np.arange(config.num_paths))


def _log_means(config: SystemConfig) -> NDArray[np.float64]:
    return np.array(
        [
            mean_profile(path, config.decay, config.log_variance, config.num_paths)
            for path in range(config.num_paths)
        ]
    )


def gen_channel(config: SystemConfig, rng: np.random.Generator) -> NDArray[np.float64]:
    """Draw the length-L tap vector of one user.

    :param config: scenario constants
    :param rng: generator consumed for signs, then magnitudes
    :return: real tap gains sign_l * m_l with ln(m_l) ~ N(mu_l, sigma^2)
    """
    signs: NDArray[np.int64] = 2 * rng.integers(0, 2, size=config.num_paths) - 1
    magnitudes: NDArray[np.float64] = rng.lognormal(
        mean=_log_means(config), sigma=math.sqrt(config.log_variance)
    )
    return signs * magnitudes


def gen_codes(
    config: SystemConfig, rng: np.random.Generator
) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    """Draw one time-hopping code and one polarity code per user.

    :param config: scenario constants
    :param rng: generator consumed for codes, then polarities
    :return: (th_codes, polarities), each of length K
    """
    th_codes: NDArray[np.int64] = rng.integers(
        0, config.alphabet_size, size=config.num_users
    )
    polarities: NDArray[np.int64] = 2 * rng.integers(0, 2, size=config.num_users) - 1
    return th_codes, polarities


def gen_scenario(
    config: SystemConfig, streams: dict[Stream, np.random.Generator]
) -> Scenario:
    """Draw a full realization from the TAPS and CODES streams.

    :param config: scenario constants
    :param streams: named generators of this realization
    :return: new Scenario
    """
    taps: NDArray[np.float64] = np.stack(
        [gen_channel(config, streams[Stream.TAPS]) for _ in range(config.num_users)]
    )
    th_codes, polarities = gen_codes(config, streams[Stream.CODES])
    return Scenario(taps=taps, th_codes=th_codes, polarities=polarities)
