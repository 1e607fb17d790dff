"""Scenario constants of a synchronous multiuser IR-UWB link."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum

from finger_selection.errors import ConfigError


class EnergyProfile(str, Enum):
    """How bit energies are distributed across users."""

    EQUAL = "equal"
    NEAR_FAR = "near_far"


def profile_energies(
    profile: EnergyProfile, num_users: int, interferer_gain_db: float = 10.0
) -> tuple[float, ...]:
    """Build the per-user bit energies for an energy profile.

    The desired user always has unit energy.

    :param profile: equal energies, or interferers boosted by interferer_gain_db
    :param num_users: number of users K, desired user included
    :param interferer_gain_db: power of every interferer relative to the desired
        user, only used by the near-far profile
    :return: tuple of K linear bit energies
    """
    if profile is EnergyProfile.EQUAL:
        return (1.0,) * num_users

    interferer_energy: float = 10.0 ** (interferer_gain_db / 10.0)
    return (1.0,) + (interferer_energy,) * (num_users - 1)


@dataclass(frozen=True)
class SystemConfig:
    """All constants defining one simulated link.

    The time-hopping alphabet defaults to the largest size that avoids
    inter-frame interference, num_chips - num_paths.
    """

    num_users: int
    num_paths: int
    num_fingers: int
    num_chips: int
    energies: tuple[float, ...]
    noise_var: float
    decay: float = 0.1
    log_variance: float = 0.5
    th_alphabet_size: int | None = None

    def __post_init__(self) -> None:
        """Resolve the default alphabet size and check every invariant."""
        object.__setattr__(self, "energies", tuple(float(e) for e in self.energies))
        if self.th_alphabet_size is None:
            object.__setattr__(
                self, "th_alphabet_size", self.num_chips - self.num_paths
            )
        self._validate()

    def _validate(self) -> None:
        if self.num_users < 1:
            raise ConfigError("num_users", f"must be at least 1, got {self.num_users}")
        if self.num_paths < 1:
            raise ConfigError("num_paths", f"must be at least 1, got {self.num_paths}")
        if not 1 <= self.num_fingers <= self.num_paths:
            error_msg: str = (
                f"must satisfy 1 <= M <= L = {self.num_paths}, got {self.num_fingers}"
            )
            raise ConfigError("num_fingers", error_msg)
        if not 1 <= self.alphabet_size <= self.num_chips - self.num_paths:
            error_msg = (
                "no-IFI constraint violated: need 1 <= N_T <= N_c - L = "
                f"{self.num_chips - self.num_paths}, got N_T = {self.alphabet_size}"
            )
            raise ConfigError("th_alphabet_size", error_msg)
        if len(self.energies) != self.num_users:
            error_msg = (
                f"expected {self.num_users} energies (one per user), "
                f"got {len(self.energies)}"
            )
            raise ConfigError("energies", error_msg)
        if any(not energy > 0.0 for energy in self.energies):
            raise ConfigError("energies", "every bit energy must be strictly positive")
        if not self.noise_var > 0.0:
            raise ConfigError(
                "noise_var", f"must be strictly positive, got {self.noise_var}"
            )
        if not self.decay >= 0.0:
            raise ConfigError("decay", f"must be non-negative, got {self.decay}")
        if not self.log_variance >= 0.0:
            raise ConfigError(
                "log_variance", f"must be non-negative, got {self.log_variance}"
            )

    @property
    def alphabet_size(self) -> int:
        """Time-hopping alphabet size N_T after defaulting."""
        return (
            self.num_chips - self.num_paths
            if self.th_alphabet_size is None
            else self.th_alphabet_size
        )

    @property
    def desired_energy(self) -> float:
        """Bit energy E_1 of the desired user."""
        return self.energies[0]

    @property
    def num_subsets(self) -> int:
        """Number of distinct finger assignments, C(L, M)."""
        return math.comb(self.num_paths, self.num_fingers)

    @property
    def ebn0_db(self) -> float:
        """Operating point E_1 / sigma_n^2 in dB."""
        return 10.0 * math.log10(self.desired_energy / self.noise_var)

    def with_ebn0_db(self, ebn0_db: float) -> SystemConfig:
        """Copy of this config whose noise variance realizes the given Eb/N0.

        :param ebn0_db: E_1 / sigma_n^2 in dB
        :return: new config with noise_var = E_1 * 10^(-ebn0_db / 10)
        """
        noise_var: float = self.desired_energy * 10.0 ** (-ebn0_db / 10.0)
        return dataclasses.replace(self, noise_var=noise_var)

    def with_fingers(self, num_fingers: int) -> SystemConfig:
        """Copy of this config with a different finger count.

        :param num_fingers: new M, validated against L
        :return: new config
        """
        return dataclasses.replace(self, num_fingers=num_fingers)
