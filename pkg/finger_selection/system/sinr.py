"""Output SINR of an MMSE selective-Rake receiver for a given finger assignment.

For the selected paths p_x, with a = alpha1[p_x] and S = mai[p_x]:
    R = S diag(E) S^T + sigma_n^2 I
    theta = R^-1 a
    SINR = E_1 a^T R^-1 a
The selection matrix is never formed; rows are gathered by index instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import cho_factor, cho_solve

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from numpy.typing import NDArray
    from typing_extensions import Self

    from finger_selection.system.signature import Signature


@dataclass(frozen=True)
class Assignment:
    """Set of paths assigned to Rake fingers.

    :param indices: strictly increasing zero-based path indices p_x
    :param num_paths: total number of paths L, the length of the binary vector x
    """

    indices: tuple[int, ...]
    num_paths: int

    def __post_init__(self) -> None:
        """Normalize indices to plain ints and check they form a valid subset."""
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if not self.indices:
            error_msg: str = "an assignment needs at least one finger"
            raise ValueError(error_msg)
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            error_msg = f"indices must be strictly increasing, got {self.indices}"
            raise ValueError(error_msg)
        if self.indices[0] < 0 or self.indices[-1] >= self.num_paths:
            error_msg = f"indices {self.indices} outside [0, {self.num_paths})"
            raise IndexError(error_msg)

    @classmethod
    def from_indices(cls, indices: Iterable[int], num_paths: int) -> Self:
        """Build an assignment from path indices in any order.

        :param indices: distinct zero-based path indices
        :param num_paths: total number of paths L
        :return: new Assignment
        """
        ordered: list[int] = sorted(int(i) for i in indices)
        if len(set(ordered)) != len(ordered):
            error_msg: str = f"duplicate path indices in {ordered}"
            raise ValueError(error_msg)
        return cls(tuple(ordered), num_paths)

    @classmethod
    def from_vector(cls, x: Sequence[int] | NDArray[np.int64]) -> Self:
        """Build an assignment from a binary selection vector.

        :param x: length-L vector of zeros and ones
        :return: new Assignment
        """
        vector: NDArray[np.int64] = np.asarray(x)
        if not np.isin(vector, (0, 1)).all():
            error_msg: str = f"selection vector must be binary, got {vector.tolist()}"
            raise ValueError(error_msg)
        return cls(tuple(np.flatnonzero(vector).tolist()), int(vector.shape[0]))

    @classmethod
    def all_paths(cls, num_paths: int) -> Self:
        """Assignment combining every path (all-Rake)."""
        return cls(tuple(range(num_paths)), num_paths)

    @property
    def num_fingers(self) -> int:
        """Number of selected paths M."""
        return len(self.indices)

    @property
    def vector(self) -> NDArray[np.int64]:
        """Binary selection vector x."""
        x: NDArray[np.int64] = np.zeros(self.num_paths, dtype=np.int64)
        x[list(self.indices)] = 1
        return x

    def unselected(self) -> tuple[int, ...]:
        """Path indices not assigned to any finger."""
        chosen: set[int] = set(self.indices)
        return tuple(i for i in range(self.num_paths) if i not in chosen)


@dataclass(frozen=True, eq=False)
class SinrReport:
    """Overall SINR of an assignment together with its MMSE combining weights."""

    sinr_linear: float
    weights: NDArray[np.float64]


def to_db(value: float) -> float:
    """Convert a linear power ratio to dB."""
    return 10.0 * math.log10(value)


def from_db(value_db: float) -> float:
    """Convert a power ratio in dB to linear scale."""
    return 10.0 ** (value_db / 10.0)


def gather(
    signature: Signature, assignment: Assignment
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Pick the rows of the signature belonging to the assigned paths.

    :param signature: per-path signature of the desired user
    :param assignment: selected paths, in increasing order
    :return: (selected desired taps of length M, selected M x K interference rows)
    """
    if assignment.num_paths != signature.num_paths:
        error_msg: str = (
            f"assignment is over {assignment.num_paths} paths, "
            f"signature has {signature.num_paths}"
        )
        raise IndexError(error_msg)

    rows: list[int] = list(assignment.indices)
    return signature.alpha1[rows], signature.mai[rows]


def noise_correlation(
    selected_mai: NDArray[np.float64],
    energies: Sequence[float] | NDArray[np.float64],
    noise_var: float,
) -> NDArray[np.float64]:
    """Correlation matrix of interference plus thermal noise on the fingers.

    :param selected_mai: M x K interference rows of the selected paths
    :param energies: length-K bit energies
    :param noise_var: thermal noise variance sigma_n^2
    :return: symmetric positive definite M x M matrix R
    """
    weighted: NDArray[np.float64] = selected_mai * np.asarray(energies)
    correlation: NDArray[np.float64] = weighted @ selected_mai.T
    correlation += noise_var * np.eye(selected_mai.shape[0])
    return correlation


def sinr_report(
    signature: Signature,
    assignment: Assignment,
    energies: Sequence[float] | NDArray[np.float64],
    noise_var: float,
) -> SinrReport:
    """Overall SINR and MMSE weights from one Cholesky factorization.

    :param signature: per-path signature of the desired user
    :param assignment: selected paths
    :param energies: length-K bit energies, energies[0] being E_1
    :param noise_var: thermal noise variance sigma_n^2
    :return: SinrReport with E_1 a^T R^-1 a and theta = R^-1 a
    """
    selected_alpha, selected_mai = gather(signature, assignment)
    correlation: NDArray[np.float64] = noise_correlation(
        selected_mai, energies, noise_var
    )
    weights: NDArray[np.float64] = cho_solve(
        cho_factor(correlation, lower=True, check_finite=False),
        selected_alpha,
        check_finite=False,
    )
    sinr: float = float(energies[0]) * float(selected_alpha @ weights)
    return SinrReport(sinr_linear=max(sinr, 0.0), weights=weights)


def mmse_weights(
    signature: Signature,
    assignment: Assignment,
    energies: Sequence[float] | NDArray[np.float64],
    noise_var: float,
) -> NDArray[np.float64]:
    """MMSE combining weights theta = R^-1 a for the selected fingers."""
    return sinr_report(signature, assignment, energies, noise_var).weights


def overall_sinr(
    signature: Signature,
    assignment: Assignment,
    energies: Sequence[float] | NDArray[np.float64],
    noise_var: float,
) -> float:
    """Post-combining SINR of the MMSE receiver using the assigned fingers."""
    return sinr_report(signature, assignment, energies, noise_var).sinr_linear


def per_path_sinrs(
    signature: Signature,
    energies: Sequence[float] | NDArray[np.float64],
    noise_var: float,
) -> NDArray[np.float64]:
    """SINR of every path taken on its own.

    :param signature: per-path signature of the desired user
    :param energies: length-K bit energies
    :param noise_var: thermal noise variance sigma_n^2
    :return: length-L vector E_1 alpha_l^2 / (sum_k E_k mai[l, k]^2 + sigma_n^2)
    """
    energy: NDArray[np.float64] = np.asarray(energies, dtype=np.float64)
    interference: NDArray[np.float64] = signature.mai**2 @ energy
    return energy[0] * signature.alpha1**2 / (interference + noise_var)


def per_path_sinr(
    signature: Signature,
    path: int,
    energies: Sequence[float] | NDArray[np.float64],
    noise_var: float,
) -> float:
    """SINR of a single path.

    :param signature: per-path signature of the desired user
    :param path: zero-based path index
    :param energies: length-K bit energies
    :param noise_var: thermal noise variance sigma_n^2
    :return: E_1 alpha_l^2 / (sum_k E_k mai[l, k]^2 + sigma_n^2)
    """
    if not 0 <= path < signature.num_paths:
        error_msg: str = f"path index {path} outside [0, {signature.num_paths})"
        raise IndexError(error_msg)

    energy: NDArray[np.float64] = np.asarray(energies, dtype=np.float64)
    row: NDArray[np.float64] = signature.mai[path]
    interference: float = float(row**2 @ energy)
    return float(energy[0] * signature.alpha1[path] ** 2 / (interference + noise_var))
