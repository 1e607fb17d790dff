"""Tests the overall and per-path SINR of the MMSE selective Rake."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from finger_selection.system.channel import Scenario, gen_scenario
from finger_selection.system.config import SystemConfig
from finger_selection.system.signature import Signature, build_signature
from finger_selection.system.sinr import (
    Assignment,
    from_db,
    gather,
    mmse_weights,
    noise_correlation,
    overall_sinr,
    per_path_sinr,
    per_path_sinrs,
    sinr_report,
    to_db,
)
from finger_selection.system.streams import realization_streams

if TYPE_CHECKING:
    from numpy.typing import NDArray


def random_signature(
    rng: np.random.Generator, num_paths: int, num_users: int
) -> Signature:
    """Signature with Gaussian entries and an all-zero desired-user column."""
    mai: NDArray[np.float64] = rng.normal(size=(num_paths, num_users))
    mai[:, 0] = 0.0
    return Signature(alpha1=rng.normal(size=num_paths), mai=mai)


def random_assignment(
    rng: np.random.Generator, num_paths: int, num_fingers: int
) -> Assignment:
    """Uniform M-subset of the paths."""
    return Assignment.from_indices(
        rng.choice(num_paths, size=num_fingers, replace=False).tolist(), num_paths
    )


def selection_matrix(assignment: Assignment) -> NDArray[np.float64]:
    """Explicit M x L matrix whose rows are unit vectors e_i for i in p_x."""
    return np.eye(assignment.num_paths)[list(assignment.indices)]


def bracket_form_sinr(
    signature: Signature,
    assignment: Assignment,
    energies: NDArray[np.float64],
    noise_var: float,
) -> float:
    """(E_1 / s^2) a^T X^T (I + X S A^2 S^T X^T / s^2)^-1 X a with a dense inverse."""
    x: NDArray[np.float64] = selection_matrix(assignment)
    selected: NDArray[np.float64] = x @ signature.alpha1
    interference: NDArray[np.float64] = (
        x @ signature.mai @ np.diag(energies) @ signature.mai.T @ x.T
    )
    bracket: NDArray[np.float64] = (
        np.eye(assignment.num_fingers) + interference / noise_var
    )
    return float(
        energies[0] / noise_var * selected @ np.linalg.inv(bracket) @ selected
    )


def test_assignment_from_selection_vector() -> None:
    """Check x = [0 1 1 0] selects the middle two of four paths."""
    assignment: Assignment = Assignment.from_vector([0, 1, 1, 0])

    assert assignment.indices == (1, 2)
    assert assignment.num_paths == 4
    assert assignment.num_fingers == 2
    assert_array_equal(assignment.vector, [0, 1, 1, 0])
    assert assignment.unselected() == (0, 3)


def test_gather_picks_rows_in_order() -> None:
    """Check gather returns the rows of the selected paths."""
    signature: Signature = random_signature(np.random.default_rng(0), 4, 3)
    selected_alpha, selected_mai = gather(signature, Assignment((1, 2), 4))

    assert_array_equal(selected_alpha, signature.alpha1[[1, 2]])
    assert_array_equal(selected_mai, signature.mai[[1, 2]])


def test_gather_all_paths_is_identity() -> None:
    """Check the all-ones assignment returns the whole signature."""
    signature: Signature = random_signature(np.random.default_rng(1), 5, 2)
    selected_alpha, selected_mai = gather(signature, Assignment.all_paths(5))

    assert_array_equal(selected_alpha, signature.alpha1)
    assert_array_equal(selected_mai, signature.mai)


@pytest.mark.parametrize("seed", range(10))
def test_gather_matches_selection_matrix(seed: int) -> None:
    """Check gathering equals multiplying by the explicit selection matrix."""
    rng: np.random.Generator = np.random.default_rng(seed)
    signature: Signature = random_signature(rng, 9, 4)
    assignment: Assignment = random_assignment(rng, 9, 4)
    selected_alpha, selected_mai = gather(signature, assignment)

    assert_allclose(selected_alpha, selection_matrix(assignment) @ signature.alpha1)
    assert_allclose(selected_mai, selection_matrix(assignment) @ signature.mai)


def test_gather_rejects_other_path_count() -> None:
    """Check an assignment over a different L is refused."""
    signature: Signature = random_signature(np.random.default_rng(2), 5, 2)

    with pytest.raises(IndexError, match="signature has 5"):
        gather(signature, Assignment((0, 1), 6))


@pytest.mark.parametrize(
    ("indices", "num_paths", "error"),
    [
        ((), 4, ValueError),
        ((2, 1), 4, ValueError),
        ((1, 1), 4, ValueError),
        ((0, 4), 4, IndexError),
        ((-1, 2), 4, IndexError),
    ],
)
def test_invalid_assignments_rejected(
    indices: tuple[int, ...], num_paths: int, error: type[Exception]
) -> None:
    """Check assignments must be non-empty, increasing and inside [0, L)."""
    with pytest.raises(error):
        Assignment(indices, num_paths)


def test_from_indices_sorts_and_rejects_duplicates() -> None:
    """Check indices in any order are accepted and duplicates are not."""
    assert Assignment.from_indices([5, 0, 3], 6).indices == (0, 3, 5)
    with pytest.raises(ValueError, match="duplicate"):
        Assignment.from_indices([1, 1, 2], 6)


def test_from_vector_rejects_non_binary() -> None:
    """Check a selection vector may only hold zeros and ones."""
    with pytest.raises(ValueError, match="binary"):
        Assignment.from_vector([0, 2, 1])


def test_correlation_without_interferers() -> None:
    """Check R = sigma_n^2 I when there is no interference."""
    correlation: NDArray[np.float64] = noise_correlation(
        np.zeros((3, 2)), (1.0, 1.0), 0.25
    )

    assert_array_equal(correlation, 0.25 * np.eye(3))


def test_correlation_single_finger() -> None:
    """Check M = 1 gives sum_k E_k mai[l, k]^2 + sigma_n^2."""
    row: NDArray[np.float64] = np.array([[0.0, 0.5, -2.0]])
    correlation: NDArray[np.float64] = noise_correlation(row, (1.0, 4.0, 0.5), 0.1)

    assert correlation.shape == (1, 1)
    assert correlation[0, 0] == pytest.approx(4.0 * 0.25 + 0.5 * 4.0 + 0.1)


def test_correlation_is_positive_definite() -> None:
    """Check R is symmetric and has a Cholesky factor."""
    rng: np.random.Generator = np.random.default_rng(3)
    correlation: NDArray[np.float64] = noise_correlation(
        rng.normal(size=(3, 3)), (1.0, 2.0, 3.0), 0.01
    )

    assert_allclose(correlation, correlation.T, atol=1e-12)
    np.linalg.cholesky(correlation)


def test_matched_filter_bound() -> None:
    """Check no MAI, E_1 / sigma_n^2 = 10, taps {0.6, 0.8} gives SINR = 10."""
    signature = Signature(alpha1=np.array([0.6, 0.8, 0.1]), mai=np.zeros((3, 2)))

    assert overall_sinr(
        signature, Assignment((0, 1), 3), (1.0, 1.0), 0.1
    ) == pytest.approx(10.0, rel=1e-12)


def test_weights_without_interference() -> None:
    """Check theta = X alpha / sigma_n^2 when there is no MAI."""
    signature = Signature(alpha1=np.array([0.6, -0.8, 0.1]), mai=np.zeros((3, 2)))

    assert_allclose(
        mmse_weights(signature, Assignment((0, 1), 3), (1.0, 1.0), 0.5),
        np.array([1.2, -1.6]),
    )


@pytest.mark.parametrize("seed", range(10))
def test_single_finger_reduces_to_path_sinr(seed: int) -> None:
    """Check the overall SINR of one finger equals its per-path SINR."""
    rng: np.random.Generator = np.random.default_rng(seed)
    signature: Signature = random_signature(rng, 8, 4)
    energies: NDArray[np.float64] = rng.uniform(0.5, 10.0, size=4)

    for path in range(8):
        assert overall_sinr(
            signature, Assignment((path,), 8), energies, 0.3
        ) == pytest.approx(per_path_sinr(signature, path, energies, 0.3), rel=1e-12)
        weights: NDArray[np.float64] = mmse_weights(
            signature, Assignment((path,), 8), energies, 0.3
        )
        denominator: float = float(signature.mai[path] ** 2 @ energies) + 0.3
        assert weights[0] == pytest.approx(
            signature.alpha1[path] / denominator, rel=1e-12
        )


def test_bracket_form_agrees_on_random_instances() -> None:
    """Check 10^4 random pairs against the identity-plus-interference form."""
    rng: np.random.Generator = np.random.default_rng(14)
    for _ in range(10_000):
        num_paths: int = int(rng.integers(1, 12))
        num_users: int = int(rng.integers(1, 6))
        signature: Signature = random_signature(rng, num_paths, num_users)
        assignment: Assignment = random_assignment(
            rng, num_paths, int(rng.integers(1, num_paths + 1))
        )
        energies: NDArray[np.float64] = rng.uniform(0.1, 10.0, size=num_users)
        noise_var: float = float(10.0 ** rng.uniform(-2.0, 1.0))

        assert overall_sinr(
            signature, assignment, energies, noise_var
        ) == pytest.approx(
            bracket_form_sinr(signature, assignment, energies, noise_var), rel=1e-9
        )


def test_literal_formula_small_instance() -> None:
    """Check L = 6, K = 3, M = 2 against E_1 (X a)^T R^-1 (X a) with a dense inverse."""
    rng: np.random.Generator = np.random.default_rng(21)
    signature: Signature = random_signature(rng, 6, 3)
    assignment = Assignment((1, 4), 6)
    energies: NDArray[np.float64] = np.array([1.0, 3.0, 0.5])
    x: NDArray[np.float64] = selection_matrix(assignment)
    selected: NDArray[np.float64] = x @ signature.alpha1
    correlation: NDArray[np.float64] = (
        x @ signature.mai @ np.diag(energies) @ signature.mai.T @ x.T + 0.2 * np.eye(2)
    )

    assert overall_sinr(signature, assignment, energies, 0.2) == pytest.approx(
        float(selected @ np.linalg.inv(correlation) @ selected), rel=1e-10
    )


def test_weights_solve_the_normal_equations() -> None:
    """Check R theta - X alpha is negligible."""
    rng: np.random.Generator = np.random.default_rng(5)
    signature: Signature = random_signature(rng, 10, 5)
    assignment: Assignment = random_assignment(rng, 10, 6)
    energies: NDArray[np.float64] = rng.uniform(0.5, 5.0, size=5)
    selected_alpha, selected_mai = gather(signature, assignment)

    weights: NDArray[np.float64] = mmse_weights(signature, assignment, energies, 0.05)
    residual: NDArray[np.float64] = (
        noise_correlation(selected_mai, energies, 0.05) @ weights - selected_alpha
    )

    assert np.linalg.norm(residual) <= 1e-10 * np.linalg.norm(selected_alpha)


def test_report_matches_separate_calls() -> None:
    """Check sinr_report carries the same SINR and weights as the wrappers."""
    rng: np.random.Generator = np.random.default_rng(6)
    signature: Signature = random_signature(rng, 7, 3)
    assignment = Assignment((0, 2, 5), 7)
    energies: tuple[float, ...] = (1.0, 2.0, 2.0)

    report = sinr_report(signature, assignment, energies, 0.1)

    assert report.sinr_linear == overall_sinr(signature, assignment, energies, 0.1)
    assert_array_equal(
        report.weights, mmse_weights(signature, assignment, energies, 0.1)
    )


def test_sinr_decreases_with_noise() -> None:
    """Check the overall SINR strictly falls as sigma_n^2 grows."""
    rng: np.random.Generator = np.random.default_rng(7)
    signature: Signature = random_signature(rng, 10, 4)
    assignment: Assignment = random_assignment(rng, 10, 4)
    sinrs: list[float] = [
        overall_sinr(signature, assignment, (1.0,) * 4, noise_var)
        for noise_var in (0.01, 0.1, 1.0, 10.0)
    ]

    assert all(a > b for a, b in zip(sinrs, sinrs[1:]))


@pytest.mark.parametrize("seed", range(20))
def test_superset_never_loses(seed: int) -> None:
    """Check adding a finger never lowers the overall SINR."""
    rng: np.random.Generator = np.random.default_rng(seed)
    signature: Signature = random_signature(rng, 12, 5)
    energies: NDArray[np.float64] = rng.uniform(0.5, 10.0, size=5)
    order: list[int] = rng.permutation(12).tolist()

    sinrs: list[float] = [
        overall_sinr(
            signature, Assignment.from_indices(order[:size], 12), energies, 0.1
        )
        for size in range(1, 13)
    ]

    assert all(b >= a * (1.0 - 1e-12) for a, b in zip(sinrs, sinrs[1:]))


def test_polarity_flip_leaves_sinr_unchanged() -> None:
    """Check negating an interferer's polarity changes no SINR value."""
    config = SystemConfig(
        num_users=5,
        num_paths=15,
        num_fingers=5,
        num_chips=20,
        energies=(1.0, 10.0, 10.0, 10.0, 10.0),
        noise_var=0.1,
    )
    scenario: Scenario = gen_scenario(config, realization_streams(17, 0))
    polarities: NDArray[np.int64] = scenario.polarities.copy()
    polarities[1:] *= -1
    flipped = Scenario(
        taps=scenario.taps, th_codes=scenario.th_codes, polarities=polarities
    )
    original: Signature = build_signature(config, scenario)
    changed: Signature = build_signature(config, flipped)
    assignment = Assignment((0, 3, 4, 9, 12), 15)

    assert overall_sinr(
        changed, assignment, config.energies, config.noise_var
    ) == pytest.approx(
        overall_sinr(original, assignment, config.energies, config.noise_var),
        rel=1e-12,
    )
    assert_allclose(
        per_path_sinrs(changed, config.energies, config.noise_var),
        per_path_sinrs(original, config.energies, config.noise_var),
        rtol=1e-12,
    )


def test_zero_interferer_energy_gives_matched_filter() -> None:
    """Check silencing the interferers leaves (E_1 / sigma_n^2) sum alpha_l^2."""
    rng: np.random.Generator = np.random.default_rng(8)
    signature: Signature = random_signature(rng, 9, 4)
    assignment = Assignment((1, 2, 7), 9)

    assert overall_sinr(
        signature, assignment, (2.0, 0.0, 0.0, 0.0), 0.5
    ) == pytest.approx(
        2.0 / 0.5 * float(np.sum(signature.alpha1[[1, 2, 7]] ** 2)), rel=1e-12
    )


def test_per_path_sinr_examples() -> None:
    """Check the no-MAI value and a zero tap."""
    signature = Signature(alpha1=np.array([0.5, 0.0]), mai=np.zeros((2, 3)))

    assert per_path_sinr(signature, 0, (2.0, 1.0, 1.0), 0.1) == pytest.approx(5.0)
    assert per_path_sinr(signature, 1, (2.0, 1.0, 1.0), 0.1) == 0.0
    with pytest.raises(IndexError):
        per_path_sinr(signature, 2, (2.0, 1.0, 1.0), 0.1)


def test_per_path_sinrs_match_scalar_sum() -> None:
    """Check the vectorized per-path SINRs against a direct summation."""
    rng: np.random.Generator = np.random.default_rng(9)
    signature: Signature = random_signature(rng, 11, 4)
    energies: list[float] = [1.0, 2.0, 0.5, 4.0]

    expected: list[float] = [
        energies[0]
        * signature.alpha1[path] ** 2
        / (
            sum(energies[k] * signature.mai[path, k] ** 2 for k in range(4))
            + 0.2
        )
        for path in range(11)
    ]

    assert_allclose(per_path_sinrs(signature, energies, 0.2), expected, rtol=1e-12)


def test_db_conversions() -> None:
    """Check 10 log10 and its inverse."""
    assert to_db(100.0) == pytest.approx(20.0)
    assert from_db(-3.0) == pytest.approx(0.5011872336)
    assert from_db(to_db(7.25)) == pytest.approx(7.25, rel=1e-12)
