"""Tests the collision geometry behind the interference signatures."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from finger_selection.system.channel import Scenario, gen_scenario
from finger_selection.system.config import SystemConfig
from finger_selection.system.signature import (
    Signature,
    build_signature,
    collision_indicator,
)
from finger_selection.system.streams import realization_streams

if TYPE_CHECKING:
    from numpy.typing import NDArray


def make_config(num_users: int, num_paths: int, num_chips: int) -> SystemConfig:
    """Equal-energy link with one finger."""
    return SystemConfig(
        num_users=num_users,
        num_paths=num_paths,
        num_fingers=1,
        num_chips=num_chips,
        energies=(1.0,) * num_users,
        noise_var=1.0,
    )


def double_loop_signature(scenario: Scenario) -> NDArray[np.float64]:
    """Interference matrix summed path by path over every collision."""
    num_users, num_paths = scenario.taps.shape
    mai: NDArray[np.float64] = np.zeros((num_paths, num_users))
    for path in range(num_paths):
        for user in range(1, num_users):
            for other_path in range(num_paths):
                if collision_indicator(
                    int(scenario.th_codes[0]),
                    int(scenario.th_codes[user]),
                    path,
                    other_path,
                ):
                    mai[path, user] += (
                        scenario.polarities[0]
                        * scenario.polarities[user]
                        * scenario.taps[user, other_path]
                    )
    return mai


@pytest.mark.parametrize(
    ("desired_code", "interferer_code", "path", "interferer_path", "expected"),
    [(0, 0, 2, 2, 1), (2, 0, 0, 2, 1), (0, 4, 0, 0, 0), (3, 1, 1, 2, 0)],
)
def test_collision_indicator(
    desired_code: int,
    interferer_code: int,
    path: int,
    interferer_path: int,
    expected: int,
) -> None:
    """Check paths collide exactly when they arrive in the same chip."""
    assert (
        collision_indicator(desired_code, interferer_code, path, interferer_path)
        == expected
    )


def test_single_user_has_no_interference() -> None:
    """Check K = 1 leaves the interference matrix at zero."""
    config: SystemConfig = make_config(1, 6, 10)
    scenario: Scenario = gen_scenario(config, realization_streams(0, 0))
    signature: Signature = build_signature(config, scenario)

    assert signature.mai.shape == (6, 1)
    assert not signature.mai.any()
    assert_array_equal(signature.alpha1, scenario.taps[0])


def test_equal_codes_collide_on_the_diagonal() -> None:
    """Check identical codes give mai[l, k] = d_1 d_k alpha_k[l]."""
    rng: np.random.Generator = np.random.default_rng(4)
    taps: NDArray[np.float64] = rng.normal(size=(3, 5))
    scenario = Scenario(
        taps=taps, th_codes=np.array([2, 2, 2]), polarities=np.array([-1, 1, -1])
    )
    signature: Signature = build_signature(make_config(3, 5, 10), scenario)

    assert_array_equal(signature.mai[:, 0], 0.0)
    assert_allclose(signature.mai[:, 1], -taps[1])
    assert_allclose(signature.mai[:, 2], taps[2])


@pytest.mark.parametrize("seed", range(20))
def test_matches_double_loop(seed: int) -> None:
    """Check random 3-user, L = 4 instances against brute-force summation."""
    config: SystemConfig = make_config(3, 4, 10)
    scenario: Scenario = gen_scenario(config, realization_streams(seed, 0))
    signature: Signature = build_signature(config, scenario)

    assert_allclose(signature.mai, double_loop_signature(scenario), atol=0.0)
    assert signature.num_paths == 4
    assert signature.num_users == 3


def test_at_most_one_collision_per_entry() -> None:
    """Check every (l, k) entry is a single tap of user k, or zero."""
    config: SystemConfig = make_config(5, 15, 20)
    scenario: Scenario = gen_scenario(config, realization_streams(3, 1))
    signature: Signature = build_signature(config, scenario)

    for user in range(1, 5):
        magnitudes: set[float] = set(np.abs(scenario.taps[user]).tolist())
        for value in signature.mai[:, user]:
            assert value == 0.0 or abs(value) in magnitudes


def test_polarity_flip_negates_column() -> None:
    """Check flipping an interferer's polarity flips only its column."""
    config: SystemConfig = make_config(3, 6, 12)
    scenario: Scenario = gen_scenario(config, realization_streams(8, 0))
    flipped_polarities: NDArray[np.int64] = scenario.polarities.copy()
    flipped_polarities[2] *= -1
    flipped = Scenario(
        taps=scenario.taps,
        th_codes=scenario.th_codes,
        polarities=flipped_polarities,
    )

    original: Signature = build_signature(config, scenario)
    changed: Signature = build_signature(config, flipped)

    assert_array_equal(changed.mai[:, :2], original.mai[:, :2])
    assert_array_equal(changed.mai[:, 2], -original.mai[:, 2])


def test_shape_mismatch_rejected() -> None:
    """Check a scenario drawn for another config is refused."""
    scenario: Scenario = gen_scenario(make_config(2, 4, 8), realization_streams(0, 0))

    with pytest.raises(ValueError, match="expected"):
        build_signature(make_config(3, 4, 8), scenario)
