"""Shared fixtures: a small experiment that runs in well under a second."""

from __future__ import annotations

import pytest

from finger_selection.harness.experiment import ExperimentSpec, parse_spec
from finger_selection.tests.documents import SMALL_EXPERIMENT


@pytest.fixture()
def small_spec_text() -> str:
    """YAML text of a K = 3, L = 10, M = 3 experiment with two Eb/N0 points."""
    return SMALL_EXPERIMENT


@pytest.fixture()
def small_spec() -> ExperimentSpec:
    """Parsed form of small_spec_text."""
    return parse_spec(SMALL_EXPERIMENT)
