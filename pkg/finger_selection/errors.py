"""Exceptions raised by the finger selection simulator."""

from __future__ import annotations


class FingerSelectionError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(FingerSelectionError, ValueError):
    """A configuration value is missing, unknown, or violates an invariant."""

    def __init__(self, field: str, message: str) -> None:
        """Store the offending key path alongside the message.

        :param field: dotted key path of the offending value, e.g. "ga.population"
        :param message: description of the violated constraint
        """
        super().__init__(f"{field}: {message}")
        self.field: str = field
        self.message: str = message


class EnumerationCapError(FingerSelectionError, RuntimeError):
    """Exhaustive search was asked to enumerate more subsets than allowed."""

    def __init__(self, num_subsets: int, cap: int) -> None:
        """Record how many subsets were requested and the configured cap.

        :param num_subsets: C(L, M) for the refused search
        :param cap: largest number of subsets that may be enumerated
        """
        super().__init__(
            f"exhaustive search refused: C(L, M) = {num_subsets} exceeds cap {cap}"
        )
        self.num_subsets: int = num_subsets
        self.cap: int = cap


class PopulationError(FingerSelectionError, ValueError):
    """The genetic algorithm cannot draw the requested initial population."""
