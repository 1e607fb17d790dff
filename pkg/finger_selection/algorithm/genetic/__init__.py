"""Genetic algorithm for finger selection.

Chromosomes are finger assignments and fitness is the overall MMSE SINR.
"""

from finger_selection.algorithm.genetic.operators import (
    ga_init,
    ga_mate,
    ga_mutate,
    ga_pair,
)
from finger_selection.algorithm.genetic.population import GaParams, ScoredPopulation
from finger_selection.algorithm.genetic.selector import ga_select

__all__ = [
    "GaParams",
    "ScoredPopulation",
    "ga_init",
    "ga_mate",
    "ga_mutate",
    "ga_pair",
    "ga_select",
]
