"""Initialization, pairing, mating and mutation steps of the genetic search."""

from __future__ import annotations

import itertools
from typing import TYPE_CHECKING

import numpy as np
from loguru import logger

from finger_selection.algorithm.conventional import conventional_select
from finger_selection.algorithm.genetic.population import ScoredPopulation
from finger_selection.algorithm.utils import (
    SinrObjective,
    random_assignment,
    swap_mutation,
)
from finger_selection.errors import PopulationError
from finger_selection.system.sinr import Assignment

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from finger_selection.algorithm.genetic.population import GaParams, Member
    from finger_selection.system.config import SystemConfig
    from finger_selection.system.signature import Signature


def _distinct_assignments(
    config: SystemConfig,
    count: int,
    rng: np.random.Generator,
    exclude: set[Assignment],
) -> list[Assignment]:
    """Draw count distinct uniform M-subsets that are not in exclude."""
    # rejection sampling stalls when most subsets are needed; enumerate instead
    if 2 * (count + len(exclude)) > config.num_subsets:
        candidates: list[Assignment] = [
            Assignment(indices, config.num_paths)
            for indices in itertools.combinations(
                range(config.num_paths), config.num_fingers
            )
        ]
        candidates = [c for c in candidates if c not in exclude]
        picks: NDArray[np.int64] = rng.choice(
            len(candidates), size=count, replace=False
        )
        return [candidates[int(i)] for i in picks]

    drawn: list[Assignment] = []
    seen: set[Assignment] = set(exclude)
    while len(drawn) < count:
        assignment: Assignment = random_assignment(config, rng)
        if assignment not in seen:
            seen.add(assignment)
            drawn.append(assignment)
    return drawn


def ga_init(
    signature: Signature,
    config: SystemConfig,
    params: GaParams,
    rng: np.random.Generator,
) -> ScoredPopulation:
    """Score N_ipop distinct random assignments and keep the fittest N_pop.

    When params.inject_conventional is set, the conventional assignment takes
    one of the N_ipop slots.

    :param signature: per-path signature of the desired user
    :param config: scenario constants
    :param params: population sizes
    :param rng: generator for the random assignments
    :return: population of N_pop members, sorted, eval_count = N_ipop
    """
    if params.initial_population > config.num_subsets:
        error_msg: str = (
            f"cannot draw {params.initial_population} distinct assignments: only "
            f"C({config.num_paths}, {config.num_fingers}) = {config.num_subsets} exist"
        )
        raise PopulationError(error_msg)

    seeded: list[Assignment] = (
        [conventional_select(signature, config)] if params.inject_conventional else []
    )
    fresh: list[Assignment] = _distinct_assignments(
        config, params.initial_population - len(seeded), rng, set(seeded)
    )

    population = ScoredPopulation(objective=SinrObjective(signature, config))
    for assignment in [*seeded, *fresh]:
        population.add(assignment)
    population.truncate(params.population)
    return population


def _draw_without_replacement(
    candidates: list[Member], rng: np.random.Generator
) -> Member:
    """Remove and return one member, chosen with probability proportional to SINR."""
    weights: NDArray[np.float64] = np.array([sinr for _, sinr in candidates])
    total: float = float(weights.sum())
    probabilities: NDArray[np.float64] | None = (
        weights / total if total > 0.0 else None
    )
    return candidates.pop(int(rng.choice(len(candidates), p=probabilities)))


def ga_pair(
    population: ScoredPopulation, params: GaParams, rng: np.random.Generator
) -> list[tuple[Member, Member]]:
    """Arrange the N_good fittest members into disjoint pairs.

    Truncation decides who the parents are; every pair is then formed by two
    successive SINR-proportional draws from the parents not yet paired.

    :param population: sorted population holding at least N_good members
    :param params: provides N_good
    :param rng: generator for the weighted draws
    :return: N_good / 2 parent pairs in drawing order
    """
    remaining: list[Member] = list(population.members[: params.parents])
    pairs: list[tuple[Member, Member]] = []
    while remaining:
        first: Member = _draw_without_replacement(remaining, rng)
        second: Member = _draw_without_replacement(remaining, rng)
        pairs.append((first, second))
    return pairs


def _draw_child(
    pool: NDArray[np.int64],
    num_fingers: int,
    num_paths: int,
    rng: np.random.Generator,
) -> Assignment:
    """Draw fingers one by one from the pooled parent indices, skipping repeats."""
    chosen: list[int] = []
    while len(chosen) < num_fingers:
        index: int = int(pool[rng.integers(len(pool))])
        if index not in chosen:
            chosen.append(index)
    return Assignment.from_indices(chosen, num_paths)


def _forced_child(
    child: Assignment,
    parents: tuple[Assignment, Assignment],
    rng: np.random.Generator,
) -> Assignment:
    """One swap away from child, and equal to neither parent when possible."""
    candidates: list[Assignment] = [
        Assignment.from_indices(
            [*(i for i in child.indices if i != removed), added], child.num_paths
        )
        for removed in child.indices
        for added in child.unselected()
    ]
    allowed: list[Assignment] = [c for c in candidates if c not in parents]
    if not allowed:
        return swap_mutation(child, rng)
    return allowed[int(rng.integers(len(allowed)))]


def ga_mate(
    parent_a: Assignment,
    parent_b: Assignment,
    rng: np.random.Generator,
    retries: int = 16,
) -> tuple[Assignment, Assignment]:
    """Produce two children from the concatenated index vectors of two parents.

    A path chosen by both parents appears twice in the pool and so is more
    likely to be inherited. A child equal to either parent is redrawn; after
    the last retry it is replaced by a random single swap of itself that
    differs from both parents.

    :param parent_a: first parent
    :param parent_b: second parent, same number of fingers and paths
    :param rng: generator for the draws
    :param retries: attempts per child before forcing a mutation
    :return: the two children
    """
    if parent_a.num_fingers != parent_b.num_fingers:
        error_msg: str = (
            f"parents have {parent_a.num_fingers} and {parent_b.num_fingers} fingers"
        )
        raise ValueError(error_msg)

    pool: NDArray[np.int64] = np.array([*parent_a.indices, *parent_b.indices])
    children: list[Assignment] = []
    for _ in range(2):
        child: Assignment = parent_a
        for _ in range(retries):
            child = _draw_child(pool, parent_a.num_fingers, parent_a.num_paths, rng)
            if child not in (parent_a, parent_b):
                break
        else:
            logger.debug("mating retries exhausted for {}, mutating", child.indices)
            child = _forced_child(child, (parent_a, parent_b), rng)
        children.append(child)

    return children[0], children[1]


def ga_mutate(
    population: ScoredPopulation,
    params: GaParams,
    rng: np.random.Generator,
    count: int | None = None,
) -> ScoredPopulation:
    """Apply swap mutations to random members other than the current best.

    The best member is re-identified after every mutation.

    :param population: sorted population, modified in place
    :param params: provides the default mutation count N_mut
    :param rng: generator choosing members and swapped positions
    :param count: mutations to apply instead of params.mutations
    :return: the same population
    """
    num_mutations: int = params.mutations if count is None else count
    if len(population.members) <= 1:
        return population

    for _ in range(num_mutations):
        target: int = int(rng.integers(1, len(population.members)))
        assignment: Assignment = population.members[target][0]
        if not assignment.unselected():
            logger.debug("every path already has a finger, mutation skipped")
            continue

        mutated: Assignment = swap_mutation(assignment, rng)
        population.members[target] = (mutated, population.objective(mutated))
        population.sort()

    return population
