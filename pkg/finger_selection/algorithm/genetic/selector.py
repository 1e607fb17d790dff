"""Genetic finger selection driven by the exact overall SINR."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from finger_selection.algorithm.genetic.operators import (
    ga_init,
    ga_mate,
    ga_mutate,
    ga_pair,
)
from finger_selection.algorithm.selection import Algorithm, SelectionResult
from finger_selection.algorithm.utils import make_assignment

if TYPE_CHECKING:
    from finger_selection.algorithm.genetic.population import (
        GaParams,
        Member,
        ScoredPopulation,
    )
    from finger_selection.system.config import SystemConfig
    from finger_selection.system.signature import Signature


def _next_generation(
    population: ScoredPopulation,
    config: SystemConfig,
    params: GaParams,
    rng: np.random.Generator,
) -> None:
    """Replace the population by its parents and their freshly scored children."""
    parents: list[Member] = population.members[: params.parents]
    pairs: list[tuple[Member, Member]] = ga_pair(population, params, rng)

    population.members = list(parents)
    for (parent_a, _), (parent_b, _) in pairs:
        for child in ga_mate(parent_a, parent_b, rng, params.mating_retries):
            population.add(make_assignment(child.indices, config))
    population.sort()


def ga_select(
    signature: Signature,
    config: SystemConfig,
    params: GaParams,
    rng: np.random.Generator | None = None,
) -> SelectionResult:
    """Run the genetic search for a fixed number of iterations.

    Method:
        1. Score N_ipop distinct random assignments, keep the fittest N_pop.
        2. Pair the fittest N_good by SINR-weighted draws and mate every pair,
            so the new population is the N_good parents plus N_good children.
        3. Swap-mutate random members except the best one.
        4. Repeat 2-3 N_iter times and return the best assignment.

    At most N_ipop + N_iter (N_good + N_mut) overall SINR evaluations are spent.

    :param signature: per-path signature of the desired user
    :param config: scenario constants
    :param params: population sizes and operator settings
    :param rng: generator to use; a new one seeded with params.seed otherwise
    :return: best assignment with its SINR, eval_count and per-iteration best
    """
    generator: np.random.Generator = (
        np.random.default_rng(params.seed) if rng is None else rng
    )
    population: ScoredPopulation = ga_init(signature, config, params, generator)
    history: list[float] = [population.best[1]]
    evals: list[int] = [population.eval_count]

    for _ in range(params.iterations):
        _next_generation(population, config, params, generator)
        num_mutations: int = (
            int(generator.integers(0, params.mutations + 1))
            if params.random_mutations
            else params.mutations
        )
        ga_mutate(population, params, generator, num_mutations)
        history.append(population.best[1])
        evals.append(population.eval_count)

    best_assignment, best_sinr = population.best
    return SelectionResult(
        algorithm=Algorithm.GA,
        assignment=best_assignment,
        sinr_linear=best_sinr,
        eval_count=population.eval_count,
        best_history=tuple(history),
        eval_history=tuple(evals),
    )
