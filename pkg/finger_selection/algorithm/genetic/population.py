"""Parameters and population bookkeeping of the genetic finger selection."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from finger_selection.errors import ConfigError
from finger_selection.system.sinr import Assignment

if TYPE_CHECKING:
    from finger_selection.algorithm.utils import SinrObjective

# chromosome and its fitness (linear overall SINR)
Member = tuple[Assignment, float]

MIN_PARENTS: int = 2


@dataclass(frozen=True)
class GaParams:
    """Population sizes and operator settings.

    The next population is the parents plus one child per parent, so the
    working population must hold exactly twice as many members as there are
    parents.

    :param initial_population: N_ipop, random assignments scored at start
    :param population: N_pop, members kept after the initial truncation
    :param parents: N_good, fittest members paired and mated every iteration
    :param mutations: N_mut, swap mutations per iteration (upper bound when
        random_mutations is set)
    :param iterations: N_iter, number of pair-mate-mutate rounds
    :param seed: seed of the generator used when none is supplied
    :param inject_conventional: put the conventional assignment in the
        initial population so the result is never worse than it
    :param random_mutations: draw the mutation count of every iteration
        uniformly from {0, ..., mutations}
    :param mating_retries: attempts at a child different from both parents
        before a forced mutation
    """

    initial_population: int = 32
    population: int = 16
    parents: int = 8
    mutations: int = 8
    iterations: int = 10
    seed: int = 0
    inject_conventional: bool = True
    random_mutations: bool = False
    mating_retries: int = 16

    def __post_init__(self) -> None:
        """Check the structural invariants of the population sizes."""
        if self.parents < MIN_PARENTS or self.parents % 2:
            raise ConfigError(
                "ga.parents", f"must be even and at least 2, got {self.parents}"
            )
        if self.population != 2 * self.parents:
            error_msg: str = (
                "population must equal 2 * parents (parents plus children), got "
                f"population = {self.population}, parents = {self.parents}"
            )
            raise ConfigError("ga.population", error_msg)
        if self.initial_population < self.population:
            error_msg = (
                f"must be at least population = {self.population}, "
                f"got {self.initial_population}"
            )
            raise ConfigError("ga.initial_population", error_msg)
        if self.mutations < 0:
            raise ConfigError(
                "ga.mutations", f"must be non-negative, got {self.mutations}"
            )
        if self.iterations < 0:
            raise ConfigError(
                "ga.iterations", f"must be non-negative, got {self.iterations}"
            )
        if self.seed < 0:
            raise ConfigError("ga.seed", f"must be non-negative, got {self.seed}")
        if self.mating_retries < 1:
            raise ConfigError(
                "ga.mating_retries", f"must be at least 1, got {self.mating_retries}"
            )

    @property
    def max_evaluations(self) -> int:
        """Upper bound N_ipop + N_iter (N_good + N_mut) on SINR evaluations."""
        return self.initial_population + self.iterations * (
            self.parents + self.mutations
        )


@dataclass
class ScoredPopulation:
    """Chromosomes sorted by decreasing fitness.

    The evaluation count is read from the objective that scored the members,
    so it covers initialization, mating and mutation alike.
    """

    objective: SinrObjective
    members: list[Member] = field(default_factory=list)

    @property
    def eval_count(self) -> int:
        """Overall-SINR evaluations spent on this population so far."""
        return self.objective.eval_count

    @property
    def best(self) -> Member:
        """Fittest member."""
        return self.members[0]

    def add(self, assignment: Assignment) -> Member:
        """Score an assignment and append it, without re-sorting.

        :param assignment: chromosome to add
        :return: the new member
        """
        member: Member = (assignment, self.objective(assignment))
        self.members.append(member)
        return member

    def sort(self) -> None:
        """Restore decreasing-fitness order; equal fitness keeps insertion order."""
        self.members.sort(key=lambda member: -member[1])

    def truncate(self, size: int) -> None:
        """Keep only the fittest members.

        :param size: number of members to keep
        """
        self.sort()
        del self.members[size:]
