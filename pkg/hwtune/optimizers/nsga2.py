from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from hwtune.space import SearchSpace, decode

from .base import BaseOptimizer, ObjectiveSpec, Observation, Proposal
from .exceptions import BudgetTooSmallError, OptimizerError
from .pareto import (
    ParetoFront,
    crowding_distance,
    non_dominated_sort,
    pareto_front,
    score_matrix,
)


CROSSOVER_PROBABILITY = 0.9
CROSSOVER_ETA = 15.0
MUTATION_ETA = 20.0

Individual = Tuple[np.ndarray, Observation]


def simulated_binary_crossover(
    a: np.ndarray, b: np.ndarray, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    first, second = a.copy(), b.copy()
    if rng.random() > CROSSOVER_PROBABILITY:
        return first, second
    for i in range(len(a)):
        if rng.random() > 0.5:
            continue
        u = rng.random()
        if u <= 0.5:
            beta = (2 * u) ** (1 / (CROSSOVER_ETA + 1))
        else:
            beta = (1 / (2 * (1 - u))) ** (1 / (CROSSOVER_ETA + 1))
        first[i] = 0.5 * ((1 + beta) * a[i] + (1 - beta) * b[i])
        second[i] = 0.5 * ((1 - beta) * a[i] + (1 + beta) * b[i])
    return np.clip(first, 0.0, 1.0), np.clip(second, 0.0, 1.0)


def polynomial_mutation(x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    mutated = x.copy()
    probability = 1.0 / len(x)
    for i in range(len(x)):
        if rng.random() >= probability:
            continue
        u = rng.random()
        if u < 0.5:
            delta = (2 * u) ** (1 / (MUTATION_ETA + 1)) - 1
        else:
            delta = 1 - (2 * (1 - u)) ** (1 / (MUTATION_ETA + 1))
        mutated[i] = x[i] + delta
    return np.clip(mutated, 0.0, 1.0)


class NSGA2(BaseOptimizer):
    """
    NSGA-II on the unit-cube encoding. The budget counts evaluations; when it is not
    a multiple of the population the last offspring batch is smaller. The result is
    the non-dominated subset of every evaluated point.
    """

    name = "nsga2"

    def __init__(
        self,
        space: SearchSpace,
        seed: int = 0,
        budget: int = 20,
        population: int = 10,
        objectives: Optional[Sequence[ObjectiveSpec]] = None,
    ):
        if population < 4 or population % 2:
            raise OptimizerError(
                f"The population has to be even and >= 4, got {population}"
            )
        if budget < 2 * population:
            raise BudgetTooSmallError(budget, population)
        super().__init__(space, budget, objectives)
        self.population = population
        self.rng = np.random.default_rng(seed)
        self.queue: List[np.ndarray] = [
            self.rng.random(len(space)) for _ in range(population)
        ]
        self.proposed: Dict[int, np.ndarray] = {}
        self.batch: List[Individual] = []
        self.parents: List[Individual] = []
        self.ranks: List[int] = []
        self.crowding: List[float] = []

    def make_proposal(self, round: int) -> Proposal:
        if not self.queue:
            remaining = self.budget - len(self.observations)
            self.queue = self.offspring(min(self.population, remaining))
        unit = self.queue.pop(0)
        self.proposed[round] = unit
        return Proposal(round, decode(self.space, unit))

    def learn(self, observation: Observation) -> None:
        self.batch.append((self.proposed.pop(observation.round), observation))
        if not self.queue:
            self.select(self.parents + self.batch)
            self.batch = []

    def select(self, pool: List[Individual]) -> None:
        """Elitist survival: whole fronts first, the last one by crowding distance."""
        scores = score_matrix([o for _, o in pool], self.resolved_objectives())
        chosen: List[Tuple[int, int, float]] = []
        for rank, front in enumerate(non_dominated_sort(scores)):
            distance = crowding_distance(scores, front)
            ordered = sorted(front, key=lambda i: -distance[i])
            for index in ordered[: self.population - len(chosen)]:
                chosen.append((index, rank, distance[index]))
            if len(chosen) >= self.population:
                break
        self.parents = [pool[index] for index, _, _ in chosen]
        self.ranks = [rank for _, rank, _ in chosen]
        self.crowding = [distance for _, _, distance in chosen]

    def tournament(self) -> np.ndarray:
        i, j = (int(k) for k in self.rng.integers(len(self.parents), size=2))
        if (self.ranks[j], -self.crowding[j]) < (self.ranks[i], -self.crowding[i]):
            i = j
        return self.parents[i][0]

    def offspring(self, count: int) -> List[np.ndarray]:
        children: List[np.ndarray] = []
        while len(children) < count:
            first, second = simulated_binary_crossover(
                self.tournament(), self.tournament(), self.rng
            )
            children.append(polynomial_mutation(first, self.rng))
            children.append(polynomial_mutation(second, self.rng))
        return children[:count]

    def front(self) -> ParetoFront:
        return pareto_front(self.observations, self.resolved_objectives())


def nsga2(
    space: SearchSpace,
    seed: int = 0,
    budget: int = 20,
    population: int = 10,
    objectives: Optional[Sequence[ObjectiveSpec]] = None,
) -> NSGA2:
    return NSGA2(space, seed, budget, population, objectives)
