from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from hwtune.shared.util import BadCodingError

from .base import ObjectiveSpec, Observation


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """On maximized scores: at least as good everywhere and better somewhere."""
    return all(x >= y for x, y in zip(a, b)) and any(x > y for x, y in zip(a, b))


def non_dominated_sort(scores: np.ndarray) -> List[List[int]]:
    count = len(scores)
    dominated_by: List[List[int]] = [[] for _ in range(count)]
    counters = [0] * count
    fronts: List[List[int]] = [[]]
    for p in range(count):
        for q in range(count):
            if dominates(scores[p], scores[q]):
                dominated_by[p].append(q)
            elif dominates(scores[q], scores[p]):
                counters[p] += 1
        if counters[p] == 0:
            fronts[0].append(p)
    while fronts[-1]:
        following: List[int] = []
        for p in fronts[-1]:
            for q in dominated_by[p]:
                counters[q] -= 1
                if counters[q] == 0:
                    following.append(q)
        fronts.append(sorted(following))
    return fronts[:-1]


def crowding_distance(scores: np.ndarray, front: List[int]) -> Dict[int, float]:
    distance = {index: 0.0 for index in front}
    if len(front) <= 2:
        return {index: float("inf") for index in front}
    for objective in range(scores.shape[1]):
        ordered = sorted(front, key=lambda i: scores[i, objective])
        low, high = scores[ordered[0], objective], scores[ordered[-1], objective]
        distance[ordered[0]] = distance[ordered[-1]] = float("inf")
        if high == low:
            continue
        for left, middle, right in zip(ordered, ordered[1:], ordered[2:]):
            distance[middle] += (
                scores[right, objective] - scores[left, objective]
            ) / (high - low)
    return distance


def score_matrix(
    observations: Sequence[Observation], objectives: Sequence[ObjectiveSpec]
) -> np.ndarray:
    return np.array(
        [[o.score(spec) for spec in objectives] for o in observations], dtype=float
    ).reshape(len(observations), len(objectives))


@dataclass(frozen=True)
class ParetoFront:
    points: Tuple[Observation, ...]
    objectives: Tuple[ObjectiveSpec, ...]

    def __post_init__(self):
        scores = score_matrix(self.points, self.objectives)
        for a in scores:
            if any(dominates(b, a) for b in scores):
                raise BadCodingError("A Pareto front holds a dominated point")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def best(self, objective: ObjectiveSpec) -> Observation:
        """Earliest point with the best value of one objective."""
        return max(self.points, key=lambda o: o.score(objective))


def pareto_front(
    observations: Sequence[Observation], objectives: Sequence[ObjectiveSpec]
) -> ParetoFront:
    scores = score_matrix(observations, objectives)
    points = [
        observation
        for index, observation in enumerate(observations)
        if not any(dominates(other, scores[index]) for other in scores)
    ]
    return ParetoFront(tuple(points), tuple(objectives))
