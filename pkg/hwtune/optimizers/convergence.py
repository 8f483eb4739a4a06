from typing import List, Sequence

from hwtune.shared.util import BadCodingError

from .base import Direction
from .exceptions import UnknownObjectiveError


def best_so_far(
    observations: Sequence, objective: str, direction: Direction = Direction.MAXIMIZE
) -> List[float]:
    """
    Running optimum of `objective` over the rounds. Works on anything carrying an
    `objectives` mapping, observations and trial records alike.
    """
    if not observations:
        raise BadCodingError("best_so_far needs at least one observation")
    pick = max if direction == Direction.MAXIMIZE else min
    trace: List[float] = []
    for observation in observations:
        if objective not in observation.objectives:
            raise UnknownObjectiveError(objective)
        value = float(observation.objectives[objective])
        trace.append(pick(trace[-1], value) if trace else value)
    return trace
