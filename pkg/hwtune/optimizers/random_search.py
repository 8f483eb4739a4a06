from typing import Optional, Sequence

import numpy as np

from hwtune.space import SearchSpace, sample

from .base import BaseOptimizer, ObjectiveSpec, Proposal


class RandomSearch(BaseOptimizer):
    """Independent samples, one derived seed per round. Observations are ignored."""

    name = "random"

    def __init__(
        self,
        space: SearchSpace,
        seed: int = 0,
        budget: int = 10,
        objectives: Optional[Sequence[ObjectiveSpec]] = None,
    ):
        super().__init__(space, budget, objectives)
        self.seed = seed

    def make_proposal(self, round: int) -> Proposal:
        seed = np.random.SeedSequence([self.seed, round])
        return Proposal(round, sample(self.space, seed))


def random_search(space: SearchSpace, seed: int = 0, budget: int = 10) -> RandomSearch:
    return RandomSearch(space, seed, budget)
