from typing import List, Optional, Sequence

import numpy as np

from hwtune.shared.typing import Value
from hwtune.space import (
    Configuration,
    ParamKind,
    ParamSpec,
    SearchSpace,
    decode_value,
    default_config,
    encode_value,
)
from hwtune.space.param_spec import choice_index

from .base import BaseOptimizer, ObjectiveSpec, Observation, Proposal


FLOAT_STEP = 0.1


def movable(param: ParamSpec) -> bool:
    return param.kind != ParamKind.CATEGORICAL or len(param.choices or ()) > 1


def step(param: ParamSpec, value: Value, direction: int) -> Value:
    """
    One move in `direction` (+1/-1): a tenth of the range for floats (log domain for
    log parameters), one for integers, the neighbouring choice for categoricals.
    The direction flips at a bound.
    """
    if param.kind == ParamKind.CATEGORICAL:
        choices = param.choices or ()
        index = choice_index(value, choices)
        target = index + direction
        if not 0 <= target < len(choices):
            target = index - direction
        return choices[target]
    if param.kind == ParamKind.UNIFORM_INT:
        target = int(value) + direction
        if not param.lower <= target <= param.upper:  # type: ignore
            target = int(value) - direction
        return target
    unit = encode_value(param, value)
    target_unit = unit + direction * FLOAT_STEP
    if not 0.0 <= target_unit <= 1.0:
        target_unit = unit - direction * FLOAT_STEP
    return decode_value(param, target_unit)


class LocalSearch(BaseOptimizer):
    """
    Hill climbing from the defaults. Each round changes one parameter of the
    incumbent by one step; the change becomes the incumbent only if the primary
    objective strictly improves.
    """

    name = "local"

    def __init__(
        self,
        space: SearchSpace,
        seed: int = 0,
        budget: int = 10,
        objectives: Optional[Sequence[ObjectiveSpec]] = None,
    ):
        super().__init__(space, budget, objectives)
        self.rng = np.random.default_rng(seed)
        self.incumbent: Optional[Observation] = None
        self.params: List[ParamSpec] = [p for p in space if movable(p)]

    def make_proposal(self, round: int) -> Proposal:
        if self.incumbent is None or not self.params:
            return Proposal(round, default_config(self.space))
        config: Configuration = self.incumbent.config
        param = self.params[int(self.rng.integers(len(self.params)))]
        direction = 1 if self.rng.random() < 0.5 else -1
        moved = step(param, config[param.name], direction)
        return Proposal(round, config.with_value(param.name, moved))

    def learn(self, observation: Observation) -> None:
        primary = self.primary
        incumbent = self.incumbent
        if incumbent is None or observation.score(primary) > incumbent.score(primary):
            self.incumbent = observation


def local_search(space: SearchSpace, seed: int = 0, budget: int = 10) -> LocalSearch:
    return LocalSearch(space, seed, budget)
