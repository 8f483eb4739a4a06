import math
from typing import List, Optional, Tuple

import numpy as np

from hwtune.optimizers import ObjectiveSpec, Proposal
from hwtune.shared.util import InvalidFormat
from hwtune.space import Configuration, SearchSpace, decode, encode

from .evaluator import Evaluation
from .exceptions import DimensionMismatchError


SURFACES = ("sphere", "quantization_surface", "step_plateau")

PLATEAU_LEVELS = 4
RIDGE_WEIGHT = 0.1
INITIAL_LOSS = 2.3


class SyntheticEvaluator:
    """
    Desk-scale objectives over the unit-cube encoding of a space. The optimum is
    drawn from the seed.

    - sphere: minus the squared distance to the optimum, 0 at the optimum.
    - quantization_surface: an accuracy-like value in (0, 1) that peaks near the
      optimum, loses more the fewer bits are used, and rewards moving learning
      rate and batch size together.
    - step_plateau: the sphere value floored onto a few levels, so feedback is flat
      across wide regions.
    """

    kind = "synthetic"

    def __init__(
        self,
        name: str,
        space: SearchSpace,
        seed: int = 0,
        noise: float = 0.0,
        dims: Optional[int] = None,
        bits: int = 8,
        objective: str = "accuracy",
    ):
        if name not in SURFACES:
            raise InvalidFormat(
                f"Unknown synthetic objective '{name}', choose one of "
                + ", ".join(SURFACES)
            )
        if dims is not None and dims != len(space):
            raise DimensionMismatchError(dims, len(space))
        if noise < 0:
            raise InvalidFormat(f"noise has to be >= 0, got {noise}")
        self.name = name
        self.space = space
        self.seed = seed
        self.noise = noise
        self.bits = bits
        self.optimum = np.random.default_rng(seed).random(len(space))
        self.objectives: Tuple[ObjectiveSpec, ...] = (ObjectiveSpec(objective),)

    def distance(self, config: Configuration) -> float:
        unit = encode(self.space, config)
        return float(np.sum((unit - self.optimum) ** 2))

    def value(self, config: Configuration) -> float:
        distance = self.distance(config)
        if self.name == "sphere":
            return -distance
        if self.name == "step_plateau":
            return -math.floor(distance * PLATEAU_LEVELS) / PLATEAU_LEVELS
        return self.quantization_value(config, distance)

    def quantization_value(self, config: Configuration, distance: float) -> float:
        bits = int(config.assignments.get("bits", self.bits))
        penalty = 0.2 * 2 ** (-bits / 2)
        names = self.space.names
        if "learning_rate" in names and "batch_size" in names:
            unit = encode(self.space, config)
            lr, bs = names.index("learning_rate"), names.index("batch_size")
            drift = (unit[lr] - self.optimum[lr]) - (unit[bs] - self.optimum[bs])
            penalty += RIDGE_WEIGHT * drift**2
        return 0.95 * math.exp(-2.0 * distance) - penalty

    def loss_trace(self, config: Configuration) -> List[float]:
        epochs = config.assignments.get("num_epochs") or config.assignments.get(
            "epochs", 10
        )
        epochs = max(1, min(int(epochs), 50))
        final = 0.1 + self.distance(config)
        return [
            round(final + (INITIAL_LOSS - final) * math.exp(-3.0 * (e + 1) / epochs), 4)
            for e in range(epochs)
        ]

    def evaluate(self, proposal: Proposal) -> Evaluation:
        value = self.value(proposal.config)
        if self.noise:
            rng = np.random.default_rng([self.seed, proposal.round])
            value += float(rng.normal(0.0, self.noise))
        return Evaluation(
            objectives={self.objectives[0].name: value},
            loss_trace=self.loss_trace(proposal.config),
        )

    def optimum_config(self) -> Configuration:
        return decode(self.space, self.optimum)


def synthetic_evaluator(
    name: str,
    space: SearchSpace,
    dims: Optional[int] = None,
    seed: int = 0,
    noise: float = 0.0,
    bits: int = 8,
    objective: str = "accuracy",
) -> SyntheticEvaluator:
    return SyntheticEvaluator(name, space, seed, noise, dims, bits, objective)
