from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Protocol, Sequence, Tuple

from hwtune.kerneltune import KernelConfig
from hwtune.shared.di import service_interface
from hwtune.shared.util import BadCodingError, BudgetError
from hwtune.space import Configuration, SearchSpace

from .exceptions import ObjectiveMismatchError, UnknownObjectiveError


class Direction(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    direction: Direction = Direction.MAXIMIZE

    @property
    def sign(self) -> float:
        """Multiplier that turns the objective into a quantity to maximize."""
        return 1.0 if self.direction == Direction.MAXIMIZE else -1.0


ACCURACY = ObjectiveSpec("accuracy", Direction.MAXIMIZE)
LATENCY = ObjectiveSpec("latency", Direction.MINIMIZE)

MINIMIZED_OBJECTIVES = ("latency", "loss", "error", "error_rate", "memory")


def objective_spec(name: str) -> ObjectiveSpec:
    if name in MINIMIZED_OBJECTIVES:
        return ObjectiveSpec(name, Direction.MINIMIZE)
    return ObjectiveSpec(name, Direction.MAXIMIZE)


def default_objectives(names: Sequence[str]) -> Tuple[ObjectiveSpec, ...]:
    """Accuracy first, then latency, then the rest in the reported order."""
    ordered = sorted(names, key=lambda n: {"accuracy": 0, "latency": 1}.get(n, 2))
    return tuple(objective_spec(name) for name in ordered)


@dataclass(frozen=True)
class Proposal:
    round: int
    config: Configuration
    kernel_config: Optional[KernelConfig] = None
    agent_attempts: int = 1
    repaired: bool = False
    agent_reply: Optional[str] = None
    notes: str = ""


@dataclass(frozen=True)
class Observation:
    config: Configuration
    objectives: Dict[str, float]
    round: int
    kernel_config: Optional[KernelConfig] = None
    loss_trace: Optional[List[float]] = None

    def value(self, objective: ObjectiveSpec) -> float:
        try:
            return float(self.objectives[objective.name])
        except KeyError:
            raise UnknownObjectiveError(objective.name)

    def score(self, objective: ObjectiveSpec) -> float:
        return objective.sign * self.value(objective)


@service_interface
class Optimizer(Protocol):
    """
    Proposes one configuration per round and learns from its observation. A run
    makes exactly `budget` proposals; each proposal has to be observed before the
    next one is made.
    """

    name: str
    budget: int

    def propose(self) -> Proposal:
        ...

    def observe(self, observation: Observation) -> None:
        ...


class BaseOptimizer:
    name = "base"

    def __init__(
        self,
        space: SearchSpace,
        budget: int = 10,
        objectives: Optional[Sequence[ObjectiveSpec]] = None,
    ):
        if budget < 1:
            raise BudgetError(budget)
        self.space = space
        self.budget = budget
        self.objectives: Optional[Tuple[ObjectiveSpec, ...]] = (
            tuple(objectives) if objectives else None
        )
        self.observations: List[Observation] = []
        self.proposals: List[Proposal] = []
        self.pending: Optional[Proposal] = None

    @property
    def next_round(self) -> int:
        return len(self.observations) + 1

    @property
    def finished(self) -> bool:
        return len(self.observations) >= self.budget

    def resolved_objectives(self) -> Tuple[ObjectiveSpec, ...]:
        """Objectives given up front, else derived from the first observation."""
        if not self.objectives and self.observations:
            self.objectives = default_objectives(list(self.observations[0].objectives))
        return self.objectives or (ACCURACY,)

    @property
    def primary(self) -> ObjectiveSpec:
        return self.resolved_objectives()[0]

    def propose(self) -> Proposal:
        if self.finished:
            raise BadCodingError(f"{self.name}: the budget of {self.budget} is spent")
        if self.pending is not None:
            raise BadCodingError(
                f"{self.name}: round {self.pending.round} is not observed yet"
            )
        self.pending = self.make_proposal(self.next_round)
        self.proposals.append(self.pending)
        return self.pending

    def observe(self, observation: Observation) -> None:
        if self.pending is None or observation.round != self.pending.round:
            raise BadCodingError(
                f"{self.name}: observation for round {observation.round} does not "
                "answer the pending proposal"
            )
        if self.observations and set(observation.objectives) != set(
            self.observations[0].objectives
        ):
            raise ObjectiveMismatchError(
                f"Round {observation.round} reports {sorted(observation.objectives)}, "
                f"earlier rounds {sorted(self.observations[0].objectives)}"
            )
        self.observations.append(observation)
        self.pending = None
        self.learn(observation)

    def make_proposal(self, round: int) -> Proposal:
        raise NotImplementedError()

    def learn(self, observation: Observation) -> None:
        pass

    def best(self) -> Optional[Observation]:
        if not self.observations:
            return None
        primary = self.primary
        # earliest of equal scores wins
        return max(self.observations, key=lambda o: o.score(primary))
