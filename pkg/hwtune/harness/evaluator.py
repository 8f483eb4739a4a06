from dataclasses import dataclass
from typing import Dict, List, Optional, Protocol, Tuple

from hwtune.kerneltune import KernelConfig
from hwtune.optimizers import ObjectiveSpec, Proposal
from hwtune.shared.di import service_interface


@dataclass(frozen=True)
class Evaluation:
    objectives: Dict[str, float]
    loss_trace: Optional[List[float]] = None
    # the execution configuration that was actually measured
    kernel_config: Optional[KernelConfig] = None


@service_interface
class Evaluator(Protocol):
    """
    Measures one proposal. Returns a value for every declared objective or raises an
    EvaluatorError. Synthetic and simulated evaluators are deterministic.
    """

    kind: str
    objectives: Tuple[ObjectiveSpec, ...]

    def evaluate(self, proposal: Proposal) -> Evaluation:
        ...


class CompositeEvaluator:
    """Fine-tuning metrics from one evaluator, deployment latency from another."""

    kind = "composite"

    def __init__(self, finetune: Evaluator, deployment: Evaluator):
        self.finetune = finetune
        self.deployment = deployment
        self.objectives = tuple(finetune.objectives) + tuple(deployment.objectives)

    def evaluate(self, proposal: Proposal) -> Evaluation:
        tuned = self.finetune.evaluate(proposal)
        deployed = self.deployment.evaluate(proposal)
        return Evaluation(
            objectives={**tuned.objectives, **deployed.objectives},
            loss_trace=tuned.loss_trace,
            kernel_config=deployed.kernel_config,
        )
