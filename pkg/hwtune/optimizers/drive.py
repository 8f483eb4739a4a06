from typing import Callable, Dict, List, Optional

from hwtune.kerneltune import (
    KernelConfig,
    KernelSpec,
    config_from_assignment,
)
from hwtune.space import Configuration

from .base import Observation, Optimizer, Proposal


def drive(
    optimizer: Optimizer, evaluate: Callable[[Configuration], Dict[str, float]]
) -> List[Observation]:
    """Runs the optimizer for its whole budget against a plain callable."""
    observations = []
    for _ in range(optimizer.budget):
        proposal = optimizer.propose()
        observation = Observation(
            proposal.config, dict(evaluate(proposal.config)), proposal.round
        )
        optimizer.observe(observation)
        observations.append(observation)
    return observations


class OptimizerKernelStrategy:
    """
    Lets any optimizer over `kernel_space(spec)` drive `tune_kernel`. The default
    config that `tune_kernel` measures first is not part of the optimizer's run.
    """

    def __init__(self, optimizer: Optimizer):
        self.optimizer = optimizer
        self.pending: Optional[Proposal] = None

    def propose_kernel(self, spec: KernelSpec) -> KernelConfig:
        self.pending = self.optimizer.propose()
        if self.pending.kernel_config is not None:
            return self.pending.kernel_config
        return config_from_assignment(spec, self.pending.config)

    def observe_kernel(self, config: KernelConfig, latency: float) -> None:
        if self.pending is None:
            return
        proposal, self.pending = self.pending, None
        self.optimizer.observe(
            Observation(
                proposal.config,
                {"latency": latency},
                proposal.round,
                kernel_config=config,
            )
        )
