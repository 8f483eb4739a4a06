from hwtune.hardware import HardwareProfile
from hwtune.kerneltune import (
    DEFAULT_PARAMS,
    KernelConfig,
    KernelSpec,
    LatencyModelParams,
    config_from_assignment,
    model_latency,
)
from hwtune.optimizers import LATENCY, Proposal

from .evaluator import Evaluation


class KernelSimEvaluator:
    """
    Measures the modeled latency of one kernel. Proposals carrying a kernel
    configuration are measured as given, plain assignments over the kernel space are
    converted first. Invalid configurations raise InvalidConfigError.
    """

    kind = "kernel_sim"
    objectives = (LATENCY,)

    def __init__(
        self,
        spec: KernelSpec,
        profile: HardwareProfile,
        params: LatencyModelParams = DEFAULT_PARAMS,
    ):
        self.spec = spec
        self.profile = profile
        self.params = params

    def kernel_config(self, proposal: Proposal) -> KernelConfig:
        if proposal.kernel_config is not None:
            return proposal.kernel_config
        if "block_x" in proposal.config.assignments:
            return config_from_assignment(self.spec, proposal.config)
        return self.spec.default_config()

    def evaluate(self, proposal: Proposal) -> Evaluation:
        config = self.kernel_config(proposal)
        latency = model_latency(self.spec, config, self.profile, self.params)
        return Evaluation(objectives={LATENCY.name: latency}, kernel_config=config)


def kernel_sim_evaluator(
    spec: KernelSpec,
    profile: HardwareProfile,
    params: LatencyModelParams = DEFAULT_PARAMS,
) -> KernelSimEvaluator:
    return KernelSimEvaluator(spec, profile, params)
