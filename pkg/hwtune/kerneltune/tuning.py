import itertools
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Protocol, Sequence, Tuple

from hwtune.hardware import HardwareProfile
from hwtune.shared.util import BudgetError, logger
from hwtune.shared.util.otel import make_span

from .exceptions import StrategyExhausted
from .kernel_spec import KernelConfig, KernelSpec
from .latency_model import DEFAULT_PARAMS, LatencyModelParams, model_latency


class KernelStrategy(Protocol):
    """Proposes kernel configs one at a time and learns from their latencies."""

    def propose_kernel(self, spec: KernelSpec) -> KernelConfig:
        ...

    def observe_kernel(self, config: KernelConfig, latency: float) -> None:
        ...


class ExhaustiveStrategy:
    """Walks an explicit candidate list in order."""

    def __init__(self, candidates: Iterable[KernelConfig]):
        self.candidates = list(candidates)
        self.position = 0

    def propose_kernel(self, spec: KernelSpec) -> KernelConfig:
        if self.position >= len(self.candidates):
            raise StrategyExhausted("All candidates were proposed")
        candidate = self.candidates[self.position]
        self.position += 1
        return candidate

    def observe_kernel(self, config: KernelConfig, latency: float) -> None:
        pass

    @classmethod
    def grid(
        cls,
        spec: KernelSpec,
        grid_x: Sequence[int],
        block_x: Sequence[int],
        tilings: Sequence[int],
        unrolls: Sequence[int],
    ) -> "ExhaustiveStrategy":
        return cls(candidate_grid(spec, grid_x, block_x, tilings, unrolls))


def candidate_grid(
    spec: KernelSpec,
    grid_x: Sequence[int],
    block_x: Sequence[int],
    tilings: Sequence[int],
    unrolls: Sequence[int],
) -> List[KernelConfig]:
    grid, block = spec.default_grid, spec.default_block
    return [
        KernelConfig((gx, grid[1], grid[2]), (bx, block[1], block[2]), t, u)
        for gx, bx, t, u in itertools.product(grid_x, block_x, tilings, unrolls)
    ]


@dataclass
class KernelTuneResult:
    spec: KernelSpec
    best: KernelConfig
    best_latency: float
    default_latency: float
    trace: List[Tuple[KernelConfig, float]] = field(default_factory=list)

    @property
    def speedup(self) -> float:
        return self.default_latency / self.best_latency

    @property
    def latencies(self) -> List[float]:
        return [latency for _, latency in self.trace]


def tune_kernel(
    spec: KernelSpec,
    profile: HardwareProfile,
    params: LatencyModelParams = DEFAULT_PARAMS,
    budget: int = 10,
    strategy: Optional[KernelStrategy] = None,
) -> KernelTuneResult:
    """
    Evaluates the default config as round 0, then asks the strategy for the rest of
    the budget. The budget counts every evaluation including the default.
    """
    if budget < 1:
        raise BudgetError(budget)

    default = spec.default_config()
    with make_span("tune kernel", {"kernel": spec.label, "budget": budget}):
        default_latency = model_latency(spec, default, profile, params)
        trace = [(default, default_latency)]
        best, best_latency = default, default_latency
        if strategy is not None:
            strategy.observe_kernel(default, default_latency)
            for _ in range(budget - 1):
                try:
                    candidate = strategy.propose_kernel(spec)
                except StrategyExhausted:
                    break
                latency = model_latency(spec, candidate, profile, params)
                strategy.observe_kernel(candidate, latency)
                trace.append((candidate, latency))
                if latency < best_latency:
                    best, best_latency = candidate, latency

    logger.info(
        f"Tuned {spec.label} on {profile.name}: {default_latency:.3f} us -> "
        f"{best_latency:.3f} us in {len(trace)} evaluations"
    )
    return KernelTuneResult(spec, best, best_latency, default_latency, trace)
