from typing import List, Optional, Sequence

from hwtune.agent import (
    ChatBackend,
    ProposalExhaustedError,
    RetryPolicy,
    UsageLedger,
    propose,
)
from hwtune.kerneltune import KernelSpec, assignment_from_config, kernel_space
from hwtune.prompt import (
    DEFAULT_TOKEN_CAP,
    Expect,
    HistoryPolicy,
    PromptBundle,
    StaticPrompt,
    assemble,
    render_dynamic,
)
from hwtune.shared.util import InvalidFormat, logger
from hwtune.shared.util.otel import make_span
from hwtune.space import SearchSpace
from hwtune.trials import TrialRecord

from .base import BaseOptimizer, ObjectiveSpec, Observation, Proposal


class AgentOptimizer(BaseOptimizer):
    """
    The agent loop as an optimizer: every round renders the history into the dynamic
    prompt, assembles it with the static prompt and asks the agent. Retries happen
    inside a round; a round is only lost when the agent runs out of attempts.
    """

    name = "agent"

    def __init__(
        self,
        backend: ChatBackend,
        static_prompt: StaticPrompt,
        space: Optional[SearchSpace],
        history_policy: HistoryPolicy = HistoryPolicy(),
        budget: int = 10,
        expect: Expect = Expect.FINETUNE,
        kernel_spec: Optional[KernelSpec] = None,
        token_cap: int = DEFAULT_TOKEN_CAP,
        retry_policy: RetryPolicy = RetryPolicy(),
        ledger: Optional[UsageLedger] = None,
        objectives: Optional[Sequence[ObjectiveSpec]] = None,
    ):
        if expect != Expect.FINETUNE and kernel_spec is None:
            raise InvalidFormat(f"Expecting '{expect.value}' needs a kernel spec")
        if expect == Expect.KERNEL:
            space = kernel_space(kernel_spec)  # type: ignore
        if space is None:
            raise InvalidFormat("The agent optimizer needs a search space")
        super().__init__(space, budget, objectives)
        self.backend = backend
        self.static_prompt = static_prompt
        self.history_policy = history_policy
        self.expect = expect
        self.kernel_spec = kernel_spec
        self.token_cap = token_cap
        self.retry_policy = retry_policy
        self.ledger = ledger if ledger is not None else UsageLedger()
        self.records: List[TrialRecord] = []
        self.last_bundle: Optional[PromptBundle] = None

    def make_proposal(self, round: int) -> Proposal:
        rounds_left = self.budget - round + 1
        dynamic = render_dynamic(
            self.records, rounds_left, self.history_policy, self.expect
        )
        bundle = assemble(self.static_prompt, dynamic, self.token_cap)
        self.last_bundle = bundle
        with make_span("agent round", {"round": round, "rounds_left": rounds_left}):
            try:
                result = propose(
                    self.backend,
                    bundle,
                    self.space,
                    self.expect,
                    self.retry_policy,
                    self.ledger,
                )
            except ProposalExhaustedError as e:
                e.trace = list(self.records)
                raise
        if result.attempts > 1 or result.repaired:
            logger.info(
                f"Round {round}: agent needed {result.attempts} attempts"
                + (", proposal repaired" if result.repaired else "")
            )
        config = result.config
        if self.expect == Expect.KERNEL:
            config = assignment_from_config(
                self.kernel_spec, result.kernel_config  # type: ignore
            )
        return Proposal(
            round=round,
            config=config,  # type: ignore
            kernel_config=result.kernel_config,
            agent_attempts=result.attempts,
            repaired=result.repaired,
            agent_reply=result.reply,
        )

    def learn(self, observation: Observation) -> None:
        proposal = self.proposals[-1]
        self.records.append(
            TrialRecord(
                round=observation.round,
                config=observation.config,
                objectives=dict(observation.objectives),
                kernel_config=observation.kernel_config or proposal.kernel_config,
                loss_trace=observation.loss_trace,
                agent_attempts=proposal.agent_attempts,
                repaired=proposal.repaired,
                agent_reply=proposal.agent_reply,
            )
        )


def agent_optimizer(
    backend: ChatBackend,
    static_prompt: StaticPrompt,
    space: Optional[SearchSpace],
    history_policy: HistoryPolicy = HistoryPolicy(),
    budget: int = 10,
    **kwargs,
) -> AgentOptimizer:
    return AgentOptimizer(
        backend, static_prompt, space, history_policy, budget, **kwargs
    )
