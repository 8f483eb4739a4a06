from dataclasses import dataclass, field, replace
from typing import List, Optional

from hwtune.kerneltune import KernelConfig, project_config
from hwtune.prompt import (
    Expect,
    Message,
    PromptBundle,
    PromptTooLargeError,
    assemble,
    estimate_tokens,
)
from hwtune.shared.util import BadCodingError, logger
from hwtune.space import Configuration, SearchSpace, UnclampableError, clamp, validate

from .backend import ChatBackend
from .exceptions import ProposalExhaustedError
from .parsing import AgentFailure, FailureKind, ParsedProposal, parse_response
from .transport import send
from .usage import UsageLedger


MAX_ECHO_CHARS = 2000

CORRECTIONS = {
    FailureKind.BAD_FORMAT: (
        "[BadFormat] Your previous reply did not adhere to the required format: "
        "{details}. Reply with the configuration as one JSON object in exactly the "
        "requested format."
    ),
    FailureKind.CONSTRAINT_VIOLATION: (
        "[ConstraintViolation] Your previous configuration violated the predefined "
        "constraints: {details}. Keep every value within the defined range and reply "
        "with a corrected JSON configuration."
    ),
    FailureKind.OFF_TOPIC: (
        "[OffTopic] Your previous reply contained irrelevant information: {details}. "
        "Stay on the optimization task and reply with one JSON configuration."
    ),
}


@dataclass(frozen=True)
class RetryPolicy:
    max_attempts: int = 3
    clamp_fallback: bool = True

    def __post_init__(self):
        if self.max_attempts < 1:
            raise BadCodingError("max_attempts has to be >= 1")


@dataclass(frozen=True)
class AgentProposal:
    config: Optional[Configuration]
    kernel_config: Optional[KernelConfig]
    attempts: int
    reply: str
    thought_text: Optional[str] = None
    repaired: bool = False
    failures: List[AgentFailure] = field(default_factory=list)


def correction_message(failure: AgentFailure) -> str:
    return CORRECTIONS[failure.kind].format(details=failure.describe())


def fit(bundle: PromptBundle, tail: List[Message], token_cap: int) -> PromptBundle:
    if bundle.static is not None:
        return assemble(bundle.static, bundle.dynamic, token_cap, tail)
    messages = list(bundle.messages) + tail
    estimate = estimate_tokens("\n\n".join(m.content for m in messages))
    if estimate > token_cap:
        raise PromptTooLargeError(estimate, token_cap)
    return replace(bundle, messages=messages, token_estimate=estimate)


def with_correction(
    bundle: PromptBundle,
    reply: str,
    failure: AgentFailure,
    token_cap: Optional[int] = None,
) -> PromptBundle:
    """
    Appends the failed reply and a corrective message, fitted under the cap like a
    fresh bundle: older history is demoted first, then the echoed reply is left
    out. If not even the correction fits, the original bundle is sent again.
    """
    cap = bundle.token_cap if token_cap is None else min(bundle.token_cap, token_cap)
    correction = Message("user", correction_message(failure))
    echo = Message("assistant", reply[:MAX_ECHO_CHARS])
    for tail in ([echo, correction], [correction]):
        try:
            return fit(bundle, tail, cap)
        except PromptTooLargeError:
            continue
    logger.warning(
        f"No room for a correction under {cap} tokens, re-sending the prompt as is"
    )
    return bundle


def propose(
    backend: ChatBackend,
    bundle: PromptBundle,
    space: SearchSpace,
    expect: Expect = Expect.FINETUNE,
    retry_policy: RetryPolicy = RetryPolicy(),
    ledger: Optional[UsageLedger] = None,
) -> AgentProposal:
    """
    Asks the backend until a reply parses and validates. Each retry re-sends the
    bundle with the failed reply and a corrective message naming the failure class.
    When the attempts run out on a constraint violation, the last type-correct
    proposal is clamped into its limits instead and flagged as repaired.
    """
    failures: List[AgentFailure] = []
    token_cap = min(bundle.token_cap, backend.capability.max_input_tokens)
    request = bundle
    for attempt in range(1, retry_policy.max_attempts + 1):
        reply = send(backend, request, ledger).text
        response = parse_response(reply, space, expect)
        if response.parsed is not None:
            return AgentProposal(
                config=response.parsed.config,
                kernel_config=response.parsed.kernel_config,
                attempts=attempt,
                reply=reply,
                thought_text=response.thought_text,
                failures=failures,
            )
        failure = response.failure
        assert failure
        failures.append(failure)
        logger.warning(
            f"Agent attempt {attempt}/{retry_policy.max_attempts} failed with "
            f"{failure.kind.value}: {failure.describe()}"
        )
        request = with_correction(bundle, reply, failure, token_cap)

    if retry_policy.clamp_fallback:
        repaired = repair(failures, space)
        if repaired is not None:
            logger.info("Falling back to the clamped proposal of the last attempt")
            return AgentProposal(
                config=repaired.config,
                kernel_config=repaired.kernel_config,
                attempts=retry_policy.max_attempts,
                reply=reply,
                repaired=True,
                failures=failures,
            )
    raise ProposalExhaustedError(failures)


def repair(
    failures: List[AgentFailure], space: SearchSpace
) -> Optional[ParsedProposal]:
    candidates = [
        failure.candidate
        for failure in failures
        if failure.kind == FailureKind.CONSTRAINT_VIOLATION and failure.candidate
    ]
    if not candidates:
        return None
    candidate = candidates[-1]
    config = candidate.config
    kernel_config = candidate.kernel_config
    if config is not None:
        try:
            config = clamp(space, config)
        except UnclampableError as e:
            logger.info(f"Proposal cannot be repaired: {e.msg}")
            return None
        if not validate(space, config):
            return None
    if kernel_config is not None:
        kernel_config = project_config(kernel_config)
        if not kernel_config.is_valid:
            return None
    return ParsedProposal(config, kernel_config)
