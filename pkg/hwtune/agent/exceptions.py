from typing import TYPE_CHECKING, List

from hwtune.shared.util import HwtuneException


if TYPE_CHECKING:
    from .parsing import AgentFailure


class TransportError(HwtuneException):
    """Network failure or timeout talking to a chat backend. Retryable."""


class CapacityError(HwtuneException):
    def __init__(self, estimate: int, max_input_tokens: int, backend: str):
        super().__init__(
            f"Prompt of ~{estimate} tokens exceeds the {max_input_tokens} tokens "
            f"backend '{backend}' accepts"
        )
        self.estimate = estimate
        self.max_input_tokens = max_input_tokens


class ProposalExhaustedError(HwtuneException):
    def __init__(self, failures: List["AgentFailure"]):
        kinds = ", ".join(failure.kind.value for failure in failures)
        super().__init__(f"No usable proposal after {len(failures)} attempts: {kinds}")
        self.failures = failures
        # trial records completed before the failing round, filled by the caller
        self.trace: List = []


class BackendRejectedError(HwtuneException):
    """The endpoint refused the request (bad key, bad payload). Not retried."""
