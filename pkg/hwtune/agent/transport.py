import time
from dataclasses import dataclass
from typing import Optional

from hwtune.prompt import PromptBundle, estimate_tokens
from hwtune.shared.util import logger
from hwtune.shared.util.otel import make_span

from .backend import ChatBackend
from .exceptions import CapacityError
from .usage import CallRecord, UsageLedger


@dataclass(frozen=True)
class SendResult:
    text: str
    record: CallRecord


def send(
    backend: ChatBackend, bundle: PromptBundle, ledger: Optional[UsageLedger] = None
) -> SendResult:
    capability = backend.capability
    if bundle.token_estimate > capability.max_input_tokens:
        raise CapacityError(
            bundle.token_estimate, capability.max_input_tokens, capability.name
        )
    with make_span(
        "agent call",
        {"backend": capability.name, "input_tokens": bundle.token_estimate},
    ):
        start = time.perf_counter()
        text = backend.complete(bundle.messages)
        latency = time.perf_counter() - start
    record = CallRecord(bundle.token_estimate, estimate_tokens(text), latency)
    if ledger is not None:
        ledger.add(record)
    logger.debug(
        f"{capability.name} answered in {latency:.3f}s "
        f"({record.input_tokens} in, {record.output_tokens} out)"
    )
    return SendResult(text, record)
