import json
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence

from hwtune.shared.util import logger

from . import templates
from .dynamic import DynamicPrompt, TrialBlock
from .exceptions import PromptTooLargeError, StaticTooLargeError
from .static import StaticPrompt
from .tokens import estimate_tokens


DEFAULT_TOKEN_CAP = 16000


@dataclass(frozen=True)
class Message:
    role: str
    content: str

    def to_dict(self) -> Dict[str, str]:
        return {"role": self.role, "content": self.content}


@dataclass(frozen=True)
class PromptBundle:
    system_message: str
    messages: List[Message]
    token_estimate: int
    # history actually rendered, after demotion
    dynamic: DynamicPrompt = field(compare=False)
    demoted: int = 0
    dropped_summaries: int = 0
    # kept so that retries can be re-fitted under the same cap
    static: Optional[StaticPrompt] = field(default=None, compare=False)
    token_cap: int = DEFAULT_TOKEN_CAP

    def to_dicts(self) -> List[Dict[str, str]]:
        return [message.to_dict() for message in self.messages]

    def to_json(self) -> str:
        return json.dumps(self.to_dicts(), indent=2)

    def text(self) -> str:
        return join_contents(self.messages)


def join_contents(messages: List[Message]) -> str:
    return "\n\n".join(message.content for message in messages)


def build_messages(static: StaticPrompt, dynamic: DynamicPrompt) -> List[Message]:
    messages = [
        Message("system", static.system_message),
        Message("user", static.text()),
    ]
    if dynamic.summaries:
        messages.append(
            Message("user", "\n".join([templates.SUMMARY_HEADER, *dynamic.summaries]))
        )
    blocks = dynamic.trial_blocks
    for block in blocks[:-1]:
        append_block(messages, block)
    last = blocks[-1] if blocks else None
    if last and last.reply:
        messages.append(Message("assistant", last.reply))
    messages.append(Message("user", closing_message(static, dynamic, last)))
    return messages


def append_block(messages: List[Message], block: TrialBlock) -> None:
    if block.reply:
        messages.append(Message("assistant", block.reply))
    messages.append(Message("user", block.text))


def closing_message(
    static: StaticPrompt, dynamic: DynamicPrompt, last: Optional[TrialBlock] = None
) -> str:
    lines = [dynamic.budget_line]
    if static.react_directive:
        lines.append(templates.REACT_REMINDER)
    if last:
        lines.append(last.text)
        lines.append(templates.OPTIMIZE_REQUEST)
    else:
        lines.append(templates.FIRST_ROUND_REQUEST)
    return "\n".join(lines)


def assemble(
    static: StaticPrompt,
    dynamic: DynamicPrompt,
    token_cap: int = DEFAULT_TOKEN_CAP,
    tail: Sequence[Message] = (),
) -> PromptBundle:
    """
    Builds the message list, followed by `tail` if given. When it exceeds
    `token_cap`, the oldest verbatim trial blocks are demoted to one-line summaries
    first, then the oldest summaries are dropped. The budget line, the ReAct
    reminder and the tail always stay.
    """
    static_estimate = estimate_tokens(
        join_contents(
            [Message("system", static.system_message), Message("user", static.text())]
        )
    )
    if static_estimate > token_cap:
        raise StaticTooLargeError(static_estimate, token_cap)

    blocks = list(dynamic.trial_blocks)
    summaries = list(dynamic.summaries)
    demoted = dropped = 0
    while True:
        current = replace(dynamic, trial_blocks=blocks, summaries=summaries)
        messages = build_messages(static, current) + list(tail)
        estimate = estimate_tokens(join_contents(messages))
        if estimate <= token_cap:
            break
        if blocks:
            summaries = summaries + [blocks[0].summary]
            blocks = blocks[1:]
            demoted += 1
        elif summaries:
            summaries = summaries[1:]
            dropped += 1
        else:
            raise PromptTooLargeError(estimate, token_cap)

    if demoted or dropped:
        logger.info(
            f"Prompt over {token_cap} tokens: demoted {demoted} trial blocks, "
            f"dropped {dropped} summaries"
        )
    return PromptBundle(
        system_message=static.system_message,
        messages=messages,
        token_estimate=estimate,
        dynamic=current,
        demoted=demoted,
        dropped_summaries=dropped,
        static=static,
        token_cap=token_cap,
    )
