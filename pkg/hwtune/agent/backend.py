from dataclasses import dataclass
from typing import List, Protocol

from hwtune.prompt import DEFAULT_TOKEN_CAP, Message
from hwtune.shared.di import service_interface


@dataclass(frozen=True)
class BackendCapability:
    name: str
    max_input_tokens: int = DEFAULT_TOKEN_CAP


@service_interface
class ChatBackend(Protocol):
    """
    Anything that answers a role-tagged message list with the assistant's text.
    Implementations expose a `capability` attribute. Mock backends are
    deterministic: the same messages always give the same reply.
    """

    capability: BackendCapability

    def complete(self, messages: List[Message]) -> str:
        ...
