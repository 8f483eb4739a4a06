from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import requests

from hwtune.prompt import DEFAULT_TOKEN_CAP, Message
from hwtune.shared.di import injector
from hwtune.shared.services import ENVIRONMENT_VARIABLES, EnvironmentService

from .backend import BackendCapability
from .exceptions import BackendRejectedError, TransportError
from .retry import retry_on_transport_failure


DEFAULT_ENDPOINT = "https://api.openai.com/v1/chat/completions"
DEFAULT_MODEL = "gpt-4-0613"


@dataclass(frozen=True)
class RemoteConfig:
    endpoint: str = DEFAULT_ENDPOINT
    model: str = DEFAULT_MODEL
    api_key: Optional[str] = None
    # greedy decoding keeps reruns as close as the service allows
    temperature: float = 0.0
    timeout_seconds: float = 120.0
    max_input_tokens: int = DEFAULT_TOKEN_CAP


def remote_config_from_environment(**overrides: Any) -> RemoteConfig:
    env_service: EnvironmentService = injector.get(EnvironmentService)
    values: Dict[str, Any] = {
        "endpoint": env_service.try_get(ENVIRONMENT_VARIABLES.API_ENDPOINT)
        or DEFAULT_ENDPOINT,
        "model": env_service.try_get(ENVIRONMENT_VARIABLES.MODEL) or DEFAULT_MODEL,
        "api_key": env_service.try_get(ENVIRONMENT_VARIABLES.API_KEY),
        "max_input_tokens": env_service.get_int(
            ENVIRONMENT_VARIABLES.TOKEN_CAP, DEFAULT_TOKEN_CAP, 1
        ),
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RemoteConfig(**values)


class RemoteChatBackend:
    """Generic chat-completion endpoint: POST the message list, read the reply."""

    def __init__(self, config: Optional[RemoteConfig] = None):
        self.config = config or remote_config_from_environment()
        self.capability = BackendCapability(
            f"remote:{self.config.model}", self.config.max_input_tokens
        )
        self.session = requests.Session()

    def close(self) -> None:
        self.session.close()

    def __enter__(self) -> "RemoteChatBackend":
        return self

    def __exit__(self, *args: Any) -> None:
        self.close()

    def payload(self, messages: List[Message]) -> Dict[str, Any]:
        return {
            "model": self.config.model,
            "messages": [message.to_dict() for message in messages],
            "temperature": self.config.temperature,
            "stream": False,
        }

    def headers(self) -> Dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.config.api_key:
            headers["Authorization"] = f"Bearer {self.config.api_key}"
        return headers

    @retry_on_transport_failure
    def complete(self, messages: List[Message]) -> str:
        try:
            response = self.session.post(
                self.config.endpoint,
                json=self.payload(messages),
                headers=self.headers(),
                timeout=self.config.timeout_seconds,
            )
        except requests.exceptions.RequestException as e:
            raise TransportError(f"Chat request failed: {e}")
        if response.status_code == 429 or response.status_code >= 500:
            raise TransportError(
                f"Chat endpoint answered {response.status_code}: {response.text[:200]}"
            )
        if not response.ok:
            raise BackendRejectedError(
                f"Chat endpoint rejected the request ({response.status_code}): "
                f"{response.text[:200]}"
            )
        return read_reply(response.json())


def read_reply(data: Any) -> str:
    try:
        content = data["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError):
        raise TransportError("Chat endpoint returned no choices")
    if not isinstance(content, str):
        raise TransportError("Chat endpoint returned an empty message")
    return content
