import json
from pathlib import Path
from unittest.mock import MagicMock

import pytest
import requests

from hwtune.agent import (
    BackendRejectedError,
    RemoteChatBackend,
    RemoteConfig,
    TransportError,
    parse_response,
)
from hwtune.agent.remote import remote_config_from_environment
from hwtune.prompt import Message
from hwtune.shared.di import injector
from hwtune.shared.services import ENVIRONMENT_VARIABLES, EnvironmentService
from tests import reset_di, resnet_space, services  # noqa


GOLDEN_DIR = Path(__file__).parent.parent / "golden"

MESSAGES = [
    Message("system", "You are a tuning assistant."),
    Message("user", "Please provide the configuration for the first round."),
]


def response(status_code=200, data=None, text=""):
    mock = MagicMock()
    mock.status_code = status_code
    mock.ok = status_code < 400
    mock.text = text
    mock.json.return_value = data
    return mock


def golden(name):
    return json.loads((GOLDEN_DIR / name).read_text())


@pytest.fixture()
def env(services):
    env_service = injector.get(EnvironmentService)
    env_service.set(ENVIRONMENT_VARIABLES.RETRY_TIMEOUT, "0")
    yield env_service


@pytest.fixture()
def backend(env):
    backend = RemoteChatBackend(RemoteConfig(api_key="secret"))
    backend.session = MagicMock()
    yield backend


def test_request_payload(backend):
    backend.session.post.return_value = response(data=golden("chat_response.json"))

    backend.complete(MESSAGES)

    args, kwargs = backend.session.post.call_args
    assert args == ("https://api.openai.com/v1/chat/completions",)
    assert kwargs["json"] == golden("chat_request.json")
    assert kwargs["headers"]["Authorization"] == "Bearer secret"
    assert kwargs["timeout"] == 120.0


def test_reply_parses(backend, resnet_space):
    backend.session.post.return_value = response(data=golden("chat_response.json"))

    text = backend.complete(MESSAGES)

    assert parse_response(text, resnet_space).is_valid


def test_no_key_no_authorization(env):
    backend = RemoteChatBackend(RemoteConfig())

    assert "Authorization" not in backend.headers()


@pytest.mark.parametrize("status_code", [429, 500, 503])
def test_retries_transient_failures(backend, status_code):
    backend.session.post.side_effect = [
        response(status_code, text="busy"),
        response(data=golden("chat_response.json")),
    ]

    text = backend.complete(MESSAGES)

    assert text.startswith("Thought:")
    assert backend.session.post.call_count == 2


def test_retries_connection_errors(backend):
    backend.session.post.side_effect = requests.exceptions.ConnectionError("down")

    with pytest.raises(TransportError):
        backend.complete(MESSAGES)

    assert backend.session.post.call_count == 3


def test_max_retries_from_environment(backend, env):
    env.set(ENVIRONMENT_VARIABLES.MAX_RETRIES, "5")
    backend.session.post.return_value = response(502)

    with pytest.raises(TransportError):
        backend.complete(MESSAGES)

    assert backend.session.post.call_count == 5


def test_rejected_request_is_not_retried(backend):
    backend.session.post.return_value = response(401, text="invalid api key")

    with pytest.raises(BackendRejectedError) as e:
        backend.complete(MESSAGES)

    assert "401" in e.value.msg
    assert backend.session.post.call_count == 1


@pytest.mark.parametrize(
    "data", [{}, {"choices": []}, {"choices": [{"message": {"content": None}}]}]
)
def test_missing_reply(backend, data):
    backend.session.post.return_value = response(data=data)

    with pytest.raises(TransportError):
        backend.complete(MESSAGES)


def test_config_from_environment(env):
    env.set(ENVIRONMENT_VARIABLES.MODEL, "local-model")
    env.set(ENVIRONMENT_VARIABLES.API_ENDPOINT, "http://localhost:8000/v1/chat")
    env.set(ENVIRONMENT_VARIABLES.TOKEN_CAP, "8000")

    config = remote_config_from_environment(model=None, temperature=0.5)

    assert config.model == "local-model"
    assert config.endpoint == "http://localhost:8000/v1/chat"
    assert config.max_input_tokens == 8000
    assert config.temperature == 0.5
    assert RemoteChatBackend(config).capability.max_input_tokens == 8000


def test_close_releases_the_session(backend):
    backend.close()

    backend.session.close.assert_called_once()


def test_context_manager_closes(env):
    with RemoteChatBackend(RemoteConfig()) as backend:
        backend.session = MagicMock()

    backend.session.close.assert_called_once()
