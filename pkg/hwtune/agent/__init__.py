from hwtune.shared.di import injector

from .backend import BackendCapability, ChatBackend  # noqa
from .exceptions import (  # noqa
    BackendRejectedError,
    CapacityError,
    ProposalExhaustedError,
    TransportError,
)
from .mock import (  # noqa
    CoordinateDescent,
    CoordinateDescentBackend,
    Scripted,
    ScriptedBackend,
    coordinate_descent,
    mock_agent,
    scripted,
)
from .parsing import (  # noqa
    AgentFailure,
    AgentResponse,
    FailureKind,
    ParsedProposal,
    parse_response,
    render_reply,
)
from .propose import AgentProposal, RetryPolicy, correction_message, propose  # noqa
from .remote import RemoteChatBackend, RemoteConfig  # noqa
from .retry import retry_on_transport_failure  # noqa
from .transport import SendResult, send  # noqa
from .usage import (  # noqa
    DEFAULT_UNIT_PRICE,
    CostReport,
    UnitPrices,
    UsageLedger,
    cost_report,
)


def setup_di():
    injector.register_named(ChatBackend, "scripted", ScriptedBackend)
    injector.register_named(ChatBackend, "coordinate-descent", CoordinateDescentBackend)
    injector.register_named(ChatBackend, "remote", RemoteChatBackend)
