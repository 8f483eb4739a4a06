from .di import injector  # noqa
from .util import otel
from .util.logging import init_logging


def create_base_application(service_name: str = "hwtune", stream=None) -> None:
    """
    Shared start-up for every entry point: logging first, then tracing, so that the
    otel set-up can already log.
    """
    init_logging(stream)
    otel.init(service_name)
