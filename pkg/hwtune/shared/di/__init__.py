from .dependency_provider import (  # noqa
    injector,
    service_as_factory,
    service_as_singleton,
    service_interface,
)
