from typing import Protocol
from unittest.mock import MagicMock

import pytest

from hwtune.shared.di import (
    injector as default_injector,
    service_as_factory,
    service_as_singleton,
    service_interface,
)
from hwtune.shared.di.dependency_provider import DependencyProvider
from hwtune.shared.di.exceptions import DependencyInjectionError, DependencyNotFound
from tests import reset_di  # noqa


@pytest.fixture()
def injector():
    yield DependencyProvider()


@service_interface
class BackendProtocol(Protocol):
    def complete(self, text: str) -> str:
        ...


class Backend:
    def complete(self, text: str) -> str:
        return text


@service_as_singleton
class BackendSingleton(Backend):
    pass


@service_as_factory
class BackendFactory(Backend):
    pass


class BrokenBackend:
    def complete(self) -> str:
        return ""


def test_default_injector():
    assert type(default_injector) == DependencyProvider


class TestRegistration:
    def test_singleton(self, injector):
        injector.register(BackendProtocol, BackendSingleton)

        assert injector.get(BackendProtocol) is injector.get(BackendProtocol)

    def test_factory(self, injector):
        injector.register(BackendProtocol, BackendFactory)

        first = injector.get(BackendProtocol)
        assert type(first) == BackendFactory
        assert first is not injector.get(BackendProtocol)

    def test_no_marker(self, injector):
        with pytest.raises(DependencyInjectionError):
            injector.register(BackendProtocol, Backend)

    def test_wrong_signature(self, injector):
        with pytest.raises(DependencyInjectionError):
            injector.check_implements_protocol(BackendProtocol, BrokenBackend)

    def test_marker_dispatch(self, injector):
        injector.register_as_singleton = ras = MagicMock()
        injector.register_as_factory = raf = MagicMock()

        injector.register(BackendProtocol, BackendFactory)

        assert ras.call_count == 0
        assert raf.call_count == 1

    def test_get_unknown(self, injector):
        with pytest.raises(DependencyNotFound):
            injector.get(BackendProtocol)


class TestNamedRegistration:
    def test_get_named(self, injector):
        builder = MagicMock()
        injector.register_named(BackendProtocol, "scripted", builder)

        assert injector.get_named(BackendProtocol, "scripted") is builder

    def test_names_sorted(self, injector):
        injector.register_named(BackendProtocol, "remote", MagicMock())
        injector.register_named(BackendProtocol, "mock", MagicMock())

        assert injector.names(BackendProtocol) == ["mock", "remote"]

    def test_names_of_unknown_protocol(self, injector):
        assert injector.names(BackendProtocol) == []

    def test_unknown_name(self, injector):
        injector.register_named(BackendProtocol, "mock", MagicMock())

        with pytest.raises(DependencyNotFound) as e:
            injector.get_named(BackendProtocol, "remote")
        assert e.value.name == "remote"
        assert e.value.protocol is BackendProtocol

    def test_same_builder_twice(self, injector):
        builder = MagicMock()
        injector.register_named(BackendProtocol, "mock", builder)
        injector.register_named(BackendProtocol, "mock", builder)

        assert injector.names(BackendProtocol) == ["mock"]

    def test_conflicting_builder(self, injector):
        injector.register_named(BackendProtocol, "mock", MagicMock())

        with pytest.raises(DependencyInjectionError):
            injector.register_named(BackendProtocol, "mock", MagicMock())
