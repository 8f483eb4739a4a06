from .environment_service import (  # noqa
    ENVIRONMENT_VARIABLES,
    EnvironmentService,
    EnvironmentVariableInvalid,
    EnvironmentVariableMissing,
)


def setup_di():
    from hwtune.shared.di import injector

    injector.register(EnvironmentService, EnvironmentService)
