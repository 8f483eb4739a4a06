from functools import wraps
from time import sleep

from hwtune.shared.di import injector
from hwtune.shared.services import ENVIRONMENT_VARIABLES, EnvironmentService
from hwtune.shared.util import logger

from .exceptions import TransportError


def retry_on_transport_failure(fn):
    """
    Retries the wrapped call on TransportError, HWTUNE_MAX_RETRIES tries in total
    and HWTUNE_RETRY_TIMEOUT milliseconds apart.
    """

    @wraps(fn)
    def wrapper(*args, **kwargs):
        env_service: EnvironmentService = injector.get(EnvironmentService)
        RETRY_TIMEOUT = env_service.get_int(ENVIRONMENT_VARIABLES.RETRY_TIMEOUT, 500, 0)
        MAX_RETRIES = env_service.get_int(ENVIRONMENT_VARIABLES.MAX_RETRIES, 3, 1)
        tries = 0
        while True:
            try:
                return fn(*args, **kwargs)
            except TransportError as e:
                tries += 1
                if tries >= MAX_RETRIES:
                    raise
                logger.warning(
                    f"Retrying chat request ({tries}/{MAX_RETRIES}) after: {e.msg}"
                )
            if RETRY_TIMEOUT:
                sleep(RETRY_TIMEOUT / 1000)

    return wrapper
