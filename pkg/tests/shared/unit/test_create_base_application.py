import io
from unittest.mock import patch

from hwtune.shared import create_base_application
from tests import reset_di  # noqa


def test_create_base_application():
    stream = io.StringIO()
    with patch("hwtune.shared.init_logging") as init_logging, patch(
        "hwtune.shared.otel.init"
    ) as init:
        create_base_application("hwtune-test", stream)

    init_logging.assert_called_once_with(stream)
    init.assert_called_once_with("hwtune-test")


def test_create_base_application_default_name():
    with patch("hwtune.shared.init_logging"), patch("hwtune.shared.otel.init") as init:
        create_base_application()

    init.assert_called_once_with("hwtune")
