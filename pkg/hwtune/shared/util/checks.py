import re
from typing import Any

from .exceptions import InvalidFormat


IDENTIFIER_PATTERN = r"^[A-Za-z_][A-Za-z0-9_\-]*$"
_identifier_regex = re.compile(IDENTIFIER_PATTERN)


def assert_is_identifier(value: Any) -> None:
    if not isinstance(value, str) or not _identifier_regex.match(value):
        raise InvalidFormat(f"'{value}' is not a valid identifier")


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def assert_is_positive_int(value: Any) -> None:
    if not _is_int(value) or value < 1:
        raise InvalidFormat(f"'{value}' is not a positive integer")


def assert_is_int_tuple(value: Any, length: int) -> None:
    if not isinstance(value, tuple) or len(value) != length:
        raise InvalidFormat(f"'{value}' is not a tuple of {length} integers")
    for dim in value:
        assert_is_positive_int(dim)


def assert_is_dim3(value: Any) -> None:
    assert_is_int_tuple(value, 3)


def assert_is_shape4(value: Any) -> None:
    assert_is_int_tuple(value, 4)
