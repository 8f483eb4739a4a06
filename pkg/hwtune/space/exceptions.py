from typing import Any

from hwtune.shared.util import HwtuneException, InvalidFormat


class InvariantError(InvalidFormat):
    def __init__(self, parameter: str, reason: str):
        super().__init__(f"Parameter '{parameter}': {reason}")
        self.parameter = parameter
        self.reason = reason


class UnclampableError(HwtuneException):
    def __init__(self, parameter: str, value: Any, reason: str):
        super().__init__(f"Cannot clamp '{parameter}' = {value!r}: {reason}")
        self.parameter = parameter
        self.value = value
