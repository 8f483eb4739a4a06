from typing import List

from hwtune.shared.util import HwtuneException, InvalidFormat


class KernelSpecError(InvalidFormat):
    pass


class InvalidConfigError(HwtuneException):
    def __init__(self, violations: List[str]):
        super().__init__("Invalid kernel config: " + "; ".join(violations))
        self.violations = violations


class UnsupportedPrecisionError(HwtuneException):
    def __init__(self, profile: str, precision: str):
        super().__init__(f"{profile} declares no throughput for {precision}")
        self.profile = profile
        self.precision = precision


class StrategyExhausted(HwtuneException):
    """Raised by a strategy that has no candidates left."""
