from typing import Any

from hwtune.shared.util import HwtuneException, InvalidFormat


class ProfileError(InvalidFormat):
    pass


class UnknownSchemeError(InvalidFormat):
    def __init__(self, label: Any):
        super().__init__(f"Unknown quantization scheme '{label}'")
        self.label = label


class InvalidParameterCount(HwtuneException):
    def __init__(self, param_count: Any):
        super().__init__(f"The parameter count has to be > 0, got {param_count}")
        self.param_count = param_count


class EmptyCandidateError(HwtuneException):
    def __init__(self):
        super().__init__("No admitted quantization scheme to choose from")


class MissingEntryError(HwtuneException):
    def __init__(self, model: str, scheme: str):
        super().__init__(f"The throughput table has no entry for ({model}, {scheme})")
        self.model = model
        self.scheme = scheme


class NegativeMemoryBudget(HwtuneException):
    def __init__(self, budget_gb: float):
        super().__init__(f"The memory budget has to be >= 0 GB, got {budget_gb}")
        self.budget_gb = budget_gb
