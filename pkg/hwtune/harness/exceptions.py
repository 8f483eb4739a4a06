from typing import List

from hwtune.shared.util import HwtuneException, InvalidFormat


class EvaluatorError(HwtuneException):
    pass


class EvaluatorTimeout(EvaluatorError):
    def __init__(self, command: str, timeout: float):
        super().__init__(f"'{command}' did not finish within {timeout:g}s")
        self.timeout = timeout


class NonzeroExit(EvaluatorError):
    def __init__(self, code: int, stderr_tail: str):
        super().__init__(f"Evaluator exited with code {code}: {stderr_tail}")
        self.code = code
        self.stderr_tail = stderr_tail


class MetricsParseError(EvaluatorError):
    def __init__(self, field: str, reason: str):
        super().__init__(f"Metrics field '{field}': {reason}")
        self.field = field


class DimensionMismatchError(EvaluatorError):
    def __init__(self, expected: int, actual: int):
        super().__init__(
            f"The evaluator was declared for {expected} dimensions, the space has "
            f"{actual}"
        )
        self.expected = expected
        self.actual = actual


class ManifestError(InvalidFormat):
    pass


class ComparisonFailed(HwtuneException):
    def __init__(self, failed: List[str]):
        super().__init__(f"{len(failed)} comparison runs failed: {', '.join(failed)}")
        self.failed = failed


class RunDirectoryError(HwtuneException):
    pass
