import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from hwtune.shared.typing import Value

from .exceptions import UnclampableError
from .param_spec import (
    ParamKind,
    ParamSpec,
    in_choices,
    is_finite_number,
    is_integral,
)
from .search_space import Configuration, SearchSpace


class ViolationKind(str, Enum):
    UNKNOWN_PARAMETER = "UnknownParameter"
    MISSING_PARAMETER = "MissingParameter"
    TYPE_MISMATCH = "TypeMismatch"
    OUT_OF_RANGE = "OutOfRange"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    parameter: str
    value: Any = None

    def __str__(self) -> str:
        if self.kind == ViolationKind.MISSING_PARAMETER:
            return f"{self.kind.value}({self.parameter!r})"
        return f"{self.kind.value}({self.parameter!r}, {self.value!r})"


@dataclass(frozen=True)
class ValidationVerdict:
    violations: Tuple[Violation, ...] = ()

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.is_valid

    def of_kind(self, kind: ViolationKind) -> List[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def describe(self) -> str:
        if self.is_valid:
            return "Valid"
        return ", ".join(str(v) for v in self.violations)


VALID = ValidationVerdict()


def check_value(param: ParamSpec, value: Any) -> Optional[ViolationKind]:
    """Classifies a single value against its parameter, None means it fits."""
    if param.kind == ParamKind.CATEGORICAL:
        if not isinstance(value, (str, int, float, bool)):
            return ViolationKind.TYPE_MISMATCH
        if isinstance(value, float) and not math.isfinite(value):
            return ViolationKind.TYPE_MISMATCH
        if not in_choices(value, param.choices):  # type: ignore
            return ViolationKind.OUT_OF_RANGE
        return None

    if not is_finite_number(value):
        return ViolationKind.TYPE_MISMATCH
    # off the integer grid counts as a range problem, not a type problem
    if param.kind == ParamKind.UNIFORM_INT and not is_integral(value):
        return ViolationKind.OUT_OF_RANGE
    if not param.lower <= value <= param.upper:  # type: ignore
        return ViolationKind.OUT_OF_RANGE
    return None


def validate(space: SearchSpace, config: Configuration) -> ValidationVerdict:
    violations: List[Violation] = []
    for name, value in config.assignments.items():
        if name not in space:
            violations.append(
                Violation(ViolationKind.UNKNOWN_PARAMETER, name, value)
            )
    for param in space.params:
        if param.name not in config.assignments:
            violations.append(Violation(ViolationKind.MISSING_PARAMETER, param.name))
            continue
        value = config.assignments[param.name]
        kind = check_value(param, value)
        if kind is not None:
            violations.append(Violation(kind, param.name, value))
    return ValidationVerdict(tuple(violations)) if violations else VALID


def clamp_value(param: ParamSpec, value: Any) -> Value:
    kind = check_value(param, value)
    if kind == ViolationKind.TYPE_MISMATCH:
        raise UnclampableError(param.name, value, "type mismatch")
    if param.kind == ParamKind.CATEGORICAL:
        if kind is not None:
            raise UnclampableError(param.name, value, "not one of the choices")
        return value

    if param.kind == ParamKind.UNIFORM_INT:
        rounded = math.floor(value + 0.5)
        return int(min(max(rounded, param.lower), param.upper))  # type: ignore
    if value < param.lower:  # type: ignore
        return param.lower  # type: ignore
    if value > param.upper:  # type: ignore
        return param.upper  # type: ignore
    return value


def clamp(space: SearchSpace, config: Configuration) -> Configuration:
    """
    Projects every value onto its parameter's range. Integers are rounded to the
    nearest integer first. Missing parameters get their defaults; unknown keys and
    values of the wrong type cannot be repaired.
    """
    for name, value in config.assignments.items():
        if name not in space:
            raise UnclampableError(name, value, "unknown parameter")

    assignments: Dict[str, Value] = {}
    for param in space.params:
        if param.name not in config.assignments:
            assignments[param.name] = param.default
        else:
            assignments[param.name] = clamp_value(
                param, config.assignments[param.name]
            )
    return Configuration(assignments, space.name)
