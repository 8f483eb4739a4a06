import json
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Tuple

from hwtune.shared.typing import Identifier, Value
from hwtune.shared.util import InvalidFormat, SelfValidatingDataclass

from .exceptions import InvariantError
from .param_spec import ParamSpec


@dataclass(frozen=True)
class SearchSpace(SelfValidatingDataclass):
    name: Identifier
    params: Tuple[ParamSpec, ...] = ()

    def __post_init__(self):
        try:
            super().__post_init__()
        except InvalidFormat as e:
            raise InvariantError(str(self.name), e.msg)
        seen = set()
        for param in self.params:
            if param.name in seen:
                raise InvariantError(param.name, "duplicate parameter name")
            seen.add(param.name)

    def __iter__(self) -> Iterator[ParamSpec]:
        return iter(self.params)

    def __len__(self) -> int:
        return len(self.params)

    def __contains__(self, name: object) -> bool:
        return any(param.name == name for param in self.params)

    def __getitem__(self, name: str) -> ParamSpec:
        for param in self.params:
            if param.name == name:
                return param
        raise KeyError(name)

    @property
    def names(self) -> List[str]:
        return [param.name for param in self.params]


@dataclass(frozen=True)
class Configuration:
    """
    A named-value assignment over a search space. Assignments keep the order they
    were given in; configurations produced by this package follow declaration order.
    """

    assignments: Dict[str, Value] = field(default_factory=dict)
    space_name: str = ""

    def __getitem__(self, name: str) -> Value:
        return self.assignments[name]

    def to_json(self) -> str:
        return json.dumps(self.assignments)

    def with_value(self, name: str, value: Value) -> "Configuration":
        assignments = dict(self.assignments)
        assignments[name] = value
        return Configuration(assignments, self.space_name)


def default_config(space: SearchSpace) -> Configuration:
    return Configuration(
        {param.name: param.default for param in space.params}, space.name
    )
