from typing import Any, Dict, List, NewType, TypeAlias, Union


JSON = Union[str, int, float, bool, None, Dict[str, Any], List[Any]]

# a single hyperparameter value as it appears in a configuration
Value = Union[int, float, str, bool]

Objectives = Dict[str, float]

_Identifier = NewType("_Identifier", str)
_Dim3 = NewType("_Dim3", tuple)
_Shape4 = NewType("_Shape4", tuple)
_PositiveInt = NewType("_PositiveInt", int)

Identifier = Union[str, _Identifier]
Dim3 = Union[tuple, _Dim3]
Shape4 = Union[tuple, _Shape4]
PositiveInt = Union[int, _PositiveInt]

custom_types: List[TypeAlias] = [Identifier, Dim3, Shape4, PositiveInt]
