import math
from typing import Dict, Sequence, Union

import numpy as np

from hwtune.shared.typing import Value
from hwtune.shared.util import BadCodingError

from .param_spec import ParamKind, ParamSpec, choice_index
from .search_space import Configuration, SearchSpace


Seed = Union[int, Sequence[int], np.random.SeedSequence]


def sample_value(param: ParamSpec, rng: np.random.Generator) -> Value:
    if param.kind == ParamKind.CATEGORICAL:
        return param.choices[int(rng.integers(len(param.choices)))]  # type: ignore

    lower, upper = param.lower, param.upper
    if param.log_scale:
        raw = math.exp(rng.uniform(math.log(lower), math.log(upper)))  # type: ignore
    elif param.kind == ParamKind.UNIFORM_INT:
        return int(rng.integers(int(lower), int(upper) + 1))  # type: ignore
    else:
        raw = float(rng.uniform(lower, upper))

    if param.kind == ParamKind.UNIFORM_INT:
        raw = math.floor(raw + 0.5)
        return int(min(max(raw, lower), upper))  # type: ignore
    # exp(log(x)) may overshoot by one ulp
    return float(min(max(raw, lower), upper))  # type: ignore


def sample(space: SearchSpace, rng_seed: Seed) -> Configuration:
    rng = np.random.default_rng(rng_seed)
    assignments: Dict[str, Value] = {
        param.name: sample_value(param, rng) for param in space.params
    }
    return Configuration(assignments, space.name)


def encode_value(param: ParamSpec, value: Value) -> float:
    if param.kind == ParamKind.CATEGORICAL:
        choices = param.choices or ()
        index = choice_index(value, choices)
        if index < 0:
            raise BadCodingError(f"{value!r} is not a choice of {param.name}")
        return (index + 0.5) / len(choices)
    lower, upper = float(param.lower), float(param.upper)  # type: ignore
    x = float(value)  # type: ignore
    if param.log_scale:
        lower, upper, x = math.log(lower), math.log(upper), math.log(x)
    return (x - lower) / (upper - lower)


def decode_value(param: ParamSpec, unit: float) -> Value:
    unit = min(max(float(unit), 0.0), 1.0)
    if param.kind == ParamKind.CATEGORICAL:
        choices = param.choices or ()
        return choices[min(int(unit * len(choices)), len(choices) - 1)]
    lower, upper = float(param.lower), float(param.upper)  # type: ignore
    if param.log_scale:
        value = math.exp(math.log(lower) + unit * (math.log(upper) - math.log(lower)))
    else:
        value = lower + unit * (upper - lower)
    if param.kind == ParamKind.UNIFORM_INT:
        return int(min(max(math.floor(value + 0.5), lower), upper))
    return float(min(max(value, lower), upper))


def encode(space: SearchSpace, config: Configuration) -> np.ndarray:
    """Maps a configuration into the unit cube, log parameters in the log domain."""
    return np.array(
        [encode_value(param, config.assignments[param.name]) for param in space],
        dtype=float,
    )


def decode(space: SearchSpace, unit: Sequence[float]) -> Configuration:
    if len(unit) != len(space):
        raise BadCodingError(f"Expected {len(space)} coordinates, got {len(unit)}")
    return Configuration(
        {param.name: decode_value(param, x) for param, x in zip(space.params, unit)},
        space.name,
    )
