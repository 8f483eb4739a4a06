from dataclasses import FrozenInstanceError, dataclass
from typing import List, Optional

import pytest

from hwtune.shared.typing import Dim3, Identifier, PositiveInt, Shape4
from hwtune.shared.util import InvalidFormat, SelfValidatingDataclass


@dataclass(frozen=True)
class Launch(SelfValidatingDataclass):
    name: Identifier
    grid: Dim3
    shape: Shape4
    unroll: PositiveInt
    tiling: Optional[PositiveInt] = None
    sizes: Optional[List[PositiveInt]] = None


def test_valid():
    launch = Launch("softmax", (32, 1, 1), (1024, 1, 32, 1), 2, 4, [1, 2])

    assert launch.grid == (32, 1, 1)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"name": "1abc"},
        {"grid": (32, 1)},
        {"grid": (32, 0, 1)},
        {"shape": (1, 1, 1)},
        {"unroll": 0},
        {"unroll": True},
        {"tiling": -1},
    ],
)
def test_invalid(kwargs):
    values = {
        "name": "softmax",
        "grid": (32, 1, 1),
        "shape": (1024, 1, 32, 1),
        "unroll": 2,
    }
    values.update(kwargs)

    with pytest.raises(InvalidFormat):
        Launch(**values)


def test_optional_none():
    Launch("softmax", (32, 1, 1), (1024, 1, 32, 1), 2)


def test_frozen():
    launch = Launch("softmax", (32, 1, 1), (1024, 1, 32, 1), 2)

    with pytest.raises(FrozenInstanceError):
        launch.unroll = 4  # type: ignore
