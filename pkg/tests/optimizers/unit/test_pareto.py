import numpy as np
import pytest

from hwtune.optimizers import (
    ACCURACY,
    LATENCY,
    Observation,
    ParetoFront,
    dominates,
    pareto_front,
)
from hwtune.optimizers.pareto import crowding_distance, non_dominated_sort
from hwtune.shared.util import BadCodingError
from tests import reset_di  # noqa


def point(round, accuracy, latency):
    return Observation(None, {"accuracy": accuracy, "latency": latency}, round)


@pytest.mark.parametrize(
    "a,b,expected",
    [
        ((1, 1), (0, 0), True),
        ((1, 0), (0, 0), True),
        ((0, 0), (0, 0), False),
        ((1, 0), (0, 1), False),
        ((0, 0), (1, 1), False),
    ],
)
def test_dominates(a, b, expected):
    assert dominates(a, b) == expected


def test_non_dominated_sort():
    scores = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [-1.0, -1.0]])

    assert non_dominated_sort(scores) == [[0, 1], [2], [3]]


def test_crowding_distance_keeps_extremes():
    scores = np.array([[0.0, 3.0], [1.0, 2.0], [2.0, 1.0], [3.0, 0.0]])

    distance = crowding_distance(scores, [0, 1, 2, 3])

    assert distance[0] == distance[3] == float("inf")
    assert distance[1] == pytest.approx(4 / 3)
    assert distance[2] == pytest.approx(4 / 3)


def test_front_uses_directions():
    points = [point(1, 0.9, 10.0), point(2, 0.8, 5.0), point(3, 0.7, 6.0)]

    front = pareto_front(points, (ACCURACY, LATENCY))

    assert [p.round for p in front] == [1, 2]
    assert front.best(LATENCY).round == 2
    assert front.best(ACCURACY).round == 1


def test_front_rejects_dominated_points():
    with pytest.raises(BadCodingError):
        ParetoFront((point(1, 0.9, 1.0), point(2, 0.8, 2.0)), (ACCURACY, LATENCY))


def test_equal_points_both_stay():
    front = pareto_front([point(1, 0.5, 1.0), point(2, 0.5, 1.0)], (ACCURACY, LATENCY))

    assert len(front) == 2
