import numpy as np
import pytest

from hwtune.agent import CoordinateDescentBackend
from hwtune.optimizers import (
    ACCURACY,
    LATENCY,
    NSGA2,
    best_so_far,
    build_optimizer,
    default_population,
    dominates,
    drive,
    pareto_front,
)
from hwtune.optimizers.pareto import score_matrix
from hwtune.prompt import render_static
from hwtune.space import encode, validate
from tests import float_space, reset_di, services, sphere_value  # noqa


BUDGET = 10
SEEDS = range(20)
OPTIMIZERS = ["random", "local", "bayesian", "nsga2", "agent"]


def make_optimizer(name, space, seed):
    options = {}
    if name == "agent":
        options = {
            "backend": CoordinateDescentBackend(space, seed=seed),
            "static_prompt": render_static(space),
        }
    return build_optimizer(
        name,
        space,
        seed=seed,
        budget=BUDGET,
        objectives=(ACCURACY, LATENCY),
        **options,
    )


def sphere_with_latency(space, optimum):
    def evaluate(config):
        return {
            "accuracy": sphere_value(space, config, optimum),
            "latency": 1.0 + float(np.sum(encode(space, config))),
        }

    return evaluate


@pytest.mark.parametrize("name", OPTIMIZERS)
def test_ten_rounds_on_the_sphere(services, name):
    space = float_space()
    for seed in SEEDS:
        optimum = np.random.default_rng(2000 + seed).random(len(space))
        optimizer = make_optimizer(name, space, seed)

        observations = drive(optimizer, sphere_with_latency(space, optimum))

        assert len(observations) == BUDGET
        trace = best_so_far(observations, "accuracy")
        assert all(a <= b for a, b in zip(trace, trace[1:]))
        assert all(validate(space, o.config).is_valid for o in observations)


def test_nsga2_front_at_budget_ten(services):
    space = float_space()
    assert default_population(BUDGET) == 4
    for seed in SEEDS:
        optimum = np.random.default_rng(3000 + seed).random(len(space))
        optimizer = make_optimizer("nsga2", space, seed)
        assert isinstance(optimizer, NSGA2)
        assert optimizer.population == 4

        observations = drive(optimizer, sphere_with_latency(space, optimum))

        front = pareto_front(observations, (ACCURACY, LATENCY))
        assert front.points
        scores = score_matrix(front.points, (ACCURACY, LATENCY))
        assert not any(dominates(b, a) for a in scores for b in scores)
