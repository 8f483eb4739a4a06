import numpy as np
import pytest

from hwtune.optimizers import (
    ACCURACY,
    LATENCY,
    NSGA2,
    BayesianOptimizer,
    BudgetTooSmallError,
    GaussianProcess,
    LocalSearch,
    OptimizerError,
    RandomSearch,
    SingularModelError,
    drive,
)
from hwtune.optimizers.local_search import step
from hwtune.space import default_config, list_presets, load_preset, validate
from tests import float_space, reset_di, resnet_space, sphere_value  # noqa


def sphere(space):
    optimum = np.linspace(0.3, 0.7, len(space))
    return lambda config: {"accuracy": sphere_value(space, config, optimum)}


def configs(observations):
    return [o.config for o in observations]


def test_random_is_deterministic(resnet_space):
    def run(seed):
        return configs(drive(RandomSearch(resnet_space, seed, 5), sphere(resnet_space)))

    assert run(1) == run(1)
    assert run(1) != run(2)


@pytest.mark.parametrize("preset", list_presets())
def test_random_proposals_validate(preset):
    space = load_preset(preset)

    observations = drive(RandomSearch(space, 0, 8), lambda config: {"accuracy": 0.0})

    assert len(observations) == 8
    assert all(validate(space, o.config) for o in observations)


def test_local_search_starts_at_default(resnet_space):
    optimizer = LocalSearch(resnet_space, budget=3)

    assert optimizer.propose().config == default_config(resnet_space)


def test_local_search_moves_one_parameter(resnet_space):
    optimizer = LocalSearch(resnet_space, seed=4, budget=6)

    observations = drive(optimizer, sphere(resnet_space))

    for observation in observations[1:]:
        incumbent = incumbent_before(observations, observation.round)
        changed = [
            name
            for name in resnet_space.names
            if observation.config[name] != incumbent[name]
        ]
        assert len(changed) == 1
        assert validate(resnet_space, observation.config)


def incumbent_before(observations, round):
    seen = [o for o in observations if o.round < round]
    return max(seen, key=lambda o: o.objectives["accuracy"]).config


def test_local_search_never_gets_worse():
    space = float_space()
    optimizer = LocalSearch(space, seed=0, budget=25)

    drive(optimizer, sphere(space))

    best = max(o.objectives["accuracy"] for o in optimizer.observations)
    assert optimizer.incumbent.objectives["accuracy"] == best
    assert best > optimizer.observations[0].objectives["accuracy"]


def test_step_flips_at_bound(resnet_space):
    batch_size = resnet_space["batch_size"]
    momentum = resnet_space["momentum"]

    assert step(batch_size, 256, 1) == 255
    assert step(batch_size, 128, -1) == 127
    assert step(momentum, 0.99, 1) < 0.99


def test_gp_interpolates():
    x = np.array([[0.1], [0.5], [0.9]])
    y = np.array([1.0, 2.0, 0.5])

    model = GaussianProcess(x, y)
    mean, std = model.predict(x)

    assert mean == pytest.approx(y, abs=1e-2)
    assert np.all(std < 0.05)


def test_gp_needs_spread():
    with pytest.raises(SingularModelError):
        GaussianProcess(np.array([[0.1], [0.2]]), np.array([1.0, 1.0]))


def test_bayesian_falls_back_on_flat_objective():
    space = float_space()
    optimizer = BayesianOptimizer(space, seed=0, budget=6, init_rounds=2)

    observations = drive(optimizer, lambda config: {"accuracy": 1.0})

    assert optimizer.fallbacks == [3, 4, 5, 6]
    assert observations[2].config is not None
    assert optimizer.proposals[2].notes.startswith("SingularModelError")


def test_bayesian_init_rounds_match_random():
    space = float_space()
    bayesian = drive(BayesianOptimizer(space, 5, 6, init_rounds=3), sphere(space))
    random = drive(RandomSearch(space, 5, 3), sphere(space))

    assert configs(bayesian[:3]) == configs(random)


@pytest.mark.parametrize("init_rounds", [0, 5, 9])
def test_bayesian_init_rounds_range(init_rounds):
    with pytest.raises(OptimizerError):
        BayesianOptimizer(float_space(), budget=5, init_rounds=init_rounds)


def test_bayesian_proposals_validate(resnet_space):
    optimizer = BayesianOptimizer(resnet_space, seed=2, budget=8)

    observations = drive(optimizer, sphere(resnet_space))

    assert len(observations) == 8
    assert all(validate(resnet_space, o.config) for o in observations)


def test_nsga2_population_rules():
    with pytest.raises(OptimizerError):
        NSGA2(float_space(), budget=20, population=5)
    with pytest.raises(OptimizerError):
        NSGA2(float_space(), budget=20, population=2)
    with pytest.raises(BudgetTooSmallError):
        NSGA2(float_space(), budget=7, population=4)


def two_objectives(config):
    x0, x1 = config["x0"], config["x1"]
    return {"accuracy": x0, "latency": 1.0 + x0**2 + (x1 - 0.5) ** 2}


def test_nsga2_uneven_budget():
    optimizer = NSGA2(float_space(), 3, 11, 4, (ACCURACY, LATENCY))

    observations = drive(optimizer, two_objectives)

    assert len(observations) == 11
    assert [p.round for p in optimizer.proposals] == list(range(1, 12))


def test_nsga2_front_is_non_dominated():
    optimizer = NSGA2(float_space(), 1, 24, 6, (ACCURACY, LATENCY))

    observations = drive(optimizer, two_objectives)
    front = optimizer.front()

    assert 0 < len(front) <= len(observations)
    for point in front:
        assert not any(
            other.objectives["accuracy"] >= point.objectives["accuracy"]
            and other.objectives["latency"] <= point.objectives["latency"]
            and other.objectives != point.objectives
            for other in observations
        )


def test_nsga2_is_deterministic():
    def run():
        optimizer = NSGA2(float_space(), 9, 16, 4, (ACCURACY, LATENCY))
        return configs(drive(optimizer, two_objectives))

    assert run() == run()
