import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hwtune.shared.util import BadCodingError
from hwtune.space import (
    ParamKind,
    ParamSpec,
    SearchSpace,
    decode,
    decode_value,
    default_config,
    encode,
    encode_value,
    load_preset,
    sample,
    validate,
)
from hwtune.space.sampling import sample_value
from tests import reset_di, resnet_space  # noqa


def test_sample_is_deterministic(resnet_space):
    assert sample(resnet_space, 42) == sample(resnet_space, 42)


def test_sample_depends_on_seed(resnet_space):
    assert sample(resnet_space, 1) != sample(resnet_space, 2)


def test_adjacent_integers_are_both_observed():
    space = SearchSpace("pair", (ParamSpec("k", ParamKind.UNIFORM_INT, 5, 5, 6),))

    seen = {sample(space, seed)["k"] for seed in range(1000)}

    assert seen == {5, 6}


def test_log_uniform_median():
    param = ParamSpec("lr", ParamKind.UNIFORM_FLOAT, 1e-3, 1e-5, 1e-1, log_scale=True)
    rng = np.random.default_rng(0)

    values = [sample_value(param, rng) for _ in range(10000)]

    assert 8e-4 <= np.median(values) <= 1.2e-3


def test_log_int_stays_integral():
    param = ParamSpec("bs", ParamKind.UNIFORM_INT, 128, 32, 256, log_scale=True)
    rng = np.random.default_rng(3)

    values = {sample_value(param, rng) for _ in range(3000)}

    assert all(isinstance(v, int) and 32 <= v <= 256 for v in values)
    assert {32, 256} <= values


def test_categorical_sampling_covers_choices():
    space = load_preset("deploy_appendix_d")

    seen = {sample(space, seed)["nest_order"] for seed in range(200)}

    assert seen == set(space["nest_order"].choices)


@pytest.mark.parametrize(
    "preset",
    [
        "deploy_appendix_d",
        "llama_appendix_d",
        "llama_appendix_e_prompt",
        "resnet_appendix_d",
        "resnet_appendix_e_prompt",
    ],
)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_samples_always_validate(preset, seed):
    space = load_preset(preset)

    assert validate(space, sample(space, seed)).is_valid


def test_encode_bounds(resnet_space):
    lr = resnet_space["learning_rate"]

    assert encode_value(lr, 1e-5) == pytest.approx(0.0)
    assert encode_value(lr, 0.2) == pytest.approx(1.0)
    # log domain midpoint
    assert encode_value(lr, np.sqrt(1e-5 * 0.2)) == pytest.approx(0.5)


def test_encode_categorical_uses_cell_centers():
    param = ParamSpec("layout", ParamKind.CATEGORICAL, "a", choices=("a", "b"))

    assert encode_value(param, "a") == 0.25
    assert encode_value(param, "b") == 0.75
    assert decode_value(param, 0.25) == "a"
    assert decode_value(param, 1.0) == "b"
    with pytest.raises(BadCodingError):
        encode_value(param, "c")


def test_decode_clips_outside_the_cube(resnet_space):
    config = decode(resnet_space, [-1.0, 2.0, 0.0, 1.0, 0.5])

    assert config["learning_rate"] == pytest.approx(1e-5)
    assert config["batch_size"] == 256
    assert config["weight_decay"] == pytest.approx(1e-6)
    assert config["momentum"] == pytest.approx(0.99)
    assert config["num_epochs"] == 17


def test_decode_wrong_length(resnet_space):
    with pytest.raises(BadCodingError):
        decode(resnet_space, [0.5])


def test_decode_encode_default(resnet_space):
    config = default_config(resnet_space)

    decoded = decode(resnet_space, encode(resnet_space, config))

    for name in resnet_space.names:
        assert decoded[name] == pytest.approx(config[name])
