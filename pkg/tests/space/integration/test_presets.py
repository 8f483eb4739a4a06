import numpy as np
import pytest

from hwtune.shared.util import DocumentNotFound, SchemaError
from hwtune.space import (
    DEFAULT_PRESET,
    Configuration,
    InvariantError,
    UnclampableError,
    ViolationKind,
    clamp,
    default_config,
    list_presets,
    load_preset,
    load_space,
    load_space_file,
    serialize_space,
    validate,
)
from tests import reset_di  # noqa


PRESETS = [
    "deploy_appendix_d",
    "llama_appendix_d",
    "llama_appendix_e_prompt",
    "resnet_appendix_d",
    "resnet_appendix_e_prompt",
]


def test_list_presets():
    assert list_presets() == PRESETS
    assert DEFAULT_PRESET in PRESETS


def test_resnet_preset():
    space = load_preset("resnet_appendix_d")

    assert len(space) == 5
    assert default_config(space).assignments == {
        "learning_rate": 0.01,
        "batch_size": 128,
        "weight_decay": 5e-4,
        "momentum": 0.9,
        "num_epochs": 12,
    }
    assert (space["learning_rate"].lower, space["learning_rate"].upper) == (1e-5, 0.2)
    assert space["learning_rate"].log_scale


def test_llama_preset():
    space = load_preset("llama_appendix_d")

    assert len(space) == 9
    assert default_config(space)["learning_rate"] == 4e-4
    assert space["lora_dropout"].lower == 0.0


def test_unknown_preset():
    with pytest.raises(DocumentNotFound):
        load_preset("vgg_unknown")


@pytest.mark.parametrize("preset", PRESETS)
def test_serialize_round_trip(preset):
    space = load_preset(preset)

    assert load_space(serialize_space(space)) == space


@pytest.mark.parametrize("preset", PRESETS)
def test_defaults_validate(preset):
    space = load_preset(preset)

    assert validate(space, default_config(space)).is_valid


def test_inverted_range_names_parameter():
    document = """
name: broken
params:
  - name: momentum
    kind: uniform-float
    lower: 0.99
    upper: 0.5
    default: 0.9
"""
    with pytest.raises(InvariantError) as e:
        load_space(document)
    assert e.value.parameter == "momentum"


def test_unknown_kind():
    document = """
name: broken
params:
  - name: x
    kind: normal
    default: 0
"""
    with pytest.raises(SchemaError):
        load_space(document)


def test_missing_params_list():
    with pytest.raises(SchemaError):
        load_space("name: broken")


def test_load_space_file(tmp_path):
    path = tmp_path / "space.yaml"
    path.write_text(serialize_space(load_preset("resnet_appendix_d")))

    assert load_space_file(path) == load_preset("resnet_appendix_d")


def test_load_missing_space_file(tmp_path):
    with pytest.raises(DocumentNotFound):
        load_space_file(tmp_path / "nope.yaml")


def corrupt(space, rng):
    """Breaks a default configuration in exactly one way, returns the expected kind."""
    assignments = dict(default_config(space).assignments)
    param = space.params[int(rng.integers(len(space)))]
    mode = int(rng.integers(4))
    if mode == 0:
        assignments[f"bogus_{int(rng.integers(100))}"] = float(rng.random())
        return assignments, ViolationKind.UNKNOWN_PARAMETER
    if mode == 1:
        del assignments[param.name]
        return assignments, ViolationKind.MISSING_PARAMETER
    if mode == 2:
        assignments[param.name] = [None, {"a": 1}, ["x"]][int(rng.integers(3))]
        return assignments, ViolationKind.TYPE_MISMATCH
    if param.is_numeric:
        width = param.upper - param.lower
        offset = width * (0.01 + rng.random()) + 1
        if rng.random() < 0.5:
            assignments[param.name] = param.upper + offset
        else:
            assignments[param.name] = param.lower - offset
    else:
        assignments[param.name] = f"not_a_choice_{int(rng.integers(100))}"
    return assignments, ViolationKind.OUT_OF_RANGE


@pytest.mark.parametrize("preset", PRESETS)
def test_corrupted_configs_are_classified(preset):
    space = load_preset(preset)
    rng = np.random.default_rng(2024)

    for _ in range(10000):
        assignments, expected = corrupt(space, rng)
        config = Configuration(assignments, space.name)

        verdict = validate(space, config)

        assert not verdict.is_valid
        assert [v.kind for v in verdict.violations] == [expected]
        if expected in (ViolationKind.OUT_OF_RANGE, ViolationKind.MISSING_PARAMETER):
            try:
                repaired = clamp(space, config)
            except UnclampableError:
                assert not space[verdict.violations[0].parameter].is_numeric
            else:
                assert validate(space, repaired).is_valid
