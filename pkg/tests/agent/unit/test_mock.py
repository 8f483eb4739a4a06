import pytest

from hwtune.agent import (
    CoordinateDescentBackend,
    ScriptedBackend,
    coordinate_descent,
    mock_agent,
    parse_response,
    scripted,
)
from hwtune.kerneltune import kernel_space
from hwtune.prompt import (
    Expect,
    PromptOptions,
    assemble,
    render_dynamic,
    render_static,
)
from hwtune.shared.util import InvalidFormat
from hwtune.space import default_config, validate
from hwtune.trials import TrialRecord
from tests import benchmark_kernels, reset_di, resnet_space, softmax_spec  # noqa


def run_rounds(backend, space, rounds, score):
    static = render_static(space)
    history = []
    replies = []
    for round in range(1, rounds + 1):
        dynamic = render_dynamic(history, rounds - round + 1)
        reply = backend.complete(assemble(static, dynamic).messages)
        replies.append(reply)
        config = parse_response(reply, space).parsed.config
        history.append(TrialRecord(round, config, {"accuracy": score(config)}))
    return history, replies


def lr_score(config):
    return round(1.0 - abs(config["learning_rate"] - 0.05), 6)


def test_scripted_repeats_last_text():
    backend = mock_agent(scripted(["A", "B"]))

    assert [backend.complete([]) for _ in range(3)] == ["A", "B", "B"]
    assert backend.calls == 3


def test_scripted_needs_text():
    with pytest.raises(InvalidFormat):
        ScriptedBackend([])


def test_first_round_is_default(resnet_space):
    backend = mock_agent(coordinate_descent(seed=1), resnet_space)

    history, replies = run_rounds(backend, resnet_space, 1, lr_score)

    assert history[0].config == default_config(resnet_space)
    assert replies[0].startswith("Thought: This is the first round")


def test_second_round_moves_one_parameter(resnet_space):
    backend = mock_agent(coordinate_descent(seed=1), resnet_space)

    history, _ = run_rounds(backend, resnet_space, 2, lr_score)

    first, second = (record.config for record in history)
    changed = [name for name in resnet_space.names if first[name] != second[name]]
    assert len(changed) == 1


def test_ten_rounds_stay_valid(resnet_space):
    backend = mock_agent(coordinate_descent(seed=3), resnet_space)

    history, _ = run_rounds(backend, resnet_space, 10, lr_score)

    assert len(history) == 10
    assert all(validate(resnet_space, record.config) for record in history)


def test_same_seed_same_replies(resnet_space):
    def replies(seed):
        backend = mock_agent(coordinate_descent(seed=seed), resnet_space)
        return run_rounds(backend, resnet_space, 6, lr_score)[1]

    assert replies(7) == replies(7)


def test_minimizing_objective(resnet_space):
    backend = CoordinateDescentBackend(resnet_space, objective="loss", maximize=False)

    bundle = assemble(render_static(resnet_space), render_dynamic([], 3))

    reply = backend.complete(bundle.messages)

    assert parse_response(reply, resnet_space).is_valid


def test_kernel_first_round(softmax_spec):
    backend = mock_agent(
        coordinate_descent(), kernel_spec=softmax_spec, expect=Expect.KERNEL
    )
    static = render_static(
        kernel_space(softmax_spec),
        kernels=[softmax_spec],
        options=PromptOptions(enable_finetune=False),
    )

    reply = backend.complete(assemble(static, render_dynamic([], 5)).messages)

    parsed = parse_response(reply, kernel_space(softmax_spec), Expect.KERNEL).parsed
    assert parsed.kernel_config == softmax_spec.default_config()


def test_needs_a_space():
    with pytest.raises(InvalidFormat):
        CoordinateDescentBackend(None)


def test_kernel_mode_needs_a_spec(resnet_space):
    with pytest.raises(InvalidFormat):
        CoordinateDescentBackend(resnet_space, expect=Expect.BOTH)