import pytest
from hypothesis import given
from hypothesis import strategies as st

from hwtune.hardware import (
    FP16,
    INT4,
    INT8,
    STANDARD_CANDIDATES,
    InvalidParameterCount,
    NegativeMemoryBudget,
    admitted,
    memory_gate,
    weight_memory_gb,
)
from tests import reset_di  # noqa


LLAMA2_13B = 13e9


@pytest.mark.parametrize("scheme,expected", [(FP16, 26.0), (INT8, 13.0), (INT4, 6.5)])
def test_weight_memory(scheme, expected):
    assert weight_memory_gb(LLAMA2_13B, scheme) == expected


def test_overhead_factor():
    required = weight_memory_gb(LLAMA2_13B, INT8, overhead_factor=1.2)

    assert required == pytest.approx(15.6)


@pytest.mark.parametrize("param_count", [0, -1])
def test_invalid_param_count(param_count):
    with pytest.raises(InvalidParameterCount):
        weight_memory_gb(param_count, INT8)


@pytest.mark.parametrize(
    "budget,expected",
    [
        (4, []),
        (12, [INT4]),
        (20, [INT8, INT4]),
        (28, [FP16, INT8, INT4]),
    ],
)
def test_memory_gate_grid(budget, expected):
    verdicts = memory_gate(LLAMA2_13B, budget, STANDARD_CANDIDATES)

    assert admitted(verdicts) == expected
    assert list(verdicts) == STANDARD_CANDIDATES


def test_rejection_carries_requirement():
    verdicts = memory_gate(LLAMA2_13B, 12, STANDARD_CANDIDATES)

    assert str(verdicts[FP16]) == "reject(26)"
    assert str(verdicts[INT8]) == "reject(13)"
    assert str(verdicts[INT4]) == "admit"
    assert verdicts[INT4].required_gb == 6.5


def test_exact_fit_is_admitted():
    assert memory_gate(LLAMA2_13B, 13.0, [INT8])[INT8].admitted


def test_negative_budget():
    with pytest.raises(NegativeMemoryBudget):
        memory_gate(LLAMA2_13B, -1, STANDARD_CANDIDATES)


@given(
    param_count=st.floats(min_value=1e6, max_value=1e12),
    budget=st.floats(min_value=0, max_value=1e4),
    extra=st.floats(min_value=0, max_value=1e4),
)
def test_gate_is_monotone(param_count, budget, extra):
    low = memory_gate(param_count, budget, STANDARD_CANDIDATES)
    high = memory_gate(param_count, budget + extra, STANDARD_CANDIDATES)

    for scheme in STANDARD_CANDIDATES:
        if low[scheme].admitted:
            assert high[scheme].admitted
    if low[INT8].admitted:
        assert low[INT4].admitted
    if low[FP16].admitted:
        assert low[INT8].admitted
