from hwtune.hardware import (
    FP16,
    INT4,
    INT8,
    STANDARD_CANDIDATES,
    admitted,
    load_table,
    memory_gate,
    select_quant_by_measurement,
    select_quant_by_profile,
)
from tests import a6000, adreno740, reset_di  # noqa


# budget -> (FP16, INT8, INT4) admitted for a 13B model
SELECTED_CONFIGURATIONS = {
    4: (False, False, False),
    12: (False, False, True),
    20: (False, True, True),
    28: (True, True, True),
}


def test_memory_grid_cell_for_cell():
    for budget, expected in SELECTED_CONFIGURATIONS.items():
        verdicts = memory_gate(13e9, budget, [FP16, INT8, INT4])

        assert tuple(verdicts[s].admitted for s in (FP16, INT8, INT4)) == expected


def test_measurement_matches_brute_force():
    table = load_table("adreno740_tokens")
    chosen = {}

    for model in table.models:
        candidates = table.schemes_for(model)
        best_rate = max(table.get(model, s) for s in candidates)
        brute_force = [s for s in candidates if table.get(model, s) == best_rate]

        chosen[model] = select_quant_by_measurement(table, model, candidates)

        assert chosen[model] in brute_force

    assert chosen == {
        "openllama-3B": INT8,
        "tinyllama-1.1B": INT8,
        "gpt2-large-774M": FP16,
    }


def test_profile_selection_after_gate(a6000, adreno740):
    # both devices are given a 10 GB limit, so a 3B model keeps every scheme
    gate = memory_gate(3e9, adreno740.memory_budget_gb, STANDARD_CANDIDATES)

    assert select_quant_by_profile(adreno740, 3e9, admitted(gate)).best == INT8
    assert select_quant_by_profile(a6000, 3e9, admitted(gate)).best == INT4


def test_profile_selection_on_13b_within_10_gb(a6000):
    gate = memory_gate(13e9, a6000.memory_budget_gb, STANDARD_CANDIDATES)

    assert admitted(gate) == [INT4]
    assert select_quant_by_profile(a6000, 13e9, admitted(gate)).best == INT4
