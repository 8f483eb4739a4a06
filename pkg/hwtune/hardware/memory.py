from dataclasses import dataclass
from typing import Dict, List, Sequence

from .exceptions import InvalidParameterCount, NegativeMemoryBudget
from .quant_scheme import QuantScheme


BYTES_PER_GB = 1e9


@dataclass(frozen=True)
class GateVerdict:
    scheme: QuantScheme
    admitted: bool
    required_gb: float

    def __str__(self) -> str:
        if self.admitted:
            return "admit"
        return f"reject({self.required_gb:g})"


def weight_memory_gb(
    param_count: float, scheme: QuantScheme, overhead_factor: float = 1.0
) -> float:
    """
    Pure weight footprint in decimal gigabytes. Activations and the KV cache are
    not modelled; `overhead_factor` scales the result for callers who want a margin.
    """
    if not param_count > 0:
        raise InvalidParameterCount(param_count)
    return param_count * scheme.weight_bits / 8 / BYTES_PER_GB * overhead_factor


def memory_gate(
    param_count: float,
    budget_gb: float,
    candidates: Sequence[QuantScheme],
    overhead_factor: float = 1.0,
) -> Dict[QuantScheme, GateVerdict]:
    if budget_gb < 0:
        raise NegativeMemoryBudget(budget_gb)
    verdicts: Dict[QuantScheme, GateVerdict] = {}
    for candidate in candidates:
        required = weight_memory_gb(param_count, candidate, overhead_factor)
        verdicts[candidate] = GateVerdict(candidate, required <= budget_gb, required)
    return verdicts


def admitted(verdicts: Dict[QuantScheme, GateVerdict]) -> List[QuantScheme]:
    return [scheme for scheme, verdict in verdicts.items() if verdict.admitted]
