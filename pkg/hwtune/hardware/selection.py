from dataclasses import dataclass
from typing import List, Sequence, Tuple

from hwtune.shared.util import logger

from .exceptions import EmptyCandidateError
from .memory import weight_memory_gb
from .profile import HardwareProfile
from .quant_scheme import QuantScheme
from .throughput_table import ThroughputTable


@dataclass(frozen=True)
class QuantRanking:
    ranked: Tuple[QuantScheme, ...]
    rationale: str

    @property
    def best(self) -> QuantScheme:
        return self.ranked[0]


def effective_throughput(profile: HardwareProfile, scheme: QuantScheme) -> float:
    """
    Declared rate of the precision the scheme runs in, scaled by how many weights
    fit into one FP16-wide operand.
    """
    rate = profile.compute_rate(scheme.precision)
    return rate * 16 / scheme.weight_bits


def _rank_key(profile: HardwareProfile, scheme: QuantScheme):
    return (
        not profile.is_native(scheme.precision),
        -effective_throughput(profile, scheme),
        scheme.weight_bits,
    )


def select_quant_by_profile(
    profile: HardwareProfile, param_count: float, admitted: Sequence[QuantScheme]
) -> QuantRanking:
    if not admitted:
        raise EmptyCandidateError()
    if len(admitted) == 1:
        only = admitted[0]
        return QuantRanking(
            (only,),
            f"{only.label} is the only admissible scheme "
            f"({weight_memory_gb(param_count, only):g} GB of weights).",
        )

    ranked = sorted(admitted, key=lambda s: _rank_key(profile, s))
    native = [s for s in ranked if profile.is_native(s.precision)]
    emulated = [s for s in ranked if not profile.is_native(s.precision)]
    lines = [f"{ranked[0].label} is ranked first on {profile.name}."]
    if emulated:
        lines.append(
            "Natively supported precisions rank above emulated ones: "
            + ", ".join(
                f"{s.label} runs emulated via "
                f"{profile.execution_precision(s.precision)}"
                for s in emulated
            )
            + "."
        )
    if native:
        lines.append(
            "Among native precisions the effective throughput "
            "(declared rate x 16 / weight bits) decides: "
            + ", ".join(
                f"{s.label} {effective_throughput(profile, s):g}" for s in native
            )
            + "."
        )
        if len(native) > 1 and effective_throughput(
            profile, native[0]
        ) == effective_throughput(profile, native[1]):
            lines.append(
                f"{native[0].label} and {native[1].label} tie, the scheme with "
                "fewer weight bits wins."
            )
    rationale = " ".join(lines)
    logger.debug(rationale)
    return QuantRanking(tuple(ranked), rationale)


def select_quant_by_measurement(
    table: ThroughputTable, model: str, admitted: Sequence[QuantScheme]
) -> QuantScheme:
    if not admitted:
        raise EmptyCandidateError()
    measured: List[Tuple[float, int, QuantScheme]] = [
        (table.get(model, s), -s.weight_bits, s) for s in admitted
    ]
    return max(measured, key=lambda entry: (entry[0], entry[1]))[2]
