import re
from dataclasses import dataclass
from typing import Dict, List, Sequence

from .exceptions import UnknownSchemeError


PRECISIONS = ("FP16", "INT8", "INT4")


@dataclass(frozen=True)
class QuantScheme:
    label: str
    weight_bits: int
    activation_bits: int

    @property
    def precision(self) -> str:
        """The hardware precision the weights are executed in."""
        if self.weight_bits == 16:
            return "FP16"
        return f"INT{self.weight_bits}"

    def __str__(self) -> str:
        return self.label


FP16 = QuantScheme("FP16", 16, 16)
INT8 = QuantScheme("INT8", 8, 8)
INT4 = QuantScheme("INT4", 4, 4)
W8A8 = QuantScheme("W8A8", 8, 8)
W4A4 = QuantScheme("W4A4", 4, 4)
W2A2 = QuantScheme("W2A2", 2, 2)

ALL_SCHEMES: Dict[str, QuantScheme] = {
    s.label: s for s in (FP16, INT8, INT4, W8A8, W4A4, W2A2)
}
STANDARD_CANDIDATES: List[QuantScheme] = [FP16, INT8, INT4]

_wxay = re.compile(r"^W(\d+)A(\d+)$")


def scheme(label: str) -> QuantScheme:
    key = label.strip().upper()
    if key in ALL_SCHEMES:
        return ALL_SCHEMES[key]
    match = _wxay.match(key)
    if match and int(match.group(1)) in (2, 4, 8, 16):
        return QuantScheme(key, int(match.group(1)), int(match.group(2)))
    raise UnknownSchemeError(label)


def schemes(labels: Sequence[str]) -> List[QuantScheme]:
    return [scheme(label) for label in labels]
