import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional

from hwtune.shared.typing import Identifier
from hwtune.shared.util import (
    DocumentNotFound,
    InvalidFormat,
    SelfValidatingDataclass,
    check_schema,
    compile_schema,
    load_document,
)

from .exceptions import ProfileError
from .quant_scheme import PRECISIONS


PROFILE_DIR = Path(__file__).parent / "profiles"

PERFORMANCE_KEYS = {p: f"{p} Performance" for p in PRECISIONS}

_leading_numeral = re.compile(r"(\d+(?:\.\d+)?)")
_not_native = re.compile(r"not\s+supported", re.IGNORECASE)
_emulated_via = re.compile(r"via\s+(FP16|INT8)", re.IGNORECASE)


@dataclass(frozen=True)
class HardwareProfile(SelfValidatingDataclass):
    name: Identifier
    memory_budget_gb: float
    native_precisions: FrozenSet[str]
    fp16_tflops: float
    int8_tops: float
    int4_tops: float
    int4_emulated_via: Optional[str] = None
    notes: str = ""
    description: str = ""
    spec_sheet: Dict[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        try:
            super().__post_init__()
        except InvalidFormat as e:
            raise ProfileError(e.msg)
        if not self.native_precisions:
            raise ProfileError(f"{self.name}: no natively supported precision")
        unknown = set(self.native_precisions) - set(PRECISIONS)
        if unknown:
            raise ProfileError(f"{self.name}: unknown precisions {sorted(unknown)}")
        if ("INT4" in self.native_precisions) == (self.int4_emulated_via is not None):
            raise ProfileError(
                f"{self.name}: INT4 has to be either native or emulated, not both"
            )
        if self.int4_emulated_via is not None and (
            self.int4_emulated_via not in self.native_precisions
        ):
            raise ProfileError(
                f"{self.name}: INT4 is emulated via {self.int4_emulated_via}, "
                "which is not native"
            )
        for figure in (self.fp16_tflops, self.int8_tops, self.int4_tops):
            if figure < 0:
                raise ProfileError(f"{self.name}: negative throughput {figure}")
        if self.memory_budget_gb < 0:
            raise ProfileError(f"{self.name}: negative memory budget")

    def is_native(self, precision: str) -> bool:
        return precision in self.native_precisions

    def declared_throughput(self, precision: str) -> float:
        """Declared tera-ops per second for a precision, 0 when not declared."""
        return {
            "FP16": self.fp16_tflops,
            "INT8": self.int8_tops,
            "INT4": self.int4_tops,
        }.get(precision, 0.0)

    def execution_precision(self, precision: str) -> str:
        """The precision an operation actually runs in on this device."""
        if precision == "FP32":
            return "FP32"
        if self.is_native(precision):
            return precision
        if precision == "INT4" and self.int4_emulated_via:
            return self.int4_emulated_via
        # anything narrower without native support is widened to INT8
        return "INT8" if self.is_native("INT8") else "FP16"

    def compute_rate(self, precision: str) -> float:
        """Effective tera-ops per second used to run the given precision."""
        if precision == "FP32":
            return self.fp16_tflops / 2
        return self.declared_throughput(self.execution_precision(precision))

    def to_prompt_json(self) -> Dict[str, str]:
        if self.spec_sheet:
            return dict(self.spec_sheet)
        return {
            PERFORMANCE_KEYS["FP16"]: f"{self.fp16_tflops:g} TFLOPS",
            PERFORMANCE_KEYS["INT8"]: f"{self.int8_tops:g} TOPS",
            PERFORMANCE_KEYS["INT4"]: (
                f"{self.int4_tops:g} TOPS"
                if self.is_native("INT4")
                else f"Not Supported Natively (Emulated via {self.int4_emulated_via})"
            ),
        }


profile_schema = compile_schema(
    {
        "type": "object",
        "properties": {
            "name": {"type": "string", "minLength": 1},
            "description": {"type": "string"},
            "memory_budget_gb": {"type": "number", "minimum": 0},
            "spec_sheet": {
                "type": "object",
                "additionalProperties": {"type": ["string", "number"]},
            },
            "native_precisions": {
                "type": "array",
                "items": {"type": "string", "enum": list(PRECISIONS)},
            },
            "notes": {"type": "string"},
        },
        "required": ["name", "memory_budget_gb", "spec_sheet"],
        "additionalProperties": False,
    }
)


def parse_figure(text: Any) -> float:
    """Extracts the leading numeral of a spec-sheet figure like '618 TFLOPS'."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    match = _leading_numeral.search(str(text))
    if not match:
        raise ProfileError(f"No numeral in performance figure '{text}'")
    return float(match.group(1))


def profile_from_dict(data: Any) -> HardwareProfile:
    check_schema(profile_schema, data, "hardware profile")
    sheet = {str(k): str(v) for k, v in data["spec_sheet"].items()}
    for key in PERFORMANCE_KEYS.values():
        if key not in sheet:
            raise ProfileError(f"{data['name']}: spec sheet lacks '{key}'")

    native = set(data.get("native_precisions", []))
    figures: Dict[str, float] = {}
    emulated_via = None
    for precision, key in PERFORMANCE_KEYS.items():
        text = sheet[key]
        if _not_native.search(text):
            figures[precision] = 0.0
            if precision == "INT4":
                via = _emulated_via.search(text)
                emulated_via = via.group(1).upper() if via else "INT8"
            continue
        figures[precision] = parse_figure(text)
        if "native_precisions" not in data:
            native.add(precision)

    return HardwareProfile(
        name=data["name"],
        memory_budget_gb=float(data["memory_budget_gb"]),
        native_precisions=frozenset(native),
        fp16_tflops=figures["FP16"],
        int8_tops=figures["INT8"],
        int4_tops=figures["INT4"],
        int4_emulated_via=emulated_via,
        notes=data.get("notes", ""),
        description=data.get("description", ""),
        spec_sheet=sheet,
    )


def load_profile_text(text: str) -> HardwareProfile:
    return profile_from_dict(load_document(text, "hardware profile"))


def list_profiles() -> List[str]:
    return sorted(p.stem for p in PROFILE_DIR.glob("*.yaml"))


def load_profile(name_or_path: str) -> HardwareProfile:
    """Loads a shipped profile by name or any profile file by path."""
    path = Path(name_or_path)
    if not path.is_file():
        path = PROFILE_DIR / f"{name_or_path}.yaml"
    if not path.is_file():
        raise DocumentNotFound("hardware profile", str(name_or_path))
    return load_profile_text(path.read_text())
