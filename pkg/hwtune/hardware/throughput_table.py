from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Tuple

from hwtune.shared.util import (
    DocumentNotFound,
    check_schema,
    compile_schema,
    load_document,
)

from .exceptions import MissingEntryError, ProfileError
from .quant_scheme import QuantScheme, scheme


TABLE_DIR = Path(__file__).parent / "tables"

table_schema = compile_schema(
    {
        "type": "object",
        "properties": {
            "device": {"type": "string"},
            "notes": {"type": "string"},
            "entries": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "model": {"type": "string", "minLength": 1},
                        "scheme": {"type": "string"},
                        "tokens_per_second": {
                            "type": "number",
                            "exclusiveMinimum": 0,
                        },
                    },
                    "required": ["model", "scheme", "tokens_per_second"],
                    "additionalProperties": False,
                },
            },
        },
        "required": ["entries"],
    }
)


@dataclass(frozen=True)
class ThroughputTable:
    entries: Dict[Tuple[str, str], float] = field(default_factory=dict)
    device: str = ""

    def get(self, model: str, quant: QuantScheme) -> float:
        try:
            return self.entries[(model, quant.label)]
        except KeyError:
            raise MissingEntryError(model, quant.label)

    @property
    def models(self) -> List[str]:
        return list(dict.fromkeys(model for model, _ in self.entries))

    def schemes_for(self, model: str) -> List[QuantScheme]:
        return [scheme(label) for m, label in self.entries if m == model]


def table_from_dict(data: Any) -> ThroughputTable:
    check_schema(table_schema, data, "throughput table")
    entries: Dict[Tuple[str, str], float] = {}
    for entry in data["entries"]:
        key = (entry["model"], scheme(entry["scheme"]).label)
        if key in entries:
            raise ProfileError(f"Duplicate throughput entry {key}")
        entries[key] = float(entry["tokens_per_second"])
    return ThroughputTable(entries, data.get("device", ""))


def load_table(name_or_path: str) -> ThroughputTable:
    path = Path(name_or_path)
    if not path.is_file():
        path = TABLE_DIR / f"{name_or_path}.yaml"
    if not path.is_file():
        raise DocumentNotFound("throughput table", str(name_or_path))
    return table_from_dict(load_document(path.read_text(), "throughput table"))
