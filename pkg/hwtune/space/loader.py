from pathlib import Path
from typing import Any, Dict, List

from hwtune.shared.util import (
    DocumentNotFound,
    check_schema,
    compile_schema,
    dump_document,
    load_document,
)

from .param_spec import ParamKind, ParamSpec
from .search_space import SearchSpace


PRESET_DIR = Path(__file__).parent / "presets"
DEFAULT_PRESET = "resnet_appendix_d"

scalar = {"type": ["number", "string", "boolean"]}

space_schema = compile_schema(
    {
        "type": "object",
        "properties": {
            "name": {"type": "string", "minLength": 1},
            "params": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "name": {"type": "string", "minLength": 1},
                        "kind": {
                            "type": "string",
                            "enum": [kind.value for kind in ParamKind],
                        },
                        "lower": {"type": "number"},
                        "upper": {"type": "number"},
                        "default": scalar,
                        "log_scale": {"type": "boolean"},
                        "choices": {"type": "array", "items": scalar},
                        "description": {"type": "string"},
                    },
                    "required": ["name", "kind", "default"],
                    "additionalProperties": False,
                },
            },
        },
        "required": ["name", "params"],
        "additionalProperties": False,
    }
)


def param_from_dict(entry: Dict[str, Any]) -> ParamSpec:
    choices = entry.get("choices")
    return ParamSpec(
        name=entry["name"],
        kind=ParamKind(entry["kind"]),
        default=entry["default"],
        lower=entry.get("lower"),
        upper=entry.get("upper"),
        log_scale=entry.get("log_scale", False),
        choices=tuple(choices) if choices is not None else None,
        description=entry.get("description", ""),
    )


def space_from_dict(data: Any) -> SearchSpace:
    check_schema(space_schema, data, "space")
    params = tuple(param_from_dict(entry) for entry in data["params"])
    return SearchSpace(data["name"], params)


def load_space(source: str) -> SearchSpace:
    """Parses a space document given as text."""
    return space_from_dict(load_document(source, "space"))


def load_space_file(path: Path) -> SearchSpace:
    try:
        text = Path(path).read_text()
    except FileNotFoundError:
        raise DocumentNotFound("space file", str(path))
    return load_space(text)


def list_presets() -> List[str]:
    return sorted(p.stem for p in PRESET_DIR.glob("*.yaml"))


def load_preset(name: str) -> SearchSpace:
    path = PRESET_DIR / f"{name}.yaml"
    if not path.is_file():
        raise DocumentNotFound("space preset", name)
    return load_space(path.read_text())


def space_to_dict(space: SearchSpace) -> Dict[str, Any]:
    params = []
    for param in space.params:
        entry: Dict[str, Any] = {"name": param.name, "kind": param.kind.value}
        if param.is_numeric:
            entry["lower"] = param.lower
            entry["upper"] = param.upper
        entry["default"] = param.default
        if param.log_scale:
            entry["log_scale"] = True
        if param.choices is not None:
            entry["choices"] = list(param.choices)
        if param.description:
            entry["description"] = param.description
        params.append(entry)
    return {"name": space.name, "params": params}


def serialize_space(space: SearchSpace) -> str:
    return dump_document(space_to_dict(space))
