from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from dacite import Config, from_dict
from dacite.exceptions import DaciteError

from hwtune.prompt import DEFAULT_TOKEN_CAP
from hwtune.shared.util import (
    DocumentNotFound,
    check_schema,
    compile_schema,
    dump_document,
    load_document,
)
from hwtune.space import DEFAULT_PRESET

from .exceptions import ManifestError


MANIFEST_FILE = "manifest.yaml"

EVALUATOR_KINDS = ("synthetic", "external_command", "kernel_sim", "composite")
OUTCOMES = ("completed", "target_met", "failed")


@dataclass
class OptimizerSection:
    name: str = "random"
    seed: int = 0
    options: Dict[str, Any] = field(default_factory=dict)


@dataclass
class EvaluatorSection:
    kind: str = "synthetic"
    # synthetic
    name: str = "sphere"
    seed: int = 0
    noise: float = 0.0
    bits: int = 8
    dims: Optional[int] = None
    # external_command
    command: Optional[str] = None
    working_dir: Optional[str] = None
    timeout: float = 3600.0
    objectives: List[str] = field(default_factory=list)
    # composite: which evaluator measures the fine-tuning objective
    finetune_kind: str = "synthetic"


@dataclass
class AgentSection:
    backend: str = "coordinate-descent"
    seed: int = 0
    replies: List[str] = field(default_factory=list)
    max_attempts: int = 3
    clamp_fallback: bool = True
    model: Optional[str] = None
    endpoint: Optional[str] = None
    temperature: float = 0.0


@dataclass
class PromptSection:
    model: str = "ResNet32"
    method: str = "QAT"
    precision: str = "8-bit"
    dataset: str = "CIFAR-10"
    framework: str = "PyTorch"
    react: bool = True


@dataclass
class HistorySection:
    keep_verbatim: int = 5
    summarize_rest: bool = True


@dataclass
class Outcome:
    status: str
    rounds: int
    best: Dict[str, float] = field(default_factory=dict)
    message: str = ""


@dataclass
class RunManifest:
    """
    Everything needed to repeat a run. With a seeded backend and evaluator the
    trial log of a repeat is byte-identical.
    """

    run_id: str
    budget: int
    space: str = DEFAULT_PRESET
    optimizer: OptimizerSection = field(default_factory=OptimizerSection)
    evaluator: EvaluatorSection = field(default_factory=EvaluatorSection)
    agent: Optional[AgentSection] = None
    prompt: PromptSection = field(default_factory=PromptSection)
    history: HistorySection = field(default_factory=HistorySection)
    hardware: Optional[str] = None
    kernels: str = "benchmark_kernels"
    kernel: Optional[str] = None
    token_cap: int = DEFAULT_TOKEN_CAP
    targets: Dict[str, float] = field(default_factory=dict)
    outcome: Optional[Outcome] = None


_string_list = {"type": "array", "items": {"type": "string"}}

manifest_schema = compile_schema(
    {
        "title": "Run manifest",
        "type": "object",
        "properties": {
            "run_id": {"type": "string", "minLength": 1},
            "budget": {"type": "integer"},
            "space": {"type": "string", "minLength": 1},
            "optimizer": {
                "type": "object",
                "properties": {
                    "name": {"type": "string"},
                    "seed": {"type": "integer"},
                    "options": {"type": "object"},
                },
                "additionalProperties": False,
            },
            "evaluator": {
                "type": "object",
                "properties": {
                    "kind": {"enum": list(EVALUATOR_KINDS)},
                    "name": {"type": "string"},
                    "seed": {"type": "integer"},
                    "noise": {"type": "number", "minimum": 0},
                    "bits": {"type": "integer", "minimum": 1},
                    "dims": {"type": ["integer", "null"]},
                    "command": {"type": ["string", "null"]},
                    "working_dir": {"type": ["string", "null"]},
                    "timeout": {"type": "number", "exclusiveMinimum": 0},
                    "objectives": _string_list,
                    "finetune_kind": {"enum": ["synthetic", "external_command"]},
                },
                "additionalProperties": False,
            },
            "agent": {
                "type": ["object", "null"],
                "properties": {
                    "backend": {"type": "string"},
                    "seed": {"type": "integer"},
                    "replies": _string_list,
                    "max_attempts": {"type": "integer", "minimum": 1},
                    "clamp_fallback": {"type": "boolean"},
                    "model": {"type": ["string", "null"]},
                    "endpoint": {"type": ["string", "null"]},
                    "temperature": {"type": "number", "minimum": 0},
                },
                "additionalProperties": False,
            },
            "prompt": {
                "type": "object",
                "properties": {
                    "model": {"type": "string"},
                    "method": {"type": "string"},
                    "precision": {"type": "string"},
                    "dataset": {"type": "string"},
                    "framework": {"type": "string"},
                    "react": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
            "history": {
                "type": "object",
                "properties": {
                    "keep_verbatim": {"type": "integer", "minimum": 0},
                    "summarize_rest": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
            "hardware": {"type": ["string", "null"]},
            "kernels": {"type": "string"},
            "kernel": {"type": ["string", "null"]},
            "token_cap": {"type": "integer", "minimum": 1},
            "targets": {"type": "object", "additionalProperties": {"type": "number"}},
            "outcome": {
                "type": ["object", "null"],
                "properties": {
                    "status": {"enum": list(OUTCOMES)},
                    "rounds": {"type": "integer"},
                    "best": {"type": "object"},
                    "message": {"type": "string"},
                },
                "required": ["status", "rounds"],
            },
        },
        "required": ["run_id", "budget"],
        "additionalProperties": False,
    }
)


def manifest_from_dict(data: Any) -> RunManifest:
    check_schema(manifest_schema, data, "run manifest")
    try:
        manifest = from_dict(RunManifest, data, Config(check_types=False))
    except (TypeError, DaciteError) as e:
        raise ManifestError(f"Invalid run manifest: {e}")
    if manifest.evaluator.kind in ("kernel_sim", "composite") and not manifest.kernel:
        raise ManifestError(
            f"A {manifest.evaluator.kind} evaluator needs a 'kernel' label"
        )
    if manifest.evaluator.kind in ("kernel_sim", "composite") and not manifest.hardware:
        raise ManifestError(
            f"A {manifest.evaluator.kind} evaluator needs a 'hardware' profile"
        )
    external = manifest.evaluator.kind == "external_command" or (
        manifest.evaluator.kind == "composite"
        and manifest.evaluator.finetune_kind == "external_command"
    )
    if external and not manifest.evaluator.command:
        raise ManifestError("An external_command evaluator needs a 'command'")
    if manifest.optimizer.name == "agent" and manifest.agent is None:
        manifest.agent = AgentSection()
    return manifest


def load_manifest_text(text: str) -> RunManifest:
    return manifest_from_dict(load_document(text, "run manifest"))


def load_manifest(path: Path) -> RunManifest:
    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_FILE
    if not path.is_file():
        raise DocumentNotFound("run manifest", str(path))
    return load_manifest_text(path.read_text())


def manifest_to_dict(manifest: RunManifest) -> Dict[str, Any]:
    return asdict(manifest)


def dump_manifest(manifest: RunManifest) -> str:
    return dump_document(manifest_to_dict(manifest))
