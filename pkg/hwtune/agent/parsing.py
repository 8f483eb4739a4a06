import ast
import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

from hwtune.kerneltune import KernelConfig
from hwtune.prompt import Expect
from hwtune.shared.util import BadCodingError
from hwtune.space import Configuration, SearchSpace, validate


KERNEL_KEYS = (
    "griddim",
    "blockdim",
    "tiling size",
    "unroll size",
    "code changed",
    "code",
)

THOUGHT_PATTERN = re.compile(r"Thought\s*:\s*(.*?)(?=\n\s*Action\s*:|\Z)", re.S | re.I)


class FailureKind(str, Enum):
    BAD_FORMAT = "BadFormat"
    CONSTRAINT_VIOLATION = "ConstraintViolation"
    OFF_TOPIC = "OffTopic"


@dataclass(frozen=True)
class ParsedProposal:
    config: Optional[Configuration] = None
    kernel_config: Optional[KernelConfig] = None


@dataclass(frozen=True)
class AgentFailure:
    kind: FailureKind
    details: Tuple[str, ...] = ()
    # type-correct proposal that broke a limit, kept for clamp repair
    candidate: Optional[ParsedProposal] = None

    def describe(self) -> str:
        return "; ".join(self.details) or self.kind.value


@dataclass(frozen=True)
class AgentResponse:
    raw_text: str
    parsed: Optional[ParsedProposal] = None
    failure: Optional[AgentFailure] = None
    thought_text: Optional[str] = None

    def __post_init__(self):
        if (self.parsed is None) == (self.failure is None):
            raise BadCodingError("An agent response is either parsed or a failure")

    @property
    def is_valid(self) -> bool:
        return self.parsed is not None


def balanced_end(text: str, start: int) -> Optional[int]:
    depth = 0
    quote: Optional[str] = None
    escaped = False
    for index in range(start, len(text)):
        char = text[index]
        if quote:
            if escaped:
                escaped = False
            elif char == "\\":
                escaped = True
            elif char == quote:
                quote = None
        elif char in "\"'":
            quote = char
        elif char == "{":
            depth += 1
        elif char == "}":
            depth -= 1
            if depth == 0:
                return index
    return None


def decode_object(snippet: str) -> Optional[Dict[str, Any]]:
    try:
        value = json.loads(snippet)
    except json.JSONDecodeError:
        # single-quoted python literals show up in real transcripts
        try:
            value = ast.literal_eval(snippet)
        except (ValueError, SyntaxError, MemoryError, RecursionError):
            return None
    if not isinstance(value, dict) or not all(isinstance(k, str) for k in value):
        return None
    return value


def iter_objects(raw: str) -> Iterator[Tuple[int, Dict[str, Any]]]:
    """Yields (offset, object) for every balanced object, outer ones first."""
    position = 0
    while True:
        start = raw.find("{", position)
        if start < 0:
            return
        end = balanced_end(raw, start)
        if end is not None:
            obj = decode_object(raw[start : end + 1])
            if obj is not None:
                yield start, obj
        position = start + 1


def normalize_key(key: str) -> str:
    return key.strip().lower().replace("_", " ")


def split_object(
    obj: Dict[str, Any], space: SearchSpace
) -> Tuple[Dict[str, Any], Dict[str, Any]]:
    kernel: Dict[str, Any] = {}
    finetune: Dict[str, Any] = {}
    for key, value in obj.items():
        if key not in space and normalize_key(key) in KERNEL_KEYS:
            kernel[normalize_key(key)] = value
        else:
            finetune[key] = value
    return finetune, kernel


def is_finetune_object(finetune: Dict[str, Any], space: SearchSpace) -> bool:
    return any(key in space for key in finetune)


def is_kernel_object(kernel: Dict[str, Any]) -> bool:
    return "griddim" in kernel or "blockdim" in kernel


def extract_thought(raw: str, end: int) -> Optional[str]:
    prefix = raw[:end]
    match = THOUGHT_PATTERN.search(prefix)
    text = match.group(1) if match else prefix
    text = text.replace("```json", "").replace("```", "").strip()
    return text or None


def parse_finetune(
    data: Dict[str, Any], space: SearchSpace
) -> Tuple[Configuration, List[str]]:
    ordered = {name: data[name] for name in space.names if name in data}
    ordered.update((k, v) for k, v in data.items() if k not in space)
    config = Configuration(ordered, space.name)
    verdict = validate(space, config)
    return config, [str(violation) for violation in verdict.violations]


def is_plain_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def parse_kernel(data: Dict[str, Any]) -> Tuple[Optional[KernelConfig], List[str]]:
    """
    Returns (None, format problems) when the object cannot be read as an execution
    configuration, else (config, limit violations).
    """
    problems: List[str] = []
    dims = {}
    for key in ("griddim", "blockdim"):
        value = data.get(key)
        if (
            not isinstance(value, (list, tuple))
            or len(value) != 3
            or not all(is_plain_number(d) for d in value)
        ):
            problems.append(f"{key} has to be a list of three integers, got {value!r}")
        else:
            dims[key] = tuple(value)
    tiling = data.get("tiling size", 1)
    unroll = data.get("unroll size", 1)
    for key, value in (("tiling size", tiling), ("unroll size", unroll)):
        if not is_plain_number(value):
            problems.append(f"{key} has to be an integer, got {value!r}")
    if problems:
        return None, problems
    code = data.get("code")
    config = KernelConfig(
        grid=dims["griddim"],  # type: ignore
        block=dims["blockdim"],  # type: ignore
        tiling=tiling,
        unroll=unroll,
        code_changed=bool(data.get("code changed", False)),
        code=code if isinstance(code, str) and code else None,
    )
    return config, config.violations()


def parse_response(
    raw: str, space: SearchSpace, expect: Expect = Expect.FINETUNE
) -> AgentResponse:
    """
    Takes the first balanced object carrying the expected keys, so prose, code fences
    and unrelated objects around it do not matter. Failures are returned, not raised.
    """
    want_finetune = expect != Expect.KERNEL
    want_kernel = expect != Expect.FINETUNE
    finetune: Optional[Tuple[int, Dict[str, Any]]] = None
    kernel: Optional[Tuple[int, Dict[str, Any]]] = None
    seen_any = False
    for start, obj in iter_objects(raw):
        seen_any = True
        finetune_part, kernel_part = split_object(obj, space)
        if want_finetune and finetune is None:
            if is_finetune_object(finetune_part, space):
                finetune = (start, finetune_part)
        if want_kernel and kernel is None and is_kernel_object(kernel_part):
            kernel = (start, kernel_part)
        if (finetune or not want_finetune) and (kernel or not want_kernel):
            break

    if not seen_any:
        return failed(raw, FailureKind.BAD_FORMAT, ["no JSON object found"])
    if finetune is None and kernel is None:
        return failed(
            raw,
            FailureKind.OFF_TOPIC,
            ["the reply contains no configuration with the requested keys"],
        )
    missing = []
    if want_finetune and finetune is None:
        missing.append("the fine-tuning configuration is missing")
    if want_kernel and kernel is None:
        missing.append("the execution configuration (griddim, blockdim) is missing")
    if missing:
        return failed(raw, FailureKind.BAD_FORMAT, missing)

    starts = [part[0] for part in (finetune, kernel) if part is not None]
    thought = extract_thought(raw, min(starts))
    config: Optional[Configuration] = None
    kernel_config: Optional[KernelConfig] = None
    violations: List[str] = []
    if finetune is not None:
        config, problems = parse_finetune(finetune[1], space)
        violations.extend(problems)
    if kernel is not None:
        kernel_config, problems = parse_kernel(kernel[1])
        if kernel_config is None:
            return failed(raw, FailureKind.BAD_FORMAT, problems, thought)
        violations.extend(problems)

    proposal = ParsedProposal(config, kernel_config)
    if violations:
        return AgentResponse(
            raw_text=raw,
            failure=AgentFailure(
                FailureKind.CONSTRAINT_VIOLATION, tuple(violations), proposal
            ),
            thought_text=thought,
        )
    return AgentResponse(raw_text=raw, parsed=proposal, thought_text=thought)


def failed(
    raw: str, kind: FailureKind, details: List[str], thought: Optional[str] = None
) -> AgentResponse:
    return AgentResponse(
        raw_text=raw, failure=AgentFailure(kind, tuple(details)), thought_text=thought
    )


def render_reply(
    config: Optional[Configuration] = None,
    kernel_config: Optional[KernelConfig] = None,
    thought: Optional[str] = None,
    action: Optional[str] = None,
) -> str:
    """Writes a reply in the shape `parse_response` reads back."""
    lines = []
    if thought:
        lines.append(f"Thought: {thought}")
    if action:
        lines.append(f"Action: {action}")
    if config is not None:
        lines.append(json.dumps(config.assignments))
    if kernel_config is not None:
        lines.append(json.dumps(kernel_config.to_json_dict()))
    return "\n".join(lines)
