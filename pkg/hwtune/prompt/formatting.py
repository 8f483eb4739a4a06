import json
from typing import Any, Dict, List, Optional

from hwtune.space import ParamSpec, SearchSpace

from . import templates


# display labels shared with the agent side, which parses them back
METRIC_LABELS: Dict[str, str] = {
    "accuracy": "Verification accuracy",
    "latency": "Latency",
}
METRIC_UNITS: Dict[str, str] = {"latency": "us"}

LOSS_DIGEST_LENGTH = 10


def format_value(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def param_line(param: ParamSpec) -> str:
    description = param.description.strip()
    if description and not description.endswith("."):
        description += "."
    head = f"'{param.name}': {description} " if description else f"'{param.name}': "
    if param.is_numeric:
        domain = (
            f"Range: [{format_value(param.lower)}, {format_value(param.upper)}]"
        )
    else:
        domain = "Choices: [%s]" % ", ".join(map(format_value, param.choices or ()))
    line = (
        f"{head}Type: {param.type_label}, {domain}, "
        f"Default: {format_value(param.default)}"
    )
    if param.log_scale:
        line += ", Log scale"
    return line + "."


def response_example(space: SearchSpace) -> str:
    placeholders = templates.PLACEHOLDERS
    fields = [
        f'"{name}": {placeholders[index % len(placeholders)]}'
        for index, name in enumerate(space.names)
    ]
    return "{" + ", ".join(fields) + "}"


def metric_label(name: str) -> str:
    return METRIC_LABELS.get(name, name)


def format_metric(name: str, value: float) -> str:
    unit = METRIC_UNITS.get(name)
    rendered = f"{metric_label(name)}: {format_value(float(value))}"
    return f"{rendered} {unit}" if unit else rendered


def format_metrics(objectives: Dict[str, float]) -> str:
    return ". ".join(format_metric(k, v) for k, v in objectives.items()) + "."


def format_losses(losses: Optional[List[float]]) -> Optional[str]:
    if not losses:
        return None
    recent = [round(float(loss), 4) for loss in losses[-LOSS_DIGEST_LENGTH:]]
    return templates.LOSS_TRACE.format(losses=json.dumps(recent))
