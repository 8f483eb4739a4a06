import json
import math
import shlex
import subprocess
from pathlib import Path
from threading import BoundedSemaphore
from typing import Any, Dict, List, Optional, Sequence, Tuple

from hwtune.optimizers import ObjectiveSpec, Proposal, default_objectives
from hwtune.shared.di import injector
from hwtune.shared.services import ENVIRONMENT_VARIABLES, EnvironmentService
from hwtune.shared.util import InvalidFormat, logger
from hwtune.shared.util.otel import make_span

from .evaluator import Evaluation
from .exceptions import EvaluatorTimeout, MetricsParseError, NonzeroExit


CONFIG_PLACEHOLDER = "{config}"
METRICS_PLACEHOLDER = "{metrics}"
STDERR_TAIL_CHARS = 2000
DEFAULT_TIMEOUT = 3600.0


def config_document(proposal: Proposal) -> Dict[str, Any]:
    """The config-out document an external job receives."""
    return {
        "round": proposal.round,
        "config": proposal.config.assignments,
        "kernel_config": proposal.kernel_config.to_json_dict()
        if proposal.kernel_config
        else None,
    }


def parse_metrics(
    text: str, objectives: Sequence[ObjectiveSpec]
) -> Tuple[Dict[str, float], Optional[List[float]]]:
    """
    Reads a metrics document: one number per declared objective plus an optional
    "loss_trace" list of numbers.
    """
    try:
        data = json.loads(text)
    except ValueError as e:
        raise MetricsParseError("<document>", f"not valid JSON ({e})")
    if not isinstance(data, dict):
        raise MetricsParseError("<document>", "expected a JSON object")

    values: Dict[str, float] = {}
    for objective in objectives:
        if objective.name not in data:
            raise MetricsParseError(objective.name, "missing")
        values[objective.name] = as_number(objective.name, data[objective.name])

    loss_trace = data.get("loss_trace")
    if loss_trace is None:
        return values, None
    if not isinstance(loss_trace, list):
        raise MetricsParseError("loss_trace", "expected a list of numbers")
    return values, [as_number("loss_trace", loss) for loss in loss_trace]


def as_number(field: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MetricsParseError(field, f"expected a number, got {json.dumps(value)}")
    if not math.isfinite(value):
        raise MetricsParseError(field, f"expected a finite number, got {value}")
    return float(value)


class ExternalCommandEvaluator:
    """
    Runs a user command per proposal. The proposal is written to
    <working_dir>/round_<nnn>/config.json and substituted for {config} in the
    command template. Metrics are read from the file substituted for {metrics}, or
    from the command's stdout when the template has no {metrics} placeholder.
    """

    kind = "external_command"

    def __init__(
        self,
        command: str,
        working_dir: Path,
        timeout: float = DEFAULT_TIMEOUT,
        objectives: Sequence[ObjectiveSpec] = (),
    ):
        if CONFIG_PLACEHOLDER not in command:
            raise InvalidFormat(
                f"The command template must contain {CONFIG_PLACEHOLDER}: {command}"
            )
        if timeout <= 0:
            raise InvalidFormat(f"timeout has to be > 0, got {timeout}")
        self.command = command
        self.working_dir = Path(working_dir)
        self.timeout = timeout
        self.objectives = tuple(objectives) or default_objectives(["accuracy"])
        env_service: EnvironmentService = injector.get(EnvironmentService)
        self.max_parallel = env_service.get_int(
            ENVIRONMENT_VARIABLES.EXTERNAL_MAX_PARALLEL, 1, 1
        )
        self.slots = BoundedSemaphore(self.max_parallel)

    def round_dir(self, round: int) -> Path:
        return self.working_dir / f"round_{round:03d}"

    def render_command(self, config_path: Path, metrics_path: Path) -> List[str]:
        return [
            part.replace(CONFIG_PLACEHOLDER, str(config_path)).replace(
                METRICS_PLACEHOLDER, str(metrics_path)
            )
            for part in shlex.split(self.command)
        ]

    def evaluate(self, proposal: Proposal) -> Evaluation:
        directory = self.round_dir(proposal.round)
        directory.mkdir(parents=True, exist_ok=True)
        config_path = directory / "config.json"
        metrics_path = directory / "metrics.json"
        config_path.write_text(json.dumps(config_document(proposal), indent=2))
        if metrics_path.exists():
            metrics_path.unlink()
        argv = self.render_command(config_path, metrics_path)

        with self.slots, make_span("external evaluation", {"round": proposal.round}):
            logger.info(f"Round {proposal.round}: running {' '.join(argv)}")
            try:
                result = subprocess.run(
                    argv,
                    cwd=directory,
                    capture_output=True,
                    text=True,
                    timeout=self.timeout,
                )
            except subprocess.TimeoutExpired:
                raise EvaluatorTimeout(" ".join(argv), self.timeout)
            except OSError as e:
                raise NonzeroExit(127, str(e))

        if result.returncode != 0:
            raise NonzeroExit(result.returncode, result.stderr[-STDERR_TAIL_CHARS:])

        if METRICS_PLACEHOLDER in self.command:
            if not metrics_path.exists():
                raise MetricsParseError("<document>", f"{metrics_path} was not written")
            text = metrics_path.read_text()
        else:
            text = result.stdout
        values, loss_trace = parse_metrics(text, self.objectives)
        return Evaluation(
            objectives=values,
            loss_trace=loss_trace,
            kernel_config=proposal.kernel_config,
        )


def external_evaluator(
    command: str,
    working_dir: Path,
    timeout: float = DEFAULT_TIMEOUT,
    objectives: Sequence[ObjectiveSpec] = (),
) -> ExternalCommandEvaluator:
    return ExternalCommandEvaluator(command, working_dir, timeout, objectives)
