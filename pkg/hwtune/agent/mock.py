import json
import re
import threading
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from hwtune.kerneltune import (
    KernelConfig,
    KernelSpec,
    assignment_from_config,
    config_from_assignment,
    kernel_space,
)
from hwtune.prompt import Expect, Message, metric_label
from hwtune.shared.util import InvalidFormat
from hwtune.space import (
    Configuration,
    ParamKind,
    ParamSpec,
    SearchSpace,
    UnclampableError,
    clamp,
    decode_value,
    default_config,
    encode_value,
)

from .backend import BackendCapability
from .parsing import parse_kernel, render_reply


BUDGET_PATTERN = re.compile(r"there are (\d+) rounds left")
CONFIG_PATTERN = re.compile(r"^The current configuration is: (\{.*\})$", re.M)
KERNEL_PATTERN = re.compile(r"^The current execution configuration is: (\{.*\})$", re.M)
RESULT_PATTERN = re.compile(r"^The result based on this configuration: (.*)$", re.M)
NUMBER = r"(-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)"


@dataclass(frozen=True)
class Scripted:
    texts: Tuple[str, ...]


@dataclass(frozen=True)
class CoordinateDescent:
    seed: int = 0
    objective: str = "accuracy"
    maximize: bool = True


MockStrategy = Union[Scripted, CoordinateDescent]


def scripted(texts: Sequence[str]) -> Scripted:
    return Scripted(tuple(texts))


def coordinate_descent(
    seed: int = 0, objective: str = "accuracy", maximize: bool = True
) -> CoordinateDescent:
    return CoordinateDescent(seed, objective, maximize)


class ScriptedBackend:
    """Replays the given texts in order, then keeps repeating the last one."""

    def __init__(self, texts: Sequence[str]):
        if not texts:
            raise InvalidFormat("A scripted backend needs at least one reply")
        self.texts = list(texts)
        self.calls = 0
        self.lock = threading.Lock()
        self.capability = BackendCapability("scripted")

    def complete(self, messages: List[Message]) -> str:
        with self.lock:
            text = self.texts[min(self.calls, len(self.texts) - 1)]
            self.calls += 1
        return text


@dataclass
class ObservedTrial:
    config: Optional[Dict[str, Any]]
    kernel: Optional[Dict[str, Any]]
    metrics: Dict[str, float]


def read_metric(text: str, name: str) -> Optional[float]:
    match = re.search(re.escape(metric_label(name)) + ": " + NUMBER, text)
    return float(match.group(1)) if match else None


def read_trials(messages: List[Message], names: Sequence[str]) -> List[ObservedTrial]:
    trials = []
    for message in messages:
        if message.role != "user":
            continue
        config = CONFIG_PATTERN.search(message.content)
        kernel = KERNEL_PATTERN.search(message.content)
        if not config and not kernel:
            continue
        results = " ".join(RESULT_PATTERN.findall(message.content))
        metrics = {}
        for name in names:
            value = read_metric(results, name)
            if value is not None:
                metrics[name] = value
        trials.append(
            ObservedTrial(
                json.loads(config.group(1)) if config else None,
                json.loads(kernel.group(1)) if kernel else None,
                metrics,
            )
        )
    return trials


def read_rounds_left(messages: List[Message]) -> int:
    for message in reversed(messages):
        match = BUDGET_PATTERN.search(message.content)
        if match:
            return int(match.group(1))
    return 0


def step_value(param: ParamSpec, value: Any, rng: np.random.Generator) -> Any:
    """Moves one coordinate to a neighbouring value inside its bounds."""
    if param.kind == ParamKind.CATEGORICAL:
        others = [choice for choice in param.choices or () if choice != value]
        return others[int(rng.integers(len(others)))] if others else value
    unit = encode_value(param, value)
    delta = float(rng.uniform(0.05, 0.25)) * (1 if rng.random() < 0.5 else -1)
    if not 0.0 <= unit + delta <= 1.0:
        delta = -delta
    moved = decode_value(param, unit + delta)
    if moved == value and param.kind == ParamKind.UNIFORM_INT:
        moved = value + 1 if value < param.upper else value - 1
    return moved


def perturb(
    space: SearchSpace, config: Configuration, rng: np.random.Generator
) -> Tuple[Configuration, str]:
    param = space.params[int(rng.integers(len(space)))]
    moved = step_value(param, config[param.name], rng)
    return config.with_value(param.name, moved), param.name


def best_trial(
    trials: List[ObservedTrial], objective: str, maximize: bool, part: str
) -> Optional[ObservedTrial]:
    scored = [
        t for t in trials if getattr(t, part) is not None and objective in t.metrics
    ]
    if not scored:
        return None
    sign = 1 if maximize else -1
    # first of equal scores wins
    return max(scored, key=lambda t: sign * t.metrics[objective])


class CoordinateDescentBackend:
    """
    Deterministic stand-in for an LLM agent. It keeps no state between calls: every
    call re-reads the trial blocks in the prompt, starts from the best configuration
    seen so far and moves one parameter. The first round answers with the defaults.
    """

    def __init__(
        self,
        space: Optional[SearchSpace],
        seed: int = 0,
        objective: str = "accuracy",
        maximize: bool = True,
        kernel_spec: Optional[KernelSpec] = None,
        expect: Expect = Expect.FINETUNE,
    ):
        if expect != Expect.KERNEL and space is None:
            raise InvalidFormat("The coordinate-descent agent needs a search space")
        if expect != Expect.FINETUNE and kernel_spec is None:
            raise InvalidFormat("The coordinate-descent agent needs a kernel spec")
        self.space = space
        self.seed = seed
        self.objective = objective
        self.maximize = maximize
        self.kernel_spec = kernel_spec
        self.expect = expect
        self.capability = BackendCapability("coordinate-descent")

    def complete(self, messages: List[Message]) -> str:
        rounds_left = read_rounds_left(messages)
        rng = np.random.default_rng([self.seed, rounds_left])
        trials = read_trials(messages, [self.objective, "latency"])
        thoughts: List[str] = []
        config = kernel = None
        if self.expect != Expect.KERNEL:
            config = self.next_config(trials, rng, thoughts)
        if self.expect != Expect.FINETUNE:
            kernel = self.next_kernel(trials, rng, thoughts)
        if not trials:
            thoughts = [
                "This is the first round, so the default parameters are used as "
                "recommended."
            ]
        elif not thoughts:
            thoughts = ["No result has been reported yet, so the defaults are kept."]
        return render_reply(
            config,
            kernel,
            thought=" ".join(thoughts),
            action="Propose the configuration below.",
        )

    def next_config(
        self,
        trials: List[ObservedTrial],
        rng: np.random.Generator,
        thoughts: List[str],
    ) -> Configuration:
        space: SearchSpace = self.space  # type: ignore
        best = best_trial(trials, self.objective, self.maximize, "config")
        start = self.recover(space, best.config if best else None)
        if best is None:
            return start
        moved, name = perturb(space, start, rng)
        thoughts.append(
            f"The best {metric_label(self.objective)} so far is "
            f"{best.metrics[self.objective]}. Moving '{name}' from {start[name]!r} to "
            f"{moved[name]!r}."
        )
        return moved

    def next_kernel(
        self,
        trials: List[ObservedTrial],
        rng: np.random.Generator,
        thoughts: List[str],
    ) -> KernelConfig:
        spec: KernelSpec = self.kernel_spec  # type: ignore
        space = kernel_space(spec)
        best = best_trial(trials, "latency", False, "kernel")
        if best is None:
            return spec.default_config()
        parsed, _ = parse_kernel(best.kernel or {})
        start = default_config(space)
        if parsed is not None:
            start = self.recover(
                space, assignment_from_config(spec, parsed).assignments
            )
        moved, name = perturb(space, start, rng)
        thoughts.append(
            f"The lowest latency so far is {best.metrics['latency']} us. Moving "
            f"'{name}' from {start[name]!r} to {moved[name]!r}."
        )
        return config_from_assignment(spec, moved)

    def recover(
        self, space: SearchSpace, assignments: Optional[Dict[str, Any]]
    ) -> Configuration:
        if assignments is None:
            return default_config(space)
        known = {k: v for k, v in assignments.items() if k in space}
        try:
            return clamp(space, Configuration(known, space.name))
        except UnclampableError:
            return default_config(space)


def mock_agent(
    strategy: MockStrategy,
    space: Optional[SearchSpace] = None,
    kernel_spec: Optional[KernelSpec] = None,
    expect: Expect = Expect.FINETUNE,
) -> Union[ScriptedBackend, CoordinateDescentBackend]:
    if isinstance(strategy, Scripted):
        return ScriptedBackend(strategy.texts)
    return CoordinateDescentBackend(
        space,
        seed=strategy.seed,
        objective=strategy.objective,
        maximize=strategy.maximize,
        kernel_spec=kernel_spec,
        expect=expect,
    )
