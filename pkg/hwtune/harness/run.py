import csv
import json
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from hwtune.agent import (
    ChatBackend,
    RetryPolicy,
    UsageLedger,
    cost_report,
)
from hwtune.agent.remote import remote_config_from_environment
from hwtune.hardware import HardwareProfile, load_profile
from hwtune.kerneltune import KernelSpec, find_kernel, kernel_space, load_kernels
from hwtune.optimizers import (
    AgentOptimizer,
    Direction,
    ObjectiveSpec,
    Observation,
    Optimizer,
    UnknownObjectiveError,
    best_so_far,
    build_optimizer,
)
from hwtune.prompt import Expect, HistoryPolicy, PromptOptions, render_static
from hwtune.shared.di import injector
from hwtune.shared.di.exceptions import DependencyNotFound
from hwtune.shared.util import BudgetError, HwtuneException, logger
from hwtune.shared.util.otel import make_span
from hwtune.space import SearchSpace, load_preset, load_space_file
from hwtune.trials import TRIALS_FILE, TrialLog, TrialRecord, first_difference

from .evaluator import Evaluator
from .exceptions import EvaluatorError, ManifestError, RunDirectoryError
from .manifest import MANIFEST_FILE, Outcome, RunManifest, dump_manifest, load_manifest
from .registry import build_evaluator


USAGE_FILE = "usage.json"
TRACES_FILE = "traces.csv"
PROMPT_FILE = "prompt.json"

EXPECT_BY_EVALUATOR = {
    "synthetic": Expect.FINETUNE,
    "external_command": Expect.FINETUNE,
    "kernel_sim": Expect.KERNEL,
    "composite": Expect.BOTH,
}


@dataclass
class RunResult:
    run_dir: Path
    manifest: RunManifest
    records: List[TrialRecord]
    outcome: Outcome
    traces: Dict[str, List[float]] = field(default_factory=dict)
    ledger: Optional[UsageLedger] = None


@dataclass(frozen=True)
class ReplayResult:
    original: Path
    replayed: Path
    # index of the first differing trial record
    first_difference: Optional[int]

    @property
    def identical(self) -> bool:
        return self.first_difference is None


def now() -> str:
    return datetime.now(timezone.utc).isoformat()


def resolve_space(name_or_path: str) -> SearchSpace:
    path = Path(name_or_path)
    if path.suffix in (".yaml", ".yml") or path.is_file():
        return load_space_file(path)
    return load_preset(name_or_path)


def resolve_kernel(manifest: RunManifest) -> Optional[KernelSpec]:
    if not manifest.kernel:
        return None
    return find_kernel(load_kernels(manifest.kernels), manifest.kernel)


def build_backend(
    manifest: RunManifest,
    space: SearchSpace,
    expect: Expect,
    primary: ObjectiveSpec,
    kernel_spec: Optional[KernelSpec] = None,
) -> ChatBackend:
    agent = manifest.agent
    if agent is None:
        raise ManifestError("The agent optimizer needs an 'agent' section")
    try:
        backend_class = injector.get_named(ChatBackend, agent.backend)
    except DependencyNotFound:
        raise ManifestError(
            f"Unknown agent backend '{agent.backend}', choose one of "
            + ", ".join(injector.names(ChatBackend))
        )
    if agent.backend == "scripted":
        return backend_class(agent.replies)
    if agent.backend == "remote":
        return backend_class(
            remote_config_from_environment(
                model=agent.model,
                endpoint=agent.endpoint,
                temperature=agent.temperature,
                max_input_tokens=manifest.token_cap,
            )
        )
    return backend_class(
        space if expect != Expect.KERNEL else None,
        seed=agent.seed,
        objective=primary.name,
        maximize=primary.direction == Direction.MAXIMIZE,
        kernel_spec=kernel_spec,
        expect=expect,
    )


def build_agent_options(
    manifest: RunManifest,
    space: SearchSpace,
    evaluator: Evaluator,
    expect: Expect,
    kernel_spec: Optional[KernelSpec],
    profile: Optional[HardwareProfile],
    ledger: UsageLedger,
) -> Dict:
    prompt = manifest.prompt
    options = PromptOptions(
        model=prompt.model,
        method=prompt.method,
        precision=prompt.precision,
        dataset=prompt.dataset,
        framework=prompt.framework,
        enable_finetune=expect != Expect.KERNEL,
        react=prompt.react,
    )
    kernels = [kernel_spec] if kernel_spec and expect != Expect.FINETUNE else []
    agent = manifest.agent
    return {
        "backend": build_backend(
            manifest, space, expect, evaluator.objectives[0], kernel_spec
        ),
        "static_prompt": render_static(space, profile, kernels, options),
        "history_policy": HistoryPolicy(
            manifest.history.keep_verbatim, manifest.history.summarize_rest
        ),
        "expect": expect,
        "kernel_spec": kernel_spec,
        "token_cap": manifest.token_cap,
        "retry_policy": RetryPolicy(agent.max_attempts, agent.clamp_fallback)
        if agent
        else None,
        "ledger": ledger,
    }


def targets_met(
    targets: Dict[str, float],
    objectives: Sequence[ObjectiveSpec],
    values: Dict[str, float],
) -> bool:
    """`>=` for maximized objectives, `<=` for minimized ones; all targets must hold."""
    if not targets:
        return False
    directions = {objective.name: objective.direction for objective in objectives}
    for name, threshold in targets.items():
        if directions[name] == Direction.MAXIMIZE:
            if values[name] < threshold:
                return False
        elif values[name] > threshold:
            return False
    return True


def evaluate_round(optimizer: Optimizer, evaluator: Evaluator) -> TrialRecord:
    started_at = now()
    proposal = optimizer.propose()
    with make_span(
        "evaluation", {"round": proposal.round, "evaluator": evaluator.kind}
    ):
        evaluation = evaluator.evaluate(proposal)
    declared = {objective.name for objective in evaluator.objectives}
    if set(evaluation.objectives) != declared:
        raise EvaluatorError(
            f"Round {proposal.round}: the evaluator reported "
            f"{sorted(evaluation.objectives)}, declared {sorted(declared)}"
        )
    kernel_config = evaluation.kernel_config or proposal.kernel_config
    optimizer.observe(
        Observation(
            proposal.config,
            dict(evaluation.objectives),
            proposal.round,
            kernel_config,
            evaluation.loss_trace,
        )
    )
    return TrialRecord(
        round=proposal.round,
        config=proposal.config,
        objectives=dict(evaluation.objectives),
        kernel_config=kernel_config,
        loss_trace=evaluation.loss_trace,
        agent_attempts=proposal.agent_attempts,
        repaired=proposal.repaired,
        notes=proposal.notes,
        agent_reply=proposal.agent_reply,
        started_at=started_at,
        finished_at=now(),
    )


def evaluate_rounds(
    optimizer: Optimizer,
    evaluator: Evaluator,
    log: TrialLog,
    targets: Dict[str, float],
) -> str:
    """Runs rounds until the budget is spent or every target holds."""
    for _ in range(optimizer.budget):
        with make_span("round", {"optimizer": optimizer.name}):
            record = evaluate_round(optimizer, evaluator)
            log.append(record)
        logger.info(
            f"Round {record.round}/{optimizer.budget}: "
            + ", ".join(f"{k}={v:g}" for k, v in record.objectives.items())
        )
        if targets_met(targets, evaluator.objectives, record.objectives):
            logger.info(f"Targets met in round {record.round}")
            return "target_met"
    return "completed"


def convergence_traces(
    records: List[TrialRecord], objectives: Sequence[ObjectiveSpec]
) -> Dict[str, List[float]]:
    if not records:
        return {}
    return {
        objective.name: best_so_far(records, objective.name, objective.direction)
        for objective in objectives
    }


def write_traces(
    path: Path, records: List[TrialRecord], traces: Dict[str, List[float]]
) -> None:
    names = list(traces)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["round"] + names + [f"best_{name}" for name in names])
        for index, record in enumerate(records):
            writer.writerow(
                [record.round]
                + [repr(record.objectives[name]) for name in names]
                + [repr(traces[name][index]) for name in names]
            )


def best_values(traces: Dict[str, List[float]]) -> Dict[str, float]:
    return {name: trace[-1] for name, trace in traces.items() if trace}


def prepare_run_dir(run_dir: Path) -> None:
    run_dir.mkdir(parents=True, exist_ok=True)
    if (run_dir / TRIALS_FILE).exists():
        raise RunDirectoryError(f"{run_dir} already holds a trial log")


def run_experiment(manifest: RunManifest, output_dir: Path) -> RunResult:
    """
    Executes the propose/evaluate loop described by the manifest. Every record is on
    disk before the next round begins. Any failure inside the loop ends the run with
    outcome "failed" and propagates after the partial results are written. The chat
    backend is closed either way.
    """
    if manifest.budget < 1:
        raise BudgetError(manifest.budget)
    run_dir = Path(output_dir)
    prepare_run_dir(run_dir)

    kernel_spec = resolve_kernel(manifest)
    profile = load_profile(manifest.hardware) if manifest.hardware else None
    expect = EXPECT_BY_EVALUATOR[manifest.evaluator.kind]
    space = (
        kernel_space(kernel_spec)  # type: ignore
        if expect == Expect.KERNEL
        else resolve_space(manifest.space)
    )
    evaluator = build_evaluator(
        manifest.evaluator, space, run_dir, kernel_spec, profile
    )
    declared = {objective.name for objective in evaluator.objectives}
    for name in manifest.targets:
        if name not in declared:
            raise UnknownObjectiveError(name)

    ledger = UsageLedger()
    options = dict(manifest.optimizer.options)
    if manifest.optimizer.name == AgentOptimizer.name:
        options.update(
            build_agent_options(
                manifest, space, evaluator, expect, kernel_spec, profile, ledger
            )
        )
    optimizer = build_optimizer(
        manifest.optimizer.name,
        space,
        manifest.optimizer.seed,
        manifest.budget,
        evaluator.objectives,
        **options,
    )

    manifest.outcome = None
    (run_dir / MANIFEST_FILE).write_text(dump_manifest(manifest))
    log = TrialLog(run_dir)
    logger.info(
        f"Run {manifest.run_id}: {optimizer.name} on {evaluator.kind}, "
        f"budget {manifest.budget}"
    )
    error: Optional[HwtuneException] = None
    try:
        status = evaluate_rounds(optimizer, evaluator, log, manifest.targets)
    except HwtuneException as e:
        logger.error(f"Run {manifest.run_id} failed: {e.msg}")
        status, error = "failed", e
    finally:
        close_backend(options.get("backend"))

    records = log.records
    traces = convergence_traces(records, evaluator.objectives)
    outcome = Outcome(
        status=status,
        rounds=len(records),
        best=best_values(traces),
        message=error.msg if error else "",
    )
    manifest.outcome = outcome
    write_results(run_dir, manifest, optimizer, records, traces, ledger)
    if error is not None:
        raise error
    return RunResult(run_dir, manifest, records, outcome, traces, ledger)


def close_backend(backend: Any) -> None:
    close = getattr(backend, "close", None)
    if callable(close):
        close()


def write_results(
    run_dir: Path,
    manifest: RunManifest,
    optimizer: Optimizer,
    records: List[TrialRecord],
    traces: Dict[str, List[float]],
    ledger: UsageLedger,
) -> None:
    (run_dir / MANIFEST_FILE).write_text(dump_manifest(manifest))
    write_traces(run_dir / TRACES_FILE, records, traces)
    usage = {"ledger": ledger.to_dict(), "cost": cost_report(ledger).to_dict()}
    (run_dir / USAGE_FILE).write_text(json.dumps(usage, indent=2))
    if isinstance(optimizer, AgentOptimizer) and optimizer.last_bundle is not None:
        (run_dir / PROMPT_FILE).write_text(optimizer.last_bundle.to_json())


def replay(run_dir: Path, output_dir: Optional[Path] = None) -> ReplayResult:
    """
    Re-runs the manifest stored in `run_dir` and compares the trial logs. Without an
    output directory the replay runs in a temporary one.
    """
    run_dir = Path(run_dir)
    original = TrialLog(run_dir).trials_path
    if not original.is_file():
        raise RunDirectoryError(f"{run_dir} holds no trial log")
    manifest = load_manifest(run_dir)
    if output_dir is not None:
        return compare_replay(manifest, original, Path(output_dir))
    with tempfile.TemporaryDirectory(prefix="hwtune-replay-") as directory:
        return compare_replay(manifest, original, Path(directory))


def compare_replay(
    manifest: RunManifest, original: Path, output_dir: Path
) -> ReplayResult:
    manifest = relocate_working_dir(manifest)
    try:
        run_experiment(manifest, output_dir)
    except HwtuneException:
        # the original may have failed the same way
        if not (output_dir / MANIFEST_FILE).is_file():
            raise
    replayed = TrialLog(output_dir).trials_path
    replayed.touch(exist_ok=True)
    difference = first_difference(original, replayed)
    if difference is None:
        logger.info("Replay matches the original trial log")
    else:
        logger.warning(f"Replay differs from the original at record {difference}")
    return ReplayResult(original, replayed, difference)


def relocate_working_dir(manifest: RunManifest) -> RunManifest:
    """Evaluations of a replay never write into the original working directory."""
    manifest.evaluator.working_dir = None
    return manifest

