from pathlib import Path
from typing import Optional, Sequence

from hwtune.hardware import HardwareProfile
from hwtune.kerneltune import KernelSpec
from hwtune.optimizers import objective_spec
from hwtune.shared.di import injector
from hwtune.shared.di.exceptions import DependencyNotFound
from hwtune.space import SearchSpace

from .evaluator import CompositeEvaluator, Evaluator
from .exceptions import ManifestError
from .external import ExternalCommandEvaluator
from .kernel_sim import KernelSimEvaluator
from .manifest import EvaluatorSection
from .synthetic import SyntheticEvaluator


EVALUATIONS_DIR = "evaluations"


def build_synthetic(section, space, run_dir, kernel_spec, profile) -> Evaluator:
    return SyntheticEvaluator(
        section.name,
        space,
        seed=section.seed,
        noise=section.noise,
        dims=section.dims,
        bits=section.bits,
        objective=section.objectives[0] if section.objectives else "accuracy",
    )


def build_external(section, space, run_dir, kernel_spec, profile) -> Evaluator:
    objectives = tuple(objective_spec(name) for name in section.objectives)
    working_dir = Path(section.working_dir or Path(run_dir) / EVALUATIONS_DIR)
    return ExternalCommandEvaluator(
        section.command, working_dir, section.timeout, objectives
    )


def build_kernel_sim(section, space, run_dir, kernel_spec, profile) -> Evaluator:
    if kernel_spec is None or profile is None:
        raise ManifestError(
            "The kernel simulator needs a kernel and a hardware profile"
        )
    return KernelSimEvaluator(kernel_spec, profile)


def build_composite(section, space, run_dir, kernel_spec, profile) -> Evaluator:
    finetune = build_evaluator(
        section, space, run_dir, kernel_spec, profile, section.finetune_kind
    )
    deployment = build_kernel_sim(section, space, run_dir, kernel_spec, profile)
    return CompositeEvaluator(finetune, deployment)


def register_evaluators() -> None:
    injector.register_named(Evaluator, SyntheticEvaluator.kind, build_synthetic)
    injector.register_named(Evaluator, ExternalCommandEvaluator.kind, build_external)
    injector.register_named(Evaluator, KernelSimEvaluator.kind, build_kernel_sim)
    injector.register_named(Evaluator, CompositeEvaluator.kind, build_composite)


def evaluator_kinds() -> Sequence[str]:
    return injector.names(Evaluator)


def build_evaluator(
    section: EvaluatorSection,
    space: SearchSpace,
    run_dir: Path,
    kernel_spec: Optional[KernelSpec] = None,
    profile: Optional[HardwareProfile] = None,
    kind: Optional[str] = None,
) -> Evaluator:
    kind = kind or section.kind
    try:
        builder = injector.get_named(Evaluator, kind)
    except DependencyNotFound:
        raise ManifestError(
            f"Unknown evaluator kind '{kind}', choose one of "
            + ", ".join(evaluator_kinds())
        )
    return builder(section, space, run_dir, kernel_spec, profile)
