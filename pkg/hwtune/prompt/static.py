import json
from dataclasses import dataclass
from typing import List, Optional, Tuple

from hwtune.hardware import HardwareProfile
from hwtune.kerneltune import KernelSpec, kernel_to_prompt_json
from hwtune.space import SearchSpace

from . import templates
from .exceptions import PromptOptionsError
from .formatting import param_line, response_example


@dataclass(frozen=True)
class PromptOptions:
    model: str = "ResNet32"
    method: str = "QAT"
    precision: str = "8-bit"
    dataset: str = "CIFAR-10"
    framework: str = "PyTorch"
    enable_finetune: bool = True
    # None: enabled exactly when kernels are given
    enable_deployment: Optional[bool] = None
    react: bool = True
    notes: Tuple[str, ...] = ()

    def deployment_enabled(self, kernels: List[KernelSpec]) -> bool:
        if self.enable_deployment is None:
            return bool(kernels)
        return self.enable_deployment


@dataclass(frozen=True)
class StaticPrompt:
    system_message: str
    hardware_section: str = ""
    deployment_section: str = ""
    finetune_section: str = ""
    react_directive: str = ""
    response_format_examples: str = ""

    def sections(self) -> List[str]:
        return [
            section
            for section in (
                self.hardware_section,
                self.finetune_section,
                self.response_format_examples,
                self.deployment_section,
                self.react_directive,
            )
            if section
        ]

    def text(self) -> str:
        return "\n\n".join(self.sections())


def render_static(
    space: SearchSpace,
    profile: Optional[HardwareProfile] = None,
    kernels: Optional[List[KernelSpec]] = None,
    options: PromptOptions = PromptOptions(),
) -> StaticPrompt:
    kernels = kernels or []
    finetune = options.enable_finetune
    deployment = options.deployment_enabled(kernels)
    if not finetune and not deployment:
        raise PromptOptionsError(
            "At least one of the fine-tuning and deployment objectives has to be "
            "enabled"
        )
    if deployment and not kernels:
        raise PromptOptionsError("The deployment objective needs at least one kernel")

    if finetune and deployment:
        system_message = templates.SYSTEM_JOINT
    elif finetune:
        system_message = templates.SYSTEM_FINETUNE
    else:
        system_message = templates.SYSTEM_DEPLOYMENT

    return StaticPrompt(
        system_message=system_message,
        hardware_section=render_hardware(profile) if profile else "",
        finetune_section=render_finetune(space, options) if finetune else "",
        response_format_examples=render_response_format(space) if finetune else "",
        deployment_section=render_deployment(kernels, options) if deployment else "",
        react_directive=templates.REACT_DIRECTIVE if options.react else "",
    )


def render_hardware(profile: HardwareProfile) -> str:
    return templates.HARDWARE.format(
        description=profile.description or profile.name,
        sheet=json.dumps(profile.to_prompt_json()),
        memory=profile.memory_budget_gb,
    )


def render_finetune(space: SearchSpace, options: PromptOptions) -> str:
    lines = [
        templates.FINETUNE_INTRO.format(
            method=options.method,
            model=options.model,
            precision=options.precision,
            dataset=options.dataset,
            framework=options.framework,
        )
    ]
    lines.extend(param_line(param) for param in space)
    lines.extend(options.notes)
    lines.append(templates.FINETUNE_RULES)
    return "\n".join(lines)


def render_response_format(space: SearchSpace) -> str:
    return templates.RESPONSE_FORMAT + "\n" + response_example(space)


def render_deployment(kernels: List[KernelSpec], options: PromptOptions) -> str:
    names = ", ".join(dict.fromkeys(spec.kernel for spec in kernels))
    parts = [
        templates.DEPLOYMENT_INTRO.format(model=options.model, kernels=names),
        templates.KERNEL_RESPONSE_SCHEMA,
    ]
    for index, spec in enumerate(kernels, start=1):
        parts.append(
            templates.KERNEL_INTRO.format(index=index, name=spec.label)
            + "\n"
            + json.dumps(kernel_to_prompt_json(spec), indent=4)
        )
    return "\n".join(parts)
