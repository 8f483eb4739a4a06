import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from hwtune.shared.util import BadCodingError
from hwtune.trials import TrialRecord

from . import templates
from .formatting import format_losses, format_metrics, format_value


class Expect(str, Enum):
    """What the agent is asked to return."""

    FINETUNE = "finetune"
    KERNEL = "kernel"
    BOTH = "both"


DEPLOYMENT_METRICS = ("latency",)


@dataclass(frozen=True)
class HistoryPolicy:
    keep_verbatim: int = 5
    summarize_rest: bool = True


@dataclass(frozen=True)
class TrialBlock:
    round: int
    text: str
    summary: str
    reply: Optional[str] = None


@dataclass
class DynamicPrompt:
    rounds_left: int
    trial_blocks: List[TrialBlock] = field(default_factory=list)
    summaries: List[str] = field(default_factory=list)

    @property
    def budget_line(self) -> str:
        return templates.BUDGET_LINE.format(rounds_left=self.rounds_left)


def render_dynamic(
    history: List[TrialRecord],
    rounds_left: int,
    policy: HistoryPolicy = HistoryPolicy(),
    expect: Expect = Expect.FINETUNE,
) -> DynamicPrompt:
    if rounds_left < 0:
        raise BadCodingError(f"rounds_left has to be >= 0, got {rounds_left}")
    blocks = [render_block(record, expect) for record in history]
    keep = max(policy.keep_verbatim, 0)
    split = max(len(blocks) - keep, 0)
    summaries = [block.summary for block in blocks[:split]]
    return DynamicPrompt(
        rounds_left=rounds_left,
        trial_blocks=blocks[split:],
        summaries=summaries if policy.summarize_rest else [],
    )


def render_block(record: TrialRecord, expect: Expect = Expect.FINETUNE) -> TrialBlock:
    lines: List[str] = []
    finetune_metrics = {
        k: v for k, v in record.objectives.items() if k not in DEPLOYMENT_METRICS
    }
    deploy_metrics = {
        k: v for k, v in record.objectives.items() if k in DEPLOYMENT_METRICS
    }
    with_kernel = record.kernel_config is not None and expect != Expect.FINETUNE
    with_finetune = expect != Expect.KERNEL

    if with_finetune:
        if with_kernel:
            lines.append("Fine-tuning:")
        config = json.dumps(record.config.assignments)
        lines.append(templates.CURRENT_CONFIG.format(config=config))
        metrics = finetune_metrics if with_kernel else record.objectives
        if metrics:
            lines.append(templates.RESULT_LINE.format(metrics=format_metrics(metrics)))
        losses = format_losses(record.loss_trace)
        if losses:
            lines.append(losses)
    if with_kernel:
        if with_finetune:
            lines.append("Deployment:")
        lines.append(
            templates.CURRENT_KERNEL_CONFIG.format(
                config=json.dumps(record.kernel_config.to_json_dict())  # type: ignore
            )
        )
        metrics = deploy_metrics if with_finetune else record.objectives
        if metrics:
            lines.append(templates.RESULT_LINE.format(metrics=format_metrics(metrics)))
    if record.notes:
        lines.append(record.notes)

    return TrialBlock(
        round=record.round,
        text="\n".join(lines),
        summary=summarize(record),
        reply=record.agent_reply,
    )


def summarize(record: TrialRecord) -> str:
    return f"Round {record.round}: " + headline(record.objectives)


def headline(objectives: Dict[str, float]) -> str:
    if not objectives:
        return "no result"
    return ", ".join(f"{k}={format_value(float(v))}" for k, v in objectives.items())
