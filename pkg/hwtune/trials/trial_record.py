from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from hwtune.kerneltune import KernelConfig
from hwtune.space import Configuration


@dataclass
class TrialRecord:
    round: int
    config: Configuration
    objectives: Dict[str, float] = field(default_factory=dict)
    kernel_config: Optional[KernelConfig] = None
    loss_trace: Optional[List[float]] = None
    agent_attempts: int = 1
    repaired: bool = False
    notes: str = ""
    agent_reply: Optional[str] = None
    # wall clock, kept out of the deterministic trial log
    started_at: Optional[str] = field(default=None, compare=False)
    finished_at: Optional[str] = field(default=None, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "round": self.round,
            "space": self.config.space_name,
            "config": dict(self.config.assignments),
            "kernel_config": (
                self.kernel_config.to_json_dict() if self.kernel_config else None
            ),
            "objectives": dict(self.objectives),
            "loss_trace": (
                list(self.loss_trace) if self.loss_trace is not None else None
            ),
            "agent_attempts": self.agent_attempts,
            "repaired": self.repaired,
            "notes": self.notes,
            "agent_reply": self.agent_reply,
        }

    def timing_dict(self) -> Dict[str, Any]:
        return {
            "round": self.round,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TrialRecord":
        kernel = data.get("kernel_config")
        return cls(
            round=data["round"],
            config=Configuration(dict(data["config"]), data.get("space", "")),
            objectives={k: float(v) for k, v in data.get("objectives", {}).items()},
            kernel_config=kernel_config_from_json(kernel) if kernel else None,
            loss_trace=data.get("loss_trace"),
            agent_attempts=data.get("agent_attempts", 1),
            repaired=data.get("repaired", False),
            notes=data.get("notes", ""),
            agent_reply=data.get("agent_reply"),
        )


def kernel_config_from_json(data: Dict[str, Any]) -> KernelConfig:
    return KernelConfig(
        grid=tuple(data["griddim"]),  # type: ignore
        block=tuple(data["blockdim"]),  # type: ignore
        tiling=data.get("tiling size", 1),
        unroll=data.get("unroll size", 1),
        code_changed=data.get("code changed", False),
        code=data.get("code"),
    )
