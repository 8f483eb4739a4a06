import json
from typing import Any, Dict, Optional

import numpy as np

from hwtune.kerneltune import KernelConfig
from hwtune.optimizers import Proposal
from hwtune.space import Configuration, ParamKind, ParamSpec, SearchSpace, encode


def proposal(
    config: Configuration, round: int = 1, kernel_config: Optional[KernelConfig] = None
) -> Proposal:
    return Proposal(round=round, config=config, kernel_config=kernel_config)


def agent_reply(config: Dict[str, Any], thought: str = "Trying the next point.") -> str:
    return (
        f"Thought: {thought}\n"
        "Action: Propose the configuration below.\n"
        f"```json\n{json.dumps(config)}\n```"
    )


def float_space(dims: int = 2, name: str = "unit") -> SearchSpace:
    return SearchSpace(
        name,
        tuple(
            ParamSpec(f"x{i}", ParamKind.UNIFORM_FLOAT, 0.5, 0.0, 1.0)
            for i in range(dims)
        ),
    )


def sphere_value(space: SearchSpace, config: Configuration, optimum) -> float:
    return -float(np.sum((encode(space, config) - np.asarray(optimum)) ** 2))
