from typing import List

from hwtune.space import Configuration, ParamKind, ParamSpec, SearchSpace

from .kernel_spec import (
    MAX_BLOCK_THREADS,
    MAX_DIM,
    MAX_UNROLL,
    TILINGS,
    KernelConfig,
    KernelSpec,
)


def kernel_space(spec: KernelSpec) -> SearchSpace:
    """
    The tunable dimensions of a kernel as a search space: grid.x, block.x, tiling
    and unroll. The y and z components stay at the kernel's defaults.
    """
    grid, block = spec.default_grid, spec.default_block
    return SearchSpace(
        f"kernel_{spec.label}",
        (
            ParamSpec(
                "grid_x", ParamKind.UNIFORM_INT, grid[0], 1, MAX_DIM, log_scale=True
            ),
            ParamSpec(
                "block_x", ParamKind.UNIFORM_INT, block[0], 1, MAX_DIM, log_scale=True
            ),
            ParamSpec(
                "tiling",
                ParamKind.CATEGORICAL,
                spec.default_tiling,
                choices=TILINGS,
            ),
            ParamSpec(
                "unroll", ParamKind.UNIFORM_INT, spec.default_unroll, 1, MAX_UNROLL
            ),
        ),
    )


def project_block_x(block_x: int, block_y: int, block_z: int) -> int:
    return max(1, min(block_x, MAX_BLOCK_THREADS // (block_y * block_z)))


def config_from_assignment(spec: KernelSpec, config: Configuration) -> KernelConfig:
    grid, block = spec.default_grid, spec.default_block
    block_x = project_block_x(int(config["block_x"]), block[1], block[2])
    return KernelConfig(
        grid=(int(config["grid_x"]), grid[1], grid[2]),
        block=(block_x, block[1], block[2]),
        tiling=int(config["tiling"]),
        unroll=int(config["unroll"]),
    )


def assignment_from_config(spec: KernelSpec, config: KernelConfig) -> Configuration:
    return Configuration(
        {
            "grid_x": config.grid[0],
            "block_x": config.block[0],
            "tiling": config.tiling,
            "unroll": config.unroll,
        },
        kernel_space(spec).name,
    )


def project_config(config: KernelConfig) -> KernelConfig:
    """Clips every component back into the limits, used to repair agent replies."""

    def clip(value, lower, upper):
        return int(min(max(int(round(value)), lower), upper))

    grid = tuple(clip(d, 1, MAX_DIM) for d in (list(config.grid) + [1, 1, 1])[:3])
    block: List[int] = [
        clip(d, 1, MAX_DIM) for d in (list(config.block) + [1, 1, 1])[:3]
    ]
    block[0] = project_block_x(block[0], block[1], block[2])
    tiling = max(t for t in TILINGS if t <= clip(config.tiling, 1, MAX_DIM))
    return KernelConfig(
        grid=grid,  # type: ignore
        block=tuple(block),  # type: ignore
        tiling=tiling,
        unroll=clip(config.unroll, 1, MAX_UNROLL),
        code_changed=config.code_changed,
        code=config.code,
    )
