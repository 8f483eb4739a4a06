import math
from dataclasses import dataclass, fields, replace

from hwtune.hardware import INT4, INT8, HardwareProfile, QuantScheme
from hwtune.shared.util import InvalidFormat

from .exceptions import InvalidConfigError, UnsupportedPrecisionError
from .kernel_spec import KernelConfig, KernelSpec, tensor_type_for


OPS_PER_TERA_PER_US = 1e6


@dataclass(frozen=True)
class LatencyModelParams:
    """
    Coefficients of the analytic kernel latency model. Latencies are modelled
    microseconds; only their ordering is meaningful.
    """

    mem_bandwidth_coeff: float = 2e-4
    compute_coeff: float = 1000.0
    launch_overhead: float = 2.0
    block_overhead: float = 0.01
    register_pressure_threshold: int = 4
    unroll_gain: float = 0.25
    spill_penalty: float = 0.15
    unpack_penalty_per_elem: float = 1e-4
    occupancy_block_limit: int = 64
    tile_reuse_limit: int = 8
    tile_contention: float = 0.2

    def __post_init__(self):
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise InvalidFormat(f"Latency model {f.name} has to be > 0")


DEFAULT_PARAMS = LatencyModelParams()


@dataclass(frozen=True)
class LatencyBreakdown:
    launch: float
    compute: float
    memory: float
    unpack: float
    utilization: float

    @property
    def total(self) -> float:
        return self.launch + self.compute + self.memory + self.unpack


def unroll_factor(unroll: int, params: LatencyModelParams) -> float:
    """Compute-time multiplier: ILP gain up to the threshold, spills beyond it."""
    threshold = params.register_pressure_threshold
    ilp = 1 + params.unroll_gain * math.log2(min(unroll, threshold))
    spill = 1 + params.spill_penalty * max(0, unroll - threshold)
    return spill / ilp


def tiling_factor(tiling: int, params: LatencyModelParams) -> float:
    """Memory-time multiplier: reuse grows up to the limit, contention beyond it."""
    reuse = min(tiling, params.tile_reuse_limit)
    contention = 1 + params.tile_contention * max(
        0.0, math.log2(tiling) - math.log2(params.tile_reuse_limit)
    )
    return contention / reuse


def latency_breakdown(
    spec: KernelSpec,
    config: KernelConfig,
    profile: HardwareProfile,
    params: LatencyModelParams = DEFAULT_PARAMS,
) -> LatencyBreakdown:
    violations = config.violations()
    if violations:
        raise InvalidConfigError(violations)

    precision = spec.precision
    rate = profile.compute_rate(precision)
    if rate <= 0:
        raise UnsupportedPrecisionError(profile.name, precision)
    ops_per_us = rate * OPS_PER_TERA_PER_US

    work = spec.output_elements
    resident_blocks = min(config.grid_blocks, params.occupancy_block_limit)
    utilization = min(work, config.block_threads * resident_blocks) / work

    launch = params.launch_overhead + params.block_overhead * config.grid_blocks
    compute = (
        params.compute_coeff
        * spec.flops
        / (ops_per_us * utilization)
        * unroll_factor(config.unroll, params)
    )
    memory = (
        params.mem_bandwidth_coeff
        * spec.elements_moved
        * tiling_factor(config.tiling, params)
    )
    unpack = 0.0
    if precision == "INT4" and not profile.is_native("INT4"):
        unpack = params.unpack_penalty_per_elem * spec.elements_moved
    return LatencyBreakdown(launch, compute, memory, unpack, utilization)


def model_latency(
    spec: KernelSpec,
    config: KernelConfig,
    profile: HardwareProfile,
    params: LatencyModelParams = DEFAULT_PARAMS,
) -> float:
    return latency_breakdown(spec, config, profile, params).total


@dataclass(frozen=True)
class PrecisionComparison:
    faster: QuantScheme
    ratio: float
    int4_latency: float
    int8_latency: float


def int4_vs_int8_report(
    spec: KernelSpec,
    profile: HardwareProfile,
    params: LatencyModelParams = DEFAULT_PARAMS,
) -> PrecisionComparison:
    """
    Runs the default config at INT4 and at INT8. `ratio` is slower over faster, so
    it is never below 1; on a tie the narrower INT4 counts as faster.
    """
    config = spec.default_config()
    int4 = model_latency(
        replace(spec, tensor_type=tensor_type_for("INT4")), config, profile, params
    )
    int8 = model_latency(
        replace(spec, tensor_type=tensor_type_for("INT8")), config, profile, params
    )
    if int4 <= int8:
        return PrecisionComparison(INT4, int8 / int4, int4, int8)
    return PrecisionComparison(INT8, int4 / int8, int4, int8)
