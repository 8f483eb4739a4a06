from .exceptions import (  # noqa
    InvalidConfigError,
    KernelSpecError,
    StrategyExhausted,
    UnsupportedPrecisionError,
)
from .kernel_space import (  # noqa
    assignment_from_config,
    config_from_assignment,
    kernel_space,
    project_config,
)
from .kernel_spec import (  # noqa
    KERNELS,
    MAX_BLOCK_THREADS,
    MAX_DIM,
    MAX_UNROLL,
    TILINGS,
    KernelConfig,
    KernelSpec,
    precision_of,
)
from .latency_model import (  # noqa
    DEFAULT_PARAMS,
    LatencyBreakdown,
    LatencyModelParams,
    PrecisionComparison,
    int4_vs_int8_report,
    latency_breakdown,
    model_latency,
)
from .loader import (  # noqa
    find_kernel,
    kernel_from_dict,
    kernel_to_prompt_json,
    list_kernel_files,
    load_kernels,
    load_kernels_text,
)
from .tuning import (  # noqa
    ExhaustiveStrategy,
    KernelStrategy,
    KernelTuneResult,
    candidate_grid,
    tune_kernel,
)
