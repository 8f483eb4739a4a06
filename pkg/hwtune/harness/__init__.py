from .compare import (  # noqa
    ComparisonReport,
    ComparisonRow,
    compare_optimizers,
)
from .evaluator import CompositeEvaluator, Evaluation, Evaluator  # noqa
from .exceptions import (  # noqa
    ComparisonFailed,
    DimensionMismatchError,
    EvaluatorError,
    EvaluatorTimeout,
    ManifestError,
    MetricsParseError,
    NonzeroExit,
    RunDirectoryError,
)
from .external import (  # noqa
    ExternalCommandEvaluator,
    config_document,
    external_evaluator,
    parse_metrics,
)
from .kernel_sim import KernelSimEvaluator, kernel_sim_evaluator  # noqa
from .manifest import (  # noqa
    AgentSection,
    EvaluatorSection,
    HistorySection,
    OptimizerSection,
    Outcome,
    PromptSection,
    RunManifest,
    dump_manifest,
    load_manifest,
    load_manifest_text,
    manifest_from_dict,
    manifest_to_dict,
)
from .registry import build_evaluator, evaluator_kinds, register_evaluators  # noqa
from .run import (  # noqa
    ReplayResult,
    RunResult,
    evaluate_rounds,
    replay,
    run_experiment,
    targets_met,
)
from .synthetic import SyntheticEvaluator, synthetic_evaluator  # noqa


def setup_di():
    register_evaluators()
