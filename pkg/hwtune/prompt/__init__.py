from .bundle import (  # noqa
    DEFAULT_TOKEN_CAP,
    Message,
    PromptBundle,
    assemble,
    build_messages,
)
from .dynamic import (  # noqa
    DynamicPrompt,
    Expect,
    HistoryPolicy,
    TrialBlock,
    render_block,
    render_dynamic,
    summarize,
)
from .exceptions import (  # noqa
    PromptOptionsError,
    PromptTooLargeError,
    StaticTooLargeError,
)
from .formatting import (  # noqa
    METRIC_LABELS,
    METRIC_UNITS,
    format_metric,
    format_value,
    metric_label,
    param_line,
)
from .static import PromptOptions, StaticPrompt, render_static  # noqa
from .tokens import estimate_tokens  # noqa
