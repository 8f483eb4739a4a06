from .exceptions import (  # noqa
    EmptyCandidateError,
    InvalidParameterCount,
    MissingEntryError,
    NegativeMemoryBudget,
    ProfileError,
    UnknownSchemeError,
)
from .memory import GateVerdict, admitted, memory_gate, weight_memory_gb  # noqa
from .profile import (  # noqa
    HardwareProfile,
    list_profiles,
    load_profile,
    load_profile_text,
    parse_figure,
    profile_from_dict,
)
from .quant_scheme import (  # noqa
    ALL_SCHEMES,
    FP16,
    INT4,
    INT8,
    PRECISIONS,
    STANDARD_CANDIDATES,
    W2A2,
    W4A4,
    W8A8,
    QuantScheme,
    scheme,
    schemes,
)
from .selection import (  # noqa
    QuantRanking,
    effective_throughput,
    select_quant_by_measurement,
    select_quant_by_profile,
)
from .throughput_table import ThroughputTable, load_table, table_from_dict  # noqa
