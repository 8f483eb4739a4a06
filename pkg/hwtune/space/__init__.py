from .exceptions import InvariantError, UnclampableError  # noqa
from .loader import (  # noqa
    DEFAULT_PRESET,
    list_presets,
    load_preset,
    load_space,
    load_space_file,
    serialize_space,
    space_from_dict,
    space_to_dict,
)
from .param_spec import ParamKind, ParamSpec  # noqa
from .sampling import decode, decode_value, encode, encode_value, sample  # noqa
from .search_space import Configuration, SearchSpace, default_config  # noqa
from .validation import (  # noqa
    VALID,
    ValidationVerdict,
    Violation,
    ViolationKind,
    clamp,
    validate,
)
