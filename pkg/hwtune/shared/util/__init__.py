from ..typing import JSON, Dim3, Identifier, Objectives, PositiveInt, Shape4  # noqa
from .checks import (  # noqa
    assert_is_dim3,
    assert_is_identifier,
    assert_is_positive_int,
    assert_is_shape4,
)
from .documents import (  # noqa
    check_schema,
    compile_schema,
    dump_document,
    load_document,
)
from .exceptions import (  # noqa
    BadCodingError,
    BudgetError,
    DocumentNotFound,
    HwtuneException,
    InvalidFormat,
    SchemaError,
)
from .logging import logger  # noqa
from .self_validating_dataclass import SelfValidatingDataclass  # noqa
