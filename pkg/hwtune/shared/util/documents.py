import re
from typing import Any, Callable, Dict

import fastjsonschema
import yaml

from .exceptions import SchemaError


class DocumentLoader(yaml.SafeLoader):
    """Safe loader that also reads exponent floats without a dot, e.g. 1e-5."""


DocumentLoader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(
        r"""^(?:[-+]?(?:[0-9][0-9_]*)\.[0-9_]*(?:[eE][-+]?[0-9]+)?
        |[-+]?(?:[0-9][0-9_]*)(?:[eE][-+]?[0-9]+)
        |\.[0-9_]+(?:[eE][-+]?[0-9]+)?)$""",
        re.X,
    ),
    list("-+0123456789."),
)


def load_document(text: str, kind: str) -> Any:
    try:
        return yaml.load(text, Loader=DocumentLoader)
    except yaml.YAMLError as e:
        raise SchemaError(f"The {kind} document is not valid structured text: {e}")


def dump_document(data: Any) -> str:
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=None)


def compile_schema(schema: Dict[str, Any]) -> Callable[[Any], Any]:
    return fastjsonschema.compile(
        {"$schema": "http://json-schema.org/draft-07/schema#", **schema}
    )


def check_schema(validate: Callable[[Any], Any], data: Any, kind: str) -> None:
    try:
        validate(data)
    except fastjsonschema.JsonSchemaException as e:
        raise SchemaError(f"Invalid {kind} document: {e.message}")
