from relic.json_kernel.parser import (
    MAX_DEPTH,
    JsonDepthError,
    JsonEncodingError,
    JsonError,
    JsonObject,
    JsonSyntaxError,
    dumps,
    max_object_depth,
    parse,
    to_python,
)
from relic.json_kernel.widget import widget_document

__all__ = [
    "MAX_DEPTH",
    "JsonDepthError",
    "JsonEncodingError",
    "JsonError",
    "JsonObject",
    "JsonSyntaxError",
    "dumps",
    "max_object_depth",
    "parse",
    "to_python",
    "widget_document",
]
