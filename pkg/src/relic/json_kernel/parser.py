"""Recursive-descent JSON parser producing an order-preserving document tree.

Mapping of JSON values to Python:

========  =====================================================
null      ``None``
boolean   ``bool``
number    ``float`` (IEEE double, like a DOM parser's default)
string    ``str``
array     ``list``
object    :class:`JsonObject` -- a list of ``(key, value)`` pairs
========  =====================================================

Objects keep document order and duplicate keys.
"""

from __future__ import annotations

import math
import re
from typing import Any, Union

MAX_DEPTH = 512


class JsonError(ValueError):
    """Base class for parse failures; ``offset`` is a byte offset into the input."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset
        self.reason = message


class JsonSyntaxError(JsonError):
    pass


class JsonDepthError(JsonError):
    pass


class JsonEncodingError(JsonError):
    pass


class JsonObject(list):
    """Ordered ``(key, value)`` pairs of a JSON object."""

    __slots__ = ()

    def keys(self) -> list[str]:
        return [k for k, _ in self]

    def get(self, key: str, default: Any = None) -> Any:
        """Value of the first occurrence of ``key``."""
        for k, v in self:
            if k == key:
                return v
        return default

    def __getitem__(self, item):
        if isinstance(item, str):
            for k, v in self:
                if k == item:
                    return v
            raise KeyError(item)
        return super().__getitem__(item)

    def __repr__(self) -> str:
        return f"JsonObject({list.__repr__(self)})"


JsonValue = Union[None, bool, float, str, list, JsonObject]

_WS = re.compile(r"[ \t\n\r]*")
_NUMBER = re.compile(r"-?(?:0|[1-9][0-9]*)(\.[0-9]+)?([eE][+-]?[0-9]+)?")
_STR_CHUNK = re.compile(r'[^"\\\x00-\x1f]*')
_HEX4 = re.compile(r"[0-9a-fA-F]{4}")

_SIMPLE_ESCAPES = {
    '"': '"',
    "\\": "\\",
    "/": "/",
    "b": "\b",
    "f": "\f",
    "n": "\n",
    "r": "\r",
    "t": "\t",
}


class _Parser:
    __slots__ = ("text", "raw")

    def __init__(self, text: str, raw: bytes) -> None:
        self.text = text
        self.raw = raw

    def byte_offset(self, pos: int) -> int:
        if self.text.isascii():
            return pos
        return len(self.text[:pos].encode("utf-8"))

    def syntax(self, pos: int, expected: str) -> JsonSyntaxError:
        text = self.text
        found = repr(text[pos]) if pos < len(text) else "end of input"
        return JsonSyntaxError(f"expected {expected}, found {found}", self.byte_offset(pos))

    def value(self, pos: int, depth: int) -> tuple[Any, int]:
        text = self.text
        if pos >= len(text):
            raise self.syntax(pos, "a value")
        ch = text[pos]
        if ch == "{":
            if depth >= MAX_DEPTH:
                raise JsonDepthError(f"nesting deeper than {MAX_DEPTH}", self.byte_offset(pos))
            obj = JsonObject()
            pos = _WS.match(text, pos + 1).end()
            if pos < len(text) and text[pos] == "}":
                return obj, pos + 1
            while True:
                if pos >= len(text) or text[pos] != '"':
                    raise self.syntax(pos, "a string key")
                key, pos = self.string(pos + 1)
                pos = _WS.match(text, pos).end()
                if pos >= len(text) or text[pos] != ":":
                    raise self.syntax(pos, "':'")
                pos = _WS.match(text, pos + 1).end()
                item, pos = self.value(pos, depth + 1)
                obj.append((key, item))
                pos = _WS.match(text, pos).end()
                if pos < len(text):
                    if text[pos] == ",":
                        pos = _WS.match(text, pos + 1).end()
                        continue
                    if text[pos] == "}":
                        return obj, pos + 1
                raise self.syntax(pos, "',' or '}'")
        if ch == "[":
            if depth >= MAX_DEPTH:
                raise JsonDepthError(f"nesting deeper than {MAX_DEPTH}", self.byte_offset(pos))
            arr: list = []
            pos = _WS.match(text, pos + 1).end()
            if pos < len(text) and text[pos] == "]":
                return arr, pos + 1
            while True:
                item, pos = self.value(pos, depth + 1)
                arr.append(item)
                pos = _WS.match(text, pos).end()
                if pos < len(text):
                    if text[pos] == ",":
                        pos = _WS.match(text, pos + 1).end()
                        continue
                    if text[pos] == "]":
                        return arr, pos + 1
                raise self.syntax(pos, "',' or ']'")
        if ch == '"':
            return self.string(pos + 1)
        if ch == "t" and text.startswith("true", pos):
            return True, pos + 4
        if ch == "f" and text.startswith("false", pos):
            return False, pos + 5
        if ch == "n" and text.startswith("null", pos):
            return None, pos + 4
        match = _NUMBER.match(text, pos)
        if match is not None:
            number = float(match.group())
            if math.isinf(number):
                raise JsonSyntaxError("number too big for a double", self.byte_offset(pos))
            return number, match.end()
        raise self.syntax(pos, "a value")

    def string(self, pos: int) -> tuple[str, int]:
        """Parse string contents starting just after the opening quote."""
        text = self.text
        chunks = []
        while True:
            end = _STR_CHUNK.match(text, pos).end()
            chunks.append(text[pos:end])
            if end >= len(text):
                raise self.syntax(end, "closing '\"'")
            ch = text[end]
            if ch == '"':
                return "".join(chunks), end + 1
            if ch != "\\":
                raise JsonSyntaxError(
                    f"unescaped control character {ch!r} in string", self.byte_offset(end)
                )
            esc = text[end + 1 : end + 2]
            if esc in _SIMPLE_ESCAPES:
                chunks.append(_SIMPLE_ESCAPES[esc])
                pos = end + 2
            elif esc == "u":
                code, pos = self.hex4(end)
                if 0xD800 <= code <= 0xDBFF:
                    if text[pos : pos + 2] != "\\u":
                        raise JsonEncodingError("unpaired high surrogate", self.byte_offset(end))
                    low, after = self.hex4(pos)
                    if not 0xDC00 <= low <= 0xDFFF:
                        raise JsonEncodingError("invalid low surrogate", self.byte_offset(pos))
                    code = 0x10000 + ((code - 0xD800) << 10) + (low - 0xDC00)
                    pos = after
                elif 0xDC00 <= code <= 0xDFFF:
                    raise JsonEncodingError("unpaired low surrogate", self.byte_offset(end))
                chunks.append(chr(code))
            else:
                raise JsonEncodingError(f"invalid escape '\\{esc}'", self.byte_offset(end))

    def hex4(self, backslash: int) -> tuple[int, int]:
        start = backslash + 2
        if _HEX4.match(self.text, start) is None:
            raise JsonEncodingError("\\u must be followed by 4 hex digits", self.byte_offset(backslash))
        return int(self.text[start : start + 4], 16), start + 4


def parse(data: bytes | bytearray | memoryview | str) -> JsonValue:
    """Parse one JSON document from UTF-8 bytes.

    Raises :class:`JsonSyntaxError`, :class:`JsonDepthError` or
    :class:`JsonEncodingError` (all :class:`JsonError`, a ``ValueError``).

    >>> parse(b'[1, true, null]')
    [1.0, True, None]
    """
    if isinstance(data, str):
        raw = data.encode("utf-8", "surrogatepass")
    else:
        raw = bytes(data)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise JsonEncodingError(f"invalid UTF-8 ({exc.reason})", exc.start) from None
    p = _Parser(text, raw)
    pos = _WS.match(text, 0).end()
    result, pos = p.value(pos, 0)
    pos = _WS.match(text, pos).end()
    if pos != len(text):
        raise p.syntax(pos, "end of input")
    return result


def dumps(value: Any) -> str:
    """Serialize a document tree (or plain dicts/ints) back to compact JSON."""
    parts: list[str] = []
    _dump(value, parts)
    return "".join(parts)


def _dump(value: Any, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"cannot serialize {value!r} as JSON")
        if value.is_integer() and abs(value) <= 2**53:
            out.append(str(int(value)))
        else:
            out.append(repr(value))
    elif isinstance(value, str):
        out.append(_quote(value))
    elif isinstance(value, (JsonObject, dict)):
        items = value.items() if isinstance(value, dict) else value
        out.append("{")
        for i, (k, v) in enumerate(items):
            if i:
                out.append(",")
            out.append(_quote(str(k)))
            out.append(":")
            _dump(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, v in enumerate(value):
            if i:
                out.append(",")
            _dump(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__} as JSON")


_QUOTE_MAP = {'"': '\\"', "\\": "\\\\", "\b": "\\b", "\f": "\\f", "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_NEEDS_ESCAPE = re.compile(r'["\\\x00-\x1f]')


def _quote(s: str) -> str:
    def repl(m: re.Match) -> str:
        ch = m.group()
        return _QUOTE_MAP.get(ch) or f"\\u{ord(ch):04x}"

    return '"' + _NEEDS_ESCAPE.sub(repl, s) + '"'


def to_python(value: Any) -> Any:
    """Convert :class:`JsonObject` nodes to dicts (later duplicates win)."""
    if isinstance(value, JsonObject):
        return {k: to_python(v) for k, v in value}
    if isinstance(value, list):
        return [to_python(v) for v in value]
    return value


def max_object_depth(value: Any) -> int:
    """Deepest chain of nested objects; a flat object counts as 1."""
    if isinstance(value, JsonObject):
        return 1 + max((max_object_depth(v) for _, v in value), default=0)
    if isinstance(value, list):
        return max((max_object_depth(v) for v in value), default=0)
    return 0
