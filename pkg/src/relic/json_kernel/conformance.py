"""Hand-labelled accept/reject corpus for the JSON parser.

Labels follow RFC 8259 plus three parser policies: lone UTF-16 surrogate
escapes are rejected, numbers that overflow a double are rejected, and
nesting deeper than 512 levels is rejected.
"""

from __future__ import annotations

from typing import NamedTuple

from relic.json_kernel.parser import MAX_DEPTH, JsonError, parse


class Case(NamedTuple):
    data: bytes
    accept: bool
    note: str


def _ok(data: bytes | str, note: str) -> Case:
    return Case(data if isinstance(data, bytes) else data.encode("utf-8"), True, note)


def _bad(data: bytes | str, note: str) -> Case:
    return Case(data if isinstance(data, bytes) else data.encode("utf-8"), False, note)


CORPUS: tuple[Case, ...] = (
    # scalars at top level
    _ok("null", "top-level null"),
    _ok("true", "top-level true"),
    _ok("false", "top-level false"),
    _ok("0", "zero"),
    _ok("-0", "negative zero"),
    _ok("123", "integer"),
    _ok("-123.456e+7", "signed fraction with exponent"),
    _ok("1E-2", "capital exponent"),
    _ok("1.7976931348623157e308", "max double"),
    _ok("5e-324", "smallest subnormal"),
    _ok('""', "empty string"),
    _ok('"hello"', "plain string"),
    _ok(" \t\r\n 1 \n", "surrounding whitespace"),
    # strings and escapes
    _ok(r'"\" \\ \/ \b \f \n \r \t"', "all simple escapes"),
    _ok(r'"\u0041\u00e9\u4e2d"', "BMP unicode escapes"),
    _ok(r'"\uD834\uDD1E"', "surrogate pair (G clef)"),
    _ok(r'"\u0000"', "escaped NUL"),
    _ok('"café 中文 \U0001F600"', "raw multibyte UTF-8"),
    _ok('"\x7f"', "raw DEL is allowed"),
    # arrays
    _ok("[]", "empty array"),
    _ok("[1, true, null]", "mixed array"),
    _ok("[[[]]]", "nested empty arrays"),
    _ok('[ 1 , "a" , [ 2 ] , { } ]', "spaced array"),
    _ok(b"[" * MAX_DEPTH + b"]" * MAX_DEPTH, "maximum nesting depth"),
    # objects
    _ok("{}", "empty object"),
    _ok('{"a":1}', "one member"),
    _ok('{"a":1,"a":2}', "duplicate keys preserved"),
    _ok('{"":0}', "empty key"),
    _ok('{"a":{"b":{"c":[1,{"d":null}]}}}', "nested objects"),
    _ok('{ "k" : "v" , "n" : -1 }', "whitespace around tokens"),
    _ok('{"\\u00e9":"x"}', "escaped key"),
    # --- rejections -----------------------------------------------------
    _bad("", "empty document"),
    _bad("   ", "whitespace only"),
    _bad("{", "unterminated object"),
    _bad("[", "unterminated array"),
    _bad("[1,]", "trailing comma in array"),
    _bad('{"a":1,}', "trailing comma in object"),
    _bad("[,1]", "leading comma"),
    _bad("[1 2]", "missing comma"),
    _bad('{"a" 1}', "missing colon"),
    _bad('{"a":}', "missing value"),
    _bad("{a:1}", "unquoted key"),
    _bad("{1:1}", "numeric key"),
    _bad("{'a':1}", "single-quoted key"),
    _bad("['a']", "single-quoted string"),
    _bad("[1]]", "extra closing bracket"),
    _bad("[1]x", "trailing garbage"),
    _bad("1 2", "two top-level values"),
    _bad("tru", "truncated literal"),
    _bad("True", "capitalised literal"),
    _bad("nul", "truncated null"),
    _bad("NaN", "NaN literal"),
    _bad("Infinity", "Infinity literal"),
    _bad("-Infinity", "negative Infinity"),
    _bad("01", "leading zero"),
    _bad("-01", "negative leading zero"),
    _bad("+1", "leading plus"),
    _bad(".5", "missing integer part"),
    _bad("1.", "missing fraction digits"),
    _bad("1e", "missing exponent digits"),
    _bad("1e+", "signed exponent without digits"),
    _bad("0x10", "hex number"),
    _bad("-", "lone minus"),
    _bad("1e400", "overflows a double"),
    _bad('"abc', "unterminated string"),
    _bad('"a\nb"', "raw newline in string"),
    _bad('"a\tb"', "raw tab in string"),
    _bad(r'"\x41"', "invalid escape letter"),
    _bad(r'"\u12"', "short unicode escape"),
    _bad(r'"\uZZZZ"', "non-hex unicode escape"),
    _bad(r'"\uD800"', "lone high surrogate"),
    _bad(r'"\uDC00"', "lone low surrogate"),
    _bad(r'"\uD800A"', "high surrogate followed by non-surrogate"),
    _bad('"\\', "dangling backslash"),
    _bad(b'"\xff"', "invalid UTF-8 byte"),
    _bad(b'"\xc3"', "truncated UTF-8 sequence"),
    _bad(b'"\xed\xa0\x80"', "UTF-8 encoded surrogate"),
    _bad("/* c */ 1", "comment"),
    _bad("[1] // c", "line comment"),
    _bad(b"[" * (MAX_DEPTH + 1) + b"]" * (MAX_DEPTH + 1), "nesting one past the limit"),
    _bad("\u00a01", "non-breaking space is not JSON whitespace"),
)


def accepts(data: bytes) -> bool:
    try:
        parse(data)
    except JsonError:
        return False
    return True


def run_corpus(corpus=CORPUS) -> list[tuple[Case, bool]]:
    """Return ``(case, got)`` for every case whose decision disagrees with its label."""
    mismatches = []
    for case in corpus:
        got = accepts(case.data)
        if got != case.accept:
            mismatches.append((case, got))
    return mismatches
