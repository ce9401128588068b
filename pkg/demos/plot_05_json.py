"""
Parsing JSON by recursive descent
=================================

Objects keep every key in document order, duplicates included.
"""

from relic.json_kernel import JsonError, dumps, max_object_depth, parse, to_python, widget_document

doc = parse(widget_document())
print("root keys:", doc.keys())
print("window:", to_python(doc["widget"]["window"]))
print("object depth:", max_object_depth(doc))

print(parse(b'{"a": 1, "a": 2}'))
print(dumps(parse(b'[1, 2.5, "x", null]')))

#%%
# Errors carry a byte offset into the input.

for bad in [b"{", b"[1,]", b'"\\ud800"', b"1e999", b"[" * 513 + b"]" * 513]:
    try:
        parse(bad)
    except JsonError as exc:
        print(f"{type(exc).__name__:18} at byte {exc.offset}: {bad[:20]!r}")

#%%
# The conformance corpus.

from relic.json_kernel.conformance import CORPUS, run_corpus

print(f"{len(CORPUS)} cases, {len(run_corpus())} mismatches")
