"""The "widget" sample document used as the JSON parsing payload."""

from importlib import resources

_WIDGET = resources.files("relic.json_kernel").joinpath("data/widget.json").read_bytes()


def widget_document() -> bytes:
    """Raw UTF-8 bytes of the embedded widget sample (same object every call)."""
    return _WIDGET
