"""Size caps.

Defaults can be overridden globally through environment variables, which are
read at call time so tests can monkeypatch them.
"""
import os

DEFAULT_OBJECT_CAP = 10_000
DEFAULT_SEARCH_CAP = 100_000
DEFAULT_RANK_CAP = 8
DEFAULT_STRING_CAP = 4
DEFAULT_TRUNCATION = 3

_ENV = {
    "objects": ("LAXENV_OBJECT_CAP", DEFAULT_OBJECT_CAP),
    "search": ("LAXENV_SEARCH_CAP", DEFAULT_SEARCH_CAP),
    "rank": ("LAXENV_RANK_CAP", DEFAULT_RANK_CAP),
    "string": ("LAXENV_STRING_CAP", DEFAULT_STRING_CAP),
}


def cap(kind, override=None):
    """Return the effective cap of the given kind."""
    if override is not None:
        return override
    var, default = _ENV[kind]
    raw = os.environ.get(var)
    return int(raw) if raw else default


def all_caps():
    return {kind: cap(kind) for kind in _ENV}
