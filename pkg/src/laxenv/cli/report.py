"""Structured reports: a plain-text rendering and a JSON rendering with the
same field names."""
import hashlib
import json

from .. import __version__, config

PASS, FAIL = "pass", "fail"


def digest(paths=(), extra=()):
    """sha256 over the input files and the normalized arguments."""
    h = hashlib.sha256()
    for p in paths:
        with open(p, "rb") as fh:
            h.update(fh.read())
        h.update(b"\0")
    for x in extra:
        h.update(str(x).encode())
        h.update(b"\0")
    return "sha256:" + h.hexdigest()[:16]


class Report:
    def __init__(self, command, check, passed, counts=None, witnesses=None, details=None,
                 caps=None, input_digest="", seed=None, sections=None):
        self.command = command
        self.check = check
        self.passed = passed
        self.counts = dict(counts or {})
        self.witnesses = list(witnesses or [])
        self.details = dict(details or {})
        self.caps = dict(caps if caps is not None else config.all_caps())
        self.digest = input_digest
        self.seed = seed
        self.sections = list(sections or [])
        self.elapsed = None
        self.version = __version__

    @property
    def flag(self):
        return PASS if self.passed else FAIL

    def as_dict(self, timing=False):
        out = {
            "command": self.command,
            "check": self.check,
            "flag": self.flag,
            "version": self.version,
            "digest": self.digest,
            "caps": self.caps,
            "counts": self.counts,
            "witnesses": self.witnesses,
            "details": self.details,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.sections:
            out["sections"] = [s.as_dict(timing) for s in self.sections]
        if timing and self.elapsed is not None:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    def to_json(self, timing=False):
        return json.dumps(self.as_dict(timing), sort_keys=True, indent=2, default=str)

    def to_text(self, timing=False):
        return "\n".join(_text(self.as_dict(timing), 0)) + "\n"


def _scalar(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def _text(d, depth):
    pad = "  " * depth
    lines = []
    for key in sorted(d):
        v = d[key]
        if key == "sections":
            for s in v:
                lines.append("%s- %s: %s" % (pad, s["check"], s["flag"]))
                lines += _text({k: x for k, x in s.items()
                                if k not in ("check", "flag", "caps", "version")
                                and not (k == "digest" and not x)}, depth + 1)
        elif isinstance(v, dict):
            if not v:
                continue
            lines.append("%s%s:" % (pad, key))
            lines += _text(v, depth + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append("%s%s:" % (pad, key))
            for item in v:
                lines.append("%s  -" % pad)
                lines += _text(item, depth + 2)
        elif isinstance(v, list) and key in ("witnesses",):
            if v:
                lines.append("%s%s:" % (pad, key))
                lines += ["%s  - %s" % (pad, _scalar(x)) for x in v]
        elif isinstance(v, str) and "\n" in v:
            lines.append("%s%s: |" % (pad, key))
            lines += ["%s  %s" % (pad, x) for x in v.rstrip("\n").splitlines()]
        else:
            lines.append("%s%s: %s" % (pad, key, _scalar(v)))
    return lines
