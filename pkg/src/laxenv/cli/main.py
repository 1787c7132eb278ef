"""Command-line driver: ``laxenv VERB ARGS [flags]``.

Exit status: 0 pass, 1 check failure, 2 input error, 3 size cap.
"""
import argparse
import os
import sys
import time
from importlib import resources

from .. import config
from .. import envelope as env
from .. import simplex
from .. import twocat as tc
from ..errors import (CapOverflow, InputError, LaxEnvError, SizeExceeded, UnknownSuite,
                      UnresolvedReference)
from . import suites
from .parse import parse_spec
from .report import Report, digest

VERBS = ("validate", "envelope", "classify", "restrict", "check", "enum", "suite")
CHECKS = ("local-sections", "characterizations", "segal", "globular-complete",
          "inert-cocartesian", "initiality", "classification", "lemma", "file")


def example_path(name):
    """Path of a shipped example file."""
    return str(resources.files("laxenv").joinpath("data", name))


def _locate(path):
    if os.path.exists(path):
        return path
    shipped = example_path(os.path.basename(path))
    if os.path.exists(shipped):
        return shipped
    raise InputError("no such file: %s" % path, path)


def _is_file_arg(a):
    return os.path.isfile(a) or ("." in a and os.path.isfile(example_path(os.path.basename(a))))


class _Context:
    """A parsed spec file with name resolution and the builder shortcuts
    ``lambda``, ``iota`` and ``identity`` over its base 2-category."""

    def __init__(self, spec, cap):
        self.spec = spec
        self.cap = cap
        self._env = None

    def base(self):
        """The last plain 2-category in the file."""
        names = [n for n in self.spec.names("twocat")
                 if not isinstance(self.spec[n], env.Envelope)]
        if not names:
            raise UnresolvedReference("file defines no 2-category", "twocat")
        return self.spec[names[-1]]

    def envelope(self):
        if self._env is None:
            A = self.base()
            found = [self.spec[n] for n in self.spec.names("twocat")
                     if isinstance(self.spec[n], env.Envelope) and self.spec[n].base is A]
            if found and (self.cap is None or found[-1].cap == self.cap):
                self._env = found[-1]
            else:
                self._env = env.build_envelope(A, self.cap)
        return self._env

    def get(self, name, kinds=None):
        if name in self.spec.objects:
            value = self.spec[name]
            if kinds and self.spec.kinds[name] not in kinds:
                raise InputError("%s is a %s, expected %s"
                                 % (name, self.spec.kinds[name], " or ".join(kinds)), name)
            return value
        if name == "lambda":
            return env.lambda_functor(self.envelope())
        if name == "iota":
            return env.iota(self.envelope())
        if name == "identity":
            return tc.identity_two_functor(self.base())
        raise UnresolvedReference("no block named %r" % name, name)

    def last(self, kind):
        return self.spec.first(kind)


def _caps(cap):
    caps = config.all_caps()
    if cap is not None:
        caps["string"] = cap
    return caps


# Verbs.

def _validate(ctx, args, opts):
    spec = ctx.spec
    blocks = {}
    for name in spec.names():
        v = spec[name]
        entry = {"kind": spec.kinds[name]}
        if hasattr(v, "objects"):
            entry["objects"] = len(v.objects)
        if hasattr(v, "morphisms"):
            entry["morphisms"] = len(v.morphisms)
        if hasattr(v, "home1"):
            entry["one_cells"] = len(v.home1)
            entry["two_cells"] = len(v.home2)
        blocks[name] = entry
    return Report("validate", "validate", True, counts={"blocks": len(blocks),
                                                        "checks": len(spec.checks)},
                  details={"blocks": blocks})


def _hom_summary(E):
    out = {}
    for (a, b) in sorted(E.homs):
        H = E.hom(a, b)
        by_len = {}
        for s in H.objects:
            n = len(E.strings[s].cells)
            by_len[n] = by_len.get(n, 0) + 1
        out["%s->%s" % (a, b)] = {"one_cells": len(H.objects), "two_cells": len(H.morphisms),
                                  "by_length": {str(k): by_len[k] for k in sorted(by_len)}}
    return out


def _envelope(ctx, args, opts):
    A = ctx.get(args[0], ["twocat"]) if args else ctx.base()
    E = env.build_envelope(A, opts.cap)
    homs = _hom_summary(E)
    return Report("envelope", "envelope", True,
                  counts={"objects": len(E.objects), "one_cells": len(E.home1),
                          "two_cells": len(E.home2)},
                  details={"base": A.name, "string_cap": E.cap, "homs": homs})


def _table(F):
    return {k: F.cells1[k] for k in sorted(F.cells1)}


def _classify(ctx, args, opts):
    L = ctx.get(args[0], ["lax"]) if args else ctx.last("lax")
    E = env.build_envelope(L.source, opts.cap)
    G = env.classify_lax_functor(L, E)
    failures = tc.strict_functor_failures(G)
    back = env.restrict_strict_functor(G, E)
    round_trip = back.key() == L.key()
    ok = not failures and round_trip
    return Report("classify", "classify", ok,
                  counts={"one_cells": len(G.cells1), "two_cells": len(G.cells2),
                          "failures": len(failures)},
                  witnesses=[str(f) for f in failures[:5]],
                  details={"lax_functor": L.name, "strict_functor": {"objects": dict(G.obj),
                                                                     "one_cells": _table(G)},
                           "strict": not failures, "round_trip": round_trip,
                           "string_cap": E.cap})


def _restrict(ctx, args, opts):
    G = ctx.get(args[0], ["functor"]) if args else ctx.last("functor")
    E = G.source
    if not isinstance(E, env.Envelope):
        raise InputError("restrict needs a strict 2-functor out of an envelope", G.name)
    L = env.restrict_strict_functor(G, E)
    failures = tc.lax_functor_failures(L)
    round_trip = env.classify_lax_functor(L, E).key() == G.key()
    ok = not failures and round_trip
    return Report("restrict", "restrict", ok,
                  counts={"one_cells": len(L.cells1), "gamma": len(L.gamma),
                          "failures": len(failures)},
                  witnesses=[str(f) for f in failures[:5]],
                  details={"lax_functor": {"objects": dict(L.obj), "one_cells": _table(L),
                                           "delta": dict(sorted(L.delta.items())),
                                           "gamma": {"%s . %s" % k: v
                                                     for k, v in sorted(L.gamma.items())}},
                           "lax": not failures, "round_trip": round_trip})


def _enum(ctx, args, opts):
    """``enum lax A B``, ``enum strict A B``, ``enum monads B`` on a file,
    or ``enum simplex n m [kind]`` without one."""
    what = args[0] if args else ""
    if what == "simplex":
        n, m = int(args[1]), int(args[2])
        kind = args[3] if len(args) > 3 else "all"
        maps = simplex.enumerate_simplex_maps(n, m, kind)
        return Report("enum", "simplex", True, counts={"maps": len(maps)},
                      details={"maps": [str(a) for a in maps]})
    if ctx is None:
        raise InputError("enum %s needs a spec file" % what, what)
    if what == "monads":
        B = ctx.get(args[1], ["twocat"]) if len(args) > 1 else ctx.base()
        ms = tc.monads(B)
        return Report("enum", "monads", True, counts={"monads": len(ms)},
                      details={"monads": [list(m) for m in ms]})
    if what in ("lax", "strict"):
        A, B = ctx.get(args[1], ["twocat"]), ctx.get(args[2], ["twocat"])
        if what == "lax":
            found = tc.enumerate_lax_functors(A, B)
        else:
            found = tc.enumerate_strict_two_functors(A, B)
        return Report("enum", what, True, counts={"functors": len(found)},
                      details={"source": A.name, "target": B.name})
    raise InputError("unknown enumeration %r (lax, strict, monads, simplex)" % what, what)


# Checks.

def _check_local_sections(ctx, args, opts):
    F = ctx.get(args[0], ["functor"]) if args else env.lambda_functor(ctx.envelope())
    r = env.check_local_right_adjoint_sections(F)
    return Report("check", "local-sections", r["ok"],
                  counts={"failures": len(r["failures"])},
                  witnesses=[" ".join(map(str, f)) for f in r["failures"]],
                  details={"functor": F.name})


def _check_characterizations(ctx, args, opts):
    F = ctx.get(args[0], ["functor"]) if args else env.lambda_functor(ctx.envelope())
    N = opts.N if opts.N is not None else 2
    r = env.check_equivalent_characterizations(F, N)
    conds = {str(k): v for k, v in sorted(r["conditions"].items())}
    return Report("check", "characterizations", r["agree"],
                  counts={"holding": sum(conds.values()), "conditions": len(conds)},
                  details={"functor": F.name, "conditions": conds, "agree": r["agree"],
                           "truncation": N})


def _check_segal(ctx, args, opts):
    A = ctx.get(args[0], ["twocat"]) if args else ctx.base()
    N = opts.N if opts.N is not None else config.DEFAULT_TRUNCATION
    r = tc.check_segal(tc.segal_fibers(A, N))
    bad = [str(n) for n, v in sorted(r.items()) if not v["isomorphism"]]
    return Report("check", "segal", not bad, counts={"levels": len(r), "failures": len(bad)},
                  witnesses=bad,
                  details={"levels": {str(n): v for n, v in sorted(r.items())}, "truncation": N})


def _check_globular(ctx, args, opts):
    A = ctx.get(args[0], ["twocat"]) if args else ctx.base()
    N = opts.N if opts.N is not None else config.DEFAULT_TRUNCATION
    r = tc.check_globular_complete(tc.segal_fibers(A, N))
    return Report("check", "globular-complete", r["globular"] and r["complete"],
                  counts={"equivalences": r["equivalences"]},
                  witnesses=[" ".join(map(str, w)) for w in r["witnesses"]],
                  details={"globular": r["globular"], "complete": r["complete"]})


def _check_inert(ctx, args, opts):
    L = ctx.get(args[0], ["lax", "functor"]) if args else env.iota(ctx.envelope())
    if isinstance(L, tc.StrictTwoFunctor):
        L = tc.as_lax(L)
    N = opts.N if opts.N is not None else config.DEFAULT_TRUNCATION
    r = tc.lax_lift_report(L, N)
    return Report("check", "inert-cocartesian", r["inert_cocartesian"],
                  counts={"failures": len(r["failures"]), "active_missed": len(r["active_missed"])},
                  witnesses=["%s along %s" % f for f in r["failures"][:10]],
                  details={"functor": L.name, "cocartesian": r["cocartesian"], "truncation": N})


def _check_initiality(ctx, args, opts):
    E = ctx.envelope()
    if args:
        corpus = [(n, ctx.get(n, ["functor"])) for n in args]
    else:
        from .corpus import sect_corpus
        corpus = sect_corpus(E.base, E)
    r = env.verify_initiality(E, corpus)
    entries = r["entries"]
    if any(e.get("ok") is None for e in entries):
        raise SizeExceeded("initiality search exceeded the cap: %s"
                           % next(e["error"] for e in entries if e.get("ok") is None))
    return Report("check", "initiality", r["ok"],
                  counts={"entries": len(entries),
                          "flagged": sum(1 for e in entries if e.get("flagged"))},
                  witnesses=[e["name"] for e in entries if not e["ok"]],
                  details={"entries": entries, "string_cap": E.cap})


def _check_classification(ctx, args, opts):
    if len(args) != 2:
        raise InputError("classification needs a source and a target 2-category")
    A, B = ctx.get(args[0], ["twocat"]), ctx.get(args[1], ["twocat"])
    E = env.build_envelope(A, opts.cap)
    r = env.classification_counts(A, B, E)
    return Report("check", "classification", r["ok"],
                  counts={"lax": r["lax"], "strict": r["strict"]},
                  details={"restrict_classify": r["restrict_classify"],
                           "classify_restrict": r["classify_restrict"], "string_cap": E.cap})


def _check_lemma(ctx, args, opts):
    """``lemma SUITE role=name ...``; bare values that are not block names
    are passed through as strings."""
    if not args:
        raise InputError("lemma needs a suite name")
    name = args[0]
    if name not in suites.SUITES:
        raise UnknownSuite("unknown lemma suite %r" % name, name)
    inst = {}
    for role, value in _assignments(args[1:]):
        inst[role] = ctx.spec[value] if value in ctx.spec.objects else value
    suite = suites.SUITES[name]
    flag, info = suites.run_check(suite, inst)
    return Report("check", "lemma " + name, flag, details={"lemma": suite.anchor, "info": info})


def _assignments(words):
    """``role=value`` pairs; the file tokenizer splits ``=`` off, so both
    ``a=b`` and ``a = b`` are accepted."""
    text = " ".join(words).replace("=", " = ").split()
    if len(text) % 3 or any(text[i + 1] != "=" for i in range(0, len(text), 3)):
        raise InputError("expected role=name pairs, got %r" % " ".join(words))
    return [(text[i], text[i + 2]) for i in range(0, len(text), 3)]


def _check_file(ctx, args, opts):
    sections = []
    for line, words in ctx.spec.checks:
        if not words:
            raise InputError("empty check directive on line %d" % line)
        kind, rest = words[0], list(words[1:])
        if kind not in CHECK_RUNNERS or kind == "file":
            raise InputError("unknown check %r on line %d" % (kind, line), kind)
        rep = CHECK_RUNNERS[kind](ctx, rest, opts)
        rep.details["line"] = line
        sections.append(rep)
    if not sections:
        raise InputError("file has no check directives")
    return Report("check", "file", all(s.passed for s in sections),
                  counts={"checks": len(sections),
                          "passed": sum(1 for s in sections if s.passed)},
                  witnesses=["line %d: %s" % (s.details["line"], s.check)
                             for s in sections if not s.passed],
                  sections=sections)


CHECK_RUNNERS = {
    "local-sections": _check_local_sections,
    "characterizations": _check_characterizations,
    "segal": _check_segal,
    "globular-complete": _check_globular,
    "inert-cocartesian": _check_inert,
    "initiality": _check_initiality,
    "classification": _check_classification,
    "lemma": _check_lemma,
    "file": _check_file,
}


# Dispatch.

def _split_file(args, required=True):
    """Separate the spec-file argument from the rest."""
    files = [a for a in args if _is_file_arg(a)]
    if not files:
        paths = [a for a in args if "/" in a or os.path.splitext(a)[1]]
        if paths:
            raise InputError("no such file: %s" % paths[-1], paths[-1])
        if required:
            raise InputError("no spec file given")
        return None, list(args)
    rest = list(args)
    i = len(rest) - 1 - rest[::-1].index(files[-1])
    path = rest.pop(i)
    return _locate(path), rest


def _options(**kw):
    ns = argparse.Namespace(cap=None, N=None, seed=None, n=20, jobs=1)
    for k, v in kw.items():
        setattr(ns, k, v)
    return ns


def run_command(verb, args, opts=None):
    """Run one verb and return its Report (errors propagate)."""
    opts = opts or _options()
    args = list(args)
    start = time.perf_counter()
    if verb == "suite":
        if len(args) != 1:
            raise InputError("suite takes exactly one suite name")
        rep = suites.run_suite(args[0], opts.seed, opts.n, jobs=opts.jobs)
        rep.digest = digest(extra=[verb, args[0], opts.seed, opts.n])
        rep.caps = _caps(opts.cap)
        rep.elapsed = time.perf_counter() - start
        return rep
    if verb not in VERBS:
        raise InputError("unknown verb %r; expected one of %s" % (verb, ", ".join(VERBS)), verb)
    kind = None
    if verb == "check":
        if not args:
            raise InputError("check needs a check name")
        kind, args = args[0], args[1:]
        if kind not in CHECK_RUNNERS:
            raise InputError("unknown check %r; expected one of %s" % (kind, ", ".join(CHECKS)),
                             kind)
    path, rest = _split_file(args, required=not (verb == "enum" and args and args[0] == "simplex"))
    ctx = _Context(parse_spec(path), opts.cap) if path else None
    if verb == "check":
        rep = CHECK_RUNNERS[kind](ctx, rest, opts)
    else:
        rep = {"validate": _validate, "envelope": _envelope, "classify": _classify,
               "restrict": _restrict, "enum": _enum}[verb](ctx, rest, opts)
    rep.command = " ".join([verb] + ([kind] if kind else []))
    rep.digest = digest([path] if path else [], [verb, kind] + rest
                        + [opts.cap, opts.N])
    rep.caps = _caps(opts.cap)
    rep.elapsed = time.perf_counter() - start
    return rep


def build_parser():
    p = argparse.ArgumentParser(prog="laxenv", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("args", nargs="*")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--cap", type=int, help="string cap for envelopes")
    p.add_argument("-N", type=int, dest="N", help="truncation level")
    p.add_argument("--timing", action="store_true", help="include elapsed time")
    p.add_argument("--out", help="also write the report to this file")
    p.add_argument("--seed", help="suite seed (required for suites)")
    p.add_argument("-n", type=int, default=20, help="suite instance count")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for suites")
    return p


def main(argv=None):
    parser = build_parser()
    opts = parser.parse_args(argv)
    if opts.verb == "suite" and opts.seed is None:
        parser.error("suite needs --seed")
    try:
        rep = run_command(opts.verb, opts.args, opts)
    except LaxEnvError as e:
        code = 3 if isinstance(e, CapOverflow) else e.exit_code
        print("error: %s" % e, file=sys.stderr)
        return code
    text = rep.to_json(opts.timing) + "\n" if opts.json else rep.to_text(opts.timing)
    sys.stdout.write(text)
    if opts.out:
        with open(opts.out, "w") as fh:
            fh.write(text)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
