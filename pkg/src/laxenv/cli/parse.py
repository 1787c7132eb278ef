"""Reader for the line-oriented spec format.

A file is a sequence of blocks and one-line directives::

    category C            # a finite category
      object a
      mor f : a -> b
      id a = id_a
      comp g . f = h
    end

    twocat A
      objects: a b
      hom a b = C         # omitted pairs get the empty hom
      id1 a = 1a
      hcomp a b c: g . f = h
      hcomp2 a b c: beta * alpha = gamma
    end

    catfunctor F : C -> D        obj x = y / mor f = g
    nat t : F => G               at x = m
    adjunction adj : F -| U      unit = t / counit = s
    functor H : A -> B           obj / cell1 / cell2   (strict 2-functor)
    lax L : A -> B               obj / cell1 / cell2 / delta a = c / gamma g . f = c

    let E = envelope A cap 3     # derived objects, see BUILDERS
    check local-sections lambda A

Ids are whitespace-free tokens; the operators ``.`` and ``*`` must be
surrounded by spaces because envelope ids contain dots.  ``#`` starts a
comment.  Bare category lines outside any block form a category named
``main``.
"""
import re

from .. import envelope as env
from .. import twocat as tc
from ..adjunction import Adjunction, _check_endpoints
from ..errors import InputError, ParseError, UnresolvedReference, ValidationError
from ..fincat import (CatFunctor, FinCategory, NatTransformation, chain_category,
                      terminal_category, validate_category, validate_functor,
                      validate_transformation, walking_arrow, walking_iso)


class SpecFile:
    """Resolved contents of a spec file, in definition order."""

    def __init__(self, objects, kinds, checks, source=""):
        self.objects = objects
        self.kinds = kinds
        self.checks = checks
        self.source = source

    def __getitem__(self, name):
        try:
            return self.objects[name]
        except KeyError:
            raise UnresolvedReference("no block named %r" % name, name) from None

    def names(self, kind=None):
        return [n for n in self.objects if kind is None or self.kinds[n] == kind]

    def first(self, kind):
        names = self.names(kind)
        if not names:
            raise UnresolvedReference("file defines no %s block" % kind, kind)
        return self.objects[names[-1]]


TWOCAT_BUILTINS = {
    "point": tc.point, "b_max": tc.b_max, "b_min": tc.b_min, "b_z2": tc.b_z2,
    "b_end1": tc.b_end1, "arrow": tc.walking_arrow_2cat, "two_cell": tc.walking_two_cell,
}
CATEGORY_BUILTINS = {
    "terminal": terminal_category, "walking_arrow": walking_arrow, "walking_iso": walking_iso,
}

_HEADER = re.compile(r"^(category|twocat|catfunctor|nat|adjunction|functor|lax)\s+(\S+)(.*)$")


def _tokens(text):
    """Split on whitespace, then peel ``->``, ``=`` and trailing ``:`` off
    tokens that are not bracketed ids."""
    out = []
    for tok in text.split():
        if tok.startswith("<"):
            out.append(tok)
            continue
        parts = re.split(r"(->|=>|-\||=)", tok)
        for p in parts:
            if not p:
                continue
            if p.endswith(":") and len(p) > 1:
                out.extend([p[:-1], ":"])
            else:
                out.append(p)
    return out


class _Line(int):
    """A line number that remembers its text, for column reporting."""

    def __new__(cls, number, raw):
        obj = int.__new__(cls, number)
        obj.raw = raw
        return obj

    def column(self, token):
        at = getattr(self, "raw", "").find(token)
        return at + 1 if at >= 0 else 1


class _Block:
    def __init__(self, kind, name, header, line):
        self.kind = kind
        self.name = name
        self.header = header
        self.line = line
        self.rows = []


def _expect(toks, pattern, line, what):
    """Match ``toks`` against ``pattern`` (literal strings, ``None`` for an
    id slot); return the ids."""
    col = line.column if isinstance(line, _Line) else (lambda tok: 1)
    for t, p in zip(toks, pattern):
        if p is not None and t != p:
            raise ParseError("expected %r in %s line, got %r" % (p, what, t), line, col(t))
    if len(toks) != len(pattern):
        extra = toks[len(pattern)] if len(toks) > len(pattern) else toks[-1]
        raise ParseError("malformed %s line" % what, line, col(extra))
    return [t for t, p in zip(toks, pattern) if p is None]


def _split_lines(text):
    blocks, directives = [], []
    current = None
    implicit = None
    for number, raw in enumerate(text.splitlines(), 1):
        lineno = _Line(number, raw)
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if current is not None:
            if line == "end":
                blocks.append(current)
                current = None
            else:
                current.rows.append((lineno, _tokens(line)))
            continue
        m = _HEADER.match(line)
        if m:
            current = _Block(m.group(1), m.group(2), _tokens(m.group(3)), lineno)
            continue
        toks = _tokens(line)
        if toks[0] in ("let", "check"):
            directives.append((lineno, toks))
        elif toks[0] in ("object", "mor", "id", "comp"):
            if implicit is None:
                implicit = _Block("category", "main", [], lineno)
                blocks.append(implicit)
            implicit.rows.append((lineno, toks))
        else:
            raise ParseError("unknown directive %r" % toks[0], lineno, lineno.column(toks[0]))
    if current is not None:
        raise ParseError("block %s %s is not closed with 'end'" % (current.kind, current.name),
                         current.line, 1)
    return blocks, directives


class _Resolver:
    def __init__(self):
        self.objects = {}
        self.kinds = {}

    def define(self, name, kind, value, line):
        if name in self.objects:
            raise ParseError("duplicate name %r" % name, line, 1)
        self.objects[name] = value
        self.kinds[name] = kind

    def get(self, name, kinds, line):
        if name not in self.objects:
            raise UnresolvedReference("unresolved reference %r (line %d)" % (name, line), name)
        if self.kinds[name] not in kinds:
            raise UnresolvedReference("%r is a %s, expected %s (line %d)"
                                      % (name, self.kinds[name], "/".join(kinds), line), name)
        return self.objects[name]


def _delegated(block, fn, *args):
    """Run a home-module validator, naming the block in any failure."""
    try:
        return fn(*args)
    except ValidationError as e:
        raise type(e)("%s %s: %s" % (block.kind, block.name, e), *e.ids) from None


def _category(block):
    objects, morphisms, identity, composition = [], {}, {}, {}
    for line, toks in block.rows:
        head = toks[0]
        if head == "object":
            (x,) = _expect(toks, ["object", None], line, "object")
            objects.append(x)
        elif head == "mor":
            f, a, b = _expect(toks, ["mor", None, ":", None, "->", None], line, "mor")
            morphisms[f] = (a, b)
        elif head == "id":
            x, f = _expect(toks, ["id", None, "=", None], line, "id")
            identity[x] = f
        elif head == "comp":
            g, f, h = _expect(toks, ["comp", None, ".", None, "=", None], line, "comp")
            composition[(g, f)] = h
        else:
            raise ParseError("unknown category line %r" % head, line, 1)
    for f, (a, b) in morphisms.items():
        for x in (a, b):
            if x not in objects:
                raise UnresolvedReference("morphism %s refers to unknown object %s" % (f, x), f, x)
    C = FinCategory(objects, morphisms, identity, composition, block.name)
    _delegated(block, validate_category, C)
    return C


def _twocat(block, res):
    objects, homs, id1, comp1, comp2 = [], {}, {}, {}, {}
    for line, toks in block.rows:
        head = toks[0]
        if head == "objects":
            if len(toks) < 2 or toks[1] != ":":
                raise ParseError("expected 'objects: ...'", line, 1)
            objects.extend(toks[2:])
        elif head == "hom":
            a, b, name = _expect(toks, ["hom", None, None, "=", None], line, "hom")
            homs[(a, b)] = res.get(name, ["category"], line)
        elif head == "id1":
            a, f = _expect(toks, ["id1", None, "=", None], line, "id1")
            id1[a] = f
        elif head == "hcomp":
            _, _, _, g, f, h = _ids(toks, line, "hcomp", ".")
            comp1[(g, f)] = h
        elif head == "hcomp2":
            _, _, _, be, al, ga = _ids(toks, line, "hcomp2", "*")
            comp2[(be, al)] = ga
        else:
            raise ParseError("unknown twocat line %r" % head, line, 1)
    for (a, b) in homs:
        for x in (a, b):
            if x not in objects:
                raise UnresolvedReference("hom (%s, %s) names unknown object %s" % (a, b, x), x)
    for a in objects:
        for b in objects:
            if (a, b) not in homs:
                homs[(a, b)] = FinCategory([], {}, {}, {}, "empty")
    A = _delegated(block, tc.StrictTwoCategory, objects, homs, id1, comp1, comp2, block.name)
    _delegated(block, tc.validate_two_category, A)
    return A


def _ids(toks, line, what, op):
    return _expect(toks, [what, None, None, None, ":", None, op, None, "=", None], line, what)


def _arrow_header(block, res, kinds, arrow):
    toks = block.header
    if len(toks) != 4 or toks[0] != ":" or toks[2] != arrow:
        raise ParseError("expected '%s %s : X %s Y'" % (block.kind, block.name, arrow),
                         block.line, 1)
    return res.get(toks[1], kinds, block.line), res.get(toks[3], kinds, block.line)


def _maps(block, allowed):
    out = {k: {} for k in allowed}
    for line, toks in block.rows:
        head = toks[0]
        if head not in allowed:
            raise ParseError("unknown %s line %r" % (block.kind, head), line, 1)
        if head == "gamma":
            g, f, c = _expect(toks, ["gamma", None, ".", None, "=", None], line, "gamma")
            out[head][(g, f)] = c
        else:
            k, v = _expect(toks, [head, None, "=", None], line, head)
            out[head][k] = v
    return out


def _catfunctor(block, res):
    C, D = _arrow_header(block, res, ["category"], "->")
    m = _maps(block, ["obj", "mor"])
    F = CatFunctor(C, D, m["obj"], m["mor"], block.name)
    _delegated(block, validate_functor, F)
    return F


def _nat(block, res):
    F, G = _arrow_header(block, res, ["catfunctor"], "=>")
    m = _maps(block, ["at"])
    t = NatTransformation(F, G, m["at"], block.name)
    _delegated(block, validate_transformation, t)
    return t


def _adjunction(block, res):
    F, U = _arrow_header(block, res, ["catfunctor"], "-|")
    named = {}
    for line, toks in block.rows:
        if len(toks) != 3 or toks[0] not in ("unit", "counit") or toks[1] != "=":
            raise ParseError("expected 'unit = t' or 'counit = s'", line, 1)
        named[toks[0]] = res.get(toks[2], ["nat"], line)
    if set(named) != {"unit", "counit"}:
        raise ParseError("adjunction needs both a unit and a counit", block.line, 1)
    unit, counit = named["unit"], named["counit"]
    adj = Adjunction(F, U, unit, counit, block.name)
    _delegated(block, _check_endpoints, adj)
    return adj


def _two_functor(block, res, lax):
    A, B = _arrow_header(block, res, ["twocat"], "->")
    keys = ["obj", "cell1", "cell2"] + (["delta", "gamma"] if lax else [])
    m = _maps(block, keys)
    if lax:
        L = tc.LaxFunctor(A, B, m["obj"], m["cell1"], m["cell2"], m["delta"], m["gamma"],
                          block.name)
        _delegated(block, tc.validate_lax_functor, L)
        return L
    F = tc.StrictTwoFunctor(A, B, m["obj"], m["cell1"], m["cell2"], block.name)
    _delegated(block, tc.validate_strict_two_functor, F)
    return F


def _let(toks, line, res):
    """``let NAME = BUILDER ARGS``."""
    if len(toks) < 4 or toks[2] != "=":
        raise ParseError("expected 'let NAME = BUILDER ...'", line, 1)
    name, builder, args = toks[1], toks[3], toks[4:]
    if builder in TWOCAT_BUILTINS and not args:
        return name, "twocat", TWOCAT_BUILTINS[builder]()
    if builder in CATEGORY_BUILTINS and not args:
        return name, "category", CATEGORY_BUILTINS[builder]()
    if builder == "chain" and len(args) == 1:
        return name, "category", chain_category(int(args[0]))
    if builder == "envelope":
        A = res.get(args[0], ["twocat"], line)
        cap = None
        if len(args) == 3 and args[1] == "cap":
            cap = int(args[2])
        elif len(args) != 1:
            raise ParseError("expected 'envelope A [cap N]'", line, 1)
        return name, "twocat", env.build_envelope(A, cap)
    if builder in ("lambda", "iota") and len(args) == 1:
        E = res.get(args[0], ["twocat"], line)
        if not isinstance(E, env.Envelope):
            raise InputError("%s needs an envelope, got %s" % (builder, args[0]), args[0])
        if builder == "lambda":
            return name, "functor", env.lambda_functor(E)
        return name, "lax", env.iota(E)
    if builder == "identity" and len(args) == 1:
        return name, "functor", tc.identity_two_functor(res.get(args[0], ["twocat"], line))
    if builder == "product" and len(args) == 2:
        A = res.get(args[0], ["twocat"], line)
        M = res.get(args[1], ["twocat"], line)
        if len(M.objects) != 1:
            raise InputError("product needs a one-object second factor", args[1])
        return name, "twocat", tc.product_with_monoidal(A, M, name)
    if builder == "projection" and len(args) == 2:
        X = res.get(args[0], ["twocat"], line)
        A = res.get(args[1], ["twocat"], line)
        return name, "functor", tc.projection_to_first(X, A)
    raise ParseError("unknown builder %r with %d arguments" % (builder, len(args)), line, 1)


def parse_text(text, source="<string>"):
    blocks, directives = _split_lines(text)
    res = _Resolver()
    checks = []
    # Blocks and let-directives resolve in file order.
    items = [(b.line, "block", b) for b in blocks] + [(l, "dir", t) for l, t in directives]
    items.sort(key=lambda x: x[0])
    for line, what, item in items:
        if what == "dir":
            if item[0] == "let":
                name, kind, value = _let(item, line, res)
                res.define(name, kind, value, line)
            else:
                checks.append((line, item[1:]))
            continue
        b = item
        if b.kind == "category":
            value = _category(b)
        elif b.kind == "twocat":
            value = _twocat(b, res)
        elif b.kind == "catfunctor":
            value = _catfunctor(b, res)
        elif b.kind == "nat":
            value = _nat(b, res)
        elif b.kind == "adjunction":
            value = _adjunction(b, res)
        else:
            value = _two_functor(b, res, b.kind == "lax")
        res.define(b.name, b.kind, value, b.line)
    return SpecFile(res.objects, res.kinds, checks, source)


def parse_spec(path):
    """Read, resolve and validate a spec file."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror), str(path)) from None
    return parse_text(text, str(path))
