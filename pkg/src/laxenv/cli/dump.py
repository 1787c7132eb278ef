"""Writer for the spec format; ``parse_text(dump(...))`` round-trips."""
from .. import twocat as tc
from ..envelope import Envelope
from ..adjunction import Adjunction
from ..fincat import CatFunctor, FinCategory, NatTransformation


class SpecWriter:
    """Collects blocks, naming each distinct value once.  Dependencies are
    emitted before the blocks that refer to them."""

    def __init__(self):
        self.lines = []
        self._names = {}
        self._used = set()

    def _fresh(self, hint):
        base = "".join(ch if ch.isalnum() or ch == "_" else "_" for ch in (hint or "x"))
        base = base.strip("_") or "x"
        name, k = base, 1
        while name in self._used:
            k += 1
            name = "%s_%d" % (base, k)
        self._used.add(name)
        return name

    def _known(self, value):
        return self._names.get(id(value))

    def _remember(self, value, hint):
        name = self._fresh(hint)
        self._names[id(value)] = name
        # Keep the value alive so its id stays unique.
        self._names[("keep", id(value))] = value
        return name

    def add(self, value, hint=None):
        name = self._known(value)
        if name is not None:
            return name
        if isinstance(value, FinCategory):
            return self._category(value, hint)
        if isinstance(value, CatFunctor):
            return self._catfunctor(value, hint)
        if isinstance(value, NatTransformation):
            return self._nat(value, hint)
        if isinstance(value, Adjunction):
            return self._adjunction(value, hint)
        if isinstance(value, Envelope):
            return self._envelope(value, hint)
        if isinstance(value, tc.TwoCategory):
            return self._twocat(value, hint)
        if isinstance(value, tc.LaxFunctor):
            return self._two_functor(value, hint, True)
        if isinstance(value, tc.StrictTwoFunctor):
            return self._two_functor(value, hint, False)
        raise TypeError("cannot write %r" % (value,))

    def comment(self, text):
        for line in text.splitlines():
            self.lines.append("# " + line)

    def directive(self, *words):
        self.lines.append(" ".join(str(w) for w in words))

    def text(self):
        return "\n".join(self.lines) + "\n"

    def _category(self, C, hint):
        name = self._remember(C, hint or C.name or "C")
        out = ["category " + name]
        out += ["  object " + x for x in C.objects]
        out += ["  mor %s : %s -> %s" % (f, a, b) for f, (a, b) in sorted(C.morphisms.items())]
        out += ["  id %s = %s" % (x, C.identity[x]) for x in C.objects]
        out += ["  comp %s . %s = %s" % (g, f, h) for (g, f), h in sorted(C.composition.items())]
        self.lines += out + ["end", ""]
        return name

    def _catfunctor(self, F, hint):
        src, tgt = self.add(F.source), self.add(F.target)
        name = self._remember(F, hint or F.name or "F")
        out = ["catfunctor %s : %s -> %s" % (name, src, tgt)]
        out += ["  obj %s = %s" % kv for kv in sorted(F.obj.items())]
        out += ["  mor %s = %s" % kv for kv in sorted(F.mor.items())]
        self.lines += out + ["end", ""]
        return name

    def _nat(self, t, hint):
        src, tgt = self.add(t.source), self.add(t.target)
        name = self._remember(t, hint or t.name or "t")
        out = ["nat %s : %s => %s" % (name, src, tgt)]
        out += ["  at %s = %s" % kv for kv in sorted(t.components.items())]
        self.lines += out + ["end", ""]
        return name

    def _adjunction(self, adj, hint):
        F, U = self.add(adj.left), self.add(adj.right)
        unit, counit = self.add(adj.unit, "unit"), self.add(adj.counit, "counit")
        name = self._remember(adj, hint or "adj")
        self.lines += ["adjunction %s : %s -| %s" % (name, F, U), "  unit = " + unit,
                       "  counit = " + counit, "end", ""]
        return name

    def _envelope(self, E, hint):
        # Truncated envelopes have partial composition, so they are
        # written as a derivation from their base.
        base = self.add(E.base)
        name = self._remember(E, hint or "Env_" + base)
        self.lines += ["let %s = envelope %s cap %d" % (name, base, E.cap), ""]
        return name

    def _twocat(self, A, hint):
        name = self._remember(A, hint or A.name or "A")
        homs = {}
        objs = list(A.objects)
        for a, b in A.hom_pairs():
            H = A.hom(a, b)
            if H.objects:
                homs[(a, b)] = self.add(H, "hom_%s_%d_%d" % (name, objs.index(a), objs.index(b)))
        out = ["twocat " + name, "  objects: " + " ".join(A.objects)]
        out += ["  hom %s %s = %s" % (a, b, h) for (a, b), h in sorted(homs.items())]
        out += ["  id1 %s = %s" % (a, A.id1(a)) for a in A.objects]
        for a, b, c in _triples(A):
            for f in A.hom(a, b).sorted_objects():
                for g in A.hom(b, c).sorted_objects():
                    h = tc._defined(lambda: A.comp1(g, f))
                    if h is not None:
                        out.append("  hcomp %s %s %s: %s . %s = %s" % (a, b, c, g, f, h))
            for al in sorted(A.hom(a, b).morphisms):
                for be in sorted(A.hom(b, c).morphisms):
                    ga = tc._defined(lambda: A.comp2(be, al))
                    if ga is not None:
                        out.append("  hcomp2 %s %s %s: %s * %s = %s" % (a, b, c, be, al, ga))
        self.lines += out + ["end", ""]
        return name

    def _two_functor(self, F, hint, lax):
        src, tgt = self.add(F.source), self.add(F.target)
        name = self._remember(F, hint or F.name or "F")
        out = ["%s %s : %s -> %s" % ("lax" if lax else "functor", name, src, tgt)]
        out += ["  obj %s = %s" % kv for kv in sorted(F.obj.items())]
        out += ["  cell1 %s = %s" % kv for kv in sorted(F.cells1.items())]
        out += ["  cell2 %s = %s" % kv for kv in sorted(F.cells2.items())]
        if lax:
            out += ["  delta %s = %s" % kv for kv in sorted(F.delta.items())]
            out += ["  gamma %s . %s = %s" % (g, f, c) for (g, f), c in sorted(F.gamma.items())]
        self.lines += out + ["end", ""]
        return name


def _triples(A):
    objs = A.sorted_objects()
    return [(a, b, c) for a in objs for b in objs for c in objs]


def dump(*values, names=None):
    """Spec text defining ``values`` (and everything they refer to)."""
    w = SpecWriter()
    for i, v in enumerate(values):
        w.add(v, names[i] if names else None)
    return w.text()
