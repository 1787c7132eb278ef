"""Finite categories given by complete presentations."""
from collections.abc import Mapping
from functools import cached_property

from ..errors import DanglingEndpoint, MissingComposite, NonAssociative, UnitLawViolation


def pair_id(*parts):
    """Deterministic id for a tuple of ids."""
    return "<" + ",".join(parts) + ">"


class LazyComposition(Mapping):
    """Composition table computed on demand from ``compose(g, f)``.

    Keys are exactly the composable pairs; results are cached.  Used for
    large derived categories where most composites are never inspected.
    """

    def __init__(self, morphisms, compose):
        self._morphisms = morphisms
        self._compose = compose
        self._cache = {}
        self._out = None

    def __getitem__(self, key):
        try:
            return self._cache[key]
        except KeyError:
            pass
        if key not in self:
            raise KeyError(key)
        h = self._cache[key] = self._compose(*key)
        return h

    def __contains__(self, key):
        try:
            g, f = key
        except (TypeError, ValueError):
            return False
        m = self._morphisms
        return f in m and g in m and m[f][1] == m[g][0]

    def _pairs(self):
        if self._out is None:
            out = {}
            for g, (a, _) in self._morphisms.items():
                out.setdefault(a, []).append(g)
            self._out = out
        for f, (_, b) in self._morphisms.items():
            for g in self._out.get(b, ()):
                yield (g, f)

    def __iter__(self):
        return self._pairs()

    def __len__(self):
        return sum(1 for _ in self._pairs())

    def __eq__(self, other):
        # Same rule on the same morphisms: equal without expanding.
        if isinstance(other, LazyComposition) and self._compose == other._compose \
                and self._morphisms == other._morphisms:
            return True
        return Mapping.__eq__(self, other)

    __hash__ = None


class FinCategory:
    """A finite category.

    ``morphisms`` maps each morphism id to ``(source, target)``;
    ``identity`` maps objects to their identity morphism; ``composition``
    maps each composable pair ``(g, f)`` (``g`` after ``f``) to its composite.
    Instances are treated as immutable.
    """

    def __init__(self, objects, morphisms, identity, composition, name=""):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.identity = dict(identity)
        self.composition = composition if isinstance(composition, LazyComposition) \
            else dict(composition)
        self.name = name

    def __repr__(self):
        return "FinCategory(%s: %d objects, %d morphisms)" % (
            self.name or "?", len(self.objects), len(self.morphisms))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (set(self.objects) == set(other.objects)
                and self.morphisms == other.morphisms
                and self.identity == other.identity
                and self.composition == other.composition)

    def __hash__(self):
        return hash((frozenset(self.objects), len(self.morphisms)))

    def src(self, f):
        return self.morphisms[f][0]

    def tgt(self, f):
        return self.morphisms[f][1]

    def comp(self, g, *rest):
        """Composite ``g . f1 . f2 ...`` read right to left."""
        out = g
        for f in rest:
            out = self.composition[(out, f)]
        return out

    def ident(self, x):
        return self.identity[x]

    @cached_property
    def _homs(self):
        homs = {}
        for f, (a, b) in sorted(self.morphisms.items()):
            homs.setdefault((a, b), []).append(f)
        return {k: tuple(v) for k, v in homs.items()}

    @cached_property
    def _out(self):
        out = {x: [] for x in self.objects}
        for f, (a, _) in sorted(self.morphisms.items()):
            out[a].append(f)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _in(self):
        into = {x: [] for x in self.objects}
        for f, (_, b) in sorted(self.morphisms.items()):
            into[b].append(f)
        return {k: tuple(v) for k, v in into.items()}

    @cached_property
    def _identities(self):
        return frozenset(self.identity.values())

    def hom(self, a, b):
        return self._homs.get((a, b), ())

    def out_of(self, a):
        return self._out[a]

    def into(self, b):
        return self._in[b]

    def is_identity(self, f):
        return f in self._identities

    @cached_property
    def _inverses(self):
        inv = {}
        for f, (a, b) in self.morphisms.items():
            for g in self.hom(b, a):
                if self.composition[(g, f)] == self.identity[a] and \
                        self.composition[(f, g)] == self.identity[b]:
                    inv[f] = g
                    break
        return inv

    def inverse(self, f):
        return self._inverses.get(f)

    def is_iso(self, f):
        return f in self._inverses

    def isomorphic(self, a, b):
        return any(self.is_iso(f) for f in self.hom(a, b))

    def sorted_objects(self):
        return sorted(self.objects)

    def size(self):
        return len(self.objects), len(self.morphisms)


def validate_category(raw):
    """Check every FinCategory law; return the category on success.

    ``raw`` is either a ``FinCategory`` or a mapping with keys ``objects``,
    ``morphisms``, ``identity``, ``composition`` and optionally ``name``.
    """
    if isinstance(raw, FinCategory):
        cat = raw
    else:
        cat = FinCategory(raw["objects"], raw["morphisms"], raw["identity"],
                          raw["composition"], raw.get("name", ""))
    objs = set(cat.objects)
    if len(objs) != len(cat.objects):
        raise DanglingEndpoint("duplicate object ids")
    for f, (a, b) in cat.morphisms.items():
        if a not in objs or b not in objs:
            raise DanglingEndpoint("morphism %s has unknown endpoint" % f, f)
    for x in cat.objects:
        i = cat.identity.get(x)
        if i is None or i not in cat.morphisms:
            raise DanglingEndpoint("object %s has no identity" % x, x)
        if cat.morphisms[i] != (x, x):
            raise UnitLawViolation("identity %s of %s has wrong endpoints" % (i, x), i, x)
    if set(cat.identity) != objs:
        raise DanglingEndpoint("identity assigned to unknown object")
    for (g, f), h in cat.composition.items():
        if g not in cat.morphisms or f not in cat.morphisms or h not in cat.morphisms:
            raise DanglingEndpoint("composition entry mentions unknown morphism", g, f, h)
        if cat.src(g) != cat.tgt(f):
            raise DanglingEndpoint("entry for non-composable pair %s . %s" % (g, f), g, f)
        if cat.morphisms[h] != (cat.src(f), cat.tgt(g)):
            raise DanglingEndpoint("composite %s of %s . %s has wrong endpoints" % (h, g, f), g, f, h)
    for f, (a, b) in cat.morphisms.items():
        for g in cat.out_of(b):
            if (g, f) not in cat.composition:
                raise MissingComposite("missing composite %s . %s" % (g, f), g, f)
    for f, (a, b) in cat.morphisms.items():
        if cat.composition[(f, cat.identity[a])] != f:
            raise UnitLawViolation("%s . id_%s != %s" % (f, a, f), f, a)
        if cat.composition[(cat.identity[b], f)] != f:
            raise UnitLawViolation("id_%s . %s != %s" % (b, f, f), f, b)
    comp = cat.composition
    for f, (a, b) in cat.morphisms.items():
        for g in cat.out_of(b):
            gf = comp[(g, f)]
            for h in cat.out_of(cat.tgt(g)):
                if comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                    raise NonAssociative("(%s . %s) . %s differs from %s . (%s . %s)"
                                         % (h, g, f, h, g, f), h, g, f)
    return cat


# Builders for standard small categories.

def from_graph(objects, generators, composition_rule, name=""):
    """Helper for tests: fill in identities and run ``composition_rule``."""
    morphisms = {"id_" + x: (x, x) for x in objects}
    morphisms.update(generators)
    identity = {x: "id_" + x for x in objects}
    composition = {}
    cat = FinCategory(objects, morphisms, identity, {}, name)
    for f, (a, b) in morphisms.items():
        for g, (c, d) in morphisms.items():
            if c != b:
                continue
            if g == identity[b]:
                composition[(g, f)] = f
            elif f == identity[a]:
                composition[(g, f)] = g
            else:
                composition[(g, f)] = composition_rule(g, f)
    cat.composition = composition
    return cat


def terminal_category(obj="*"):
    return FinCategory([obj], {"id_" + obj: (obj, obj)}, {obj: "id_" + obj},
                       {("id_" + obj, "id_" + obj): "id_" + obj}, "terminal")


def discrete_category(objs, name="discrete"):
    objs = list(objs)
    return FinCategory(objs, {"id_" + x: (x, x) for x in objs},
                       {x: "id_" + x for x in objs},
                       {("id_" + x, "id_" + x): "id_" + x for x in objs}, name)


def poset_category(elements, leq, name="poset"):
    """Thin category of a finite preorder given by a predicate ``leq``."""
    elements = list(elements)
    morphisms, identity, composition = {}, {}, {}

    def mid(a, b):
        return "id_" + a if a == b else a + "~" + b

    for a in elements:
        for b in elements:
            if a == b or leq(a, b):
                morphisms[mid(a, b)] = (a, b)
        identity[a] = "id_" + a
    for f, (a, b) in morphisms.items():
        for g, (c, d) in morphisms.items():
            if c == b:
                composition[(g, f)] = mid(a, d)
    return FinCategory(elements, morphisms, identity, composition, name)


def chain_category(n, name=None):
    """The ordinal ``[n]`` as a category ``0 < 1 < ... < n``."""
    return poset_category([str(i) for i in range(n + 1)], lambda a, b: int(a) <= int(b),
                          name or "[%d]" % n)


def walking_arrow():
    return FinCategory(["a", "b"], {"id_a": ("a", "a"), "id_b": ("b", "b"), "f": ("a", "b")},
                       {"a": "id_a", "b": "id_b"},
                       {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b",
                        ("f", "id_a"): "f", ("id_b", "f"): "f"}, "walking arrow")


def walking_iso():
    return FinCategory(["a", "b"], {"id_a": ("a", "a"), "id_b": ("b", "b"),
                                    "f": ("a", "b"), "g": ("b", "a")},
                       {"a": "id_a", "b": "id_b"},
                       {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b",
                        ("f", "id_a"): "f", ("id_b", "f"): "f",
                        ("g", "id_b"): "g", ("id_a", "g"): "g",
                        ("g", "f"): "id_a", ("f", "g"): "id_b"}, "walking iso")


def monoid_category(elements, mult, unit, obj="*", name="monoid"):
    """One-object category of a finite monoid; elements are ids."""
    elements = list(elements)
    morphisms = {e: (obj, obj) for e in elements}
    composition = {(g, f): mult(g, f) for g in elements for f in elements}
    return FinCategory([obj], morphisms, {obj: unit}, composition, name)
