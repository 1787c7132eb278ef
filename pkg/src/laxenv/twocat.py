"""Strict finite 2-categories, strict and lax 2-functors, and their
presentation as simplicial objects over the truncated simplex category.

A 2-category exposes ``objects``, ``hom(a, b)`` (a ``FinCategory`` whose
objects are 1-cells and whose morphisms are 2-cells), ``id1(a)``,
``comp1(g, f)`` (``g`` after ``f``) and ``comp2(beta, alpha)`` (horizontal
composite, ``beta`` after ``alpha``).  1-cell and 2-cell ids are unique
across all homs.  Composition may raise ``CapOverflow`` for capped
constructions; checkers skip such composites.
"""
import itertools

from . import config
from .errors import (BadHom, CapOverflow, EndpointMismatch, MissingComposite,
                     NonAssociativeComposition, SizeExceeded, TruncationMismatch,
                     TruncationTooSmall, UnitViolation, ValidationError)
from .fibration import CategoryValuedFunctor, grothendieck_construction
from .fincat.category import LazyComposition
from .fincat import (CatFunctor, FinCategory, Search, compose_functors, full_subcategory,
                     functor_failures, is_isomorphism, pair_id,
                     poset_category, product, pullback, validate_category)
from .simplex import SimplexMap, enumerate_simplex_maps, identity as simplex_identity


class TwoCategory:
    """Shared helpers; subclasses provide the primitive operations and the
    ``home1`` / ``home2`` tables sending cells to their object pairs."""

    name = ""
    size_cap = None

    def hom(self, a, b):
        raise NotImplementedError

    def size1(self, f):
        """Size of a 1-cell; composites whose sizes sum past ``size_cap``
        are undefined.  Table 2-categories have no cap."""
        return 0

    def src1(self, f):
        return self.home1[f][0]

    def tgt1(self, f):
        return self.home1[f][1]

    def hom_of_cell(self, alpha):
        return self.hom(*self.home2[alpha])

    def src2(self, alpha):
        return self.hom_of_cell(alpha).src(alpha)

    def tgt2(self, alpha):
        return self.hom_of_cell(alpha).tgt(alpha)

    def id2(self, f):
        return self.hom(*self.home1[f]).identity[f]

    def vert(self, beta, *rest):
        """Vertical composite, right to left."""
        return self.hom_of_cell(beta).comp(beta, *rest)

    def comp1_path(self, cells, obj=None):
        """Composite of ``cells`` read left to right (first cell first);
        the empty path needs ``obj``."""
        if not cells:
            return self.id1(obj)
        acc = cells[0]
        for f in cells[1:]:
            acc = self.comp1(f, acc)
        return acc

    def comp2_path(self, cells2, obj=None):
        if not cells2:
            return self.id2(self.id1(obj))
        acc = cells2[0]
        for c in cells2[1:]:
            acc = self.comp2(c, acc)
        return acc

    def one_cells(self):
        return sorted(self.home1)

    def two_cells(self):
        return sorted(self.home2)

    def sorted_objects(self):
        return sorted(self.objects)

    def hom_pairs(self):
        return [(a, b) for a in self.sorted_objects() for b in self.sorted_objects()]

    def is_invertible1(self, f):
        a, b = self.home1[f]
        for g in self.hom(b, a).objects:
            try:
                if self.comp1(g, f) == self.id1(a) and self.comp1(f, g) == self.id1(b):
                    return True
            except CapOverflow:
                continue
        return False


class StrictTwoCategory(TwoCategory):
    """Table-driven strict 2-category."""

    def __init__(self, objects, homs, id1, comp1, comp2, name=""):
        self.objects = tuple(objects)
        self.homs = dict(homs)
        self._id1 = dict(id1)
        self.comp1_table = dict(comp1)
        self.comp2_table = dict(comp2)
        self.name = name
        self.home1, self.home2 = {}, {}
        for (a, b), H in self.homs.items():
            for f in H.objects:
                if f in self.home1:
                    raise BadHom("1-cell %s appears in two homs" % f, f)
                self.home1[f] = (a, b)
            for m in H.morphisms:
                if m in self.home2:
                    raise BadHom("2-cell %s appears in two homs" % m, m)
                self.home2[m] = (a, b)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, StrictTwoCategory):
            return NotImplemented
        return (set(self.objects) == set(other.objects) and self.homs == other.homs
                and self._id1 == other._id1 and self.comp1_table == other.comp1_table
                and self.comp2_table == other.comp2_table)

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return "StrictTwoCategory(%s, %d objects)" % (self.name, len(self.objects))

    def hom(self, a, b):
        try:
            return self.homs[(a, b)]
        except KeyError:
            raise BadHom("no hom category for (%s, %s)" % (a, b), a, b) from None

    def id1(self, a):
        return self._id1[a]

    def comp1(self, g, f):
        try:
            return self.comp1_table[(g, f)]
        except KeyError:
            raise MissingComposite("no composite %s . %s" % (g, f), g, f) from None

    def comp2(self, beta, alpha):
        try:
            return self.comp2_table[(beta, alpha)]
        except KeyError:
            raise MissingComposite("no horizontal composite %s * %s" % (beta, alpha),
                                   beta, alpha) from None


def _defined(thunk):
    try:
        return thunk()
    except CapOverflow:
        return None


def _size_groups(A, cells, src, tgt):
    """2-cells grouped by the sizes of their source and target 1-cells."""
    groups = {}
    for x in cells:
        groups.setdefault((A.size1(src(x)), A.size1(tgt(x))), []).append(x)
    return groups


def _fits(A, *sizes):
    cap = A.size_cap
    return cap is None or sum(sizes) <= cap


def two_category_failures(A, limit=None):
    """All law violations as ``(kind, error class, ids)`` triples.

    Composites beyond a size cap (see ``TwoCategory.size1``) are skipped;
    the loops only visit tuples whose composites are defined.
    """
    out = []

    def fail(kind, err, *ids):
        out.append((kind, err, ids))
        return limit is not None and len(out) >= limit

    objs = A.sorted_objects()
    for a in objs:
        for b in objs:
            try:
                validate_category(A.hom(a, b))
            except BadHom:
                if fail("missing hom", BadHom, a, b):
                    return out
                continue
            except ValidationError as e:
                if fail("hom not a category", BadHom, a, b, str(e)):
                    return out
        if A.home1.get(A.id1(a)) != (a, a):
            if fail("identity 1-cell outside hom", BadHom, a):
                return out
    if out:
        return out
    groups = {}
    for k in A.hom_pairs():
        H = A.hom(*k)
        groups[k] = _size_groups(A, H.morphisms, H.src, H.tgt)

    def hpairs(a, b, c):
        """Horizontally composable ``(y, x)`` with ``x`` in ``(a, b)``."""
        for (sx, tx), xs in groups[(a, b)].items():
            for (sy, ty), ys in groups[(b, c)].items():
                if _fits(A, sx, sy) and _fits(A, tx, ty):
                    for x in xs:
                        for y in ys:
                            yield y, x

    for a, b, c in itertools.product(objs, repeat=3):
        Hab, Hbc, Hac = A.hom(a, b), A.hom(b, c), A.hom(a, c)
        for f in Hab.objects:
            for g in Hbc.objects:
                if not _fits(A, A.size1(f), A.size1(g)):
                    continue
                try:
                    h = A.comp1(g, f)
                except MissingComposite:
                    if fail("missing composite", MissingComposite, g, f):
                        return out
                    continue
                if h not in Hac.objects:
                    if fail("composite in wrong hom", BadHom, g, f):
                        return out
        for y, x in hpairs(a, b, c):
            try:
                z = A.comp2(y, x)
            except MissingComposite:
                if fail("missing horizontal composite", MissingComposite, y, x):
                    return out
                continue
            s = A.comp1(Hbc.src(y), Hab.src(x))
            t = A.comp1(Hbc.tgt(y), Hab.tgt(x))
            if z not in Hac.morphisms or Hac.src(z) != s or Hac.tgt(z) != t:
                if fail("horizontal composite has wrong endpoints", BadHom, y, x):
                    return out
    if out:
        return out
    # Composition is a functor: identities and interchange.
    for a, b, c in itertools.product(objs, repeat=3):
        Hab, Hbc, Hac = A.hom(a, b), A.hom(b, c), A.hom(a, c)
        for f in Hab.objects:
            for g in Hbc.objects:
                if not _fits(A, A.size1(f), A.size1(g)):
                    continue
                if A.comp2(Hbc.identity[g], Hab.identity[f]) != Hac.identity[A.comp1(g, f)]:
                    if fail("composition does not preserve identity 2-cells", BadHom, g, f):
                        return out
        for b1, a1 in hpairs(a, b, c):
            inner = A.comp2(b1, a1)
            for a2 in Hab.out_of(Hab.tgt(a1)):
                for b2 in Hbc.out_of(Hbc.tgt(b1)):
                    if not _fits(A, A.size1(Hab.tgt(a2)), A.size1(Hbc.tgt(b2))):
                        continue
                    lhs = A.comp2(Hbc.comp(b2, b1), Hab.comp(a2, a1))
                    if lhs != Hac.comp(A.comp2(b2, a2), inner):
                        if fail("interchange fails", BadHom, b2, b1, a2, a1):
                            return out
    # Units.
    for a in objs:
        for b in objs:
            H = A.hom(a, b)
            ia, ib = A.id1(a), A.id1(b)
            for f in H.objects:
                if A.comp1(f, ia) != f or A.comp1(ib, f) != f:
                    if fail("identity 1-cell is not a unit", UnitViolation, f):
                        return out
            for alpha in H.morphisms:
                if A.comp2(alpha, A.id2(ia)) != alpha or A.comp2(A.id2(ib), alpha) != alpha:
                    if fail("identity 2-cell is not a unit", UnitViolation, alpha):
                        return out
    # Associativity.
    for a, b, c, d in itertools.product(objs, repeat=4):
        Hab, Hbc, Hcd = A.hom(a, b), A.hom(b, c), A.hom(c, d)
        for f in Hab.objects:
            for g in Hbc.objects:
                if not _fits(A, A.size1(f), A.size1(g)):
                    continue
                for h in Hcd.objects:
                    if not _fits(A, A.size1(f), A.size1(g), A.size1(h)):
                        continue
                    if A.comp1(h, A.comp1(g, f)) != A.comp1(A.comp1(h, g), f):
                        if fail("1-cell composition not associative", NonAssociativeComposition,
                                h, g, f):
                            return out
        for y, x in hpairs(a, b, c):
            yx = A.comp2(y, x)
            sx, tx = A.size1(Hab.src(x)), A.size1(Hab.tgt(x))
            sy, ty = A.size1(Hbc.src(y)), A.size1(Hbc.tgt(y))
            for (sz, tz), zs in groups[(c, d)].items():
                if not (_fits(A, sx, sy, sz) and _fits(A, tx, ty, tz)):
                    continue
                for z in zs:
                    if A.comp2(z, yx) != A.comp2(A.comp2(z, y), x):
                        if fail("2-cell composition not associative", NonAssociativeComposition,
                                z, y, x):
                            return out
    return out


def validate_two_category(A):
    bad = two_category_failures(A, limit=1)
    if bad:
        kind, err, ids = bad[0]
        raise err(kind + " at " + ", ".join(map(str, ids)), *ids)
    return A


# Builders.

def _hom_from_cells(cells, leq=None, name=""):
    """Hom category on 1-cells ``cells``: discrete, or a thin category for
    the preorder ``leq``."""
    if leq is None:
        return poset_category(cells, lambda x, y: False, name)
    return poset_category(cells, leq, name)


def locally_posetal(objects, cells, id1, comp1, leq=None, name=""):
    """2-category whose homs are preorders: ``cells[(a, b)]`` lists the
    1-cells, ``leq(f, g)`` the 2-cells, ``comp1[(g, f)]`` the composites.
    With ``leq`` omitted the homs are discrete."""
    homs = {}
    for a in objects:
        for b in objects:
            homs[(a, b)] = _hom_from_cells(cells.get((a, b), []), leq, "%s(%s,%s)" % (name, a, b))
    comp2 = {}
    for a, b, c in itertools.product(objects, repeat=3):
        Hab, Hbc, Hac = homs[(a, b)], homs[(b, c)], homs[(a, c)]
        for x, (f, f2) in Hab.morphisms.items():
            for y, (g, g2) in Hbc.morphisms.items():
                s, t = comp1.get((g, f)), comp1.get((g2, f2))
                hits = Hac.hom(s, t) if s in Hac.objects and t in Hac.objects else []
                if hits:
                    comp2[(y, x)] = hits[0]
    return StrictTwoCategory(objects, homs, id1, comp1, comp2, name)


def point():
    """The terminal 2-category."""
    return locally_posetal(["*"], {("*", "*"): ["1"]}, {"*": "1"}, {("1", "1"): "1"}, name="point")


def monoidal_poset(elements, mult, unit, leq, obj="*", name="M"):
    """One-object locally posetal 2-category of a monotone monoid."""
    elements = list(elements)
    comp1 = {(g, f): mult(g, f) for g in elements for f in elements}
    return locally_posetal([obj], {(obj, obj): elements}, {obj: unit}, comp1, leq, name)


def one_object_monoid(elements, mult, unit, obj="*", name="BM"):
    """Locally discrete one-object 2-category of a finite monoid."""
    return monoidal_poset(elements, mult, unit, None, obj, name)


def b_max():
    """The chain ``0 <= 1`` with ``max`` as composition and unit ``0``."""
    return monoidal_poset(["0", "1"], max, "0", lambda x, y: x <= y, name="B_max")


def b_min():
    """The chain ``0 <= 1`` with ``min`` and unit ``1`` (top is the unit)."""
    return monoidal_poset(["0", "1"], min, "1", lambda x, y: x <= y, name="B_min")


def b_z2():
    return one_object_monoid(["e", "s"], lambda g, f: "e" if g == f else "s", "e", name="B_Z2")


def b_end1():
    """Endofunctors of the chain ``[1]`` with pointwise order: the 1-cells
    ``c0 <= id <= c1`` under composition."""
    table = {"c0": (0, 0), "id": (0, 1), "c1": (1, 1)}
    inv = {v: k for k, v in table.items()}

    def mult(g, f):
        return inv[tuple(table[g][table[f][i]] for i in (0, 1))]

    def leq(f, g):
        return all(x <= y for x, y in zip(table[f], table[g]))
    return monoidal_poset(["c0", "id", "c1"], mult, "id", leq, name="B_end1")


def locally_discrete(C, name=None):
    """A 1-category as a 2-category with only identity 2-cells."""
    cells = {}
    for f, (a, b) in C.morphisms.items():
        cells.setdefault((a, b), []).append(f)
    comp1 = {k: v for k, v in C.composition.items()}
    return locally_posetal(list(C.objects), cells, dict(C.identity), comp1, None,
                           name or "ld(%s)" % C.name)


def walking_arrow_2cat():
    return locally_posetal(["a", "b"], {("a", "a"): ["1a"], ("b", "b"): ["1b"], ("a", "b"): ["f"]},
                           {"a": "1a", "b": "1b"},
                           {("1a", "1a"): "1a", ("1b", "1b"): "1b", ("f", "1a"): "f",
                            ("1b", "f"): "f"}, name="arrow")


def walking_two_cell():
    """Objects ``a, b``; parallel 1-cells ``f, g`` with one 2-cell ``f => g``."""
    comp1 = {("1a", "1a"): "1a", ("1b", "1b"): "1b"}
    for x in ("f", "g"):
        comp1[(x, "1a")] = x
        comp1[("1b", x)] = x
    return locally_posetal(["a", "b"], {("a", "a"): ["1a"], ("b", "b"): ["1b"],
                                        ("a", "b"): ["f", "g"]},
                           {"a": "1a", "b": "1b"}, comp1,
                           lambda x, y: x == y or (x, y) == ("f", "g"), name="two_cell")


def product_with_monoidal(A, M, name=None):
    """``A x M`` for a one-object 2-category ``M``: same objects as ``A``,
    homs ``A(a, b) x M(*, *)``."""
    (m,) = M.objects
    Hm = M.hom(m, m)
    homs, home = {}, {}
    for (a, b), H in ((k, A.hom(*k)) for k in A.hom_pairs()):
        P = product(H, Hm).category
        P.name = "%s(%s,%s)" % (name or "AxM", a, b)
        homs[(a, b)] = P
    id1 = {a: pair_id(A.id1(a), M.id1(m)) for a in A.objects}
    comp1, comp2 = {}, {}
    for a, b, c in itertools.product(A.sorted_objects(), repeat=3):
        Hab, Hbc = A.hom(a, b), A.hom(b, c)
        for f in Hab.objects:
            for g in Hbc.objects:
                gf = A.comp1(g, f)
                for x in Hm.objects:
                    for y in Hm.objects:
                        comp1[(pair_id(g, y), pair_id(f, x))] = pair_id(gf, M.comp1(y, x))
        for al in Hab.morphisms:
            for be in Hbc.morphisms:
                ba = A.comp2(be, al)
                for u in Hm.morphisms:
                    for v in Hm.morphisms:
                        comp2[(pair_id(be, v), pair_id(al, u))] = pair_id(ba, M.comp2(v, u))
    return StrictTwoCategory(A.objects, homs, id1, comp1, comp2, name or "%sx%s" % (A.name, M.name))


def projection_to_first(X, A):
    """The projection ``A x M -> A`` built by ``product_with_monoidal``."""
    cells1 = {}
    cells2 = {}
    for k in A.hom_pairs():
        H = X.hom(*k)
        for f in H.objects:
            cells1[f] = _split(f)[0]
        for m in H.morphisms:
            cells2[m] = _split(m)[0]
    return StrictTwoFunctor(X, A, {a: a for a in A.objects}, cells1, cells2, "pr")


def _split(pid):
    """Inverse of ``pair_id`` for two flat components."""
    body = pid[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch == "<":
            depth += 1
        elif ch == ">":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise ValueError("not a pair id: %s" % pid)


# Strict 2-functors.

class StrictTwoFunctor:
    def __init__(self, source, target, obj, cells1, cells2, name=""):
        self.source = source
        self.target = target
        self.obj = dict(obj)
        self.cells1 = dict(cells1)
        self.cells2 = dict(cells2)
        self.name = name

    def key(self):
        return (tuple(sorted(self.obj.items())), tuple(sorted(self.cells1.items())),
                tuple(sorted(self.cells2.items())))

    def __eq__(self, other):
        if not isinstance(other, StrictTwoFunctor):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def hom_functor(self, a, b):
        S = self.source.hom(a, b)
        T = self.target.hom(self.obj[a], self.obj[b])
        return CatFunctor(S, T, {f: self.cells1[f] for f in S.objects},
                          {m: self.cells2[m] for m in S.morphisms},
                          "%s[%s,%s]" % (self.name, a, b))


def identity_two_functor(A):
    return StrictTwoFunctor(A, A, {a: a for a in A.objects}, {f: f for f in A.home1},
                            {m: m for m in A.home2}, "id")


def compose_two_functors(G, F):
    return StrictTwoFunctor(F.source, G.target, {a: G.obj[F.obj[a]] for a in F.obj},
                            {f: G.cells1[F.cells1[f]] for f in F.cells1},
                            {m: G.cells2[F.cells2[m]] for m in F.cells2},
                            "%s.%s" % (G.name, F.name))


def strict_functor_failures(F):
    S, T = F.source, F.target
    out = []
    for a in S.objects:
        if F.obj.get(a) not in T.objects:
            raise EndpointMismatch("object %s has no image" % a, a)
    for f, (a, b) in S.home1.items():
        if T.home1.get(F.cells1.get(f)) != (F.obj[a], F.obj[b]):
            raise EndpointMismatch("1-cell %s lands in the wrong hom" % f, f)
    for (a, b) in S.hom_pairs():
        for msg in functor_failures(F.hom_functor(a, b)):
            out.append(("hom functor", a, b, msg))
    for a in S.objects:
        if F.cells1[S.id1(a)] != T.id1(F.obj[a]):
            out.append(("identity 1-cell", a))
    for a, b, c in itertools.product(S.sorted_objects(), repeat=3):
        Hab, Hbc = S.hom(a, b), S.hom(b, c)
        for f in Hab.objects:
            for g in Hbc.objects:
                gf = _defined(lambda: S.comp1(g, f))
                if gf is None:
                    continue
                img = _defined(lambda: T.comp1(F.cells1[g], F.cells1[f]))
                if img is not None and img != F.cells1[gf]:
                    out.append(("1-cell composition", g, f))
        for x in Hab.morphisms:
            for y in Hbc.morphisms:
                yx = _defined(lambda: S.comp2(y, x))
                if yx is None:
                    continue
                img = _defined(lambda: T.comp2(F.cells2[y], F.cells2[x]))
                if img is not None and img != F.cells2[yx]:
                    out.append(("2-cell composition", y, x))
    return out


def validate_strict_two_functor(F):
    return {"ok": not strict_functor_failures(F), "failures": strict_functor_failures(F)}


# Lax functors.

class LaxFunctor:
    """``delta[a]: id1(F a) => F(id1 a)`` and
    ``gamma[(g, f)]: F g . F f => F(g . f)``."""

    def __init__(self, source, target, obj, cells1, cells2, delta, gamma, name=""):
        self.source = source
        self.target = target
        self.obj = dict(obj)
        self.cells1 = dict(cells1)
        self.cells2 = dict(cells2)
        self.delta = dict(delta)
        self.gamma = dict(gamma)
        self.name = name

    def key(self):
        return (tuple(sorted(self.obj.items())), tuple(sorted(self.cells1.items())),
                tuple(sorted(self.cells2.items())), tuple(sorted(self.delta.items())),
                tuple(sorted(self.gamma.items())))

    def __eq__(self, other):
        if not isinstance(other, LaxFunctor):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def hom_functor(self, a, b):
        return StrictTwoFunctor.hom_functor(self, a, b)

    def is_strict(self):
        T = self.target
        return all(T.hom_of_cell(c).is_identity(c)
                   for c in list(self.delta.values()) + list(self.gamma.values()))

    def is_pseudo(self):
        T = self.target
        return all(T.hom_of_cell(c).is_iso(c)
                   for c in list(self.delta.values()) + list(self.gamma.values()))


def composable_pairs(A):
    """All ``(g, f)`` with ``g . f`` defined."""
    out = []
    for a, b, c in itertools.product(A.sorted_objects(), repeat=3):
        for f in A.hom(a, b).sorted_objects():
            for g in A.hom(b, c).sorted_objects():
                if _defined(lambda: A.comp1(g, f)) is not None:
                    out.append((g, f))
    return out


def as_lax(F):
    """A strict 2-functor as a lax functor with identity constraints."""
    S, T = F.source, F.target
    delta = {a: T.id2(T.id1(F.obj[a])) for a in S.objects}
    gamma = {(g, f): T.id2(F.cells1[S.comp1(g, f)]) for g, f in composable_pairs(S)}
    return LaxFunctor(S, T, F.obj, F.cells1, F.cells2, delta, gamma, F.name)


def identity_lax(A):
    return as_lax(identity_two_functor(A))


def postcompose_lax(G, L):
    """Strict ``G`` after lax ``L``."""
    return LaxFunctor(L.source, G.target, {a: G.obj[x] for a, x in L.obj.items()},
                      {f: G.cells1[x] for f, x in L.cells1.items()},
                      {m: G.cells2[x] for m, x in L.cells2.items()},
                      {a: G.cells2[x] for a, x in L.delta.items()},
                      {k: G.cells2[x] for k, x in L.gamma.items()},
                      "%s.%s" % (G.name, L.name))


def _lax_endpoint_check(L):
    S, T = L.source, L.target
    for a in S.objects:
        if L.obj.get(a) not in T.objects:
            raise EndpointMismatch("object %s has no image" % a, a)
    for f, (a, b) in S.home1.items():
        if T.home1.get(L.cells1.get(f)) != (L.obj[a], L.obj[b]):
            raise EndpointMismatch("1-cell %s lands in the wrong hom" % f, f)
    for m in S.home2:
        x = L.cells2.get(m)
        if x not in T.home2 or T.src2(x) != L.cells1[S.src2(m)] or T.tgt2(x) != L.cells1[S.tgt2(m)]:
            raise EndpointMismatch("2-cell %s has a badly typed image" % m, m)
    for a in S.objects:
        d = L.delta.get(a)
        if d not in T.home2 or T.src2(d) != T.id1(L.obj[a]) or T.tgt2(d) != L.cells1[S.id1(a)]:
            raise EndpointMismatch("unit cell at %s has wrong endpoints" % a, a)
    for g, f in composable_pairs(S):
        c = L.gamma.get((g, f))
        if c not in T.home2:
            raise EndpointMismatch("composition cell at (%s, %s) missing" % (g, f), g, f)
        src = _defined(lambda: T.comp1(L.cells1[g], L.cells1[f]))
        if src is not None and (T.src2(c) != src or T.tgt2(c) != L.cells1[S.comp1(g, f)]):
            raise EndpointMismatch("composition cell at (%s, %s) has wrong endpoints" % (g, f), g, f)


def lax_axiom_checks(S, T):
    """The coherence axioms as closures over a partial assignment.

    Each entry is ``(label, needed, pred)`` where ``needed`` lists keys
    ``('d', a)`` / ``('g', (g, f))`` / ``('c', cell)`` that must be assigned
    before ``pred(asg)`` can be evaluated; ``asg`` maps those keys to
    target 2-cells (``('c', f)`` for 1-cells maps to target 1-cells).
    """
    checks = []
    pairs = composable_pairs(S)
    by_hom = {}
    for g, f in pairs:
        by_hom.setdefault((S.home1[g], S.home1[f]), []).append((g, f))

    def idc(asg, f):
        return T.id2(asg[("c", f)])

    # Naturality of gamma in both variables.
    for (hg, hf), lst in by_hom.items():
        Hf, Hg = S.hom(*hf), S.hom(*hg)
        for x, (f, f2) in Hf.morphisms.items():
            for y, (g, g2) in Hg.morphisms.items():
                if (g, f) not in lst or (g2, f2) not in lst:
                    continue
                yx = _defined(lambda: S.comp2(y, x))
                if yx is None:
                    continue

                def pred(asg, x=x, y=y, f=f, g=g, f2=f2, g2=g2, yx=yx):
                    lhs_h = _defined(lambda: T.comp2(asg[("m", y)], asg[("m", x)]))
                    if lhs_h is None:
                        return True
                    lhs = T.vert(asg[("g", (g2, f2))], lhs_h)
                    rhs = T.vert(asg[("m", yx)], asg[("g", (g, f))])
                    return lhs == rhs
                need = [("g", (g2, f2)), ("g", (g, f)), ("m", x), ("m", y), ("m", yx)]
                checks.append((("naturality", g, f, y, x), need, pred))
    for f, (a, b) in sorted(S.home1.items()):
        ia, ib = S.id1(a), S.id1(b)

        def right_unit(asg, f=f, a=a, ia=ia):
            h = _defined(lambda: T.comp2(idc(asg, f), asg[("d", a)]))
            if h is None:
                return True
            return T.vert(asg[("g", (f, ia))], h) == idc(asg, f)

        def left_unit(asg, f=f, b=b, ib=ib):
            h = _defined(lambda: T.comp2(asg[("d", b)], idc(asg, f)))
            if h is None:
                return True
            return T.vert(asg[("g", (ib, f))], h) == idc(asg, f)
        checks.append((("right unit", f), [("d", a), ("g", (f, ia)), ("c", f)], right_unit))
        checks.append((("left unit", f), [("d", b), ("g", (ib, f)), ("c", f)], left_unit))
    pair_set = set(pairs)
    for g, f in pairs:
        gf = S.comp1(g, f)
        for h in _out_cells(S, S.tgt1(g)):
            if (h, g) not in pair_set:
                continue
            hg = _defined(lambda: S.comp1(h, g))
            if hg is None or (h, gf) not in pair_set or (hg, f) not in pair_set:
                continue

            def assoc(asg, f=f, g=g, h=h, gf=gf, hg=hg):
                a1 = _defined(lambda: T.comp2(idc(asg, h), asg[("g", (g, f))]))
                a2 = _defined(lambda: T.comp2(asg[("g", (h, g))], idc(asg, f)))
                if a1 is None or a2 is None:
                    return True
                return T.vert(asg[("g", (h, gf))], a1) == T.vert(asg[("g", (hg, f))], a2)
            need = [("g", (g, f)), ("g", (h, g)), ("g", (h, gf)), ("g", (hg, f)),
                    ("c", f), ("c", h)]
            checks.append((("associativity", h, g, f), need, assoc))
    return checks


def _out_cells(S, b):
    out = []
    for c in S.sorted_objects():
        out.extend(S.hom(b, c).sorted_objects())
    return out


def _lax_assignment(L):
    asg = {}
    for f, x in L.cells1.items():
        asg[("c", f)] = x
    for m, x in L.cells2.items():
        asg[("m", m)] = x
    for a, x in L.delta.items():
        asg[("d", a)] = x
    for k, x in L.gamma.items():
        asg[("g", k)] = x
    return asg


def lax_functor_failures(L):
    _lax_endpoint_check(L)
    out = []
    for a, b in L.source.hom_pairs():
        for msg in functor_failures(L.hom_functor(a, b)):
            out.append(("hom functor", a, b, msg))
    if out:
        return out
    asg = _lax_assignment(L)
    for label, _, pred in lax_axiom_checks(L.source, L.target):
        if not pred(asg):
            out.append(label)
    return out


def validate_lax_functor(L):
    bad = lax_functor_failures(L)
    return {"ok": not bad, "failures": bad}


# Monads, the lax functors out of the point.

def monad_to_lax(B, T, unit, mult, name="monad"):
    """A monad ``(T, unit, mult)`` in a one-object ``B`` as a lax functor
    from the point."""
    P = point()
    (b,) = B.objects
    return LaxFunctor(P, B, {"*": b}, {"1": T}, {P.id2("1"): B.id2(T)}, {"*": unit},
                      {("1", "1"): mult}, name)


def monads(B):
    """Direct enumeration of monads in a one-object 2-category by the
    textbook laws."""
    (b,) = B.objects
    H = B.hom(b, b)
    e = B.id1(b)
    out = []
    for T in H.sorted_objects():
        TT = _defined(lambda: B.comp1(T, T))
        if TT is None:
            continue
        idT = H.identity[T]
        for u in H.hom(e, T):
            for m in H.hom(TT, T):
                if H.comp(m, B.comp2(idT, u)) != idT or H.comp(m, B.comp2(u, idT)) != idT:
                    continue
                if H.comp(m, B.comp2(m, idT)) != H.comp(m, B.comp2(idT, m)):
                    continue
                out.append((T, u, m))
    return out


# Enumeration.

def enumerate_lax_functors(A, B, cap=None, obj_map=None, cell1_filter=None, cell2_filter=None,
                           delta_filter=None, gamma_filter=None, strict_only=False):
    """All lax functors ``A -> B`` (with optional filters)."""
    checks = lax_axiom_checks(A, B)
    pairs = composable_pairs(A)
    objs = A.sorted_objects()
    cells = A.one_cells()
    cells2 = A.two_cells()
    variables = ([("o", a) for a in objs] + [("c", f) for f in cells]
                 + [("m", m) for m in cells2] + [("d", a) for a in objs]
                 + [("g", k) for k in pairs])

    def candidates(var, asg):
        kind, x = var
        if kind == "o":
            if obj_map is not None:
                return [obj_map[x]]
            return B.sorted_objects()
        if kind == "c":
            a, b = A.home1[x]
            pool = B.hom(asg[("o", a)], asg[("o", b)]).sorted_objects()
            return [y for y in pool if cell1_filter is None or cell1_filter(x, y)]
        if kind == "m":
            H = A.hom_of_cell(x)
            s, t = asg[("c", H.src(x))], asg[("c", H.tgt(x))]
            if H.is_identity(x):
                return [B.id2(s)]
            pool = B.hom(*B.home1[s]).hom(s, t)
            return [y for y in pool if cell2_filter is None or cell2_filter(x, y)]
        if kind == "d":
            fa = asg[("o", x)]
            s, t = B.id1(fa), asg[("c", A.id1(x))]
            pool = B.hom(fa, fa).hom(s, t)
            if strict_only:
                pool = [y for y in pool if B.hom(fa, fa).is_identity(y)]
            return [y for y in pool if delta_filter is None or delta_filter(x, y)]
        g, f = x
        s = _defined(lambda: B.comp1(asg[("c", g)], asg[("c", f)]))
        if s is None:
            return []
        t = asg[("c", A.comp1(g, f))]
        H = B.hom(*B.home1[t])
        if s not in H.objects:
            return []
        pool = H.hom(s, t)
        if strict_only:
            pool = [y for y in pool if H.is_identity(y)]
        return [y for y in pool if gamma_filter is None or gamma_filter(x, y)]

    constraints = []
    # Hom functoriality: composition of 2-cells.
    for (a, b) in A.hom_pairs():
        H = A.hom(a, b)
        for (y, x), z in H.composition.items():
            if H.is_identity(x) or H.is_identity(y):
                continue

            def pred(asg, x=x, y=y, z=z):
                return B.vert(asg[("m", y)], asg[("m", x)]) == asg[("m", z)]
            constraints.append(((("m", x), ("m", y), ("m", z)), pred))
    for label, need, pred in checks:
        constraints.append((tuple(need), pred))
    search = Search(variables, candidates, constraints, cap, "lax functor enumeration")
    out = []
    for asg in search.solutions():
        L = LaxFunctor(A, B, {a: asg[("o", a)] for a in objs}, {f: asg[("c", f)] for f in cells},
                       {m: asg[("m", m)] for m in cells2}, {a: asg[("d", a)] for a in objs},
                       {k: asg[("g", k)] for k in pairs}, "L%d" % len(out))
        out.append(L)
    return out


def _two_cell_factorizations(S):
    """For each 2-cell, the ways it arises as a vertical or horizontal
    composite of non-identity pieces (identity 2-cells excluded)."""
    fac = {}
    for (a, b) in S.hom_pairs():
        H = S.hom(a, b)
        for (y, x), z in H.composition.items():
            if not H.is_identity(x) and not H.is_identity(y):
                fac.setdefault(z, []).append(("v", y, x))
    for a, b, c in itertools.product(S.sorted_objects(), repeat=3):
        Hab, Hbc = S.hom(a, b), S.hom(b, c)
        for x in Hab.morphisms:
            for y in Hbc.morphisms:
                z = _defined(lambda: S.comp2(y, x))
                if z is not None:
                    fac.setdefault(z, []).append(("h", y, x))
    return fac


def _one_cell_factorizations(S):
    fac = {}
    for g, f in composable_pairs(S):
        a, b = S.home1[f]
        c = S.tgt1(g)
        if f == S.id1(a) or g == S.id1(b):
            continue
        fac.setdefault(S.comp1(g, f), []).append((g, f))
    return fac


def enumerate_strict_two_functors(S, T, cap=None, obj_map=None, cell1_filter=None,
                                  cell2_filter=None):
    """All strict 2-functors ``S -> T`` by constraint search; composites in
    ``S`` that overflow a cap impose no condition."""
    objs = S.sorted_objects()
    f1 = _one_cell_factorizations(S)
    f2 = _two_cell_factorizations(S)
    cells = sorted(S.home1, key=lambda f: (len(f1.get(f, ())) > 0, len(f1.get(f, ())), f))
    cells2 = sorted(S.home2, key=lambda m: (len(f2.get(m, ())) > 0, len(f2.get(m, ())), m))
    variables = [("o", a) for a in objs] + [("c", f) for f in cells] + [("m", m) for m in cells2]
    id_cells = {S.id1(a): a for a in objs}

    def candidates(var, asg):
        kind, x = var
        if kind == "o":
            return [obj_map[x]] if obj_map is not None else T.sorted_objects()
        if kind == "c":
            if x in id_cells:
                return [T.id1(asg[("o", id_cells[x])])]
            for g, f in f1.get(x, ()):
                if ("c", g) in asg and ("c", f) in asg:
                    v = _defined(lambda: T.comp1(asg[("c", g)], asg[("c", f)]))
                    return [v] if v is not None else []
            a, b = S.home1[x]
            pool = T.hom(asg[("o", a)], asg[("o", b)]).sorted_objects()
            return [y for y in pool if cell1_filter is None or cell1_filter(x, y)]
        H = S.hom_of_cell(x)
        s, t = asg[("c", H.src(x))], asg[("c", H.tgt(x))]
        if H.is_identity(x):
            return [T.id2(s)]
        for kind2, y, z in f2.get(x, ()):
            ky, kz = ("m", y), ("m", z)
            yv = asg.get(ky) if not S.hom_of_cell(y).is_identity(y) else T.id2(asg[("c", S.src2(y))])
            zv = asg.get(kz) if not S.hom_of_cell(z).is_identity(z) else T.id2(asg[("c", S.src2(z))])
            if yv is None or zv is None:
                continue
            v = _defined(lambda: T.vert(yv, zv) if kind2 == "v" else T.comp2(yv, zv))
            return [v] if v is not None and T.src2(v) == s and T.tgt2(v) == t else []
        pool = T.hom(*T.home1[s]).hom(s, t)
        return [y for y in pool if cell2_filter is None or cell2_filter(x, y)]

    def image2(asg, m):
        if S.hom_of_cell(m).is_identity(m):
            return T.id2(asg[("c", S.src2(m))])
        return asg[("m", m)]

    constraints = []
    for h, lst in f1.items():
        for g, f in lst:
            def p1(asg, g=g, f=f, h=h):
                v = _defined(lambda: T.comp1(asg[("c", g)], asg[("c", f)]))
                return v is None or v == asg[("c", h)]
            constraints.append(((("c", g), ("c", f), ("c", h)), p1))
    for z, lst in f2.items():
        for kind2, y, x in lst:
            need = [("c", S.src2(m)) for m in (x, y, z)]
            need += [("m", m) for m in (x, y, z) if not S.hom_of_cell(m).is_identity(m)]

            def p2(asg, kind2=kind2, y=y, x=x, z=z):
                yv, xv = image2(asg, y), image2(asg, x)
                v = _defined(lambda: T.vert(yv, xv) if kind2 == "v" else T.comp2(yv, xv))
                return v is None or v == image2(asg, z)
            constraints.append((tuple(dict.fromkeys(need)), p2))
    search = Search(variables, candidates, constraints, cap, "strict 2-functor enumeration")
    out = []
    for asg in search.solutions():
        out.append(StrictTwoFunctor(S, T, {a: asg[("o", a)] for a in objs},
                                    {f: asg[("c", f)] for f in S.home1},
                                    {m: image2(asg, m) for m in S.home2}, "G%d" % len(out)))
    return out


# Truncated simplex category and the Segal presentation.

def truncated_delta_op(N):
    """``Delta^op`` restricted to ``[0], ..., [N]``: a morphism ``n -> m`` is
    a monotone map ``[m] -> [n]``, named by its rendering."""
    objects = [str(n) for n in range(N + 1)]
    morphisms, maps = {}, {}
    for n in range(N + 1):
        for m in range(N + 1):
            for theta in enumerate_simplex_maps(m, n):
                morphisms[str(theta)] = (str(n), str(m))
                maps[str(theta)] = theta
    identity = {str(n): str(simplex_identity(n)) for n in range(N + 1)}
    composition = {}
    for t1, (n, m) in morphisms.items():
        for t2, (m2, k) in morphisms.items():
            if m2 == m:
                composition[(t2, t1)] = str(maps[t2].then(maps[t1]))
    C = FinCategory(objects, morphisms, identity, composition, "Delta_op_%d" % N)
    return C, maps


def string_id(cells, obj=None):
    """Id of a composable tuple in the ``n``-th fiber (``n = 0``: the object)."""
    return obj if not cells else pair_id(*cells)


class SegalPresentation:
    def __init__(self, two_category, N, fibers, actions, base, simplex_maps, tuples):
        self.two_category = two_category
        self.N = N
        self.fibers = fibers
        self.actions = actions
        self.base = base
        self.simplex_maps = simplex_maps
        self.tuples = tuples


def _tuples(A, n):
    """Composable ``n``-tuples of 1-cells with a defined total composite."""
    if n == 0:
        return [((), a) for a in A.sorted_objects()]
    out = []

    def extend(prefix, at):
        if len(prefix) == n:
            if _defined(lambda: A.comp1_path(list(prefix))) is not None:
                out.append((tuple(prefix), None))
            return
        for c in A.sorted_objects():
            for f in A.hom(at, c).sorted_objects():
                extend(prefix + [f], c)
    for a in A.sorted_objects():
        extend([], a)
    return out


def _fiber(A, n, limit):
    """``X_n``: objects composable tuples, morphisms tuples of 2-cells."""
    tuples = _tuples(A, n)
    if len(tuples) > limit:
        raise SizeExceeded("fiber X_%d has %d objects (cap %d)" % (n, len(tuples), limit))
    objects, info = [], {}
    for cells, a in tuples:
        oid = string_id(cells, a)
        objects.append(oid)
        info[oid] = (cells, a if not cells else A.src1(cells[0]))
    morphisms, identity, composition = {}, {}, {}
    if n == 0:
        for oid in objects:
            morphisms[pair_id(oid)] = (oid, oid)
            identity[oid] = pair_id(oid)
            composition[(pair_id(oid), pair_id(oid))] = pair_id(oid)
        return FinCategory(objects, morphisms, identity, composition, "X_0"), info
    for oid in objects:
        cells = info[oid][0]
        identity[oid] = pair_id(*[A.id2(f) for f in cells])
    by_src = {}
    for s in objects:
        cs = info[s][0]
        for t in objects:
            ct = info[t][0]
            if any(A.home1[x] != A.home1[y] for x, y in zip(cs, ct)):
                continue
            options = [A.hom(*A.home1[x]).hom(x, y) for x, y in zip(cs, ct)]
            for combo in itertools.product(*options):
                m = pair_id(*combo)
                morphisms[m] = (s, t)
                by_src.setdefault(s, []).append((m, combo))
    pieces = {m: combo for lst in by_src.values() for m, combo in lst}

    def compose(m2, m1):
        return pair_id(*[A.vert(y, x) for y, x in zip(pieces[m2], pieces[m1])])
    X = FinCategory(objects, morphisms, identity, LazyComposition(morphisms, compose),
                    "X_%d" % n)
    X.cell_pieces = pieces
    return X, info


def _slot_composite(A, cells, lo, hi, at):
    """Composite of ``cells[lo:hi]`` or the identity at object ``at``."""
    return A.comp1_path(list(cells[lo:hi]), at)


def _vertices(A, cells, a0):
    vs = [a0]
    for f in cells:
        vs.append(A.tgt1(f))
    return vs


def _action(A, theta, Xn, Xm, info_n):
    """Functor ``X_n -> X_m`` induced by ``theta: [m] -> [n]``."""
    obj, verts = {}, {}
    for oid in Xn.objects:
        cells, a0 = info_n[oid]
        vs = verts[oid] = _vertices(A, cells, a0)
        if theta.n == 0:
            obj[oid] = vs[theta(0)]
            continue
        new = [_slot_composite(A, cells, theta(j - 1), theta(j), vs[theta(j)])
               for j in range(1, theta.n + 1)]
        obj[oid] = string_id(new)
    mor = {}
    pieces = getattr(Xn, "cell_pieces", {})
    slots = [(theta(j - 1), theta(j)) for j in range(1, theta.n + 1)]
    for mid, (s, _) in Xn.morphisms.items():
        if theta.n == 0:
            mor[mid] = Xm.identity[obj[s]]
            continue
        vs = verts[s]
        comps = pieces.get(mid, ())
        new = [A.comp2_path(list(comps[lo:hi])) if lo < hi else A.id2(A.id1(vs[hi]))
               for lo, hi in slots]
        mor[mid] = pair_id(*new)
    return CatFunctor(Xn, Xm, obj, mor, str(theta))


def _split_all(pid):
    body = pid[1:-1]
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "<":
            depth += 1
        elif ch == ">":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    parts.append(body[start:])
    return parts


def segal_fibers(A, N=None, cap=None):
    """Fibers ``X_0 .. X_N`` and the simplicial action of a 2-category."""
    N = config.DEFAULT_TRUNCATION if N is None else N
    if N < 2:
        raise TruncationTooSmall("Segal presentation needs N >= 2")
    limit = config.cap("objects", cap)
    fibers, infos = {}, {}
    for n in range(N + 1):
        fibers[n], infos[n] = _fiber(A, n, limit)
    base, maps = truncated_delta_op(N)
    actions = {}
    for k, theta in maps.items():
        actions[k] = _action(A, theta, fibers[theta.m], fibers[theta.n], infos[theta.m])
    return SegalPresentation(A, N, fibers, actions, base, maps, infos)


def check_segal(pres):
    """Compare ``X_n`` with the iterated fiber product of ``X_1`` over
    ``X_0`` built by ``fincat.pullback``.

    For size-capped 2-categories each fiber product is cut down to the
    tuples whose total size fits the cap before the next level is formed;
    ``restricted`` reports whether anything was cut.
    """
    A = pres.two_category
    X1 = pres.fibers[1]
    s = pres.actions[str(SimplexMap(0, 1, (0,)))]
    t = pres.actions[str(SimplexMap(0, 1, (1,)))]
    edge_size = {x: A.size1(_split_all(x)[0]) for x in X1.objects}
    size = dict(edge_size)
    out = {}
    last = None
    for n in range(2, pres.N + 1):
        leg = compose_functors(t, last) if last is not None else t
        prev = size
        pb = pullback(leg, s, keep=lambda x, y: _fits(A, prev[x], edge_size[y]))
        pieces = pb.extra["obj_pieces"]
        size = {o: prev[x] + edge_size[y] for o, (x, y) in pieces.items()}
        restricted = any(not _fits(A, prev[x], edge_size[y])
                         for x in leg.source.objects for y in X1.objects
                         if leg.obj[x] == s.obj[y])
        P = pb.category
        last = pb["pr1"]
        edges = [pres.actions[str(SimplexMap(1, n, (i - 1, i)))] for i in range(1, n + 1)]

        def nest(values):
            acc = values[0]
            for v in values[1:]:
                acc = pair_id(acc, v)
            return acc
        Xn = pres.fibers[n]
        obj = {x: nest([e.obj[x] for e in edges]) for x in Xn.objects}
        mor = {m: nest([e.mor[m] for e in edges]) for m in Xn.morphisms}
        if not all(v in P.morphisms for v in mor.values()):
            out[n] = {"isomorphism": False, "restricted": restricted}
            continue
        segal = CatFunctor(Xn, P, obj, mor, "segal_%d" % n)
        iso = not functor_failures(segal) and is_isomorphism(segal)
        out[n] = {"isomorphism": iso, "restricted": restricted}
    return out


def check_globular_complete(pres):
    X0, X1 = pres.fibers[0], pres.fibers[1]
    globular = all(X0.is_identity(m) for m in X0.morphisms)
    A = pres.two_category
    d1 = pres.actions[str(SimplexMap(1, 2, (0, 2)))] if pres.N >= 2 else None
    s0 = pres.actions[str(SimplexMap(1, 0, (0, 0)))]
    X2 = pres.fibers[2]
    identities = {s0.obj[a]: a for a in X0.objects}
    composite = {}
    for x in X2.objects:
        f, g = _split_all(x)
        composite[(f, g)] = d1.obj[x]

    def iso_to_identity(h, a):
        return X1.isomorphic(h, s0.obj[a]) if s0.obj[a] in X1.objects else False

    equivalences = []
    for f in X1.sorted_objects():
        (cells,) = [_split_all(f)]
        fcell = cells[0]
        a, b = A.home1[fcell]
        for g in A.hom(b, a).sorted_objects():
            gf = composite.get((fcell, g))
            fg = composite.get((g, fcell))
            gf_id = gf is not None and X1.isomorphic(gf, s0.obj[a])
            fg_id = fg is not None and X1.isomorphic(fg, s0.obj[b])
            if gf_id and fg_id:
                equivalences.append(f)
                break
    witnesses = []
    for f in equivalences:
        a, b = A.home1[_split_all(f)[0]]
        if not X1.isomorphic(f, s0.obj[a]) or a != b:
            witnesses.append(("equivalence not isomorphic to an identity", f))
        autos = [m for m in X1.hom(f, f) if X1.is_iso(m)]
        if len(autos) != 1:
            witnesses.append(("nontrivial automorphism", f, len(autos)))
    return {"globular": globular, "complete": not witnesses, "witnesses": witnesses,
            "equivalences": len(equivalences)}


# Unstraightening and maps of presentations.

def unstraighten(pres, cap=None, check=True):
    functor = CategoryValuedFunctor(pres.base, {str(n): X for n, X in pres.fibers.items()},
                                    pres.actions, "X")
    return grothendieck_construction(functor, cap, check)


class FibrationMap:
    """A functor between unstraightened presentations over the same base."""

    def __init__(self, source, target, functor, N):
        self.source = source
        self.target = target
        self.functor = functor
        self.N = N


def _comparison(L, cells, a):
    """``F f_k . ... . F f_1 => F(f_k . ... . f_1)``: the unit cell for an
    empty slot, an identity for one cell, a left-normalized iterate of
    composition cells otherwise."""
    S, T = L.source, L.target
    if not cells:
        return L.delta[a]
    acc_cell = cells[0]
    acc = T.id2(L.cells1[cells[0]])
    for f in cells[1:]:
        step = T.comp2(T.id2(L.cells1[f]), acc)
        acc = T.vert(L.gamma[(f, acc_cell)], step)
        acc_cell = S.comp1(f, acc_cell)
    return acc


def right_normalized_comparison(L, cells, a):
    S, T = L.source, L.target
    if not cells:
        return L.delta[a]
    acc_cell = cells[-1]
    acc = T.id2(L.cells1[cells[-1]])
    for f in reversed(cells[:-1]):
        step = T.comp2(acc, T.id2(L.cells1[f]))
        acc = T.vert(L.gamma[(acc_cell, f)], step)
        acc_cell = S.comp1(acc_cell, f)
    return acc


def lax_to_fibration_map(L, N=None, gX=None, gY=None):
    N = config.DEFAULT_TRUNCATION if N is None else N
    if N < 3:
        raise TruncationTooSmall("N must be at least 3 to carry associativity data", N)
    S, T = L.source, L.target
    gX = gX or unstraighten_two_category(S, N)
    gY = gY or unstraighten_two_category(T, N)
    return _lax_to_map(L, gX, gY)


def _lax_to_map(L, gX, gY):
    S, T = L.source, L.target
    if gX.functor.base != gY.functor.base:
        raise TruncationMismatch("presentations have different truncation levels")
    N = gX.presentation.N
    pres_maps = gX.functor.simplex_maps
    X, Y = gX.total, gY.total
    obj, fiber_obj, info = {}, {}, {}
    for o, (n, x) in gX.obj_pieces.items():
        if n == "0":
            fiber_obj[o] = L.obj[x]
            info[o] = ((), x)
        else:
            cells = _split_all(x)
            fiber_obj[o] = string_id([L.cells1[f] for f in cells])
            info[o] = (tuple(cells), S.src1(cells[0]))
        obj[o] = pair_id(n, fiber_obj[o])
    mor = {}
    for m, (k, x, phi) in gX.pieces.items():
        theta = pres_maps[k]
        src = pair_id(str(theta.m), x)
        cells, a0 = info[src]
        vs = _vertices(S, cells, a0)
        Fx = fiber_obj[src]
        if theta.n == 0:
            mor[m] = pair_id(k, Fx, pair_id(L.obj[vs[theta(0)]]))
            continue
        comps = _split_all(phi)
        new = []
        for j in range(1, theta.n + 1):
            lo, hi = theta(j - 1), theta(j)
            c = _comparison(L, list(cells[lo:hi]), vs[hi])
            new.append(T.vert(L.cells2[comps[j - 1]], c))
        mor[m] = pair_id(k, Fx, pair_id(*new))
    F = CatFunctor(X, Y, obj, mor, "fib(%s)" % L.name)
    return FibrationMap(gX, gY, F, N)


def fibration_map_to_lax(fm):
    """Read a lax functor back from a map of presentations: cells from the
    fiber over ``[1]``, unit cells from lifts over ``[1] -> [0]`` and
    composition cells from lifts over ``(0,2): [1] -> [2]``."""
    gX, gY, F = fm.source, fm.target, fm.functor
    src2 = _source_two_category(gX)
    tgt2 = _source_two_category(gY)
    obj, cells1, cells2 = {}, {}, {}
    for a in gX.functor.fibers["0"].objects:
        y = F.obj[pair_id("0", a)]
        obj[a] = gY.obj_pieces[y][1]
    idk1 = str(simplex_identity(1))
    X1 = gX.functor.fibers["1"]
    for x in X1.objects:
        (f,) = _split_all(x)
        y = gY.obj_pieces[F.obj[pair_id("1", x)]][1]
        (cells1[f],) = _split_all(y)
    for phi, (s, _) in X1.morphisms.items():
        m = F.mor[pair_id(idk1, s, phi)]
        (c,) = _split_all(gY.pieces[m][2])
        (alpha,) = _split_all(phi)
        cells2[alpha] = c
    delta, gamma = {}, {}
    s0 = SimplexMap(1, 0, (0, 0))
    d1 = SimplexMap(1, 2, (0, 2))
    for a in gX.functor.fibers["0"].objects:
        lift = gX.lift(pair_id("0", a), str(s0))
        (delta[a],) = _split_all(gY.pieces[F.mor[lift]][2])
    X2 = gX.functor.fibers["2"]
    for x in X2.objects:
        f, g = _split_all(x)
        lift = gX.lift(pair_id("2", x), str(d1))
        (gamma[(g, f)],) = _split_all(gY.pieces[F.mor[lift]][2])
    return LaxFunctor(src2, tgt2, obj, cells1, cells2, delta, gamma, "lax")


def _source_two_category(g):
    return g.functor.two_category


def check_inert_cocartesian(fm, target_analysis=None):
    """Does the map preserve cocartesian lifts over inert base morphisms?
    Also reports which active lifts are preserved."""
    gX, gY = fm.source, fm.target
    if gX.functor.base != gY.functor.base:
        raise TruncationMismatch("presentations have different truncation levels")
    maps = gX.functor.simplex_maps
    F = fm.functor
    failures, active_missed = [], []
    for (x, k), f in sorted(gX.lifts.items()):
        theta = maps[k]
        ok = gY.is_cocartesian(F.mor[f])
        if theta.is_inert:
            if not ok:
                failures.append((x, k))
        elif not ok:
            active_missed.append((x, k))
    return {"inert_cocartesian": not failures, "failures": failures,
            "cocartesian": not failures and not active_missed, "active_missed": active_missed}


def lax_lift_report(L, N=None, pres=None):
    """``check_inert_cocartesian(lax_to_fibration_map(L, N))`` computed from
    the canonical lifts alone, without building either total category.

    The image of the canonical lift of ``x`` along ``theta`` has the
    comparison cells of ``L`` as its fiber part, and it is cocartesian
    exactly when that fiber part is invertible, i.e. when each comparison
    cell is an invertible 2-cell.
    """
    N = config.DEFAULT_TRUNCATION if N is None else N
    if N < 3:
        raise TruncationTooSmall("N must be at least 3 to carry associativity data", N)
    S, T = L.source, L.target
    pres = pres or segal_fibers(S, N)
    failures, active_missed = [], []
    for k, theta in sorted(pres.simplex_maps.items()):
        i = theta.m
        for x, (cells, a0) in sorted(pres.tuples[i].items()):
            vs = _vertices(S, cells, a0)
            ok = True
            for j in range(1, theta.n + 1):
                lo, hi = theta(j - 1), theta(j)
                c = _comparison(L, list(cells[lo:hi]), vs[hi])
                if not T.hom_of_cell(c).is_iso(c):
                    ok = False
                    break
            if ok:
                continue
            key = (pair_id(str(i), x), k)
            (active_missed if not theta.is_inert else failures).append(key)
    failures.sort()
    active_missed.sort()
    return {"inert_cocartesian": not failures, "failures": failures,
            "cocartesian": not failures and not active_missed, "active_missed": active_missed}


def unstraighten_two_category(A, N=None, cap=None, check=True):
    """``unstraighten(segal_fibers(A, N))`` with the 2-category and simplex
    maps attached for later decoding.  ``check=False`` skips validating the
    simplicial functor, which is costly on large fibers."""
    pres = segal_fibers(A, N, cap)
    g = unstraighten(pres, cap, check)
    g.functor.two_category = A
    g.functor.simplex_maps = pres.simplex_maps
    g.presentation = pres
    return g


def strict_to_fibration_map(F, N=None, gX=None, gY=None):
    return lax_to_fibration_map(as_lax(F), N, gX, gY)


def rebuild_two_category(pres):
    """Recover a table 2-category from its presentation."""
    X0, X1 = pres.fibers[0], pres.fibers[1]
    s = pres.actions[str(SimplexMap(0, 1, (0,)))]
    t = pres.actions[str(SimplexMap(0, 1, (1,)))]
    s0 = pres.actions[str(SimplexMap(1, 0, (0, 0)))]
    d1 = pres.actions[str(SimplexMap(1, 2, (0, 2)))]
    X2 = pres.fibers[2]
    objects = list(X0.objects)
    cells = {}
    for x in X1.objects:
        cells.setdefault((s.obj[x], t.obj[x]), []).append(x)
    homs = {}
    for a in objects:
        for b in objects:
            sub, _ = full_subcategory(X1, cells.get((a, b), []), "hom(%s,%s)" % (a, b))
            homs[(a, b)] = sub
    unwrap1 = {x: _split_all(x)[0] for x in X1.objects}
    unwrap2 = {m: _split_all(m)[0] for m in X1.morphisms}
    homs2 = {}
    for k, H in homs.items():
        homs2[k] = FinCategory([unwrap1[x] for x in H.objects],
                               {unwrap2[m]: (unwrap1[a], unwrap1[b]) for m, (a, b) in H.morphisms.items()},
                               {unwrap1[x]: unwrap2[m] for x, m in H.identity.items()},
                               {(unwrap2[g], unwrap2[f]): unwrap2[h]
                                for (g, f), h in H.composition.items()}, H.name)
    id1 = {a: unwrap1[s0.obj[a]] for a in objects}
    comp1, comp2 = {}, {}
    for x in X2.objects:
        f, g = _split_all(x)
        comp1[(g, f)] = unwrap1[d1.obj[x]]
    for m in X2.morphisms:
        al, be = _split_all(m)
        comp2[(be, al)] = unwrap2[d1.mor[m]]
    return StrictTwoCategory(objects, homs2, id1, comp1, comp2, pres.two_category.name)
