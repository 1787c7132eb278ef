"""Derived categories with their structure functors.

Every builder returns a ``Derived`` bundle: the new category plus a dict of
canonical functors (projections, evaluations, diagonals).  Ids of derived
objects and morphisms are synthesized deterministically from their parts.
"""
from .. import config
from ..errors import IncompatibleCospan, SizeExceeded
from .category import FinCategory, LazyComposition, pair_id
from .functor import CatFunctor, NatTransformation


class Derived:
    def __init__(self, category, functors, **extra):
        self.category = category
        self.functors = functors
        self.extra = extra

    def __getitem__(self, name):
        return self.functors[name]


def _check_size(n, cap, what):
    limit = config.cap("objects", cap)
    if n > limit:
        raise SizeExceeded("%s would have %d objects (cap %d)" % (what, n, limit))


def _close(objects, morphisms, identity, compose, name):
    """Category whose composition table is ``compose(g, f)`` on every
    composable pair, evaluated on demand."""
    return FinCategory(objects, morphisms, identity, LazyComposition(morphisms, compose), name)


def opposite(C):
    op = FinCategory(C.objects, {f: (b, a) for f, (a, b) in C.morphisms.items()},
                     C.identity, {(f, g): h for (g, f), h in C.composition.items()},
                     "op(%s)" % C.name)
    return Derived(op, {})


def opposite_functor(F, Cop, Dop):
    return CatFunctor(Cop, Dop, F.obj, F.mor, "op(%s)" % F.name)


def opposite_transformation(alpha, Fop, Gop):
    """``alpha: F => G`` becomes ``alpha^op: G^op => F^op``."""
    return NatTransformation(Gop, Fop, alpha.components, "op(%s)" % alpha.name)


def product(C, D, cap=None):
    _check_size(len(C.objects) * len(D.objects), cap, "product")
    objects = [pair_id(a, b) for a in C.sorted_objects() for b in D.sorted_objects()]
    pieces = {}
    morphisms = {}
    for f, (a, b) in C.morphisms.items():
        for g, (c, d) in D.morphisms.items():
            m = pair_id(f, g)
            morphisms[m] = (pair_id(a, c), pair_id(b, d))
            pieces[m] = (f, g)
    identity = {pair_id(a, b): pair_id(C.identity[a], D.identity[b])
                for a in C.objects for b in D.objects}

    def compose(m2, m1):
        (g1, g2), (f1, f2) = pieces[m2], pieces[m1]
        return pair_id(C.comp(g1, f1), D.comp(g2, f2))

    P = _close(objects, morphisms, identity, compose, "%s x %s" % (C.name, D.name))
    pr0 = CatFunctor(P, C, {pair_id(a, b): a for a in C.objects for b in D.objects},
                     {m: p[0] for m, p in pieces.items()}, "pr0")
    pr1 = CatFunctor(P, D, {pair_id(a, b): b for a in C.objects for b in D.objects},
                     {m: p[1] for m, p in pieces.items()}, "pr1")
    return Derived(P, {"pr0": pr0, "pr1": pr1}, pieces=pieces)


def pullback(F, G, cap=None, keep=None):
    """Strict pullback ``A x_C B`` of ``F: A -> C`` and ``G: B -> C``.

    ``keep(a, b)``, when given, selects a full subcategory of object pairs
    without materializing the rest."""
    if F.target != G.target:
        raise IncompatibleCospan("pullback legs have different targets")
    A, B = F.source, G.source
    by_image = {}
    for b in B.objects:
        by_image.setdefault(G.obj[b], []).append(b)
    pairs = [(a, b) for a in A.sorted_objects() for b in sorted(by_image.get(F.obj[a], []))]
    if keep is not None:
        pairs = [(a, b) for a, b in pairs if keep(a, b)]
    kept = set(pairs)
    _check_size(len(pairs), cap, "pullback")
    objects = [pair_id(a, b) for a, b in pairs]
    mor_by_image = {}
    for g in B.morphisms:
        mor_by_image.setdefault(G.mor[g], []).append(g)
    pieces, morphisms = {}, {}
    for f, (a, a2) in A.morphisms.items():
        for g in mor_by_image.get(F.mor[f], []):
            b, b2 = B.morphisms[g]
            if keep is not None and ((a, b) not in kept or (a2, b2) not in kept):
                continue
            m = pair_id(f, g)
            morphisms[m] = (pair_id(a, b), pair_id(a2, b2))
            pieces[m] = (f, g)
    identity = {pair_id(a, b): pair_id(A.identity[a], B.identity[b]) for a, b in pairs}

    def compose(m2, m1):
        (g1, g2), (f1, f2) = pieces[m2], pieces[m1]
        return pair_id(A.comp(g1, f1), B.comp(g2, f2))

    P = _close(objects, morphisms, identity, compose, "%s x_%s %s" % (A.name, F.target.name, B.name))
    obj_pieces = {pair_id(a, b): (a, b) for a, b in pairs}
    pr0 = CatFunctor(P, A, {x: p[0] for x, p in obj_pieces.items()},
                     {m: p[0] for m, p in pieces.items()}, "pr0")
    pr1 = CatFunctor(P, B, {x: p[1] for x, p in obj_pieces.items()},
                     {m: p[1] for m, p in pieces.items()}, "pr1")
    return Derived(P, {"pr0": pr0, "pr1": pr1}, pieces=pieces, obj_pieces=obj_pieces,
                   legs=(F, G))


def pairing(pb, P, Q, name="pair"):
    """The functor ``X -> A x_C B`` induced by ``P: X -> A`` and ``Q: X -> B``."""
    X = P.source
    return CatFunctor(X, pb.category, {x: pair_id(P.obj[x], Q.obj[x]) for x in X.objects},
                      {f: pair_id(P.mor[f], Q.mor[f]) for f in X.morphisms}, name)


def pullback_functor(pb1, pb2, FA, FB):
    """Componentwise functor between pullbacks, ``FA x FB``."""
    P1 = pb1.category
    return CatFunctor(P1, pb2.category,
                      {x: pair_id(FA.obj[a], FB.obj[b]) for x, (a, b) in pb1.extra["obj_pieces"].items()},
                      {m: pair_id(FA.mor[f], FB.mor[g]) for m, (f, g) in pb1.extra["pieces"].items()},
                      "%s x %s" % (FA.name, FB.name))


def pullback_transformation(pb1, pb2, F1, F2, alpha, beta):
    """Componentwise transformation between functors ``F1, F2: pb1 -> pb2``
    built from ``alpha`` on the first factor and ``beta`` on the second."""
    return NatTransformation(F1, F2, {x: pair_id(alpha[a], beta[b])
                                      for x, (a, b) in pb1.extra["obj_pieces"].items()})


def comma(F, G, cap=None):
    """Comma category ``F | G`` for ``F: A -> C`` and ``G: B -> C``.

    Objects are triples ``(a, h: F a -> G b, b)``; a morphism is a pair
    ``(f, g)`` making the square commute.
    """
    if F.target != G.target:
        raise IncompatibleCospan("comma legs have different targets")
    A, B, C = F.source, G.source, F.target
    triples = []
    for a in A.sorted_objects():
        for b in B.sorted_objects():
            for h in C.hom(F.obj[a], G.obj[b]):
                triples.append((a, h, b))
    _check_size(len(triples), cap, "comma")
    objects = [pair_id(*t) for t in triples]
    obj_pieces = {pair_id(*t): t for t in triples}
    by_ab = {}
    for t in triples:
        by_ab.setdefault((t[0], t[2]), []).append(t)
    morphisms, pieces = {}, {}
    for a, h, b in triples:
        src = pair_id(a, h, b)
        for f in A.out_of(a):
            a2 = A.tgt(f)
            Ff = F.mor[f]
            for g in B.out_of(b):
                b2 = B.tgt(g)
                Gg_h = C.comp(G.mor[g], h)
                for _, h2, _ in by_ab.get((a2, b2), ()):
                    if C.comp(h2, Ff) == Gg_h:
                        m = pair_id(f, g, h, h2)
                        morphisms[m] = (src, pair_id(a2, h2, b2))
                        pieces[m] = (f, g)
    identity = {pair_id(a, h, b): pair_id(A.identity[a], B.identity[b], h, h) for a, h, b in triples}

    def compose(m2, m1):
        (f2, g2), (f1, g1) = pieces[m2], pieces[m1]
        h = obj_pieces[morphisms[m1][0]][1]
        h2 = obj_pieces[morphisms[m2][1]][1]
        return pair_id(A.comp(f2, f1), B.comp(g2, g1), h, h2)

    K = _close(objects, morphisms, identity, compose, "%s|%s" % (F.name, G.name))
    pr0 = CatFunctor(K, A, {x: t[0] for x, t in obj_pieces.items()},
                     {m: p[0] for m, p in pieces.items()}, "pr0")
    pr1 = CatFunctor(K, B, {x: t[2] for x, t in obj_pieces.items()},
                     {m: p[1] for m, p in pieces.items()}, "pr1")
    return Derived(K, {"pr0": pr0, "pr1": pr1}, obj_pieces=obj_pieces, pieces=pieces)


def arrow(C, cap=None):
    """Arrow category: objects are the morphisms of ``C``, morphisms are
    commuting squares ``(u, v)`` with id ``<f,u,v,f'>``."""
    _check_size(len(C.morphisms), cap, "arrow category")
    objects = sorted(C.morphisms)
    morphisms, pieces = {}, {}
    for f, (a, b) in C.morphisms.items():
        for u in C.out_of(a):
            for v in C.out_of(b):
                vf = C.comp(v, f)
                for f2 in C.hom(C.tgt(u), C.tgt(v)):
                    if C.comp(f2, u) == vf:
                        m = pair_id(f, u, v, f2)
                        morphisms[m] = (f, f2)
                        pieces[m] = (u, v)
    identity = {f: pair_id(f, C.identity[a], C.identity[b], f) for f, (a, b) in C.morphisms.items()}

    def compose(m2, m1):
        (u2, v2), (u1, v1) = pieces[m2], pieces[m1]
        return pair_id(morphisms[m1][0], C.comp(u2, u1), C.comp(v2, v1), morphisms[m2][1])

    Ar = _close(objects, morphisms, identity, compose, "Arr(%s)" % C.name)
    ev0 = CatFunctor(Ar, C, {f: C.src(f) for f in objects}, {m: p[0] for m, p in pieces.items()}, "ev0")
    ev1 = CatFunctor(Ar, C, {f: C.tgt(f) for f in objects}, {m: p[1] for m, p in pieces.items()}, "ev1")
    diag = CatFunctor(C, Ar, {x: C.identity[x] for x in C.objects},
                      {u: pair_id(C.identity[a], u, u, C.identity[b])
                       for u, (a, b) in C.morphisms.items()}, "diag")
    return Derived(Ar, {"ev0": ev0, "ev1": ev1, "diag": diag}, pieces=pieces, base=C)


def arrow_functor(arr_c, arr_d, F):
    """Postcomposition ``F_*: Arr(C) -> Arr(D)``."""
    pieces = arr_c.extra["pieces"]
    Ac = arr_c.category
    return CatFunctor(Ac, arr_d.category, {f: F.mor[f] for f in Ac.objects},
                      {m: pair_id(F.mor[Ac.src(m)], F.mor[u], F.mor[v], F.mor[Ac.tgt(m)])
                       for m, (u, v) in pieces.items()}, "%s_*" % F.name)


def arrow_square(arr, f, u, v, f2):
    return pair_id(f, u, v, f2)


def functor_category(C, D, cap=None, search_cap=None):
    """Category of functors ``C -> D`` and natural transformations.

    Objects get ids ``F0, F1, ...`` in enumeration order; the functors
    themselves are kept in ``extra["members"]``.
    """
    from .enumerate import enumerate_functors, enumerate_transformations
    functors = enumerate_functors(C, D, cap=search_cap)
    _check_size(len(functors), cap, "functor category")
    ids = ["F%d" % i for i in range(len(functors))]
    by_id = dict(zip(ids, functors))
    morphisms, trans = {}, {}
    srcs = C.sorted_objects()
    for i, F in zip(ids, functors):
        for j, G in zip(ids, functors):
            for alpha in enumerate_transformations(F, G, cap=search_cap):
                m = "%s=>%s:%s" % (i, j, ",".join(alpha[x] for x in srcs))
                morphisms[m] = (i, j)
                trans[m] = alpha
    identity = {}
    for i, F in by_id.items():
        identity[i] = "%s=>%s:%s" % (i, i, ",".join(D.identity[F.obj[x]] for x in srcs))

    def compose(m2, m1):
        a1, a2 = trans[m1], trans[m2]
        return "%s=>%s:%s" % (morphisms[m1][0], morphisms[m2][1],
                              ",".join(D.comp(a2[x], a1[x]) for x in srcs))

    FC = _close(ids, morphisms, identity, compose, "Fun(%s,%s)" % (C.name, D.name))
    evs = {}
    for x in C.objects:
        evs["ev_" + x] = CatFunctor(FC, D, {i: F.obj[x] for i, F in by_id.items()},
                                    {m: a[x] for m, a in trans.items()}, "ev_" + x)
    index = {F.key(): i for i, F in by_id.items()}
    return Derived(FC, evs, members=by_id, transformations=trans, index=index)


def functor_category_object(fc, F):
    return fc.extra["index"][F.key()]


def functor_category_morphism(fc, alpha):
    i = functor_category_object(fc, alpha.source)
    j = functor_category_object(fc, alpha.target)
    srcs = alpha.source.source.sorted_objects()
    return "%s=>%s:%s" % (i, j, ",".join(alpha[x] for x in srcs))


def postcompose(fc_src, fc_tgt, F):
    """``F_*: Fun(A, X) -> Fun(A, Y)`` for ``F: X -> Y``."""
    from .functor import compose_functors, whisker_left
    obj, mor = {}, {}
    for i, G in fc_src.extra["members"].items():
        obj[i] = functor_category_object(fc_tgt, compose_functors(F, G))
    for m, alpha in fc_src.extra["transformations"].items():
        mor[m] = functor_category_morphism(fc_tgt, whisker_left(F, alpha))
    return CatFunctor(fc_src.category, fc_tgt.category, obj, mor, "%s_*" % F.name)


def precompose(fc_src, fc_tgt, H):
    """``H^*: Fun(B, X) -> Fun(A, X)`` for ``H: A -> B``."""
    from .functor import compose_functors, whisker_right
    obj, mor = {}, {}
    for i, G in fc_src.extra["members"].items():
        obj[i] = functor_category_object(fc_tgt, compose_functors(G, H))
    for m, alpha in fc_src.extra["transformations"].items():
        mor[m] = functor_category_morphism(fc_tgt, whisker_right(alpha, H))
    return CatFunctor(fc_src.category, fc_tgt.category, obj, mor, "%s^*" % H.name)


def lift_transformation_post(fc_src, fc_tgt, F1, F2, theta):
    """``theta_*: F1_* => F2_*`` for ``theta: F1 => F2``."""
    from .functor import whisker_right
    comps = {}
    for i, G in fc_src.extra["members"].items():
        comps[i] = functor_category_morphism(fc_tgt, whisker_right(theta, G))
    return NatTransformation(F1, F2, comps, "%s_*" % theta.name)


def lift_transformation_pre(fc_src, fc_tgt, H1, H2, theta):
    """``theta^*: H1^* => H2^*`` for ``theta: H1 => H2`` (``H_i: A -> B``)."""
    from .functor import whisker_left
    comps = {}
    for i, G in fc_src.extra["members"].items():
        comps[i] = functor_category_morphism(fc_tgt, whisker_left(G, theta))
    return NatTransformation(H1, H2, comps, "%s^*" % theta.name)


def full_subcategory(C, objs, name=None):
    keep = set(objs)
    objects = [x for x in C.objects if x in keep]
    morphisms = {f: ab for f, ab in C.morphisms.items() if ab[0] in keep and ab[1] in keep}
    identity = {x: C.identity[x] for x in objects}
    sub = FinCategory(objects, morphisms, identity, LazyComposition(morphisms, C.comp),
                      name or "full(%s)" % C.name)
    inc = CatFunctor(sub, C, {x: x for x in objects}, {f: f for f in morphisms}, "incl")
    return sub, inc


def fiber(p, b):
    """Fiber of ``p`` over object ``b``: objects over ``b``, morphisms over
    its identity.  Returns the category and its inclusion."""
    X = p.source
    idb = p.target.identity[b]
    objects = [x for x in X.objects if p.obj[x] == b]
    keep = set(objects)
    morphisms = {f: ab for f, ab in X.morphisms.items() if ab[0] in keep and p.mor[f] == idb}
    identity = {x: X.identity[x] for x in objects}
    F = FinCategory(objects, morphisms, identity, LazyComposition(morphisms, X.comp),
                    "fiber(%s)" % b)
    inc = CatFunctor(F, X, {x: x for x in objects}, {f: f for f in morphisms}, "incl_" + b)
    return F, inc


def construct_derived_category(kind, *args, **kw):
    builders = {
        "opposite": opposite,
        "product": product,
        "pullback": pullback,
        "comma": comma,
        "arrow": arrow,
        "functor_category": functor_category,
    }
    if kind not in builders:
        raise ValueError("unknown construction %r" % kind)
    return builders[kind](*args, **kw)
