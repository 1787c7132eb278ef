"""Adjunctions with explicit witnesses, adjoint search and the mate calculus.

Conventions: an ``Adjunction`` has ``left F: A -> B``, ``right U: B -> A``,
``unit: id_A => U F`` and ``counit: F U => id_B``.
"""
from .errors import (CounitNotInvertible, EndpointMismatch, HypothesisFailed, MissingAdjunction,
                     NotAPullback)
from .fincat import (CatFunctor, NatTransformation, arrow, compose_functors, identity_functor,
                     identity_transformation, pair_id, pullback, pullback_functor,
                     transformation_failures)
from .fincat.functor import non_invertible_components


class Adjunction:
    def __init__(self, left, right, unit, counit, name=""):
        self.left = left
        self.right = right
        self.unit = unit
        self.counit = counit
        self.name = name

    def __repr__(self):
        return "Adjunction(%s -| %s)" % (self.left.name, self.right.name)

    @property
    def A(self):
        return self.left.source

    @property
    def B(self):
        return self.left.target

    def eta(self, a):
        return self.unit.components[a]

    def eps(self, b):
        return self.counit.components[b]


class AdjunctionReport:
    def __init__(self, failures, unit_invertible, counit_invertible):
        self.failures = failures
        self.unit_invertible = unit_invertible
        self.counit_invertible = counit_invertible

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "AdjunctionReport(ok=%s, failures=%s)" % (self.ok, self.failures[:3])


def _check_endpoints(adj):
    F, U = adj.left, adj.right
    A, B = F.source, F.target
    if U.source != B or U.target != A:
        raise EndpointMismatch("right adjoint does not go back from %s to %s" % (B.name, A.name))
    for t, s, d in ((adj.unit, A, A), (adj.counit, B, B)):
        if t.source.source != s or t.source.target != d:
            raise EndpointMismatch("unit or counit has wrong endpoints")


def check_adjunction(adj):
    """Triangle identities componentwise, plus naturality of the witnesses.

    Failures are tuples ``(law, object)``.
    """
    _check_endpoints(adj)
    F, U = adj.left, adj.right
    A, B = adj.A, adj.B
    failures = []
    for name, t in (("unit", adj.unit), ("counit", adj.counit)):
        for msg in transformation_failures(t):
            failures.append((name + " naturality", msg))
    if failures:
        return AdjunctionReport(failures, False, False)
    for b in B.sorted_objects():
        if A.comp(U.mor[adj.eps(b)], adj.eta(U.obj[b])) != A.identity[U.obj[b]]:
            failures.append(("U eps . eta U", b))
    for a in A.sorted_objects():
        if B.comp(adj.eps(F.obj[a]), F.mor[adj.eta(a)]) != B.identity[F.obj[a]]:
            failures.append(("eps F . F eta", a))
    return AdjunctionReport(failures,
                            not non_invertible_components(adj.unit),
                            not non_invertible_components(adj.counit))


def identity_adjunction(C):
    I = identity_functor(C)
    e = identity_transformation(I)
    return Adjunction(I, I, e, e, "id")


def compose_adjunctions(inner, outer):
    """``G F -| U V`` from ``F -| U`` (inner) and ``G -| V`` (outer)."""
    F, U, G, V = inner.left, inner.right, outer.left, outer.right
    GF = compose_functors(G, F)
    UV = compose_functors(U, V)
    A, C = F.source, G.target
    unit = {a: A.comp(U.mor[outer.eta(F.obj[a])], inner.eta(a)) for a in A.objects}
    counit = {c: C.comp(outer.eps(c), G.mor[inner.eps(V.obj[c])]) for c in C.objects}
    ident_A = identity_functor(A)
    ident_C = identity_functor(C)
    return Adjunction(GF, UV,
                      NatTransformation(ident_A, compose_functors(UV, GF), unit, "unit"),
                      NatTransformation(compose_functors(GF, UV), ident_C, counit, "counit"),
                      "%s;%s" % (inner.name, outer.name))


def _assemble(F, U_obj, eps, name):
    """Right adjoint from chosen terminal objects ``(U b, eps_b)`` of the
    commas ``F | b``; morphism parts and the unit come from terminality."""
    A, B = F.source, F.target

    def factor(a, b, h):
        """The unique ``f: a -> U b`` with ``eps_b . F f = h``."""
        hits = [f for f in A.hom(a, U_obj[b]) if B.comp(eps[b], F.mor[f]) == h]
        return hits[0]

    mor = {}
    for v, (b, b2) in B.morphisms.items():
        mor[v] = factor(U_obj[b], b2, B.comp(v, eps[b]))
    U = CatFunctor(B, A, U_obj, mor, "R(%s)" % F.name)
    unit = {a: factor(a, F.obj[a], B.identity[F.obj[a]]) for a in A.objects}
    ident_A = identity_functor(A)
    ident_B = identity_functor(B)
    return Adjunction(F, U,
                      NatTransformation(ident_A, compose_functors(U, F), unit, "unit"),
                      NatTransformation(compose_functors(F, U), ident_B, eps, "counit"),
                      name)


class AdjointSearch:
    """Result of ``search_adjoint``: the adjunction or the first object whose
    comma category lacks a terminal (or initial) object."""

    def __init__(self, adjunction, failing_object=None):
        self.adjunction = adjunction
        self.failing_object = failing_object

    def __bool__(self):
        return self.adjunction is not None


def _comma_terminal(F, b, prefer_strict=True):
    """Terminal object ``(a, h: F a -> b)`` of ``F | b`` or ``None``.

    An object with ``h`` an identity is preferred when it is terminal, so
    that strict sections are found whenever they exist; otherwise ties go to
    the least ``(a, h)``.
    """
    A, B = F.source, F.target
    objs = [(a, h) for a in A.sorted_objects() for h in B.hom(F.obj[a], b)]
    if prefer_strict:
        objs.sort(key=lambda t: (not B.is_identity(t[1]), t))
    for a, h in objs:
        ok = True
        for a2, h2 in objs:
            n = sum(1 for f in A.hom(a2, a) if B.comp(h, F.mor[f]) == h2)
            if n != 1:
                ok = False
                break
        if ok:
            return a, h
    return None


def search_adjoint(F, side="right", prefer_strict=True):
    """Find an adjoint of ``F`` from terminal objects of the commas ``F | b``
    (``side='right'``) or, dually, initial objects of ``b | F``."""
    if side == "left":
        from .fincat import opposite, opposite_functor
        Aop, Bop = opposite(F.source).category, opposite(F.target).category
        Fop = opposite_functor(F, Aop, Bop)
        res = search_adjoint(Fop, "right", prefer_strict)
        if not res:
            return res
        op = res.adjunction
        A, B = F.source, F.target
        G = CatFunctor(B, A, op.right.obj, op.right.mor, "L(%s)" % F.name)
        GF = compose_functors(F, G)
        FG = compose_functors(G, F)
        unit = NatTransformation(identity_functor(B), GF, op.counit.components, "unit")
        counit = NatTransformation(FG, identity_functor(A), op.unit.components, "counit")
        return AdjointSearch(Adjunction(G, F, unit, counit, "L(%s) -| %s" % (F.name, F.name)))
    if side != "right":
        raise ValueError("side must be 'left' or 'right'")
    B = F.target
    U_obj, eps = {}, {}
    for b in B.sorted_objects():
        t = _comma_terminal(F, b, prefer_strict)
        if t is None:
            return AdjointSearch(None, b)
        U_obj[b], eps[b] = t
    adj = _assemble(F, U_obj, eps, "%s -| R(%s)" % (F.name, F.name))
    report = check_adjunction(adj)
    assert report.ok, report.failures
    return AdjointSearch(adj)


def has_ff_right_adjoint(F):
    res = search_adjoint(F, "right")
    return bool(res) and check_adjunction(res.adjunction).counit_invertible


def characterize_essential_image(adj):
    """Objects of ``A`` with invertible unit, checked against the essential
    image of the (fully faithful) right adjoint."""
    rep = check_adjunction(adj)
    if not rep.counit_invertible:
        raise CounitNotInvertible("counit not invertible at %s"
                                  % non_invertible_components(adj.counit))
    A = adj.A
    by_unit = sorted(a for a in A.objects if A.is_iso(adj.eta(a)))
    image = set(adj.right.obj.values())
    by_search = sorted(a for a in A.objects if any(A.isomorphic(a, u) for u in image))
    return {"objects": by_unit, "agrees": by_unit == by_search, "essential_image": by_search}


# Hom-action equivalence.

class HomEquivalence:
    def __init__(self, phi, psi, left_side, right_side, inverse_pair):
        self.phi = phi
        self.psi = psi
        self.left_side = left_side
        self.right_side = right_side
        self.inverse_pair = inverse_pair


def hom_action_equivalence(adj):
    """Build ``A x_B Arr(B)`` (pairs ``(a, h: F a -> b)``) and
    ``Arr(A) x_A B`` (pairs ``(k: a -> U b, b)``) with the transposition
    functors between them, and check they are mutually inverse."""
    F, U = adj.left, adj.right
    A, B = adj.A, adj.B
    arrA, arrB = arrow(A), arrow(B)
    P = pullback(F, arrB["ev0"])
    Q = pullback(arrA["ev1"], U)
    Pc, Qc = P.category, Q.category
    phi_obj, phi_mor = {}, {}
    for x, (a, h) in P.extra["obj_pieces"].items():
        b = B.tgt(h)
        k = A.comp(U.mor[h], adj.eta(a))
        phi_obj[x] = pair_id(k, b)
    for m, (v, sq) in P.extra["pieces"].items():
        h, h2 = arrB.category.morphisms[sq]
        _, w = arrB.extra["pieces"][sq]
        a = A.src(v)
        a2 = A.tgt(v)
        k = A.comp(U.mor[h], adj.eta(a))
        k2 = A.comp(U.mor[h2], adj.eta(a2))
        phi_mor[m] = pair_id(pair_id(k, v, U.mor[w], k2), w)
    psi_obj, psi_mor = {}, {}
    for y, (k, b) in Q.extra["obj_pieces"].items():
        a = A.src(k)
        psi_obj[y] = pair_id(a, B.comp(adj.eps(b), F.mor[k]))
    for m, (sq, w) in Q.extra["pieces"].items():
        k, k2 = arrA.category.morphisms[sq]
        v, _ = arrA.extra["pieces"][sq]
        b, b2 = B.morphisms[w]
        h = B.comp(adj.eps(b), F.mor[k])
        h2 = B.comp(adj.eps(b2), F.mor[k2])
        psi_mor[m] = pair_id(v, pair_id(h, F.mor[v], w, h2))
    ok = all(y in Qc.morphisms or y in set(Qc.objects) for y in phi_obj.values())
    ok = ok and all(m in Qc.morphisms for m in phi_mor.values())
    ok = ok and all(m in Pc.morphisms for m in psi_mor.values())
    phi = CatFunctor(Pc, Qc, phi_obj, phi_mor, "phi")
    psi = CatFunctor(Qc, Pc, psi_obj, psi_mor, "psi")
    if ok:
        ok = (all(psi_obj.get(phi_obj[x]) == x for x in Pc.objects)
              and all(phi_obj.get(psi_obj[y]) == y for y in Qc.objects)
              and all(psi_mor.get(phi_mor[m]) == m for m in Pc.morphisms)
              and all(phi_mor.get(psi_mor[m]) == m for m in Qc.morphisms))
    return HomEquivalence(phi, psi, P, Q, ok)


# Mates.

def mate_between_adjoints(adj1, adj2, sigma, side="right"):
    """Mate correspondence between two adjunctions ``F1 -| U1`` and
    ``F2 -| U2`` with the same endpoints.

    ``side='right'``: ``sigma: U1 => U2`` gives ``F2 => F1`` with components
    ``eps2_{F1 a} . F2(sigma_{F1 a}) . F2(eta1_a)``.
    ``side='left'``: ``sigma: F1 => F2`` gives ``U2 => U1`` with components
    ``U1(eps2_b) . U1(sigma_{U2 b}) . eta1_{U2 b}``.
    """
    A, B = adj1.A, adj1.B
    F1, U1, F2, U2 = adj1.left, adj1.right, adj2.left, adj2.right
    if side == "right":
        comps = {a: B.comp(adj2.eps(F1.obj[a]), F2.mor[sigma[F1.obj[a]]], F2.mor[adj1.eta(a)])
                 for a in A.objects}
        return NatTransformation(F2, F1, comps, "mate(%s)" % sigma.name)
    comps = {b: A.comp(U1.mor[adj2.eps(b)], U1.mor[sigma[U2.obj[b]]], adj1.eta(U2.obj[b]))
             for b in B.objects}
    return NatTransformation(U2, U1, comps, "mate(%s)" % sigma.name)


class CommutingSquare:
    """A square ``top: X -> A``, ``left: X -> Y``, ``right: A -> B``,
    ``bottom: Y -> B`` with an invertible filler ``right.top => bottom.left``
    (identity when omitted).  Adjunctions may be attached to the vertical
    edges; each vertical functor must be either the left or the right
    functor of its adjunction, and both must be on the same side."""

    def __init__(self, top, left, right, bottom, filler=None, left_adj=None, right_adj=None):
        self.top, self.left, self.right, self.bottom = top, left, right, bottom
        if filler is None:
            s = compose_functors(right, top)
            filler = identity_transformation(s)
            filler.target = compose_functors(bottom, left)
        self.filler = filler
        self.left_adj = left_adj
        self.right_adj = right_adj

    def transpose(self, top_adj=None, bottom_adj=None):
        inv = {x: self.right.target.inverse(c) for x, c in self.filler.components.items()}
        filler = NatTransformation(self.filler.target, self.filler.source, inv, "inv")
        return CommutingSquare(self.left, self.top, self.bottom, self.right, filler,
                               top_adj, bottom_adj)

    def commutes_strictly(self):
        return compose_functors(self.right, self.top) == compose_functors(self.bottom, self.left)


def square_mate(sq):
    """Mate of a square whose vertical edges carry adjunctions.

    If the vertical functors ``P`` (left edge) and ``Q`` (right edge) are
    left adjoints with right adjoints ``P'`` and ``Q'``, the mate is
    ``top.P' => Q'.bottom``.  If they are right adjoints with left adjoints
    ``P'`` and ``Q'``, the mate is ``Q'.bottom => top.P'``.
    Returns ``(transformation, invertible)``.
    """
    if sq.left_adj is None or sq.right_adj is None:
        raise MissingAdjunction("both vertical edges need an attached adjunction")
    P, Q, H, K = sq.left, sq.right, sq.top, sq.bottom
    pa, qa = sq.left_adj, sq.right_adj
    alpha = sq.filler
    A = H.target
    Y = P.target
    if pa.left == P and qa.left == Q:
        P2, Q2 = pa.right, qa.right
        comps = {}
        for y in Y.objects:
            x = P2.obj[y]
            comps[y] = A.comp(Q2.mor[K.mor[pa.eps(y)]], Q2.mor[alpha[x]], qa.eta(H.obj[x]))
        src = compose_functors(H, P2)
        tgt = compose_functors(Q2, K)
    elif pa.right == P and qa.right == Q:
        P2, Q2 = pa.left, qa.left
        B = Q.target
        comps = {}
        for y in Y.objects:
            x = P2.obj[y]
            inv = B.inverse(alpha[x])
            if inv is None:
                raise MissingAdjunction("square filler is not invertible at %s" % x)
            comps[y] = A.comp(qa.eps(H.obj[x]), Q2.mor[inv], Q2.mor[K.mor[pa.eta(y)]])
        src = compose_functors(Q2, K)
        tgt = compose_functors(H, P2)
    else:
        raise MissingAdjunction("vertical edges are not both left or both right adjoints "
                                "of their attached adjunctions")
    t = NatTransformation(src, tgt, comps, "mate")
    return t, not non_invertible_components(t)


def mate(kind, *args, **kw):
    """Dispatcher: ``square_vertical`` (a ``CommutingSquare``),
    ``square_horizontal`` (square plus adjunctions for top and bottom) or
    ``between_adjoints`` (two adjunctions and a transformation)."""
    if kind == "square_vertical":
        return square_mate(args[0])
    if kind == "square_horizontal":
        sq, top_adj, bottom_adj = args
        return square_mate(sq.transpose(top_adj, bottom_adj))
    if kind == "between_adjoints":
        t = mate_between_adjoints(*args, **kw)
        return t, not non_invertible_components(t)
    raise ValueError("unknown mate kind %r" % kind)


def double_mate(alpha, F0, F1, G0, G1):
    """Compare the two orders of adjointing a square.

    ``alpha: F1.V0 => V1.F0`` for a square ``F0: A -> B``, ``V0: A -> C``,
    ``V1: B -> D``, ``F1: C -> D``; ``F0, F1`` are adjunctions ``Fi -| Ui``,
    ``G0, G1`` are adjunctions ``Gi -| Vi``.  Returns a dict with the
    vertical mate ``beta: G1.F1 => F0.G0``, the horizontal mate
    ``gamma: V0.U0 => U1.V1``, their invertibility, the mate of
    ``beta^-1`` in the horizontal direction and of ``gamma^-1`` in the
    vertical direction (both ``G0.U1 => U0.G1``), and whether they agree.
    """
    f0, u0, f1, u1 = F0.left, F0.right, F1.left, F1.right
    g0, v0, g1, v1 = G0.left, G0.right, G1.left, G1.right
    A, B, C, D = f0.source, f0.target, v0.target, v1.target
    beta = {}
    for c in C.objects:
        a = g0.obj[c]
        beta[c] = B.comp(G1.eps(f0.obj[a]), g1.mor[alpha[a]], g1.mor[f1.mor[G0.eta(c)]])
    gamma = {}
    for b in B.objects:
        a = u0.obj[b]
        gamma[b] = C.comp(u1.mor[v1.mor[F0.eps(b)]], u1.mor[alpha[a]], F1.eta(v0.obj[a]))
    beta_inv = {c: B.inverse(m) for c, m in beta.items()}
    gamma_inv = {b: C.inverse(m) for b, m in gamma.items()}
    out = {
        "beta": beta, "gamma": gamma,
        "beta_invertible": all(m is not None for m in beta_inv.values()),
        "gamma_invertible": all(m is not None for m in gamma_inv.values()),
    }
    if not (out["beta_invertible"] and out["gamma_invertible"]):
        out["agree"] = None
        return out
    via_beta, via_gamma = {}, {}
    for d in D.objects:
        c = u1.obj[d]
        a = g0.obj[c]
        via_beta[d] = A.comp(u0.mor[g1.mor[F1.eps(d)]], u0.mor[beta_inv[c]], F0.eta(a))
        b = g1.obj[d]
        via_gamma[d] = A.comp(G0.eps(u0.obj[b]), g0.mor[gamma_inv[b]], g0.mor[u1.mor[G1.eta(d)]])
    out["via_beta"] = via_beta
    out["via_gamma"] = via_gamma
    out["agree"] = via_beta == via_gamma
    return out


# Arrow-category adjunctions.

def arrow_adjunctions(C, arr=None):
    """The canonical ``diag -| ev0`` and ``ev1 -| diag`` on ``Arr(C)``."""
    arr = arr or arrow(C)
    Ar = arr.category
    ev0, ev1, diag = arr["ev0"], arr["ev1"], arr["diag"]
    idC, idA = identity_functor(C), identity_functor(Ar)
    # diag -| ev0: unit is the identity, counit at f: a -> b is (id_a, f).
    unit0 = NatTransformation(idC, compose_functors(ev0, diag),
                              {x: C.identity[x] for x in C.objects}, "unit")
    counit0 = NatTransformation(compose_functors(diag, ev0), idA,
                                {f: pair_id(C.identity[C.src(f)], C.identity[C.src(f)], f, f)
                                 for f in Ar.objects}, "counit")
    lower = Adjunction(diag, ev0, unit0, counit0, "diag -| ev0")
    # ev1 -| diag: unit at f: a -> b is (f, id_b), counit is the identity.
    unit1 = NatTransformation(idA, compose_functors(diag, ev1),
                              {f: pair_id(f, f, C.identity[C.tgt(f)], C.identity[C.tgt(f)])
                               for f in Ar.objects}, "unit")
    counit1 = NatTransformation(compose_functors(ev1, diag), idC,
                                {x: C.identity[x] for x in C.objects}, "counit")
    upper = Adjunction(ev1, diag, unit1, counit1, "ev1 -| diag")
    return lower, upper


# Pullbacks of adjunctions.

class PullbackLookup:
    """Inverse of the comparison ``X -> Y x_B A`` of a strict pullback
    square, as dictionaries keyed by pairs."""

    def __init__(self, sq):
        H, V, U, K = sq.top, sq.left, sq.right, sq.bottom
        X, Y, A = H.source, V.target, H.target
        if not sq.commutes_strictly():
            raise NotAPullback("square does not commute")
        self.obj, self.mor = {}, {}
        for x in X.objects:
            self.obj.setdefault((V.obj[x], H.obj[x]), []).append(x)
        for m in X.morphisms:
            self.mor.setdefault((V.mor[m], H.mor[m]), []).append(m)
        pairs_o = {(y, a) for y in Y.objects for a in A.objects if K.obj[y] == U.obj[a]}
        pairs_m = {(v, f) for v in Y.morphisms for f in A.morphisms if K.mor[v] == U.mor[f]}
        for table, pairs, what in ((self.obj, pairs_o, "object"), (self.mor, pairs_m, "morphism")):
            if set(table) != pairs:
                raise NotAPullback("%s pairs not matched by the corner" % what)
            dup = [k for k, v in table.items() if len(v) > 1]
            if dup:
                raise NotAPullback("%s pair %s has several preimages" % (what, dup[0]), *dup[0])
        self.obj = {k: v[0] for k, v in self.obj.items()}
        self.mor = {k: v[0] for k, v in self.mor.items()}


def check_pullback_square(sq):
    """True when ``sq`` is a strict pullback of finite categories."""
    try:
        PullbackLookup(sq)
    except NotAPullback:
        return False
    return True


class PullbackAdjunction:
    def __init__(self, adjunction, construction, certificate):
        self.adjunction = adjunction
        self.construction = construction
        self.certificate = certificate


def _from_search(V, side):
    res = search_adjoint(V, side)
    if not res:
        raise HypothesisFailed("no adjoint found for the pulled-back functor", res.failing_object)
    return res.adjunction


def _pullback_ff(sq, adj):
    """``sq``: top ``H: X -> A``, left ``V: X -> Y``, right ``U: A -> B``,
    bottom ``K: Y -> B``; ``adj``: ``F -| U`` with ``F`` fully faithful."""
    H, V, U, K = sq.top, sq.left, sq.right, sq.bottom
    if adj.right != U:
        raise HypothesisFailed("attached adjunction is not for the right edge")
    if not check_adjunction(adj).unit_invertible:
        raise HypothesisFailed("left adjoint of the right edge is not fully faithful")
    look = PullbackLookup(sq)
    F, A = adj.left, adj.A
    X, Y = V.source, V.target
    strict = all(A.is_identity(adj.eta(b)) for b in A.objects)
    if strict:
        G = CatFunctor(Y, X, {y: look.obj[(y, F.obj[K.obj[y]])] for y in Y.objects},
                       {v: look.mor[(v, F.mor[K.mor[v]])] for v in Y.morphisms}, "G")
        unit = NatTransformation(identity_functor(Y), compose_functors(V, G),
                                 {y: Y.identity[y] for y in Y.objects}, "unit")
        counit = {x: look.mor[(Y.identity[V.obj[x]], adj.eps(H.obj[x]))] for x in X.objects}
        counit = NatTransformation(compose_functors(G, V), identity_functor(X), counit, "counit")
        new = Adjunction(G, V, unit, counit, "G -| V")
        construction = "componentwise"
    else:
        new = _from_search(V, "left")
        construction = "search"
    rep = check_adjunction(new)
    t, inv = square_mate(CommutingSquare(H, V, U, K, left_adj=new, right_adj=adj))
    return PullbackAdjunction(new, construction, {
        "adjunction": rep.ok, "fully_faithful": rep.unit_invertible,
        "adjointable": inv, "mate": t})


def _pullback_over_fibration(sq, adj, analysis):
    """``sq``: top ``V: Y -> X``, left ``q: Y -> A``, right ``p: X -> B``
    (a cocartesian fibration), bottom ``U: A -> B``; ``adj``: ``F -| U``."""
    from .fibration import FibrationAnalysis, check_cocartesian_functor
    V, q, p, U = sq.top, sq.left, sq.right, sq.bottom
    if adj.right != U:
        raise HypothesisFailed("attached adjunction is not for the bottom edge")
    if analysis is None:
        analysis = FibrationAnalysis(p)
    if analysis.p != p or not analysis.is_fibration:
        raise HypothesisFailed("right edge is not a cocartesian fibration")
    base_rep = check_adjunction(adj)
    if not base_rep.ok:
        raise HypothesisFailed("bottom adjunction fails triangle identities")
    look = PullbackLookup(CommutingSquare(V, q, p, U))
    F = adj.left
    X, Y, B = p.source, q.source, p.target
    lift = {x: analysis.lift(x, adj.eta(p.obj[x])) for x in X.objects}
    G_obj = {x: look.obj[(F.obj[p.obj[x]], X.tgt(lift[x]))] for x in X.objects}
    G_mor = {}
    for w, (x, x2) in X.morphisms.items():
        Fw = F.mor[p.mor[w]]
        u = analysis.fill(lift[x], X.comp(lift[x2], w), U.mor[Fw])
        G_mor[w] = look.mor[(Fw, u)]
    G = CatFunctor(X, Y, G_obj, G_mor, "G")
    unit = NatTransformation(identity_functor(X), compose_functors(V, G), lift, "unit")
    counit = {}
    for y in Y.objects:
        a, x = q.obj[y], V.obj[y]
        l = analysis.lift(x, adj.eta(U.obj[a]))
        e = adj.eps(a)
        counit[y] = look.mor[(e, analysis.fill(l, X.identity[x], U.mor[e]))]
    counit = NatTransformation(compose_functors(G, V), identity_functor(Y), counit, "counit")
    new = Adjunction(G, V, unit, counit, "G -| V")
    rep = check_adjunction(new)
    flipped = CommutingSquare(V, q, p, U).transpose(new, adj)
    t, inv = square_mate(flipped)
    q_an = FibrationAnalysis(q)
    cert = {"adjunction": rep.ok, "adjointable": inv, "mate": t,
            "pullback_is_fibration": q_an.is_fibration}
    if q_an.is_fibration:
        cert["V_cocartesian_over_U"] = check_cocartesian_functor(V, q_an, analysis, U)[0]
        cert["G_cocartesian_over_F"] = check_cocartesian_functor(G, analysis, q_an, F)[0]
    cert["counit_transfer"] = (not base_rep.counit_invertible) or rep.counit_invertible
    return PullbackAdjunction(new, "componentwise", cert)


def _pullback_cube(cube):
    """``cube``: dict with pullbacks ``pbA`` of ``A0 -> A2 <- A1`` and ``pbB``
    of ``B0 -> B2 <- B1`` and adjunctions ``adj0, adj1, adj2`` for the
    vertical functors ``F_i: A_i -> B_i``."""
    pbA, pbB = cube["pbA"], cube["pbB"]
    adjs = [cube["adj0"], cube["adj1"], cube["adj2"]]
    a0, a1 = pbA.extra["legs"]
    b0, b1 = pbB.extra["legs"]
    faces = {}
    for name, top, bottom, k in (("left", a0, b0, 0), ("back", a1, b1, 1)):
        sq = CommutingSquare(top, adjs[k].left, adjs[2].left, bottom,
                             left_adj=adjs[k], right_adj=adjs[2])
        if not sq.commutes_strictly():
            raise HypothesisFailed("%s face does not commute" % name)
        faces[name] = square_mate(sq)
    for name, (t, inv) in faces.items():
        if not inv:
            raise HypothesisFailed("%s face is not adjointable" % name)
    F = pullback_functor(pbA, pbB, adjs[0].left, adjs[1].left)
    A, B = pbA.category, pbB.category
    strict = all(all(t.codomain.is_identity(c) for c in t.components.values())
                 for t, _ in faces.values())
    if strict:
        U = pullback_functor(pbB, pbA, adjs[0].right, adjs[1].right)
        unit = {x: pair_id(adjs[0].eta(u), adjs[1].eta(v))
                for x, (u, v) in pbA.extra["obj_pieces"].items()}
        counit = {x: pair_id(adjs[0].eps(u), adjs[1].eps(v))
                  for x, (u, v) in pbB.extra["obj_pieces"].items()}
        new = Adjunction(F, U,
                         NatTransformation(identity_functor(A), compose_functors(U, F), unit, "unit"),
                         NatTransformation(compose_functors(F, U), identity_functor(B), counit, "counit"),
                         "F -| U")
        construction = "componentwise"
    else:
        new = _from_search(F, "right")
        construction = "search"
    rep = check_adjunction(new)
    cert = {"adjunction": rep.ok}
    for name, k, pa, pb_ in (("front", 0, pbA["pr0"], pbB["pr0"]), ("right", 1, pbA["pr1"], pbB["pr1"])):
        sq = CommutingSquare(pa, F, adjs[k].left, pb_, left_adj=new, right_adj=adjs[k])
        cert[name + "_adjointable"] = square_mate(sq)[1]
    reps = [check_adjunction(a) for a in adjs]
    if all(r.unit_invertible for r in reps):
        cert["left_ff_transfer"] = rep.unit_invertible
    if all(r.counit_invertible for r in reps):
        cert["right_ff_transfer"] = rep.counit_invertible
    return PullbackAdjunction(new, construction, cert)


def pullback_adjunction(square, variant, adjunction=None, fibration=None):
    """Pull an adjunction back along a strict pullback square.

    ``ff_left_adjoint``: the right edge has the fully faithful left adjoint
    ``adjunction``; returns ``G -| V`` for the left edge.
    ``over_cocartesian_base``: the right edge is a cocartesian fibration and
    the bottom edge has the left adjoint ``adjunction``; returns ``G -| V``
    for the top edge.
    ``cube``: ``square`` is the dict described in ``_pullback_cube``.
    """
    if variant == "ff_left_adjoint":
        return _pullback_ff(square, adjunction)
    if variant == "over_cocartesian_base":
        return _pullback_over_fibration(square, adjunction, fibration)
    if variant == "cube":
        return _pullback_cube(square)
    raise ValueError("unknown variant %r" % variant)
