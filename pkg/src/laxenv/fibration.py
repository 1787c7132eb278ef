"""Cocartesian fibrations between finite categories.

Cocartesianness is decided elementwise: ``f: x -> y`` is cocartesian for
``p`` when, for every ``z``, precomposition with ``f`` together with ``p``
identifies ``Hom(y, z)`` with the pairs ``(g: x -> z, h: p y -> p z)`` such
that ``p g = h . p f``.
"""
from collections import Counter

from . import config
from .adjunction import (Adjunction, CommutingSquare, _assemble, check_adjunction, search_adjoint,
                         square_mate)
from .errors import (FiberAdjointMissing, HypothesisFailed, NoLift, NotOverBase, SizeExceeded,
                     ValidationError)
from .fincat import (CatFunctor, FinCategory, NatTransformation, arrow, arrow_functor,
                     compose_functors, enumerate_functors, enumerate_transformations, fiber,
                     functor_failures, identity_functor, pair_id, pairing, pullback,
                     pullback_functor, validate_category)
from .fincat.functor import non_invertible_components
from .fincat.category import LazyComposition


class CocartesianStatus:
    def __init__(self, flag, witness=None):
        self.flag = flag
        self.witness = witness

    def __bool__(self):
        return self.flag

    def __repr__(self):
        return "CocartesianStatus(%s, %s)" % (self.flag, self.witness)


def cocartesian_status(p, f):
    """Elementwise universal property of ``f``; the witness names the first
    object ``z`` where the filler is missing or not unique."""
    X, B = p.source, p.target
    x, y = X.morphisms[f]
    pf = p.mor[f]
    py = p.obj[y]
    for z in X.sorted_objects():
        seen = {}
        for u in X.hom(y, z):
            key = (X.comp(u, f), p.mor[u])
            if key in seen:
                return CocartesianStatus(False, ("non-unique filler", z, seen[key], u))
            seen[key] = u
        hs = B.hom(py, p.obj[z])
        by_image = {}
        for h in hs:
            by_image.setdefault(B.comp(h, pf), []).append(h)
        for g in X.hom(x, z):
            for h in by_image.get(p.mor[g], ()):
                if (g, h) not in seen:
                    return CocartesianStatus(False, ("missing filler", z, g, h))
    return CocartesianStatus(True)


class FibrationAnalysis:
    """Lift table of a functor ``p``.

    ``lifts[(x, k)]`` is the chosen cocartesian lift of base morphism ``k``
    at ``x``; ``missing`` lists pairs without one.  Subclasses may supply a
    canonical cleavage and a faster cocartesianness test.
    """

    def __init__(self, p, cleavage=None):
        self.p = p
        self._status = {}
        self._cleavage = cleavage
        self.lifts = {}
        self.missing = []
        self._build()

    @property
    def total(self):
        return self.p.source

    @property
    def base(self):
        return self.p.target

    def is_cocartesian(self, f):
        if f not in self._status:
            self._status[f] = cocartesian_status(self.p, f).flag
        return self._status[f]

    def _candidates(self, x, k):
        X, p = self.total, self.p
        pool = sorted(f for f in X.out_of(x) if p.mor[f] == k)
        first = []
        if self._cleavage is not None:
            c = self._cleavage(x, k)
            if c is not None:
                first.append(c)
        if self.base.is_identity(k):
            first.append(X.identity[x])
        return first + [f for f in pool if f not in first]

    def _build(self):
        X, B, p = self.total, self.base, self.p
        for x in X.sorted_objects():
            for k in B.out_of(p.obj[x]):
                for f in self._candidates(x, k):
                    if self.is_cocartesian(f):
                        self.lifts[(x, k)] = f
                        break
                else:
                    self.missing.append((x, k))

    @property
    def is_fibration(self):
        return not self.missing

    def __bool__(self):
        return self.is_fibration

    def lift(self, x, k):
        try:
            return self.lifts[(x, k)]
        except KeyError:
            raise NoLift("no cocartesian lift of %s at %s" % (k, x), x, k) from None

    def push(self, x, k):
        """Target of the chosen lift."""
        return self.total.tgt(self.lift(x, k))

    def fill(self, f, g, h):
        """The unique ``u`` over ``h`` with ``u . f = g`` (``f`` cocartesian)."""
        X, p = self.total, self.p
        for u in X.hom(X.tgt(f), X.tgt(g)):
            if p.mor[u] == h and X.comp(u, f) == g:
                return u
        raise NoLift("no filler for %s through %s over %s" % (g, f, h), f, g, h)

    def pushforward(self, k):
        """The transition functor ``k_!`` between fibers of ``p``."""
        B = self.base
        i, j = B.morphisms[k]
        Ai, _ = fiber(self.p, i)
        Aj, _ = fiber(self.p, j)
        idj = B.identity[j]
        obj = {a: self.push(a, k) for a in Ai.objects}
        mor = {}
        for phi, (a, a2) in Ai.morphisms.items():
            g = self.total.comp(self.lift(a2, k), phi)
            mor[phi] = self.fill(self.lift(a, k), g, idj)
        return CatFunctor(Ai, Aj, obj, mor, "push(%s)" % k)


def check_cocartesian_fibration(p, cleavage=None):
    return FibrationAnalysis(p, cleavage)


def cocartesian_lift(analysis, x, h):
    return analysis.lift(x, h)


def vertical_iso_between_lifts(analysis, f1, f2):
    """The unique vertical isomorphism ``u`` with ``u . f1 = f2``."""
    X, B, p = analysis.total, analysis.base, analysis.p
    y2 = X.tgt(f2)
    idb = B.identity[p.obj[y2]]
    hits = [u for u in X.hom(X.tgt(f1), y2) if p.mor[u] == idb and X.comp(u, f1) == f2]
    if len(hits) != 1 or not X.is_iso(hits[0]):
        return None
    return hits[0]


def check_cocartesian_functor(F, p_analysis, q_analysis, G=None):
    """Does ``F`` (over ``G``) send chosen ``p``-lifts to ``q``-cocartesian
    morphisms?  Returns ``(flag, counterexample)``."""
    p, q = p_analysis.p, q_analysis.p
    if G is None:
        G = identity_functor(p.target)
    if compose_functors(q, F) != compose_functors(G, p):
        raise HypothesisFailed("square does not commute")
    for (x, k), f in sorted(p_analysis.lifts.items()):
        if not q_analysis.is_cocartesian(F.mor[f]):
            return False, (x, k, f)
    return True, None


def check_left_cancellation(analysis, first=None):
    """For cocartesian ``f`` and composable ``g``: ``g`` cocartesian iff
    ``g . f`` is.  ``first`` overrides the set of ``f`` taken to be
    cocartesian.  Returns the list of counterexamples."""
    X = analysis.total
    bad = []
    for f in sorted(X.morphisms):
        if f not in first if first is not None else not analysis.is_cocartesian(f):
            continue
        for g in X.out_of(X.tgt(f)):
            if analysis.is_cocartesian(g) != analysis.is_cocartesian(X.comp(g, f)):
                bad.append((f, g))
    return bad


def check_iso_lifts(analysis, claimed=None):
    """Cocartesian morphisms over isomorphisms must be isomorphisms, and
    every isomorphism is cocartesian.  ``claimed`` overrides the set of
    morphisms taken to be cocartesian."""
    X, B, p = analysis.total, analysis.base, analysis.p

    def cocart(f):
        return f in claimed if claimed is not None else analysis.is_cocartesian(f)
    bad = [f for f in sorted(X.morphisms) if B.is_iso(p.mor[f]) and cocart(f) and not X.is_iso(f)]
    bad += [f for f in sorted(X.morphisms) if X.is_iso(f) and not cocart(f)]
    return bad


def definition_consistency(p):
    """Compare the elementwise test with the adjoint formulation: ``p`` is
    a cocartesian fibration iff ``(ev0, p_*): Arr(X) -> X x_B Arr(B)`` has a
    fully faithful left adjoint."""
    X, B = p.source, p.target
    ax, ab = arrow(X), arrow(B)
    pb = pullback(p, ab["ev0"])
    p_star = arrow_functor(ax, ab, p)
    comparison = pairing(pb, ax["ev0"], p_star, "(ev0,p_*)")
    res = search_adjoint(comparison, "left")
    adjoint_form = bool(res) and check_adjunction(res.adjunction).unit_invertible
    elementwise = FibrationAnalysis(p).is_fibration
    return {"elementwise": elementwise, "adjoint": adjoint_form, "agree": elementwise == adjoint_form}


# Grothendieck construction.

class CategoryValuedFunctor:
    """A strict functor from ``base`` into categories, given by fibers and
    transition functors indexed by base morphisms."""

    def __init__(self, base, fibers, transitions, name=""):
        self.base = base
        self.fibers = dict(fibers)
        self.transitions = dict(transitions)
        self.name = name

    def validate(self):
        I = self.base
        for i in I.objects:
            validate_category(self.fibers[i])
        for k, (i, j) in I.morphisms.items():
            T = self.transitions[k]
            if T.source != self.fibers[i] or T.target != self.fibers[j]:
                raise ValidationError("transition %s has wrong endpoints" % k, k)
            bad = functor_failures(T)
            if bad:
                raise ValidationError("transition %s: %s" % (k, bad[0]), k)
        for i in I.objects:
            T = self.transitions[I.identity[i]]
            if T.obj != {x: x for x in self.fibers[i].objects} or \
                    T.mor != {f: f for f in self.fibers[i].morphisms}:
                raise ValidationError("transition of identity at %s is not the identity" % i, i)
        for (l, k), lk in I.composition.items():
            Tl, Tk, Tlk = self.transitions[l], self.transitions[k], self.transitions[lk]
            if any(Tl.obj[Tk.obj[x]] != Tlk.obj[x] for x in Tk.source.objects) or \
                    any(Tl.mor[Tk.mor[f]] != Tlk.mor[f] for f in Tk.source.morphisms):
                raise ValidationError("transitions not functorial at %s . %s" % (l, k), l, k)
        return self


class GrothendieckFibration(FibrationAnalysis):
    """Total category of a category-valued functor with its projection.

    Objects ``<i,x>``; morphisms ``<k,x,phi>`` for ``k: i -> j`` and
    ``phi: k_!(x) -> x'`` in the fiber over ``j``.
    """

    def __init__(self, functor, total, p, pieces, obj_pieces):
        self.functor = functor
        self.pieces = pieces
        self.obj_pieces = obj_pieces
        super().__init__(p, cleavage=self._canonical)

    def _canonical(self, x, k):
        _, a = self.obj_pieces[x]
        T = self.functor.transitions[k]
        return pair_id(k, a, T.target.identity[T.obj[a]])

    def is_cocartesian(self, f):
        k, a, phi = self.pieces[f]
        j = self.base.tgt(k)
        return self.functor.fibers[j].is_iso(phi)

    def fiber_inclusion(self, i):
        Fi = self.functor.fibers[i]
        idi = self.base.identity[i]
        return CatFunctor(Fi, self.total, {x: pair_id(i, x) for x in Fi.objects},
                          {phi: pair_id(idi, Fi.src(phi), phi) for phi in Fi.morphisms},
                          "incl_" + i)


def grothendieck_construction(functor, cap=None, check=True):
    if check:
        functor.validate()
    I, fibers, T = functor.base, functor.fibers, functor.transitions
    n = sum(len(fibers[i].objects) for i in I.objects)
    limit = config.cap("objects", cap)
    if n > limit:
        raise SizeExceeded("total category would have %d objects (cap %d)" % (n, limit))
    objects, obj_pieces = [], {}
    for i in I.sorted_objects():
        for x in fibers[i].sorted_objects():
            oid = pair_id(i, x)
            objects.append(oid)
            obj_pieces[oid] = (i, x)
    morphisms, pieces = {}, {}
    for k, (i, j) in sorted(I.morphisms.items()):
        Tk = T[k]
        Fj = fibers[j]
        for x in fibers[i].sorted_objects():
            for x2 in Fj.sorted_objects():
                for phi in Fj.hom(Tk.obj[x], x2):
                    m = pair_id(k, x, phi)
                    morphisms[m] = (pair_id(i, x), pair_id(j, x2))
                    pieces[m] = (k, x, phi)
    identity = {pair_id(i, x): pair_id(I.identity[i], x, fibers[i].identity[x])
                for i in I.objects for x in fibers[i].objects}
    def compose(m2, m1):
        k, x, phi = pieces[m1]
        l, _, psi = pieces[m2]
        target = fibers[I.tgt(l)]
        return pair_id(I.comp(l, k), x, target.comp(psi, T[l].mor[phi]))
    composition = LazyComposition(morphisms, compose)
    total = FinCategory(objects, morphisms, identity, composition, "int(%s)" % functor.name)
    p = CatFunctor(total, I, {o: obj_pieces[o][0] for o in objects},
                   {m: pieces[m][0] for m in morphisms}, "p")
    return GrothendieckFibration(functor, total, p, pieces, obj_pieces)


def constant_category_functor(I, C):
    from .fincat import identity_functor as idf
    ident = idf(C)
    return CategoryValuedFunctor(I, {i: C for i in I.objects},
                                 {k: ident for k in I.morphisms}, "const")


# Free cocartesian fibrations.

class FreeFibration:
    def __init__(self, G, pb, arr, q, analysis, delta, adjunction):
        self.G = G
        self.pb = pb
        self.arr = arr
        self.q = q
        self.analysis = analysis
        self.delta = delta
        self.adjunction = adjunction


def free_cocartesian_fibration(G, cap=None):
    """``ev1 . pr1: C x_Y Arr(Y) -> Y`` with ``delta_G -| pr0``."""
    C, Y = G.source, G.target
    arr = arrow(Y, cap)
    pb = pullback(G, arr["ev0"], cap)
    P = pb.category
    q = compose_functors(arr["ev1"], pb["pr1"])
    q.name = "q"

    def post(x, k):
        c, h = pb.extra["obj_pieces"][x]
        kh = Y.comp(k, h)
        return pair_id(C.identity[c], pair_id(h, Y.identity[Y.src(h)], k, kh))

    analysis = FibrationAnalysis(q, cleavage=post)
    diag = arr["diag"]
    delta = CatFunctor(C, P, {c: pair_id(c, Y.identity[G.obj[c]]) for c in C.objects},
                       {f: pair_id(f, diag.mor[G.mor[f]]) for f in C.morphisms}, "delta_G")
    pr0 = pb["pr0"]
    unit = NatTransformation(identity_functor(C), compose_functors(pr0, delta),
                             {c: C.identity[c] for c in C.objects}, "unit")
    counit = {}
    for x, (c, h) in pb.extra["obj_pieces"].items():
        Gc = G.obj[c]
        counit[x] = pair_id(C.identity[c], pair_id(Y.identity[Gc], Y.identity[Gc], h, h))
    counit = NatTransformation(compose_functors(delta, pr0), identity_functor(P), counit, "counit")
    adj = Adjunction(delta, pr0, unit, counit, "delta_G -| pr0")
    return FreeFibration(G, pb, arr, q, analysis, delta, adj)


def functors_over(source, over_source, target_analysis, cap=None):
    """Functors ``L: source -> X`` with ``p . L = over_source``."""
    p = target_analysis.p
    X = p.source
    return enumerate_functors(source, X, cap=cap,
                              object_filter=lambda s, x: p.obj[x] == over_source.obj[s],
                              morphism_filter=lambda f, g: p.mor[g] == over_source.mor[f])


def gaunt_fibers(analysis):
    """True when every vertical isomorphism is an identity."""
    X, B, p = analysis.total, analysis.base, analysis.p
    return all(X.is_identity(f) for f in X.morphisms
               if X.is_iso(f) and B.is_identity(p.mor[f]))


def free_universal_property(free, target, cap=None):
    """Restriction along ``delta_G`` from cocartesian functors over ``Y`` to
    functors over ``Y``.  Bijectivity is expected when the target has gaunt
    fibers; otherwise each restriction fiber must be a single class of
    uniquely isomorphic extensions."""
    if not target.is_fibration:
        raise HypothesisFailed("target is not a cocartesian fibration")
    Ls = functors_over(free.pb.category, free.q, target, cap)
    cocart = [L for L in Ls if check_cocartesian_functor(L, free.analysis, target)[0]]
    Ms = functors_over(free.G.source, free.G, target, cap)
    restricted = {}
    for L in cocart:
        restricted.setdefault(compose_functors(L, free.delta).key(), []).append(L)
    keys = {M.key() for M in Ms}
    surjective = keys == set(restricted)
    injective = all(len(v) == 1 for v in restricted.values())
    unique_up_to_iso = True
    if not injective:
        X = target.total
        for group in restricted.values():
            base = group[0]
            for other in group[1:]:
                isos = [t for t in enumerate_transformations(
                    base, other, cap=cap,
                    component_filter=lambda s, c: X.is_iso(c)
                    and target.base.is_identity(target.p.mor[c]))
                    if all(t[free.delta.obj[c]] == X.identity[base.obj[free.delta.obj[c]]]
                           for c in free.G.source.objects)]
                if len(isos) != 1:
                    unique_up_to_iso = False
    gaunt = gaunt_fibers(target)
    return {
        "cocartesian_functors": len(cocart),
        "functors_over": len(Ms),
        "surjective": surjective,
        "bijective": surjective and injective,
        "gaunt": gaunt,
        "ok": surjective and (injective if gaunt else unique_up_to_iso),
    }


# Directed lifting.

class DirectedLift:
    def __init__(self, L, theta, comparison, certificate):
        self.L = L
        self.theta = theta
        self.comparison = comparison
        self.certificate = certificate


def _lift_through(adj, analysis, H, K, alpha):
    """Core recipe: push ``H U`` along ``K eps . alpha U`` and fill."""
    F, U = adj.left, adj.right
    A, B = adj.A, adj.B
    X, Y, p = analysis.total, analysis.base, analysis.p
    beta = {b: Y.comp(K.mor[adj.eps(b)], alpha[U.obj[b]]) for b in B.objects}
    theta = {b: analysis.lift(H.obj[U.obj[b]], beta[b]) for b in B.objects}
    L_obj = {b: X.tgt(theta[b]) for b in B.objects}
    L_mor = {}
    for v, (b, b2) in B.morphisms.items():
        g = X.comp(theta[b2], H.mor[U.mor[v]])
        L_mor[v] = analysis.fill(theta[b], g, K.mor[v])
    L = CatFunctor(B, X, L_obj, L_mor, "L")
    comparison = {a: X.comp(theta[F.obj[a]], H.mor[adj.eta(a)]) for a in A.objects}
    comp_t = NatTransformation(H, compose_functors(L, F), comparison, "comparison")
    theta_t = NatTransformation(compose_functors(H, U), L, theta, "theta")
    return L, theta_t, comp_t


def directed_lift(adj, analysis, H, K, alpha, cap=None, check_initiality=True):
    """Lift a lax square ``alpha: p H => K F`` against ``p`` along ``F -| U``.

    Returns the lift ``L: B -> X`` over ``K`` with ``comparison: H => L F``
    lying over ``alpha``, and a certificate: initiality among all such lifts
    (counted by enumeration, or ``None`` past the cap) and, when ``F`` is
    fully faithful, the properties of that case.
    """
    if not analysis.is_fibration:
        raise HypothesisFailed("p is not a cocartesian fibration", *analysis.missing[0])
    rep = check_adjunction(adj)
    if not rep.ok:
        raise HypothesisFailed("adjunction fails triangle identities")
    p = analysis.p
    X, Y = analysis.total, analysis.base
    F = adj.left
    if alpha.source != compose_functors(p, H) or alpha.target != compose_functors(K, F):
        raise HypothesisFailed("filler does not go from p.H to K.F")
    L, theta, comp = _lift_through(adj, analysis, H, K, alpha)
    over = all(p.mor[comp[a]] == alpha[a] for a in adj.A.objects)
    cert = {"over_alpha": over, "lies_over_K": compose_functors(p, L) == K}
    if check_initiality:
        try:
            cert.update(_initiality(adj, analysis, H, K, alpha, L, comp, cap))
        except SizeExceeded:
            cert["initial"] = None
    ff = rep.unit_invertible
    alpha_inv = all(Y.is_iso(c) for c in alpha.components.values())
    cert["ff_case"] = ff and alpha_inv
    if ff and alpha_inv:
        cert["comparison_invertible"] = not non_invertible_components(comp)
        strict = all(adj.A.is_identity(adj.eta(a)) for a in adj.A.objects) and \
            all(Y.is_identity(c) for c in alpha.components.values())
        if strict:
            cert["strict_commutation"] = compose_functors(L, F) == H
        try:
            cert["image_characterized"] = _image_criterion(adj, analysis, K, cap)
        except SizeExceeded:
            cert["image_characterized"] = None
    return DirectedLift(L, theta, comp, cert)


def _over_identity(analysis, c):
    return analysis.base.is_identity(analysis.p.mor[c])


def _initiality(adj, analysis, H, K, alpha, L, comp, cap):
    """Count maps from ``(L, comp)`` to every competing lift."""
    F = adj.left
    X, p = analysis.total, analysis.p
    competitors = 0
    bad = []
    for L2 in functors_over(adj.B, K, analysis, cap):
        LF2 = compose_functors(L2, F)
        for c2 in enumerate_transformations(
                H, LF2, cap=cap, component_filter=lambda a, c: p.mor[c] == alpha[a]):
            competitors += 1
            maps = 0
            for tau in enumerate_transformations(
                    L, L2, cap=cap, component_filter=lambda b, c: _over_identity(analysis, c)):
                if all(X.comp(tau[F.obj[a]], comp[a]) == c2[a] for a in adj.A.objects):
                    maps += 1
            if maps != 1:
                bad.append((L2.key(), maps))
    return {"initial": not bad, "competitors": competitors, "initiality_failures": bad[:3]}


def _image_criterion(adj, analysis, K, cap):
    """For every ``L'`` over ``K``: ``L' eps`` is cocartesian exactly when
    ``L'`` is, up to the canonical map, the lift of its own restriction."""
    F = adj.left
    X, Y = analysis.total, analysis.base
    for L2 in functors_over(adj.B, K, analysis, cap):
        LF = compose_functors(L2, F)
        ident = NatTransformation(compose_functors(analysis.p, LF), compose_functors(K, F),
                                  {a: Y.identity[K.obj[F.obj[a]]] for a in adj.A.objects})
        L, _, comp = _lift_through(adj, analysis, LF, K, ident)
        taus = [t for t in enumerate_transformations(
            L, L2, cap=cap, component_filter=lambda b, c: _over_identity(analysis, c))
            if all(X.comp(t[F.obj[a]], comp[a]) == X.identity[LF.obj[a]] for a in adj.A.objects)]
        if len(taus) != 1:
            return False
        in_image = not non_invertible_components(taus[0])
        cocart = all(analysis.is_cocartesian(L2.mor[adj.eps(b)]) for b in adj.B.objects)
        if in_image != cocart:
            return False
    return True


# Relative adjunctions.

class RelativeAdjunction:
    def __init__(self, base, p, q, adjunction, certificate):
        self.base = base
        self.p = p
        self.q = q
        self.adjunction = adjunction
        self.certificate = certificate


def _restrict(F, Ai, Bj, name):
    return CatFunctor(Ai, Bj, {x: F.obj[x] for x in Ai.objects},
                      {f: F.mor[f] for f in Ai.morphisms}, name)


def fiber_restriction(F, p, q, i):
    Ai, _ = fiber(p, i)
    Bi, _ = fiber(q, i)
    return _restrict(F, Ai, Bi, "%s_%s" % (F.name, i))


def _is_terminal_in_comma(F, b, a, h):
    A, B = F.source, F.target
    for a2 in A.objects:
        for h2 in B.hom(F.obj[a2], b):
            if sum(1 for f in A.hom(a2, a) if B.comp(h, F.mor[f]) == h2) != 1:
                return False
    return True


def check_over_base(adj, p, q):
    """Unit and counit lie over identities of the base."""
    I = p.target
    bad = [a for a in adj.A.objects if not I.is_identity(p.mor[adj.eta(a)])]
    bad += [b for b in adj.B.objects if not I.is_identity(q.mor[adj.eps(b)])]
    return bad


def transition_square(F, p_analysis, q_analysis, k, adj_i, adj_j):
    """Square ``A_i -> A_j`` over ``B_i -> B_j`` of pushforwards along ``k``
    with vertical ``F_i, F_j`` and the canonical invertible filler."""
    I = p_analysis.base
    i, j = I.morphisms[k]
    push_a = p_analysis.pushforward(k)
    push_b = q_analysis.pushforward(k)
    Bj = push_b.target
    comps = {}
    for a in push_a.source.objects:
        la = p_analysis.lift(a, k)
        lb = q_analysis.lift(F.obj[a], k)
        u = q_analysis.fill(lb, F.mor[la], I.identity[j])
        inv = Bj.inverse(u)
        if inv is None:
            raise HypothesisFailed("F does not preserve the lift of %s at %s" % (k, a), k, a)
        comps[a] = inv
    src = compose_functors(adj_j.left, push_a)
    tgt = compose_functors(push_b, adj_i.left)
    filler = NatTransformation(src, tgt, comps, "filler")
    return CommutingSquare(push_a, adj_i.left, adj_j.left, push_b, filler, adj_i, adj_j)


def glue_fiberwise_adjoints(F, p_analysis, q_analysis, fiber_adjoints):
    """Assemble a right adjoint over ``I`` from adjunctions on the fibers.

    ``F: A -> B`` must commute with ``p: A -> I`` and ``q: B -> I`` and send
    ``p``-lifts to ``q``-lifts.  ``fiber_adjoints[i]`` is an adjunction
    whose left functor is the restriction of ``F`` to the fibers over ``i``.
    """
    p, q = p_analysis.p, q_analysis.p
    I = p.target
    if not (p_analysis.is_fibration and q_analysis.is_fibration):
        raise HypothesisFailed("both projections must be cocartesian fibrations")
    ok, bad = check_cocartesian_functor(F, p_analysis, q_analysis)
    if not ok:
        raise HypothesisFailed("F is not a cocartesian functor over the base", *bad)
    U_obj, eps = {}, {}
    for i in I.sorted_objects():
        adj = fiber_adjoints.get(i)
        Fi = fiber_restriction(F, p, q, i)
        if adj is None or adj.left.obj != Fi.obj or adj.left.mor != Fi.mor:
            raise FiberAdjointMissing("no adjunction for the fiber over %s" % i, i)
        if not check_adjunction(adj).ok:
            raise FiberAdjointMissing("fiber adjunction over %s is invalid" % i, i)
        for b in adj.B.objects:
            U_obj[b], eps[b] = adj.right.obj[b], adj.eps(b)
    for b in F.target.sorted_objects():
        if not _is_terminal_in_comma(F, b, U_obj[b], eps[b]):
            raise HypothesisFailed("fiber counit at %s is not terminal in the total comma" % b, b)
    total = _assemble(F, U_obj, eps, "glued")
    report = check_adjunction(total)
    if not report.ok:
        raise HypothesisFailed("glued data fails triangle identities")
    off = check_over_base(total, p, q)
    if off:
        raise NotOverBase("unit or counit not over an identity at %s" % off[0], *off)
    exact = True
    for i in I.objects:
        adj = fiber_adjoints[i]
        Ui = fiber_restriction(total.right, q, p, i)
        if Ui.obj != adj.right.obj or Ui.mor != adj.right.mor:
            exact = False
    U_cocart, witness = check_cocartesian_functor(total.right, q_analysis, p_analysis)
    per_edge = {}
    for k in sorted(I.morphisms):
        i, j = I.morphisms[k]
        sq = transition_square(F, p_analysis, q_analysis, k, fiber_adjoints[i], fiber_adjoints[j])
        per_edge[k] = square_mate(sq)[1]
    cert = {
        "over_base": True,
        "fiber_restriction_exact": exact,
        "right_adjoint_cocartesian": U_cocart,
        "adjointable_edges": per_edge,
        "equivalence_holds": U_cocart == all(per_edge.values()),
    }
    return RelativeAdjunction(I, p_analysis, q_analysis, total, cert)


def split_relative_adjoint(rel):
    """Restrict a relative adjunction to each fiber."""
    p, q = rel.p.p, rel.q.p
    adj = rel.adjunction
    out = {}
    for i in rel.base.objects:
        Ai, _ = fiber(p, i)
        Bi, _ = fiber(q, i)
        Fi = _restrict(adj.left, Ai, Bi, "F_" + i)
        Ui = _restrict(adj.right, Bi, Ai, "U_" + i)
        unit = NatTransformation(identity_functor(Ai), compose_functors(Ui, Fi),
                                 {a: adj.eta(a) for a in Ai.objects}, "unit")
        counit = NatTransformation(compose_functors(Fi, Ui), identity_functor(Bi),
                                   {b: adj.eps(b) for b in Bi.objects}, "counit")
        out[i] = Adjunction(Fi, Ui, unit, counit, "fiber " + i)
    return out


def base_change(rel, t):
    """Pull a relative adjunction back along ``t: J -> I``."""
    p, q = rel.p.p, rel.q.p
    adj = rel.adjunction
    pa = pullback(t, p)
    pb = pullback(t, q)
    idJ = identity_functor(t.source)
    F2 = pullback_functor(pa, pb, idJ, adj.left)
    U2 = pullback_functor(pb, pa, idJ, adj.right)
    J = t.source
    unit = {x: pair_id(J.identity[j], adj.eta(a)) for x, (j, a) in pa.extra["obj_pieces"].items()}
    counit = {x: pair_id(J.identity[j], adj.eps(b)) for x, (j, b) in pb.extra["obj_pieces"].items()}
    A2, B2 = pa.category, pb.category
    new = Adjunction(F2, U2,
                     NatTransformation(identity_functor(A2), compose_functors(U2, F2), unit, "unit"),
                     NatTransformation(compose_functors(F2, U2), identity_functor(B2), counit, "counit"),
                     "base change")
    report = check_adjunction(new)
    p2, q2 = pa["pr0"], pb["pr0"]
    off = check_over_base(new, p2, q2) if report.ok else ["triangle identities"]
    cert = {"adjunction": report.ok, "over_base": not off}
    return RelativeAdjunction(J, FibrationAnalysis(p2), FibrationAnalysis(q2), new, cert)


# Pullback stability.

def pullback_fibration(analysis, G):
    """Pull ``p: X -> B`` back along ``G: A -> B``; returns the analysis of
    ``pr0: A x_B X -> A`` and whether ``pr1`` is a cocartesian functor."""
    pb = pullback(G, analysis.p)
    q = FibrationAnalysis(pb["pr0"])
    cocart = None
    if q.is_fibration and analysis.is_fibration:
        cocart = check_cocartesian_functor(pb["pr1"], q, analysis, G)[0]
    return q, cocart, pb


def search_fiber_adjoints(F, p, q):
    """Right adjoints of the fiber restrictions of ``F``, found by search."""
    out = {}
    for i in p.target.sorted_objects():
        res = search_adjoint(fiber_restriction(F, p, q, i), "right")
        if not res:
            raise FiberAdjointMissing("fiber over %s has no right adjoint" % i, i, res.failing_object)
        out[i] = res.adjunction
    return out


def grothendieck_functor(gA, gB, components, name="F"):
    """Total functor of a strictly natural family of fiber functors."""
    TA, TB = gA.functor.transitions, gB.functor.transitions
    I = gA.base
    for k, (i, j) in I.morphisms.items():
        Fi, Fj = components[i], components[j]
        if any(TB[k].obj[Fi.obj[x]] != Fj.obj[TA[k].obj[x]] for x in Fi.source.objects) or \
                any(TB[k].mor[Fi.mor[f]] != Fj.mor[TA[k].mor[f]] for f in Fi.source.morphisms):
            raise HypothesisFailed("fiber functors are not natural along %s" % k, k)
    obj = {o: pair_id(i, components[i].obj[x]) for o, (i, x) in gA.obj_pieces.items()}
    mor = {}
    for m, (k, x, phi) in gA.pieces.items():
        i, j = I.morphisms[k]
        mor[m] = pair_id(k, components[i].obj[x], components[j].mor[phi])
    return CatFunctor(gA.total, gB.total, obj, mor, name)


def composition_functor(arr, pairs=None):
    """``comp: Arr(C) x_C Arr(C) -> Arr(C)`` sending ``(f, g)`` to ``g . f``."""
    C = arr.extra["base"]
    pb = pairs or pullback(arr["ev1"], arr["ev0"])
    P = pb.category
    A = arr.category
    sq = arr.extra["pieces"]
    obj = {x: C.comp(g, f) for x, (f, g) in pb.extra["obj_pieces"].items()}
    mor = {}
    for m, (m1, m2) in pb.extra["pieces"].items():
        u, _ = sq[m1]
        _, w = sq[m2]
        mor[m] = pair_id(obj[P.src(m)], u, w, obj[P.tgt(m)])
    return pb, CatFunctor(P, A, obj, mor, "comp")


def check_decomposition_square(C, cap=None):
    """A square in ``C`` is the same as two composable pairs with equal
    composite: ``((ev0)_*, ev1)`` and ``(ev0, (ev1)_*)`` out of
    ``Arr(Arr(C))`` form a strict pullback over composition."""
    from .adjunction import CommutingSquare, check_pullback_square
    arr = arrow(C, cap)
    arr2 = arrow(arr.category, cap)
    # Validating the legs walks every composable pair of Arr(Arr(C)).
    indeg = Counter(b for _, b in arr2.category.morphisms.values())
    pairs = sum(indeg[a] for a, _ in arr2.category.morphisms.values())
    limit = config.cap("search")
    if pairs > limit:
        raise SizeExceeded("Arr(Arr(%s)) has %d composable pairs (search cap %d)"
                           % (C.name, pairs, limit))
    pb, comp = composition_functor(arr)
    ev0_star = arrow_functor(arr2, arr, arr["ev0"])
    ev1_star = arrow_functor(arr2, arr, arr["ev1"])
    top = pairing(pb, ev0_star, arr2["ev1"], "((ev0)_*,ev1)")
    left = pairing(pb, arr2["ev0"], ev1_star, "(ev0,(ev1)_*)")
    for F in (top, left, comp):
        bad = functor_failures(F)
        if bad:
            return {"commutes": False, "pullback": False, "error": bad[0]}
    sq = CommutingSquare(top, left, comp, comp)
    commutes = sq.commutes_strictly()
    return {"commutes": commutes, "pullback": commutes and check_pullback_square(sq),
            "squares": len(arr2.category.objects)}
