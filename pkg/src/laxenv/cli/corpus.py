"""Seeded generators of small categories, functors and adjunctions, and the
fixed 2-category corpus used by the acceptance suite."""
import itertools

from .. import twocat as tc
from ..adjunction import Adjunction, search_adjoint
from ..fibration import (CategoryValuedFunctor, constant_category_functor,
                         free_cocartesian_fibration, grothendieck_construction)
from ..fincat import (CatFunctor, FinCategory, NatTransformation, arrow, chain_category,
                      compose_functors, discrete_category, enumerate_functors,
                      enumerate_transformations, identity_functor, monoid_category,
                      poset_category, product, terminal_category, walking_arrow, walking_iso)


# Small categories.

def random_poset(rng, n, name=None):
    """A random poset on ``p0 .. p{n-1}`` (order compatible with indices)."""
    names = ["p%d" % i for i in range(n)]
    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.45}
    reach = {(i, i) for i in range(n)} | edges
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(reach), repeat=2):
            if b == c and (a, d) not in reach:
                reach.add((a, d))
                changed = True
    return poset_category(names, lambda x, y: (int(x[1:]), int(y[1:])) in reach,
                          name or "P%d" % n)


def z2():
    return monoid_category(["e", "s"], lambda g, f: "e" if g == f else "s", "e", name="Z2")


def idempotent_monoid():
    """``{1, z}`` with ``z z = z``."""
    return monoid_category(["1", "z"], lambda g, f: "1" if g == f == "1" else "z", "1",
                           name="Idem")


def end2():
    """All self-maps of a two-element set under composition."""
    table = {"id": (0, 1), "sw": (1, 0), "c0": (0, 0), "c1": (1, 1)}
    inv = {v: k for k, v in table.items()}
    return monoid_category(list(table), lambda g, f: inv[tuple(table[g][table[f][i]]
                                                                for i in (0, 1))],
                           "id", name="End2")


def small_category(rng, max_objects=4):
    """One of a handful of families, sized to keep enumerations cheap."""
    kind = rng.choice(["poset", "poset", "chain", "iso", "arrow", "monoid", "discrete",
                       "product"])
    if kind == "poset":
        return random_poset(rng, rng.randint(1, max_objects))
    if kind == "chain":
        return chain_category(rng.randint(0, max_objects - 1))
    if kind == "iso":
        return walking_iso()
    if kind == "arrow":
        return walking_arrow()
    if kind == "monoid":
        return rng.choice([z2, idempotent_monoid])()
    if kind == "discrete":
        return discrete_category(["d%d" % i for i in range(rng.randint(1, 3))])
    left = rng.choice([walking_arrow, walking_iso, z2, lambda: chain_category(1)])()
    right = rng.choice([terminal_category, walking_arrow, lambda: discrete_category(["u", "v"])])()
    P = product(left, right).category
    return P


def random_functor(rng, C, D, cap=None):
    fs = enumerate_functors(C, D, cap=cap)
    return rng.choice(fs) if fs else None


def random_left_adjoint(rng, C, D, attempts=40):
    """A random functor ``C -> D`` with a right adjoint, with the adjunction."""
    fs = enumerate_functors(C, D)
    rng.shuffle(fs)
    for F in fs[:attempts]:
        res = search_adjoint(F, "right")
        if res:
            return res.adjunction
    return None


def random_adjunction(rng, max_objects=4, ff_left=False, tries=50):
    """Random adjunction between small categories; ``ff_left`` asks for a
    fully faithful left adjoint (invertible unit)."""
    for _ in range(tries):
        A = small_category(rng, max_objects)
        B = small_category(rng, max_objects)
        adj = random_left_adjoint(rng, A, B)
        if adj is None:
            continue
        if ff_left and not all(A.is_iso(adj.eta(a)) for a in A.objects):
            continue
        return adj
    # Fallback that always exists.
    C = chain_category(1)
    return identity_adjunction_of(C)


def identity_adjunction_of(C):
    from ..adjunction import identity_adjunction
    return identity_adjunction(C)


def bogus_z2_adjunction(unit="s", counit="e"):
    """``id -| id`` on the one-object group Z2 with chosen unit and counit
    components; with ``s`` and ``e`` the triangle identities fail."""
    C = z2()
    I = identity_functor(C)
    u = NatTransformation(I, I, {"*": unit}, "unit")
    c = NatTransformation(I, I, {"*": counit}, "counit")
    return Adjunction(I, I, u, c, "bogus")


# Cocartesian fibrations.

def random_fibration(rng, base=None):
    """A cocartesian fibration over a small base: an arrow-category target
    map, a product projection, a free fibration or a Grothendieck
    construction over a chain."""
    kind = rng.choice(["ev1", "projection", "free", "grothendieck"])
    Y = base or small_category(rng, 3)
    if kind == "ev1":
        return arrow(Y)["ev1"], Y
    if kind == "projection":
        D = rng.choice([terminal_category, walking_arrow, z2, lambda: discrete_category(["u", "v"])])()
        return product(Y, D)["pr0"], Y
    if kind == "free":
        C = small_category(rng, 2)
        G = random_functor(rng, C, Y)
        if G is not None:
            return free_cocartesian_fibration(G).q, Y
        return arrow(Y)["ev1"], Y
    I = chain_category(1)
    C0, C1 = small_category(rng, 2), small_category(rng, 3)
    T = random_functor(rng, C0, C1)
    if T is None:
        return arrow(Y)["ev1"], Y
    g = grothendieck_construction(CategoryValuedFunctor(
        I, {"0": C0, "1": C1}, {"id_0": identity_functor(C0), "id_1": identity_functor(C1),
                               "0~1": T}, "X"))
    return g.p, I


def inclusion_of_bottom():
    """``{0} -> [1]``: not a cocartesian fibration."""
    I = chain_category(1)
    Z = poset_category(["0"], lambda a, b: True, "bottom")
    return CatFunctor(Z, I, {"0": "0"}, {"id_0": "id_0"}, "incl")


def fibred_pair(rng):
    """``F: A -> B`` over a common base ``I`` with both projections
    cocartesian fibrations and ``F`` cocartesian, built from fiber
    functors that have right adjoints.  Returns ``(F, p, q)``."""
    from ..fibration import grothendieck_functor
    if rng.random() < 0.5:
        I = small_category(rng, 2)
        for _ in range(20):
            C, D = small_category(rng, 3), small_category(rng, 3)
            adj = random_left_adjoint(rng, C, D)
            if adj is not None:
                break
        else:
            C = D = chain_category(1)
            adj = identity_adjunction_of(C)
        gA = grothendieck_construction(constant_category_functor(I, C))
        gB = grothendieck_construction(constant_category_functor(I, D))
        F = grothendieck_functor(gA, gB, {i: adj.left for i in I.objects})
        return F, gA.p, gB.p
    # Over [1]: fibers C0 -> C1 along T and C0 -> D1 along G1 . T.
    I = chain_category(1)
    for _ in range(20):
        C0, C1, D1 = small_category(rng, 2), small_category(rng, 3), small_category(rng, 3)
        T = random_functor(rng, C0, C1)
        adj = random_left_adjoint(rng, C1, D1)
        if T is not None and adj is not None:
            break
    else:
        C0 = C1 = D1 = chain_category(1)
        T = identity_functor(C0)
        adj = identity_adjunction_of(C1)
    G1 = adj.left
    gA = grothendieck_construction(CategoryValuedFunctor(
        I, {"0": C0, "1": C1}, {"id_0": identity_functor(C0), "id_1": identity_functor(C1),
                               "0~1": T}, "X"))
    gB = grothendieck_construction(CategoryValuedFunctor(
        I, {"0": C0, "1": D1}, {"id_0": identity_functor(C0), "id_1": identity_functor(D1),
                               "0~1": compose_functors(G1, T)}, "Y"))
    F = grothendieck_functor(gA, gB, {"0": identity_functor(C0), "1": G1})
    return F, gA.p, gB.p


# Products of functors and adjunctions.

def product_functor(F, G, PS=None, PT=None):
    """``F x G`` between the products of the sources and of the targets."""
    PS = PS or product(F.source, G.source)
    PT = PT or product(F.target, G.target)
    from ..fincat import pair_id
    obj = {pair_id(a, b): pair_id(F.obj[a], G.obj[b])
           for a in F.source.objects for b in G.source.objects}
    mor = {m: pair_id(F.mor[f], G.mor[g]) for m, (f, g) in PS.extra["pieces"].items()}
    return CatFunctor(PS.category, PT.category, obj, mor, "%sx%s" % (F.name, G.name)), PS, PT


def product_adjunction(adj, P):
    """``adj x id_P``."""
    from ..fincat import pair_id
    idP = identity_functor(P)
    PA, PB = product(adj.A, P), product(adj.B, P)
    F, _, _ = product_functor(adj.left, idP, PA, PB)
    U, _, _ = product_functor(adj.right, idP, PB, PA)
    unit = {pair_id(a, x): pair_id(adj.eta(a), P.identity[x]) for a in adj.A.objects
            for x in P.objects}
    counit = {pair_id(b, x): pair_id(adj.eps(b), P.identity[x]) for b in adj.B.objects
              for x in P.objects}
    return Adjunction(F, U,
                      NatTransformation(identity_functor(PA.category), compose_functors(U, F),
                                        unit, "unit"),
                      NatTransformation(compose_functors(F, U), identity_functor(PB.category),
                                        counit, "counit"), "%s x id" % adj.name), PA, PB


# The 2-category corpus.

def two_category_corpus():
    """Corpus 2-categories: at most 3 objects, hom categories of at most 6
    morphisms."""
    return [tc.point(), tc.walking_arrow_2cat(), tc.walking_two_cell(), tc.b_z2()]


def target_corpus():
    """Targets ``B`` for lax functors and classification counts."""
    return [tc.b_max(), tc.b_min(), tc.b_end1(), tc.b_z2(), tc.walking_arrow_2cat()]


def sect_corpus(A, E=None):
    """LaxSect objects over ``A``: the identity, products with the two
    monoidal chains, and (when given) the envelope itself."""
    out = [("id", tc.identity_two_functor(A))]
    for M in (tc.b_max(), tc.b_min()):
        X = tc.product_with_monoidal(A, M)
        out.append(("x" + M.name, tc.projection_to_first(X, A)))
    if E is not None:
        from ..envelope import lambda_functor
        out.append(("env", lambda_functor(E)))
    return out


def crafted_sect_failures(A):
    """Strict 2-functors into ``A`` without local right adjoint sections:
    maps collapsing ``A`` to the point."""
    P = tc.point()
    F = tc.StrictTwoFunctor(A, P, {a: "*" for a in A.objects}, {f: "1" for f in A.home1},
                            {m: P.id2("1") for m in A.home2}, "collapse")
    return F
