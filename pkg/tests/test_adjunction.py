import random

import pytest
from hypothesis import given, strategies as st

from laxenv.adjunction import (Adjunction, CommutingSquare, arrow_adjunctions,
                               characterize_essential_image, check_adjunction,
                               compose_adjunctions, double_mate, hom_action_equivalence,
                               identity_adjunction, mate, mate_between_adjoints,
                               pullback_adjunction, search_adjoint, square_mate)
from laxenv.errors import CounitNotInvertible, HypothesisFailed, MissingAdjunction
from laxenv.fincat import (CatFunctor, NatTransformation, arrow, chain_category,
                           compose_functors, discrete_category, enumerate_functors,
                           enumerate_transformations, identity_functor, identity_transformation,
                           pullback, terminal_category, vcomp, walking_arrow, walking_iso)
from laxenv.cli import corpus


def hom_bijection_holds(adj):
    """Independent check: ``h |-> U h . eta_a`` is a bijection
    ``B(F a, b) -> A(a, U b)`` for every pair of objects."""
    F, U, A, B = adj.left, adj.right, adj.A, adj.B
    for a in A.objects:
        for b in B.objects:
            image = [A.comp(U.mor[h], adj.eta(a)) for h in B.hom(F.obj[a], b)]
            if sorted(image) != sorted(A.hom(a, U.obj[b])):
                return False
    return True


def collapse(C):
    T = terminal_category()
    return CatFunctor(C, T, {x: "*" for x in C.objects}, {f: "id_*" for f in C.morphisms}, "!")


# check_adjunction.

def test_identity_adjunction():
    rep = check_adjunction(identity_adjunction(walking_arrow()))
    assert rep.ok and rep.unit_invertible and rep.counit_invertible


@pytest.mark.parametrize("C", [walking_arrow(), walking_iso(), chain_category(2), corpus.z2()],
                         ids=lambda C: C.name)
def test_arrow_adjunctions(C):
    lower, upper = arrow_adjunctions(C)
    r0, r1 = check_adjunction(lower), check_adjunction(upper)
    assert r0.ok and r0.unit_invertible
    assert r1.ok and r1.counit_invertible
    assert hom_bijection_holds(lower) and hom_bijection_holds(upper)


def test_perturbed_counit_names_the_component():
    # On Z2, replacing the counit by the non-identity automorphism breaks the
    # triangle identities at the unique object.
    adj = corpus.bogus_z2_adjunction(unit="e", counit="s")
    rep = check_adjunction(adj)
    assert not rep.ok
    assert ("eps F . F eta", "*") in rep.failures


def test_unnatural_unit_is_reported():
    M = corpus.end2()
    I = identity_functor(M)
    bad = Adjunction(I, I, NatTransformation(I, I, {"*": "sw"}), identity_transformation(I))
    rep = check_adjunction(bad)
    assert not rep.ok and rep.failures[0][0] == "unit naturality"


# search_adjoint.

def test_left_adjoint_of_ev0_is_diagonal():
    C = walking_arrow()
    arr = arrow(C)
    res = search_adjoint(arr["ev0"], "left")
    assert res
    adj = res.adjunction
    assert adj.left.obj == arr["diag"].obj
    assert check_adjunction(adj).unit_invertible


@pytest.mark.parametrize("C", [walking_arrow(), walking_iso(), discrete_category(["x", "y"]),
                               corpus.z2(), chain_category(3), corpus.idempotent_monoid()],
                         ids=lambda C: C.name)
def test_right_adjoint_to_terminal_iff_terminal_object(C):
    has_terminal = any(all(len(C.hom(x, t)) == 1 for x in C.objects) for t in C.objects)
    assert bool(search_adjoint(collapse(C), "right")) == has_terminal


def test_discrete_inclusion_has_no_right_adjoint():
    D, W = discrete_category(["a", "b"]), walking_arrow()
    incl = CatFunctor(D, W, {"a": "a", "b": "b"}, {"id_a": "id_a", "id_b": "id_b"})
    res = search_adjoint(incl, "right")
    assert not res and res.failing_object is not None


@given(st.integers(0, 10_000))
def test_search_agrees_with_hom_bijection(seed):
    rng = random.Random(seed)
    C, D = corpus.small_category(rng, 3), corpus.small_category(rng, 3)
    fs = enumerate_functors(C, D)
    if not fs:
        return
    F = rng.choice(fs)
    res = search_adjoint(F, "right")
    if res:
        assert check_adjunction(res.adjunction).ok
        assert hom_bijection_holds(res.adjunction)
    else:
        # No candidate right adjoint object map makes the homs biject.
        b = res.failing_object
        assert not any(
            all(len(D.hom(F.obj[a], b)) == len(C.hom(a, u)) for a in C.objects)
            and _terminal_in_comma(F, b, u) for u in C.objects)


def _terminal_in_comma(F, b, u):
    C, D = F.source, F.target
    for h in D.hom(F.obj[u], b):
        if all(sum(1 for f in C.hom(a, u) if D.comp(h, F.mor[f]) == h2) == 1
               for a in C.objects for h2 in D.hom(F.obj[a], b)):
            return True
    return False


def test_composition_of_adjunctions():
    C = walking_arrow()
    lower, upper = arrow_adjunctions(C)
    # diag -| ev0 followed by ev1 -| diag is id -| ev0 diag on C.
    comp = compose_adjunctions(lower, upper)
    assert check_adjunction(comp).ok


# Hom-action equivalence.

def test_hom_equivalence_examples():
    assert hom_action_equivalence(identity_adjunction(walking_arrow())).inverse_pair
    lower, _ = arrow_adjunctions(walking_arrow())
    assert hom_action_equivalence(lower).inverse_pair


@given(st.integers(0, 10_000))
def test_hom_equivalence_on_corpus(seed):
    adj = corpus.random_adjunction(random.Random(seed), 3)
    assert hom_action_equivalence(adj).inverse_pair


def test_hom_equivalence_rejects_bogus():
    assert not hom_action_equivalence(corpus.bogus_z2_adjunction()).inverse_pair


# Mates.

def test_identity_square_has_identity_mate():
    C = walking_arrow()
    idC = identity_functor(C)
    adj = identity_adjunction(C)
    t, inv = square_mate(CommutingSquare(idC, idC, idC, idC, left_adj=adj, right_adj=adj))
    assert inv and all(C.is_identity(c) for c in t.components.values())
    t, inv = mate("between_adjoints", adj, adj, identity_transformation(idC))
    assert inv


def test_non_adjointable_square():
    # Square with the adjunction const_0 -| ! on one side and the identity
    # adjunction of the terminal category on the other.
    I, T = chain_category(1), terminal_category()
    bang = collapse(I)
    adj_bang = search_adjoint(bang, "left").adjunction  # L -| !
    const1 = CatFunctor(T, I, {"*": "1"}, {"id_*": "id_1"}, "const1")
    idT = identity_functor(T)
    # top: const1, left: id_T (right adjoint of itself), right: !, bottom: id_T.
    sq = CommutingSquare(const1, idT, bang, idT, left_adj=identity_adjunction(T),
                         right_adj=adj_bang)
    t, inv = square_mate(sq)
    assert not inv


def test_square_without_adjunctions():
    C = walking_arrow()
    idC = identity_functor(C)
    with pytest.raises(MissingAdjunction):
        square_mate(CommutingSquare(idC, idC, idC, idC))


@given(st.integers(0, 10_000))
def test_mate_is_invertible_correspondence(seed):
    # sigma |-> mate is a bijection between U1 => U2 and F2 => F1.
    rng = random.Random(seed)
    C, D = corpus.small_category(rng, 3), corpus.small_category(rng, 3)
    adjs = []
    for F in enumerate_functors(C, D):
        res = search_adjoint(F, "right")
        if res:
            adjs.append(res.adjunction)
    if not adjs:
        return
    a1, a2 = rng.choice(adjs), rng.choice(adjs)
    sig = enumerate_transformations(a1.right, a2.right)
    tau = enumerate_transformations(a2.left, a1.left)
    mates = sorted(tuple(sorted(mate_between_adjoints(a1, a2, s).components.items()))
                   for s in sig)
    assert mates == sorted(tuple(sorted(t.components.items())) for t in tau)
    # Left and right mates are mutually inverse.
    for s in sig:
        back = mate_between_adjoints(a2, a1, mate_between_adjoints(a1, a2, s), side="left")
        assert back.components == s.components


def test_mates_respect_vertical_composition():
    rng = random.Random(5)
    adj = corpus.random_adjunction(rng, 3)
    for s in enumerate_transformations(adj.right, adj.right):
        for t in enumerate_transformations(adj.right, adj.right):
            whole = mate_between_adjoints(adj, adj, vcomp(t, s))
            parts = vcomp(mate_between_adjoints(adj, adj, s), mate_between_adjoints(adj, adj, t))
            assert whole.components == parts.components


def test_double_mate_identity():
    adj = identity_adjunction(walking_arrow())
    al = identity_transformation(adj.left)
    r = double_mate(al, adj, adj, adj, adj)
    assert r["beta_invertible"] and r["gamma_invertible"] and r["agree"]


# Pullbacks of adjunctions.

@pytest.mark.parametrize("seed", range(6))
def test_pullback_of_diagonal_ev0(seed):
    rng = random.Random(seed)
    C = corpus.small_category(rng, 3)
    lower, _ = arrow_adjunctions(C)
    ev0 = lower.right
    Y = corpus.small_category(rng, 3)
    K = corpus.random_functor(rng, Y, C)
    if K is None:
        return
    pb = pullback(K, ev0)
    sq = CommutingSquare(pb["pr1"], pb["pr0"], ev0, K)
    res = pullback_adjunction(sq, "ff_left_adjoint", lower)
    assert res.certificate["adjunction"] and res.certificate["fully_faithful"]
    assert res.certificate["adjointable"]


def test_identity_pullback_square_returns_original():
    C = walking_arrow()
    lower, _ = arrow_adjunctions(C)
    ev0 = lower.right
    idC = identity_functor(C)
    pb = pullback(idC, ev0)
    res = pullback_adjunction(CommutingSquare(pb["pr1"], pb["pr0"], ev0, idC),
                              "ff_left_adjoint", lower)
    G = res.adjunction.left
    # Reading pairs back through pr1 recovers the diagonal.
    assert compose_functors(pb["pr1"], G).obj == lower.left.obj


def test_pullback_requires_ff_left_adjoint():
    I = chain_category(1)
    adj = search_adjoint(collapse(I), "right").adjunction
    K = identity_functor(adj.A)
    pb = pullback(K, adj.right)
    with pytest.raises(HypothesisFailed):
        pullback_adjunction(CommutingSquare(pb["pr1"], pb["pr0"], adj.right, K),
                            "ff_left_adjoint", adj)


def test_cube_variant_on_products():
    from laxenv.cli.suites import SUITES
    s = SUITES["pullback-cube"]
    for i in range(3):
        inst = s.build(random.Random(i))
        flag, info = s.check(inst)
        assert flag, info


def test_over_cocartesian_base_variant():
    # p = ev1: Arr(Y) -> Y is a cocartesian fibration; pull back along the
    # right adjoint of a corpus adjunction into Y.
    rng = random.Random(3)
    for _ in range(5):
        adj = corpus.random_adjunction(rng, 3)
        Y = adj.A
        arr = arrow(Y)
        p = arr["ev1"]
        U = adj.right
        pb = pullback(U, p)
        sq = CommutingSquare(pb["pr1"], pb["pr0"], p, U)
        res = pullback_adjunction(sq, "over_cocartesian_base", adj)
        c = res.certificate
        assert c["adjunction"] and c["pullback_is_fibration"]
        assert c["V_cocartesian_over_U"] and c["G_cocartesian_over_F"]
        assert c["counit_transfer"]


# Essential image.

def test_essential_image_examples():
    C = walking_arrow()
    assert characterize_essential_image(identity_adjunction(C))["objects"] == ["a", "b"]
    # C -> terminal with right adjoint picking the terminal object b.
    adj = search_adjoint(collapse(C), "right").adjunction
    r = characterize_essential_image(adj)
    assert r["objects"] == ["b"] and r["agrees"]
    # The reflective arrow-category situation ev1 -| diag.
    _, upper = arrow_adjunctions(C)
    r = characterize_essential_image(upper)
    Ar = upper.A
    assert r["agrees"]
    assert r["objects"] == sorted(f for f in Ar.objects if f in ("id_a", "id_b"))


def test_essential_image_needs_invertible_counit():
    lower, _ = arrow_adjunctions(walking_arrow())
    with pytest.raises(CounitNotInvertible):
        characterize_essential_image(lower)
