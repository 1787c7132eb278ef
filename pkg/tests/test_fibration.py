import random

import pytest
from hypothesis import given, settings, strategies as st

from laxenv.adjunction import check_adjunction, identity_adjunction
from laxenv.errors import FiberAdjointMissing, HypothesisFailed, NoLift, SizeExceeded
from laxenv.fibration import (CategoryValuedFunctor, FibrationAnalysis, base_change,
                              check_cocartesian_fibration, check_cocartesian_functor,
                              check_decomposition_square, check_iso_lifts,
                              check_left_cancellation, cocartesian_lift, cocartesian_status,
                              constant_category_functor, definition_consistency, directed_lift,
                              free_cocartesian_fibration, free_universal_property,
                              glue_fiberwise_adjoints, grothendieck_construction,
                              pullback_fibration, search_fiber_adjoints, split_relative_adjoint,
                              vertical_iso_between_lifts)
from laxenv.fincat import (CatFunctor, NatTransformation, arrow, arrow_functor, chain_category,
                           compose_functors, discrete_category, enumerate_functors, fiber,
                           identity_functor, product, terminal_category, walking_arrow,
                           walking_iso)
from laxenv.cli import corpus

import oracles


def corpus_fibrations(n=12, seed=3):
    rng = random.Random(seed)
    return [corpus.random_fibration(rng)[0] for _ in range(n)]


def collapse(C):
    T = terminal_category()
    return CatFunctor(C, T, {x: "*" for x in C.objects}, {f: "id_*" for f in C.morphisms}, "!")


# cocartesian_status.

def test_identities_are_cocartesian():
    for p in corpus_fibrations(6):
        for x in p.source.objects:
            assert cocartesian_status(p, p.source.identity[x])


@pytest.mark.parametrize("C", [walking_arrow(), walking_iso(), chain_category(2), corpus.z2(),
                               corpus.idempotent_monoid()], ids=lambda C: C.name)
def test_ev1_lifts_are_cocartesian(C):
    a = FibrationAnalysis(arrow(C)["ev1"])
    assert a.is_fibration
    for f in a.lifts.values():
        assert oracles.is_cocartesian(a.p, f)


def test_non_lift_reports_missing_filler():
    p = collapse(walking_arrow())
    st_ = cocartesian_status(p, "f")
    assert not st_ and st_.witness[0] == "missing filler" and st_.witness[1] == "a"


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_status_matches_oracle(seed):
    p, _ = corpus.random_fibration(random.Random(seed))
    for f in sorted(p.source.morphisms):
        assert bool(cocartesian_status(p, f)) == oracles.is_cocartesian(p, f)


# check_cocartesian_fibration.

def test_functors_to_terminal_are_fibrations():
    for C in (walking_arrow(), corpus.z2(), discrete_category(["x", "y"])):
        assert check_cocartesian_fibration(collapse(C))


def test_ev0_missing_lift_is_reported():
    # On the walking arrow ev0 does have all lifts; the idempotent monoid
    # lacks the pushout-style lift at the identity-of-z object.
    assert check_cocartesian_fibration(arrow(walking_arrow())["ev0"])
    a = check_cocartesian_fibration(arrow(corpus.idempotent_monoid())["ev0"])
    assert not a and a.missing
    with pytest.raises(NoLift):
        cocartesian_lift(a, *a.missing[0])
    assert a.is_fibration == oracles.is_fibration(a.p)


@pytest.mark.parametrize("p", corpus_fibrations(), ids=lambda p: p.name)
def test_fibration_flag_matches_oracle(p):
    a = FibrationAnalysis(p)
    assert a.is_fibration == oracles.is_fibration(p)
    # Lifts are tie-broken by the least id among valid lifts (after the
    # identity preference over identities).
    for (x, k), f in a.lifts.items():
        if a.base.is_identity(k):
            assert a.total.is_iso(f)
            continue
        valid = sorted(g for g in a.total.out_of(x) if p.mor[g] == k and oracles.is_cocartesian(p, g))
        assert f in valid


@pytest.mark.parametrize("p", corpus_fibrations(8), ids=lambda p: p.name)
def test_lifts_unique_up_to_vertical_iso(p):
    a = FibrationAnalysis(p)
    X = a.total
    for (x, k), f in a.lifts.items():
        for g in X.out_of(x):
            if p.mor[g] == k and a.is_cocartesian(g):
                u = vertical_iso_between_lifts(a, f, g)
                assert u is not None and X.comp(u, f) == g


# Consistency with the adjoint formulation.

@pytest.mark.parametrize("p", [arrow(walking_arrow())["ev1"], arrow(walking_arrow())["ev0"],
                               collapse(walking_arrow()), corpus.inclusion_of_bottom(),
                               product(chain_category(1), corpus.z2())["pr0"],
                               arrow(corpus.idempotent_monoid())["ev0"]],
                         ids=lambda p: p.name)
def test_definition_consistency(p):
    r = definition_consistency(p)
    assert r["agree"], r


# Grothendieck construction.

def test_grothendieck_of_constant_is_product():
    I, C = walking_arrow(), corpus.z2()
    g = grothendieck_construction(constant_category_functor(I, C))
    assert g.total.size() == product(I, C).category.size()
    assert g.is_fibration


def test_grothendieck_of_walking_arrow_is_a_square():
    W = walking_arrow()
    F = CategoryValuedFunctor(W, {"a": W, "b": W},
                              {"id_a": identity_functor(W), "id_b": identity_functor(W),
                               "f": identity_functor(W)}, "W")
    g = grothendieck_construction(F)
    assert g.total.size() == (4, 9)
    assert g.is_fibration and oracles.is_fibration(g.p)
    # The canonical lift is (k, x, id).
    assert g.lift("<a,a>", "f") == "<f,a,id_a>"
    for f in g.total.morphisms:
        assert g.is_cocartesian(f) == oracles.is_cocartesian(g.p, f)


@pytest.mark.parametrize("seed", range(6))
def test_grothendieck_fibers_recover_inputs(seed):
    rng = random.Random(seed)
    I = chain_category(1)
    C0, C1 = corpus.small_category(rng, 2), corpus.small_category(rng, 3)
    T = corpus.random_functor(rng, C0, C1)
    if T is None:
        return
    F = CategoryValuedFunctor(I, {"0": C0, "1": C1}, {"id_0": identity_functor(C0),
                                                      "id_1": identity_functor(C1), "0~1": T})
    g = grothendieck_construction(F)
    for i, C in (("0", C0), ("1", C1)):
        Fi, _ = fiber(g.p, i)
        inc = g.fiber_inclusion(i)
        assert sorted(inc.obj.values()) == sorted(Fi.objects)
        assert sorted(inc.mor.values()) == sorted(Fi.morphisms)
    assert g.pushforward("0~1").obj == {"<0,%s>" % x: "<1,%s>" % T.obj[x] for x in C0.objects}


def test_non_functorial_transitions_rejected():
    from laxenv.errors import ValidationError
    I = chain_category(1)
    W = walking_arrow()
    F = CategoryValuedFunctor(I, {"0": W, "1": W},
                              {"id_0": identity_functor(W),
                               "id_1": CatFunctor(W, W, {"a": "b", "b": "b"},
                                                  {"id_a": "id_b", "id_b": "id_b", "f": "id_b"}),
                               "0~1": identity_functor(W)})
    with pytest.raises(ValidationError):
        grothendieck_construction(F)


# Cocartesian functors.

def test_identity_square_is_cocartesian():
    a = FibrationAnalysis(arrow(walking_arrow())["ev1"])
    assert check_cocartesian_functor(identity_functor(a.total), a, a)[0]


@pytest.mark.parametrize("seed", range(5))
def test_postcomposition_is_cocartesian_over_F(seed):
    rng = random.Random(seed)
    C, D = corpus.small_category(rng, 3), corpus.small_category(rng, 3)
    F = corpus.random_functor(rng, C, D)
    if F is None:
        return
    ac, ad = arrow(C), arrow(D)
    F_star = arrow_functor(ac, ad, F)
    ok, _ = check_cocartesian_functor(F_star, FibrationAnalysis(ac["ev1"]),
                                      FibrationAnalysis(ad["ev1"]), F)
    assert ok


def test_collapsing_a_lift_is_not_cocartesian():
    I = chain_category(1)
    P = product(I, I)
    diag = CatFunctor(I, P.category, {"0": "<0,0>", "1": "<1,1>"},
                      {"id_0": "<id_0,id_0>", "id_1": "<id_1,id_1>", "0~1": "<0~1,0~1>"})
    ok, bad = check_cocartesian_functor(diag, FibrationAnalysis(identity_functor(I)),
                                        FibrationAnalysis(P["pr0"]))
    assert not ok and bad[1] == "0~1"


# Invariants.

@pytest.mark.parametrize("p", corpus_fibrations(), ids=lambda p: p.name)
def test_left_cancellation_and_iso_lifts(p):
    a = FibrationAnalysis(p)
    assert check_left_cancellation(a) == []
    assert check_iso_lifts(a) == []


def test_crafted_cancellation_claim_fails():
    # Claiming every morphism of [1] -> * cocartesian breaks both lemmas.
    a = FibrationAnalysis(collapse(walking_arrow()))
    assert check_iso_lifts(a, claimed=set(a.total.morphisms))
    assert check_left_cancellation(a, first=set(a.total.morphisms))


@pytest.mark.parametrize("seed", range(8))
def test_pullback_stability(seed):
    rng = random.Random(seed)
    p, Y = corpus.random_fibration(rng)
    a = FibrationAnalysis(p)
    G = corpus.random_functor(rng, corpus.small_category(rng, 3), Y)
    if G is None or not a.is_fibration:
        return
    q, cocart, _ = pullback_fibration(a, G)
    assert q.is_fibration and cocart


def test_pullback_of_non_fibration_is_reported():
    p = corpus.inclusion_of_bottom()
    q, cocart, _ = pullback_fibration(FibrationAnalysis(p), identity_functor(p.target))
    assert not q.is_fibration and cocart is None


# Free cocartesian fibrations.

def test_free_on_identity_is_ev1():
    Y = walking_arrow()
    free = free_cocartesian_fibration(identity_functor(Y))
    assert free.analysis.is_fibration
    assert free.q.source.size() == arrow(Y).category.size()
    r = free_universal_property(free, FibrationAnalysis(arrow(Y)["ev1"]))
    assert r["ok"] and r["bijective"]


def test_free_on_a_point():
    Y = chain_category(2)
    T = terminal_category()
    G = CatFunctor(T, Y, {"*": "0"}, {"id_*": "id_0"}, "pick0")
    free = free_cocartesian_fibration(G)
    # Objects are the arrows out of 0: a coslice shape.
    assert len(free.q.source.objects) == 3
    for target in (FibrationAnalysis(arrow(Y)["ev1"]), FibrationAnalysis(product(Y, walking_arrow())["pr0"])):
        r = free_universal_property(free, target)
        assert r["ok"] and r["bijective"] == r["gaunt"] or r["bijective"]


@pytest.mark.parametrize("seed", range(6))
def test_free_lifts_are_postcomposition(seed):
    rng = random.Random(seed)
    C, Y = corpus.small_category(rng, 2), corpus.small_category(rng, 3)
    G = corpus.random_functor(rng, C, Y)
    if G is None:
        return
    free = free_cocartesian_fibration(G)
    assert free.analysis.is_fibration
    pieces = free.pb.extra["obj_pieces"]
    for (x, k), f in free.analysis.lifts.items():
        assert oracles.is_cocartesian(free.q, f)
        c, h = pieces[x]
        c2, h2 = pieces[free.q.source.tgt(f)]
        assert c2 == c and h2 == Y.comp(k, h)
    rep = check_adjunction(free.adjunction)
    assert rep.ok and rep.unit_invertible


def test_free_property_needs_fibration():
    free = free_cocartesian_fibration(identity_functor(chain_category(1)))
    with pytest.raises(HypothesisFailed):
        free_universal_property(free, FibrationAnalysis(corpus.inclusion_of_bottom()))


# Directed lifts.

def test_directed_lift_along_identity_is_H():
    p = arrow(walking_arrow())["ev1"]
    a = FibrationAnalysis(p)
    X = p.source
    for H in enumerate_functors(walking_arrow(), X)[:4]:
        adj = identity_adjunction(H.source)
        K = compose_functors(p, H)
        al = NatTransformation(K, K, {x: K.target.identity[K.obj[x]] for x in H.source.objects})
        d = directed_lift(adj, a, H, K, al)
        assert d.L.obj == H.obj and d.L.mor == H.mor
        assert d.certificate["initial"]


def test_directed_lift_on_seeded_instances():
    from laxenv.cli.suites import SUITES, run_check
    s = SUITES["directed-lift"]
    rng = random.Random(17)
    for _ in range(5):
        flag, info = run_check(s, s.build(rng))
        assert flag, info
    assert not run_check(s, s.crafted())[0]


# Relative adjunctions.

def test_gluing_over_terminal_is_ordinary():
    rng = random.Random(2)
    adj = corpus.random_adjunction(rng, 3)
    p = collapse(adj.A)
    q = collapse(adj.B)
    rel = glue_fiberwise_adjoints(adj.left, FibrationAnalysis(p), FibrationAnalysis(q),
                                  search_fiber_adjoints(adj.left, p, q))
    assert rel.certificate["fiber_restriction_exact"]
    back = split_relative_adjoint(rel)["*"]
    assert back.right.obj == rel.adjunction.right.obj
    assert check_adjunction(back).ok


@pytest.mark.parametrize("seed", range(10))
def test_gluing_over_fibred_pairs(seed):
    F, p, q = corpus.fibred_pair(random.Random(seed))
    pa, qa = FibrationAnalysis(p), FibrationAnalysis(q)
    rel = glue_fiberwise_adjoints(F, pa, qa, search_fiber_adjoints(F, p, q))
    c = rel.certificate
    assert c["over_base"] and c["fiber_restriction_exact"]
    # The right adjoint is cocartesian exactly when every transition square
    # is adjointable.
    assert c["right_adjoint_cocartesian"] == all(c["adjointable_edges"].values())
    for i, adj in split_relative_adjoint(rel).items():
        assert check_adjunction(adj).ok


def test_non_adjointable_transition_gives_non_cocartesian_right_adjoint():
    # Over [1] with fibers [1] -> [1] (identity transition) on the source and
    # [1] -> * on the target; the right adjoint picks the top of [1] over 1
    # but the transition on the target side does not match it.
    found = None
    for seed in range(200):
        F, p, q = corpus.fibred_pair(random.Random(seed))
        rel = glue_fiberwise_adjoints(F, FibrationAnalysis(p), FibrationAnalysis(q),
                                      search_fiber_adjoints(F, p, q))
        if not rel.certificate["right_adjoint_cocartesian"]:
            found = rel
            break
    assert found is not None
    assert not all(found.certificate["adjointable_edges"].values())


def test_missing_fiber_adjoint_names_fiber():
    P = product(terminal_category(), discrete_category(["u", "v"]))
    Q = product(terminal_category(), terminal_category())
    F = CatFunctor(P.category, Q.category, {x: "<*,*>" for x in P.category.objects},
                   {m: "<id_*,id_*>" for m in P.category.morphisms})
    with pytest.raises(FiberAdjointMissing) as e:
        search_fiber_adjoints(F, P["pr0"], Q["pr0"])
    assert e.value.ids[0] == "*"


@pytest.mark.parametrize("seed", range(5))
def test_base_change(seed):
    from laxenv.cli.suites import SUITES, run_check
    s = SUITES["base-change"]
    flag, info = run_check(s, s.build(random.Random(seed)))
    assert flag, info


def test_base_change_along_identity():
    F, p, q = corpus.fibred_pair(random.Random(4))
    rel = glue_fiberwise_adjoints(F, FibrationAnalysis(p), FibrationAnalysis(q),
                                  search_fiber_adjoints(F, p, q))
    bc = base_change(rel, identity_functor(p.target))
    assert bc.certificate == {"adjunction": True, "over_base": True}
    assert len(bc.adjunction.A.objects) == len(rel.adjunction.A.objects)


# Decomposition of squares.

@pytest.mark.parametrize("C", [terminal_category(), walking_arrow(), corpus.z2()],
                         ids=lambda C: C.name)
def test_decomposition_square(C):
    r = check_decomposition_square(C)
    assert r["commutes"] and r["pullback"]


def test_decomposition_square_refuses_oversized_input():
    # Arr(Arr(End2)) has about 39 million composable pairs.
    with pytest.raises(SizeExceeded):
        check_decomposition_square(corpus.end2())
