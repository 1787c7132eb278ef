import itertools

import pytest

from laxenv import twocat as tc
from laxenv.errors import NonAssociativeComposition, TruncationMismatch, TruncationTooSmall
from laxenv.fincat import CatFunctor, chain_category, monoid_category, pullback, walking_iso
from laxenv.simplex import SimplexMap, classify_simplex_map
from laxenv.cli import corpus

import oracles


def corpus_2cats():
    return corpus.two_category_corpus() + [tc.b_max(), tc.b_min(), tc.b_end1()]


def z2_on_identity():
    """One object, one 1-cell, and the group Z2 of 2-cells on it."""
    H = monoid_category(["e", "s"], lambda g, f: "e" if g == f else "s", "e", obj="1",
                        name="Z2")
    comp2 = {(y, x): ("e" if x == y else "s") for x in "es" for y in "es"}
    return tc.StrictTwoCategory(["*"], {("*", "*"): H}, {"*": "1"}, {("1", "1"): "1"}, comp2,
                                "BBZ2")


# Validation.

@pytest.mark.parametrize("A", corpus_2cats() + [z2_on_identity()], ids=lambda A: A.name)
def test_corpus_validates(A):
    tc.validate_two_category(A)


def test_non_associative_table_rejected():
    table = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"}

    def mult(g, f):
        if g == "e":
            return f
        if f == "e":
            return g
        return table[(g, f)]
    A = tc.one_object_monoid(["e", "a", "b"], mult, "e")
    with pytest.raises(NonAssociativeComposition):
        tc.validate_two_category(A)


@pytest.mark.parametrize("A", corpus_2cats(), ids=lambda A: A.name)
def test_interchange(A):
    for a, b, c in itertools.product(A.objects, repeat=3):
        Hab, Hbc, Hac = A.hom(a, b), A.hom(b, c), A.hom(a, c)
        for a1, a2 in itertools.product(Hab.morphisms, repeat=2):
            if Hab.tgt(a1) != Hab.src(a2):
                continue
            for b1, b2 in itertools.product(Hbc.morphisms, repeat=2):
                if Hbc.tgt(b1) != Hbc.src(b2):
                    continue
                lhs = A.comp2(Hbc.comp(b2, b1), Hab.comp(a2, a1))
                assert lhs == Hac.comp(A.comp2(b2, a2), A.comp2(b1, a1))


# Segal presentations.

def test_point_fibers_are_terminal():
    pres = tc.segal_fibers(tc.point(), 3)
    for n in range(4):
        assert pres.fibers[n].size() == (1, 1)


def test_walking_arrow_x1():
    pres = tc.segal_fibers(tc.walking_arrow_2cat(), 2)
    assert len(pres.fibers[1].objects) == 3
    assert len(pres.fibers[2].objects) == 4


def test_truncation_must_be_at_least_two():
    with pytest.raises(TruncationTooSmall):
        tc.segal_fibers(tc.point(), 1)


@pytest.mark.parametrize("A", corpus_2cats(), ids=lambda A: A.name)
def test_rebuild_round_trip(A):
    assert tc.rebuild_two_category(tc.segal_fibers(A, 2)) == A


@pytest.mark.parametrize("A", corpus_2cats(), ids=lambda A: A.name)
def test_segal_condition(A):
    pres = tc.segal_fibers(A, 3)
    for n, r in tc.check_segal(pres).items():
        assert r["isomorphism"] and not r["restricted"], n


def test_segal_against_plain_pullback():
    # X_2 against X_1 x_{X_0} X_1 built without the keep filter.
    pres = tc.segal_fibers(tc.walking_two_cell(), 2)
    s = pres.actions[str(SimplexMap(0, 1, (0,)))]
    t = pres.actions[str(SimplexMap(0, 1, (1,)))]
    pb = pullback(t, s)
    assert pb.category.size() == pres.fibers[2].size()


def test_actions_are_functorial():
    pres = tc.segal_fibers(tc.walking_two_cell(), 3)
    base = pres.base
    for (k2, k1), k in base.composition.items():
        F1, F2, F = pres.actions[k1], pres.actions[k2], pres.actions[k]
        assert all(F2.obj[F1.obj[x]] == F.obj[x] for x in F1.source.objects)
        assert all(F2.mor[F1.mor[m]] == F.mor[m] for m in F1.source.morphisms)


# Globularity and completeness.

@pytest.mark.parametrize("A", corpus_2cats(), ids=lambda A: A.name)
def test_corpus_globular_and_completeness(A):
    r = tc.check_globular_complete(tc.segal_fibers(A, 2))
    assert r["globular"]
    # The group Z2 as a one-object 2-category has an invertible 1-cell that
    # is not isomorphic to the identity.
    assert r["complete"] == (A.name != "B_Z2"), r["witnesses"]


def test_invertible_two_cell_on_identity_is_incomplete():
    r = tc.check_globular_complete(tc.segal_fibers(z2_on_identity(), 2))
    assert r["globular"] and not r["complete"]
    assert r["witnesses"][0][0] == "nontrivial automorphism" and r["witnesses"][0][2] == 2


def test_equivalence_between_distinct_objects_is_incomplete():
    A = tc.locally_discrete(walking_iso())
    r = tc.check_globular_complete(tc.segal_fibers(A, 2))
    assert not r["complete"]
    assert any(w[0] == "equivalence not isomorphic to an identity" for w in r["witnesses"])


# Strict and lax functors.

def test_identity_functor_strict_and_lax():
    for A in corpus_2cats():
        F = tc.identity_two_functor(A)
        assert tc.validate_strict_two_functor(F)["ok"]
        L = tc.as_lax(F)
        assert tc.validate_lax_functor(L)["ok"] and L.is_strict()


@pytest.mark.parametrize("B", corpus.target_corpus()[:4], ids=lambda B: B.name)
def test_monads_match_oracle(B):
    (b,) = B.objects
    H = B.hom(b, b)
    e = B.id1(b)
    want = sorted((T, u, m) for T in H.objects for u in H.hom(e, T)
                  for m in H.hom(B.comp1(T, T), T) if oracles.monad_law_holds(B, T, u, m))
    assert sorted(tc.monads(B)) == want
    # Every triple is a lax functor from the point exactly when the laws hold.
    for T in H.objects:
        for u in H.hom(e, T):
            for m in H.hom(B.comp1(T, T), T):
                L = tc.monad_to_lax(B, T, u, m)
                assert tc.validate_lax_functor(L)["ok"] == ((T, u, m) in want)
    assert len(tc.enumerate_lax_functors(tc.point(), B)) == len(want)


def test_monads_in_end1():
    assert tc.monads(tc.b_end1()) == [("c1", "id~c1", "id_c1"), ("id", "id_id", "id_id")]


def test_non_natural_gamma_is_named():
    A, B = tc.walking_two_cell(), z2_on_identity()
    H = A.hom("a", "b")
    (alpha,) = [m for m in H.morphisms if not H.is_identity(m)]
    cells2 = {m: ("s" if m == alpha else "e") for m in A.home2}
    gamma = {k: "e" for k in tc.composable_pairs(A)}
    good = tc.LaxFunctor(A, B, {"a": "*", "b": "*"}, {f: "1" for f in A.home1}, cells2,
                         {"a": "e", "b": "e"}, gamma)
    assert tc.validate_lax_functor(good)["ok"]
    bad = tc.LaxFunctor(A, B, good.obj, good.cells1, good.cells2, good.delta,
                        dict(gamma), "bad")
    bad.gamma[("g", "1a")] = "s"
    fails = tc.validate_lax_functor(bad)["failures"]
    assert any(f[0] == "naturality" for f in fails)


def test_strict_functor_failure_named():
    A, B = tc.walking_arrow_2cat(), tc.b_max()
    F = tc.StrictTwoFunctor(A, B, {"a": "*", "b": "*"}, {"1a": "1", "1b": "0", "f": "0"},
                            {m: B.id2("1" if A.src2(m) == "1a" else "0") for m in A.home2})
    fails = tc.validate_strict_two_functor(F)["failures"]
    assert ("identity 1-cell", "a") in fails


def test_pseudo_into_poset_homs_is_strict():
    # Invertible 2-cells in a locally posetal target are identities.
    for A in (tc.point(), tc.walking_arrow_2cat()):
        for B in (tc.b_max(), tc.b_end1()):
            for L in tc.enumerate_lax_functors(A, B):
                assert L.is_pseudo() == L.is_strict()


# Unstraightening.

def test_unstraighten_point_is_the_base():
    g = tc.unstraighten_two_category(tc.point(), 2)
    base, _ = tc.truncated_delta_op(2)
    assert g.total.size() == base.size()
    assert g.is_fibration


def test_unstraighten_walking_arrow():
    A = tc.walking_arrow_2cat()
    g = tc.unstraighten_two_category(A, 2)
    assert g.is_fibration
    pres = g.presentation
    for n in range(3):
        assert len([o for o, (i, _) in g.obj_pieces.items() if i == str(n)]) == \
            len(pres.fibers[n].objects)


def test_lift_table_edges_classified():
    g = tc.unstraighten_two_category(tc.walking_two_cell(), 2)
    maps = g.functor.simplex_maps
    kinds = {classify_simplex_map(maps[k])["inert"] for (_, k) in g.lifts}
    assert kinds == {True, False}
    for (x, k), f in g.lifts.items():
        assert maps[k].is_inert == classify_simplex_map(maps[k])["inert"]
        assert g.is_cocartesian(f)


# Maps of presentations.

def monad_lax():
    B = tc.b_end1()
    T, u, m = tc.monads(B)[0]
    return tc.monad_to_lax(B, T, u, m)


def test_strict_functor_image_preserves_all_lifts():
    A = tc.walking_arrow_2cat()
    fm = tc.strict_to_fibration_map(tc.identity_two_functor(A))
    r = tc.check_inert_cocartesian(fm)
    assert r["inert_cocartesian"] and r["cocartesian"]
    assert tc.fibration_map_to_lax(fm) == tc.identity_lax(A)


def test_monad_image_is_inert_but_not_cocartesian():
    # The monad c1 on B_end1 has a non-invertible unit: lifts over the
    # degeneracy are missed, lifts over (0,2) are kept.
    L = monad_lax()
    fm = tc.lax_to_fibration_map(L)
    r = tc.check_inert_cocartesian(fm)
    assert r["inert_cocartesian"] and not r["cocartesian"]
    missed = {k for _, k in r["active_missed"]}
    assert str(SimplexMap(1, 0, (0, 0))) in missed
    assert ("<2,<1,1>>", str(SimplexMap(1, 2, (0, 2)))) not in r["active_missed"]
    assert tc.fibration_map_to_lax(fm).key() == L.key()
    # The lifts-only report agrees with the map built in full.
    short = tc.lax_lift_report(L)
    assert short["inert_cocartesian"] == r["inert_cocartesian"]
    assert sorted(short["active_missed"]) == sorted(r["active_missed"])


def test_non_invertible_gamma_misses_the_outer_face():
    A, B = tc.locally_discrete(chain_category(2)), tc.b_end1()
    L = next(L for L in tc.enumerate_lax_functors(A, B)
             if not B.hom_of_cell(L.gamma[("1~2", "0~1")]).is_iso(L.gamma[("1~2", "0~1")]))
    fm = tc.lax_to_fibration_map(L)
    r = tc.check_inert_cocartesian(fm)
    assert r["inert_cocartesian"] and not r["cocartesian"]
    assert ("<2,<0~1,1~2>>", str(SimplexMap(1, 2, (0, 2)))) in r["active_missed"]
    assert tc.fibration_map_to_lax(fm).key() == L.key()
    short = tc.lax_lift_report(L)
    assert sorted(short["active_missed"]) == sorted(r["active_missed"])


def test_delta_gamma_dictionary():
    L = monad_lax()
    fm = tc.lax_to_fibration_map(L)
    gX, gY, F = fm.source, fm.target, fm.functor
    s0 = str(SimplexMap(1, 0, (0, 0)))
    d1 = str(SimplexMap(1, 2, (0, 2)))
    over_s0 = gY.pieces[F.mor[gX.lift("<0,*>", s0)]][2]
    assert over_s0 == "<%s>" % L.delta["*"]
    over_d1 = gY.pieces[F.mor[gX.lift("<2,<1,1>>", d1)]][2]
    assert over_d1 == "<%s>" % L.gamma[("1", "1")]


def test_crafted_inert_failure_is_named():
    A = tc.point()
    B = tc.b_max()
    L = tc.as_lax(tc.StrictTwoFunctor(A, B, {"*": "*"}, {"1": "0"}, {A.id2("1"): B.id2("0")}))
    fm = tc.lax_to_fibration_map(L)
    gX, gY, F = fm.source, fm.target, fm.functor
    maps = gX.functor.simplex_maps
    (x, k), f = next(((x, k), f) for (x, k), f in sorted(gX.lifts.items())
                     if maps[k].is_inert and maps[k].n == 1 and maps[k].m == 1)
    # Replace the image of that lift by a non-cocartesian morphism out of
    # the same object over the same edge.
    src = F.obj[x]
    bad = next(m for m, (kk, y, _) in sorted(gY.pieces.items())
               if kk == k and gY.total.src(m) == src and not gY.is_cocartesian(m))
    G = CatFunctor(F.source, F.target, F.obj, dict(F.mor, **{f: bad}), "corrupted")
    r = tc.check_inert_cocartesian(tc.FibrationMap(gX, gY, G, fm.N))
    assert not r["inert_cocartesian"] and (x, k) in r["failures"]


def test_truncation_guards():
    with pytest.raises(TruncationTooSmall):
        tc.lax_to_fibration_map(monad_lax(), 2)
    L = monad_lax()
    gX = tc.unstraighten_two_category(L.source, 4)
    gY = tc.unstraighten_two_category(L.target, 3)
    with pytest.raises(TruncationMismatch):
        tc.lax_to_fibration_map(L, 3, gX, gY)


@pytest.mark.parametrize("A", [tc.point(), tc.walking_arrow_2cat()], ids=lambda A: A.name)
@pytest.mark.parametrize("B", [tc.b_max(), tc.b_end1(), tc.b_z2()], ids=lambda B: B.name)
def test_round_trip_over_corpus(A, B):
    gX = tc.unstraighten_two_category(A, 3)
    gY = tc.unstraighten_two_category(B, 3, check=False)
    for L in tc.enumerate_lax_functors(A, B)[:12]:
        fm = tc.lax_to_fibration_map(L, 3, gX, gY)
        assert tc.check_inert_cocartesian(fm)["inert_cocartesian"]
        assert tc.fibration_map_to_lax(fm).key() == L.key()
        assert tc.check_inert_cocartesian(fm)["cocartesian"] == L.is_pseudo()
