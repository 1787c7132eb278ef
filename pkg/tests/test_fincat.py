import random

import pytest
from hypothesis import given, settings, strategies as st

from laxenv.errors import MissingComposite, NonAssociative, SizeExceeded, UnitLawViolation
from laxenv.fincat import (CatFunctor, FinCategory, NatTransformation, analyze_functor, arrow,
                           chain_category, comma, compose_functors, construct_derived_category,
                           discrete_category, enumerate, enumerate_functors,
                           enumerate_transformations, fiber, find_initial_object,
                           find_terminal_object, functor_category, hcomp, identity_functor,
                           identity_transformation, isomorphism_classes, opposite, product,
                           pullback, validate_category, validate_functor, vcomp, walking_arrow,
                           walking_iso, terminal_category, whisker_left, whisker_right)
from laxenv.cli import corpus

import oracles


def corpus_categories():
    rng = random.Random(11)
    cats = [terminal_category(), walking_arrow(), walking_iso(), chain_category(2),
            discrete_category(["x", "y"]), corpus.z2(), corpus.end2(), corpus.idempotent_monoid()]
    cats += [corpus.small_category(rng, 3) for _ in range(8)]
    return cats


def check_laws(C):
    for x in C.objects:
        assert C.morphisms[C.identity[x]] == (x, x)
    for f, (a, b) in C.morphisms.items():
        assert C.comp(f, C.identity[a]) == f
        assert C.comp(C.identity[b], f) == f
        for g in C.out_of(b):
            assert C.morphisms[C.comp(g, f)] == (a, C.tgt(g))
            for h in C.out_of(C.tgt(g)):
                assert C.comp(h, C.comp(g, f)) == C.comp(C.comp(h, g), f)


# Validation.

def test_terminal_and_walking_arrow_validate():
    assert validate_category(terminal_category()).size() == (1, 1)
    W = validate_category(walking_arrow())
    assert W.comp("f", "id_a") == "f"


def test_perturbed_chain_is_non_associative():
    # A 3-chain with an extra parallel arrow 0 -> 3; routing one composite
    # through it breaks associativity.
    base = chain_category(3)
    morphisms = dict(base.morphisms)
    morphisms["alt"] = ("0", "3")
    comp = dict(base.composition)
    for (g, f), h in list(comp.items()):
        if h == "0~3":
            comp[(g, f)] = h
    for x in base.objects:
        if x == "0":
            comp[("alt", "id_0")] = "alt"
        if x == "3":
            comp[("id_3", "alt")] = "alt"
    comp[("2~3", "0~2")] = "alt"
    raw = {"objects": base.objects, "morphisms": morphisms, "identity": base.identity,
           "composition": comp}
    with pytest.raises(NonAssociative):
        validate_category(raw)


def test_missing_composite_and_unit_violation():
    W = walking_arrow()
    comp = dict(W.composition)
    del comp[("id_b", "f")]
    with pytest.raises(MissingComposite):
        validate_category(FinCategory(W.objects, W.morphisms, W.identity, comp))
    comp = dict(W.composition)
    comp[("id_a", "id_a")] = "id_a"
    morphisms = dict(W.morphisms, e=("a", "a"))
    comp.update({("e", "id_a"): "e", ("id_a", "e"): "e", ("e", "e"): "id_a",
                 ("f", "e"): "f"})
    comp[("f", "id_a")] = "f"
    bad = FinCategory(W.objects, morphisms, {"a": "e", "b": "id_b"}, comp)
    with pytest.raises(UnitLawViolation):
        validate_category(bad)


@pytest.mark.parametrize("C", corpus_categories(), ids=lambda C: C.name)
def test_corpus_categories_obey_laws(C):
    validate_category(C)
    check_laws(C)


# Derived constructions.

def test_arrow_of_terminal_is_terminal():
    d = arrow(terminal_category())
    assert d.category.size() == (1, 1)
    assert d["ev0"] == d["ev1"]
    assert d["ev0"].obj == {"id_*": "*"}


def test_pullback_of_identities():
    C = walking_arrow()
    pb = pullback(identity_functor(C), identity_functor(C))
    assert pb.category.size() == C.size()
    for name in ("pr0", "pr1"):
        F = pb[name]
        assert sorted(F.obj.values()) == sorted(C.objects)
        assert sorted(F.mor.values()) == sorted(C.morphisms)
    assert pb["pr0"].obj == pb["pr1"].obj


def test_functor_category_of_walking_arrow():
    W = walking_arrow()
    fc = functor_category(W, W)
    assert len(fc.category.objects) == 3 == len(oracles.all_functors(W, W))
    # Transformations form a poset: at most one morphism per ordered pair.
    C = fc.category
    assert all(len(C.hom(x, y)) <= 1 for x in C.objects for y in C.objects)
    assert len(C.morphisms) == sum(len(oracles.all_transformations(F, G))
                                   for F in enumerate_functors(W, W)
                                   for G in enumerate_functors(W, W))
    validate_category(C)


@pytest.mark.parametrize("C", corpus_categories()[:8], ids=lambda C: C.name)
def test_derived_categories_validate(C):
    for d in (opposite(C), product(C, walking_arrow()), arrow(C),
              comma(identity_functor(C), identity_functor(C))):
        validate_category(d.category)
        for F in d.functors.values():
            validate_functor(F)


def test_product_counts():
    P = product(walking_arrow(), chain_category(2)).category
    assert P.size() == (6, 3 * 6)


def test_construct_by_kind():
    C = walking_arrow()
    assert construct_derived_category("opposite", C).category.morphisms["f"] == ("b", "a")
    with pytest.raises(ValueError):
        construct_derived_category("coend", C)


def test_size_cap_is_loud():
    with pytest.raises(SizeExceeded):
        product(chain_category(4), chain_category(4), cap=10)


def test_fiber_of_projection():
    C, D = walking_arrow(), walking_iso()
    p = product(C, D)["pr0"]
    Fa, inc = fiber(p, "a")
    assert len(Fa.objects) == 2 and len(Fa.morphisms) == len(D.morphisms)
    validate_category(Fa)


# Enumeration against the brute-force oracle.

def test_enumeration_examples():
    W = walking_arrow()
    T = terminal_category()
    assert len(enumerate("functors", T, W)) == len(W.objects)
    assert len(enumerate("functors", W, W)) == 3
    idW = identity_functor(W)
    assert len(enumerate("nat_transformations", idW, idW)) == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_functor_enumeration_matches_oracle(seed):
    rng = random.Random(seed)
    C, D = corpus.small_category(rng, 3), corpus.small_category(rng, 3)
    got = sorted(F.key() for F in enumerate_functors(C, D))
    want = sorted((tuple(sorted(o.items())), tuple(sorted(m.items())))
                  for o, m in oracles.all_functors(C, D))
    assert got == want


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_transformation_enumeration_matches_oracle(seed):
    rng = random.Random(seed)
    C, D = corpus.small_category(rng, 3), corpus.small_category(rng, 3)
    fs = enumerate_functors(C, D)
    if not fs:
        return
    F, G = rng.choice(fs), rng.choice(fs)
    got = sorted(tuple(sorted(t.components.items())) for t in enumerate_transformations(F, G))
    want = sorted(tuple(sorted(c.items())) for c in oracles.all_transformations(F, G))
    assert got == want


# Transformations.

@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_vertical_and_horizontal_composition(seed):
    rng = random.Random(seed)
    C, D, E = (corpus.small_category(rng, 3) for _ in range(3))
    fs, gs = enumerate_functors(C, D), enumerate_functors(D, E)
    if not fs or not gs:
        return
    F, G = rng.choice(fs), rng.choice(fs)
    H, K = rng.choice(gs), rng.choice(gs)
    al = enumerate_transformations(F, G)
    be = enumerate_transformations(H, K)
    if not al or not be:
        return
    a, b = rng.choice(al), rng.choice(be)
    # Identity is neutral for vertical composition.
    assert vcomp(identity_transformation(G), a).components == a.components
    # Both whiskering orders of the horizontal composite agree.
    one = vcomp(whisker_right(b, G), whisker_left(H, a))
    two = vcomp(whisker_left(K, a), whisker_right(b, F))
    assert hcomp(b, a).components == one.components == two.components


# Analysis.

def test_analyze_functor_examples():
    W, I, T = walking_arrow(), walking_iso(), terminal_category()
    assert all(analyze_functor(identity_functor(W)).values())
    const = CatFunctor(W, T, {"a": "*", "b": "*"}, {f: "id_*" for f in W.morphisms})
    r = analyze_functor(const)
    assert r["essentially_surjective"] and not r["fully_faithful"]
    incl = CatFunctor(T, I, {"*": "a"}, {"id_*": "id_a"})
    r = analyze_functor(incl)
    assert r["fully_faithful"] and r["essentially_surjective"] and not r["iso_on_objects"]


def test_terminal_objects():
    assert find_terminal_object(terminal_category())[0] == "*"
    assert find_terminal_object(walking_arrow())[0] == "b"
    assert find_initial_object(walking_arrow())[0] == "a"
    assert find_terminal_object(discrete_category(["x", "y"]))[0] is None


def test_isomorphism_classes():
    assert isomorphism_classes(walking_iso()) == [["a", "b"]]
    assert isomorphism_classes(walking_arrow()) == [["a"], ["b"]]


def test_composition_of_functors():
    W = walking_arrow()
    for F in enumerate_functors(W, W):
        assert compose_functors(identity_functor(W), F) == F
        validate_functor(compose_functors(F, F))


def test_bad_transformation_rejected():
    from laxenv.errors import ValidationError
    from laxenv.fincat import validate_transformation
    M = corpus.end2()
    I = identity_functor(M)
    with pytest.raises(ValidationError):
        validate_transformation(NatTransformation(I, I, {"*": "sw"}))
