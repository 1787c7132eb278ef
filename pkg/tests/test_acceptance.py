"""Acceptance criteria 1 to 8.

Each test records one pass/fail line (with its elapsed time against the
budget); ``conftest.py`` prints the collected lines at the end of the run.
"""
import itertools
import random
import time
from contextlib import contextmanager

from laxenv import envelope as ev
from laxenv import simplex
from laxenv import twocat as tc
from laxenv.adjunction import arrow_adjunctions, check_adjunction
from laxenv.cli import corpus, suites
from laxenv.fibration import check_cocartesian_fibration, check_decomposition_square
from laxenv.fincat import (arrow, chain_category, discrete_category, pair_id, product,
                           terminal_category, walking_arrow, walking_iso)

import oracles

RESULTS = []


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < budget
        RESULTS.append("criterion %d %s: %s (%.1fs of %ds)"
                       % (number, title, "PASS" if ok and within else "FAIL", elapsed, budget))
    assert within, "criterion %d took %.1fs, budget %ds" % (number, elapsed, budget)


def test_c1_active_inert_factorization():
    with criterion(1, "active-inert factorization", 5):
        count = 0
        for n in range(6):
            for m in range(6):
                # Brute force: bucket every active-then-inert composite by
                # its value tuple.
                found = {}
                for k in range(m + 1):
                    for u in oracles.endpoint_preserving(n, k):
                        for w in oracles.monotone_maps(k, m):
                            if oracles.is_interval(w):
                                found.setdefault(tuple(w[i] for i in u), []).append((k, u, w))
                maps = simplex.enumerate_simplex_maps(n, m)
                assert [a.values for a in maps] == list(oracles.monotone_maps(n, m))
                for alpha in maps:
                    active, inert = simplex.factorize_active_inert(alpha)
                    assert active.then(inert) == alpha
                    assert found[alpha.values] == [(active.m, active.values, inert.values)], alpha
                    count += 1
        assert count == sum(len(oracles.monotone_maps(n, m)) for n in range(6) for m in range(6))


def category_corpus():
    rng = random.Random(11)
    cats = [terminal_category(), walking_arrow(), walking_iso(), chain_category(2),
            chain_category(3), discrete_category(["x", "y"]), corpus.z2(), corpus.idempotent_monoid(),
            product(walking_arrow(), walking_arrow()).category]
    cats += [corpus.random_poset(rng, 3, "poset%d" % i) for i in range(2)]
    cats += [corpus.small_category(rng, 3) for _ in range(2)]
    return cats


def test_c2_arrow_category_fibrations():
    with criterion(2, "arrow-category fibrations", 30):
        cats = category_corpus()
        assert len(cats) >= 10 and all(len(C.objects) <= 6 for C in cats)
        for C in cats:
            arr = arrow(C)
            assert check_cocartesian_fibration(arr["ev1"]).is_fibration, C.name
            lower, upper = arrow_adjunctions(C, arr)
            assert check_adjunction(lower).ok and check_adjunction(upper).ok, C.name
            sq = check_decomposition_square(C)
            assert sq["commutes"] and sq["pullback"], C.name


def test_c3_lemma_suites():
    with criterion(3, "lemma suites", 300):
        assert len(suites.LEMMA_SUITES) == 13
        bad = []
        for name in suites.LEMMA_SUITES:
            rep = suites.run_suite(name, "acceptance", 20)
            if not (rep.counts["instances"] >= 20 and rep.counts["passed"] == 20
                    and rep.counts["crafted_rejected"] == 1):
                bad.append((name, rep.counts, rep.witnesses))
        assert not bad, bad


def test_c4_envelope_structure():
    with criterion(4, "envelope structure", 120):
        for A in corpus.two_category_corpus():
            assert len(A.objects) <= 3
            assert all(len(A.hom(a, b).morphisms) <= 6 for a, b in A.hom_pairs())
            E = ev.build_envelope(A, 4)
            tc.validate_two_category(E)
            r = tc.check_globular_complete(tc.segal_fibers(E, 2))
            assert r["globular"] and r["complete"], (A.name, r["witnesses"])
            i = ev.iota(E)
            assert tc.validate_lax_functor(i)["ok"], A.name
            assert tc.lax_lift_report(i)["inert_cocartesian"], A.name


def power(m):
    return "<>*" if m == 0 else pair_id(*["1"] * m)


def test_c5_walking_monad():
    with criterion(5, "walking monad", 60):
        E = ev.build_envelope(tc.point(), 4)
        H = E.hom("*", "*")
        for m, m2 in itertools.product(range(5), repeat=2):
            assert len(H.hom(power(m), power(m2))) == len(oracles.endpoint_preserving(m2, m))
        P = tc.point()
        Ep = ev.build_envelope(P, 3)
        for B in (tc.b_end1(), tc.b_z2(), tc.b_max(), tc.b_min()):
            assert len(B.objects) == 1 and len(B.home2) <= 8
            lax = tc.enumerate_lax_functors(P, B)
            seen = {(L.cells1["1"], L.delta["*"], L.gamma[("1", "1")]) for L in lax}
            one = B.id1(B.objects[0])
            H1 = B.hom(B.objects[0], B.objects[0])
            expected = {(T, u, mu) for T in B.home1 for u in H1.hom(one, T)
                        for mu in H1.hom(B.comp1(T, T), T)
                        if oracles.monad_law_holds(B, T, u, mu)}
            assert seen == expected, B.name
            r = ev.classification_counts(P, B, Ep)
            assert r["ok"] and r["lax"] == len(expected), (B.name, r)


def test_c6_classification_bijection():
    with criterion(6, "classification bijection", 600):
        pairs = 0
        for A in corpus.two_category_corpus():
            E = ev.build_envelope(A, 3)
            for B in corpus.target_corpus():
                r = ev.classification_counts(A, B, E)
                assert r["restrict_classify"] and r["classify_restrict"], (A.name, B.name)
                assert r["lax"] == r["strict"], (A.name, B.name, r)
                pairs += 1
        assert pairs >= 5


def test_c7_lambda_left_adjoint():
    with criterion(7, "lambda left adjoint to iota", 120):
        for A in corpus.two_category_corpus():
            E = ev.build_envelope(A, 3)
            for a, b in A.hom_pairs():
                rep = check_adjunction(ev.hom_adjunction(E, a, b))
                assert rep.ok and rep.counit_invertible, (A.name, a, b)
            r = ev.check_equivalent_characterizations(ev.lambda_functor(E))
            assert r["agree"] and all(r["conditions"].values()), (A.name, r)
            functors = [F for _, F in corpus.sect_corpus(A)]
            functors.append(corpus.crafted_sect_failures(A))
            for F in functors:
                r = ev.check_equivalent_characterizations(F)
                assert r["agree"], (A.name, F.name, r)


def test_c8_initiality():
    with criterion(8, "initiality", 900):
        entries = 0
        for A in corpus.two_category_corpus():
            E = ev.build_envelope(A, 3)
            r = ev.verify_initiality(E, corpus.sect_corpus(A, E), method="lax")
            for e in r["entries"]:
                assert e["lifts"] >= 1 and e["iso_classes"] == 1, (A.name, e)
                assert e["automorphisms"] == [1] and not e["flagged"], (A.name, e)
                entries += 1
        assert entries == 4 * len(corpus.two_category_corpus())
