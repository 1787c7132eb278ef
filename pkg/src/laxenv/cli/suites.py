"""Seeded verification suites for the adjunction and fibration lemmas, the
active-inert factorization and the initiality of the envelope.

Every lemma suite generates instances satisfying its hypotheses (the flag
must hold) plus one crafted instance violating them (the flag must fail).
An instance is a dict of named roles; failures come with a reproducer spec
that re-runs the same check through ``check lemma``.
"""
import random
import time

from .. import simplex
from ..adjunction import (CommutingSquare, _pullback_cube, check_adjunction, double_mate,
                          hom_action_equivalence, mate_between_adjoints, pullback_adjunction,
                          search_adjoint)
from ..errors import HypothesisFailed, NotOverBase, SizeExceeded, UnknownSuite
from ..fibration import (FibrationAnalysis, RelativeAdjunction, base_change, check_over_base,
                         check_iso_lifts, check_left_cancellation, directed_lift,
                         free_cocartesian_fibration, free_universal_property,
                         glue_fiberwise_adjoints, pullback_fibration, search_fiber_adjoints)
from ..fincat import (CatFunctor, NatTransformation, chain_category, compose_functors,
                      enumerate_functors, enumerate_transformations, identity_functor,
                      pullback, terminal_category, vcomp, walking_arrow, discrete_category)
from . import corpus
from .dump import SpecWriter
from .report import Report


class Suite:
    def __init__(self, name, anchor, build, crafted, check):
        self.name = name
        self.anchor = anchor
        self.build = build
        self.crafted = crafted
        self.check = check


SUITES = {}


def _register(name, anchor):
    def wrap(cls):
        SUITES[name] = Suite(name, anchor, cls.build, cls.crafted, cls.check)
        return cls
    return wrap


def run_check(suite, inst):
    """``(flag, info)``; a violated hypothesis detected by the library
    counts as a failed flag."""
    try:
        flag, info = suite.check(inst)
    except HypothesisFailed as e:
        return False, {"hypothesis": str(e)}
    return bool(flag), info


# Hom-action equivalence.

@_register("hom-equivalence", "transposition between comma descriptions is an inverse pair")
class _HomEquivalence:
    @staticmethod
    def build(rng):
        return {"adj": corpus.random_adjunction(rng)}

    @staticmethod
    def crafted():
        return {"adj": corpus.bogus_z2_adjunction()}

    @staticmethod
    def check(inst):
        adj = inst["adj"]
        he = hom_action_equivalence(adj)
        return he.inverse_pair, {"triangles": check_adjunction(adj).ok}


# Mates.

def _adjoints_between(rng, A, B, k):
    fs = enumerate_functors(A, B)
    rng.shuffle(fs)
    out = []
    for F in fs:
        res = search_adjoint(F, "right")
        if res:
            out.append(res.adjunction)
        if len(out) == k:
            break
    return out


@_register("mate-functoriality", "mates commute with vertical composition and identities")
class _MateFunctoriality:
    @staticmethod
    def build(rng):
        for _ in range(50):
            A, B = corpus.small_category(rng, 3), corpus.small_category(rng, 3)
            adjs = _adjoints_between(rng, A, B, 3)
            if not adjs:
                continue
            a1, a2, a3 = (rng.choice(adjs) for _ in range(3))
            sig = enumerate_transformations(a1.right, a2.right)
            tau = enumerate_transformations(a2.right, a3.right)
            if sig and tau:
                return {"adj1": a1, "adj2": a2, "adj3": a3, "sigma": rng.choice(sig),
                        "tau": rng.choice(tau)}
        a = corpus.identity_adjunction_of(chain_category(1))
        from ..fincat import identity_transformation
        t = identity_transformation(a.right)
        return {"adj1": a, "adj2": a, "adj3": a, "sigma": t, "tau": t}

    @staticmethod
    def crafted():
        good = corpus.bogus_z2_adjunction("e", "e")
        bad = corpus.bogus_z2_adjunction()
        from ..fincat import identity_transformation
        t = identity_transformation(good.right)
        return {"adj1": good, "adj2": bad, "adj3": good, "sigma": t, "tau": t}

    @staticmethod
    def check(inst):
        a1, a2, a3 = inst["adj1"], inst["adj2"], inst["adj3"]
        sigma, tau = inst["sigma"], inst["tau"]
        whole = mate_between_adjoints(a1, a3, vcomp(tau, sigma))
        parts = vcomp(mate_between_adjoints(a1, a2, sigma), mate_between_adjoints(a2, a3, tau))
        from ..fincat import identity_transformation
        ident = all(mate_between_adjoints(a, a, identity_transformation(a.right)).components ==
                    identity_transformation(a.left).components for a in (a1, a2, a3))
        composite = whole.components == parts.components
        return composite and ident, {"composition": composite, "identities": ident}


# Middle-four interchange.

def _hcomp_both(beta, alpha):
    """Both whiskering orders of ``beta * alpha``; ``None`` if they differ."""
    E = beta.codomain
    K, L = beta.source, beta.target
    F, G = alpha.source, alpha.target
    one, two = {}, {}
    for x in F.source.objects:
        one[x] = E.comp(beta[G.obj[x]], K.mor[alpha[x]])
        two[x] = E.comp(L.mor[alpha[x]], beta[F.obj[x]])
    return one if one == two else None


@_register("middle-four", "horizontal and vertical composition interchange")
class _MiddleFour:
    @staticmethod
    def build(rng):
        for _ in range(60):
            C, D, E = (corpus.small_category(rng, 3) for _ in range(3))
            fs, ks = enumerate_functors(C, D), enumerate_functors(D, E)
            if not fs or not ks:
                continue
            F, G, H = (rng.choice(fs) for _ in range(3))
            K, L, M = (rng.choice(ks) for _ in range(3))
            ts = [enumerate_transformations(*p) for p in ((F, G), (G, H), (K, L), (L, M))]
            if all(ts):
                al, al2, be, be2 = (rng.choice(t) for t in ts)
                return {"alpha": al, "alpha2": al2, "beta": be, "beta2": be2}
        raise HypothesisFailed("could not generate a middle-four instance")

    @staticmethod
    def crafted():
        # A component of beta that fails naturality against alpha.
        M, T = corpus.end2(), terminal_category()
        I = identity_functor(M)
        pick = CatFunctor(T, M, {"*": "*"}, {"id_*": "id"}, "pick")
        al = NatTransformation(pick, pick, {"*": "c0"}, "alpha")
        ident = NatTransformation(pick, pick, {"*": "id"}, "ident")
        bad = NatTransformation(I, I, {"*": "sw"}, "unnatural")
        ok = NatTransformation(I, I, {"*": "id"}, "ident")
        return {"alpha": al, "alpha2": ident, "beta": bad, "beta2": ok}

    @staticmethod
    def check(inst):
        al, al2, be, be2 = inst["alpha"], inst["alpha2"], inst["beta"], inst["beta2"]
        E = be.codomain
        h1, h2 = _hcomp_both(be, al), _hcomp_both(be2, al2)
        hv = _hcomp_both(vcomp(be2, be), vcomp(al2, al))
        if h1 is None or h2 is None or hv is None:
            return False, {"well_defined": False}
        vh = {x: E.comp(h2[x], h1[x]) for x in h1}
        return hv == vh, {"well_defined": True}


# Double mates.

@_register("double-mate", "the two ways of adjointing a square agree")
class _DoubleMate:
    @staticmethod
    def build(rng):
        for _ in range(200):
            X = corpus.small_category(rng, 3)
            adjs = _adjoints_between(rng, X, X, 4)
            if not adjs:
                continue
            F0, F1, G0, G1 = (rng.choice(adjs) for _ in range(4))
            V0, V1 = G0.right, G1.right
            src = compose_functors(F1.left, V0)
            tgt = compose_functors(V1, F0.left)
            for al in enumerate_transformations(src, tgt):
                r = double_mate(al, F0, F1, G0, G1)
                if r["beta_invertible"] and r["gamma_invertible"]:
                    return {"alpha": al, "F0": F0, "F1": F1, "G0": G0, "G1": G1}
        raise HypothesisFailed("could not generate a double-mate instance")

    @staticmethod
    def crafted():
        good = corpus.bogus_z2_adjunction("e", "e")
        bad = corpus.bogus_z2_adjunction()
        from ..fincat import identity_transformation
        al = identity_transformation(good.left)
        return {"alpha": al, "F0": bad, "F1": good, "G0": good, "G1": good}

    @staticmethod
    def check(inst):
        r = double_mate(inst["alpha"], inst["F0"], inst["F1"], inst["G0"], inst["G1"])
        if not (r["beta_invertible"] and r["gamma_invertible"]):
            raise HypothesisFailed("mates are not both invertible")
        return r["agree"] is True, {}


# Pullbacks of adjunctions.

@_register("pullback-adjunction", "pullbacks of functors with fully faithful left adjoints")
class _PullbackAdjunction:
    @staticmethod
    def build(rng):
        for _ in range(50):
            adj = corpus.random_adjunction(rng, ff_left=True)
            if not _is_isofibration(adj.right):
                continue
            B = adj.A
            Y = corpus.small_category(rng, 3)
            K = corpus.random_functor(rng, Y, B)
            if K is not None:
                return {"adj": adj, "K": K}
        raise HypothesisFailed("could not generate a pullback instance")

    @staticmethod
    def crafted():
        I, P = chain_category(1), terminal_category()
        F = CatFunctor(I, P, {"0": "*", "1": "*"}, {f: "id_*" for f in I.morphisms}, "const")
        adj = search_adjoint(F, "right").adjunction
        return {"adj": adj, "K": identity_functor(I)}

    @staticmethod
    def check(inst):
        adj, K = inst["adj"], inst["K"]
        U = adj.right
        pb = pullback(K, U)
        sq = CommutingSquare(pb["pr1"], pb["pr0"], U, K)
        res = pullback_adjunction(sq, "ff_left_adjoint", adj)
        c = res.certificate
        return c["adjunction"] and c["fully_faithful"] and c["adjointable"], \
            {"construction": res.construction}


def _is_isofibration(U):
    """Isomorphisms out of ``U a`` lift to isomorphisms out of ``a``; strict
    pullbacks along such functors are the homotopy-correct ones."""
    A, B = U.source, U.target
    for a in A.objects:
        for g in B.out_of(U.obj[a]):
            if B.is_iso(g) and not any(U.mor[f] == g and A.is_iso(f) for f in A.out_of(a)):
                return False
    return True


@_register("pullback-cube", "cube of pullbacks of left adjoints")
class _PullbackCube:
    @staticmethod
    def build(rng):
        for _ in range(50):
            adj = corpus.random_adjunction(rng, 3)
            P0, P1, P2 = (corpus.small_category(rng, 2) for _ in range(3))
            p0, p1 = corpus.random_functor(rng, P0, P2), corpus.random_functor(rng, P1, P2)
            if p0 is None or p1 is None:
                continue
            return _cube_instance(adj, [adj, adj, adj], p0, p1)
        raise HypothesisFailed("could not generate a cube instance")

    @staticmethod
    def crafted():
        I = chain_category(1)
        ident = corpus.identity_adjunction_of(I)
        c0 = CatFunctor(I, I, {"0": "0", "1": "0"}, {"id_0": "id_0", "id_1": "id_0",
                                                      "0~1": "id_0"}, "c0")
        adj = search_adjoint(c0, "right").adjunction
        T = terminal_category()
        p = identity_functor(T)
        return _cube_instance(ident, [ident, ident, adj], p, p)

    @staticmethod
    def check(inst):
        a0, a1 = inst["a0"], inst["a1"]
        b0, b1 = inst["b0"], inst["b1"]
        pbA, pbB = pullback(a0, a1), pullback(b0, b1)
        res = _pullback_cube({"pbA": pbA, "pbB": pbB, "adj0": inst["adj0"],
                              "adj1": inst["adj1"], "adj2": inst["adj2"]})
        return all(v is True for v in res.certificate.values()), \
            {k: v for k, v in sorted(res.certificate.items())}


def _cube_instance(base, adjs, p0, p1):
    """``A_i = X x P_i``, ``B_i = Y x P_i`` with ``adjs[i] x id``."""
    built = []
    for adj, P in zip(adjs, (p0.source, p1.source, p0.target)):
        built.append(corpus.product_adjunction(adj, P))
    (adj0, A0, B0), (adj1, A1, B1), (adj2, A2, B2) = built
    X, Y = base.A, base.B
    a0, _, _ = corpus.product_functor(identity_functor(X), p0, A0, A2)
    a1, _, _ = corpus.product_functor(identity_functor(X), p1, A1, A2)
    b0, _, _ = corpus.product_functor(identity_functor(Y), p0, B0, B2)
    b1, _, _ = corpus.product_functor(identity_functor(Y), p1, B1, B2)
    return {"adj0": adj0, "adj1": adj1, "adj2": adj2, "a0": a0, "a1": a1, "b0": b0, "b1": b1}


# Fibrations.

@_register("pullback-fibration", "pullback of a cocartesian fibration")
class _PullbackFibration:
    @staticmethod
    def build(rng):
        for _ in range(50):
            p, Y = corpus.random_fibration(rng)
            A = corpus.small_category(rng, 3)
            G = corpus.random_functor(rng, A, Y)
            if G is not None:
                return {"p": p, "G": G}
        raise HypothesisFailed("could not generate a fibration instance")

    @staticmethod
    def crafted():
        p = corpus.inclusion_of_bottom()
        return {"p": p, "G": identity_functor(p.target)}

    @staticmethod
    def check(inst):
        q, cocart, _ = pullback_fibration(FibrationAnalysis(inst["p"]), inst["G"])
        return q.is_fibration and cocart is True, {"pullback_fibration": q.is_fibration}


def _random_functor_instance(rng):
    for _ in range(50):
        X, B = corpus.small_category(rng, 4), corpus.small_category(rng, 3)
        p = corpus.random_functor(rng, X, B)
        if p is not None:
            return p
    return identity_functor(walking_arrow())


def _collapse_arrow():
    W, T = walking_arrow(), terminal_category()
    return CatFunctor(W, T, {"a": "*", "b": "*"}, {f: "id_*" for f in W.morphisms}, "collapse")


@_register("left-cancellation", "cancellation of cocartesian morphisms")
class _LeftCancellation:
    @staticmethod
    def build(rng):
        return {"p": _random_functor_instance(rng)}

    @staticmethod
    def crafted():
        return {"p": _collapse_arrow(), "claimed": "all"}

    @staticmethod
    def check(inst):
        an = FibrationAnalysis(inst["p"])
        first = set(an.total.morphisms) if inst.get("claimed") == "all" else None
        bad = check_left_cancellation(an, first)
        return not bad, {"counterexamples": [list(b) for b in bad[:3]]}


@_register("iso-lifts", "cocartesian lifts of isomorphisms are isomorphisms")
class _IsoLifts:
    @staticmethod
    def build(rng):
        return {"p": _random_functor_instance(rng)}

    @staticmethod
    def crafted():
        return {"p": _collapse_arrow(), "claimed": "all"}

    @staticmethod
    def check(inst):
        an = FibrationAnalysis(inst["p"])
        claimed = set(an.total.morphisms) if inst.get("claimed") == "all" else None
        bad = check_iso_lifts(an, claimed)
        return not bad, {"counterexamples": bad[:3]}


@_register("free-fibration", "universal property of the free cocartesian fibration")
class _FreeFibration:
    @staticmethod
    def build(rng):
        for _ in range(50):
            Y = corpus.small_category(rng, 2)
            C = corpus.small_category(rng, 2)
            G = corpus.random_functor(rng, C, Y)
            if G is None:
                continue
            p, _ = corpus.random_fibration(rng, Y)
            if len(p.source.objects) > 8:
                continue
            return {"G": G, "p": p}
        raise HypothesisFailed("could not generate a free-fibration instance")

    @staticmethod
    def crafted():
        p = corpus.inclusion_of_bottom()
        return {"G": identity_functor(p.target), "p": p}

    @staticmethod
    def check(inst):
        free = free_cocartesian_fibration(inst["G"])
        r = free_universal_property(free, FibrationAnalysis(inst["p"]))
        return r["ok"], {k: r[k] for k in ("cocartesian_functors", "functors_over", "gaunt")}


@_register("directed-lift", "initial directed lifts against a cocartesian fibration")
class _DirectedLift:
    @staticmethod
    def build(rng):
        for _ in range(100):
            adj = corpus.random_adjunction(rng, 2)
            p, Y = corpus.random_fibration(rng, corpus.small_category(rng, 2))
            if len(p.source.objects) > 8:
                continue
            K = corpus.random_functor(rng, adj.B, Y)
            H = corpus.random_functor(rng, adj.A, p.source)
            if K is None or H is None:
                continue
            ts = enumerate_transformations(compose_functors(p, H), compose_functors(K, adj.left))
            if ts:
                return {"adj": adj, "p": p, "H": H, "K": K, "alpha": rng.choice(ts)}
        raise HypothesisFailed("could not generate a directed-lift instance")

    @staticmethod
    def crafted():
        p = corpus.inclusion_of_bottom()
        T = terminal_category()
        adj = corpus.identity_adjunction_of(T)
        H = CatFunctor(T, p.source, {"*": "0"}, {"id_*": "id_0"}, "H")
        K = CatFunctor(T, p.target, {"*": "1"}, {"id_*": "id_1"}, "K")
        al = NatTransformation(compose_functors(p, H), compose_functors(K, adj.left),
                               {"*": "0~1"}, "alpha")
        return {"adj": adj, "p": p, "H": H, "K": K, "alpha": al}

    @staticmethod
    def check(inst):
        d = directed_lift(inst["adj"], FibrationAnalysis(inst["p"]), inst["H"], inst["K"],
                          inst["alpha"])
        c = d.certificate
        if c.get("initial") is None:
            raise SizeExceeded("initiality check exceeded the search cap")
        ok = c["initial"] and c["over_alpha"] and c["lies_over_K"]
        if c["ff_case"]:
            ok = ok and c["comparison_invertible"] and c.get("image_characterized") is not False
            ok = ok and c.get("strict_commutation", True)
        return ok, {"competitors": c.get("competitors"), "ff_case": c["ff_case"]}


@_register("fiberwise-gluing", "fiberwise relative adjoints glue; cocartesianness equivalence")
class _FiberwiseGluing:
    @staticmethod
    def build(rng):
        F, p, q = corpus.fibred_pair(rng)
        return {"F": F, "p": p, "q": q}

    @staticmethod
    def crafted():
        T = terminal_category()
        D = discrete_category(["u", "v"])
        from ..fincat import product
        PA, PB = product(T, D), product(T, T)
        F = CatFunctor(PA.category, PB.category, {x: "<*,*>" for x in PA.category.objects},
                       {m: "<id_*,id_*>" for m in PA.category.morphisms}, "collapse")
        return {"F": F, "p": PA["pr0"], "q": PB["pr0"]}

    @staticmethod
    def check(inst):
        F, p, q = inst["F"], inst["p"], inst["q"]
        pa, qa = FibrationAnalysis(p), FibrationAnalysis(q)
        fibers = search_fiber_adjoints(F, p, q)
        rel = glue_fiberwise_adjoints(F, pa, qa, fibers)
        c = rel.certificate
        ok = c["over_base"] and c["fiber_restriction_exact"] and c["equivalence_holds"]
        return ok, {"right_adjoint_cocartesian": c["right_adjoint_cocartesian"],
                    "adjointable_edges": sum(c["adjointable_edges"].values())}


@_register("base-change", "base change of relative adjunctions")
class _BaseChange:
    @staticmethod
    def build(rng):
        F, p, q = corpus.fibred_pair(rng)
        pa, qa = FibrationAnalysis(p), FibrationAnalysis(q)
        rel = glue_fiberwise_adjoints(F, pa, qa, search_fiber_adjoints(F, p, q))
        J = corpus.small_category(rng, 3)
        t = corpus.random_functor(rng, J, p.target) or identity_functor(p.target)
        return {"adj": rel.adjunction, "p": p, "q": q, "t": t}

    @staticmethod
    def crafted():
        adj = corpus.bogus_z2_adjunction("s", "s")
        I = adj.A
        ident = identity_functor(I)
        return {"adj": adj, "p": ident, "q": ident, "t": ident}

    @staticmethod
    def check(inst):
        adj, p, q = inst["adj"], inst["p"], inst["q"]
        if not check_adjunction(adj).ok:
            raise HypothesisFailed("not an adjunction")
        off = check_over_base(adj, p, q)
        if off:
            raise NotOverBase("unit or counit not over an identity at %s" % off[0], *off)
        rel = RelativeAdjunction(p.target, FibrationAnalysis(p), FibrationAnalysis(q), adj, {})
        bc = base_change(rel, inst["t"])
        c = bc.certificate
        return c["adjunction"] and c["over_base"], dict(c)


LEMMA_SUITES = list(SUITES)


# Running.

def _instance_rng(name, seed, index):
    return random.Random("%s:%s:%d" % (name, seed, index))


def reproducer(suite_name, inst, expected, seed=None, index=None):
    """Spec text that re-runs one instance through ``check lemma``."""
    w = SpecWriter()
    where = "crafted instance" if index is None else "seed %s, instance %d" % (seed, index)
    w.comment("reproducer for suite %s (%s); expected flag: %s"
              % (suite_name, where, "pass" if expected else "fail"))
    words = ["check", "lemma", suite_name]
    for role, value in sorted(inst.items()):
        if isinstance(value, str):
            words.append("%s=%s" % (role, value))
        else:
            words.append("%s=%s" % (role, w.add(value, role)))
    w.directive(*words)
    return w.text()


def _run_instance(name, seed, index):
    """One seeded instance; top-level so worker processes can run it."""
    suite = SUITES[name]
    inst = suite.build(_instance_rng(name, seed, index))
    flag, _ = run_check(suite, inst)
    row = {"instance": index, "flag": flag, "expected": True}
    if not flag:
        row["reproducer"] = reproducer(name, inst, True, seed, index)
    return row


def _lemma_report(name, seed, n, jobs=1):
    suite = SUITES[name]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as pool:
            # map keeps instance order whatever the completion order.
            rows = list(pool.map(_run_instance, [name] * n, [seed] * n, range(n)))
    else:
        rows = [_run_instance(name, seed, i) for i in range(n)]
    passed = sum(1 for r in rows if r["flag"])
    witnesses = ["instance %d" % r["instance"] for r in rows if not r["flag"]]
    inst = suite.crafted()
    flag, _ = run_check(suite, inst)
    crafted_ok = flag is False
    row = {"instance": "crafted", "flag": flag, "expected": False}
    if not crafted_ok:
        witnesses.append("crafted")
        row["reproducer"] = reproducer(name, inst, False)
    rows.append(row)
    ok = passed == n and crafted_ok
    return Report("suite " + name, name, ok,
                  counts={"instances": n, "passed": passed, "crafted_rejected": int(crafted_ok)},
                  witnesses=witnesses,
                  details={"lemma": suite.anchor, "instances": rows}, seed=seed)


def _factorization_report(seed, n=None, max_rank=5):
    """Exhaustive over ``[n] -> [m]`` with ``n, m <= max_rank``; the seed is
    recorded but the check is exhaustive."""
    total, bad = 0, []
    maps = {}

    def maps_of(n, m, kind):
        if (n, m, kind) not in maps:
            maps[(n, m, kind)] = simplex.enumerate_simplex_maps(n, m, kind)
        return maps[(n, m, kind)]
    for a in range(max_rank + 1):
        for b in range(max_rank + 1):
            for alpha in maps_of(a, b, "all"):
                total += 1
                active, inert = simplex.factorize_active_inert(alpha)
                found = []
                for k in range(b + 1):
                    for act in maps_of(a, k, "active"):
                        for ine in maps_of(k, b, "inert"):
                            if act.then(ine) == alpha:
                                found.append((act, ine))
                if active.then(inert) != alpha or found != [(active, inert)]:
                    bad.append(str(alpha))
    return Report("suite factorization", "factorization", not bad,
                  counts={"maps": total, "failures": len(bad)}, witnesses=bad[:5],
                  details={"max_rank": max_rank}, seed=seed)


def initiality_corpus(cap=3):
    """``(A name, entry name, F)`` for every corpus 2-category."""
    from ..envelope import build_envelope
    out = []
    for A in corpus.two_category_corpus():
        E = build_envelope(A, cap)
        for name, F in corpus.sect_corpus(A, E):
            out.append((A, E, name, F))
    return out


def _initiality_report(seed, n=None, cap=3):
    from ..envelope import verify_initiality
    entries = initiality_corpus(cap)
    rng = random.Random("initiality:%s" % seed)
    chosen = sorted(rng.sample(range(len(entries)), n)) if n and n < len(entries) \
        else list(range(len(entries)))
    rows, witnesses = [], []
    for i in chosen:
        A, E, name, F = entries[i]
        r = verify_initiality(E, [(name, F)])
        e = r["entries"][0]
        row = {"base": A.name, "entry": name, "iso_classes": e.get("iso_classes"),
               "automorphisms": e.get("automorphisms"), "flagged": e.get("flagged"),
               "ok": e.get("ok")}
        rows.append(row)
        if not e.get("ok"):
            witnesses.append("%s/%s" % (A.name, name))
    flagged = sum(1 for r in rows if r["flagged"])
    return Report("suite initiality", "initiality", not witnesses,
                  counts={"entries": len(rows), "failures": len(witnesses), "flagged": flagged},
                  witnesses=witnesses, details={"entries": rows, "cap": cap}, seed=seed)


ALL = LEMMA_SUITES + ["factorization", "initiality"]


def run_suite(name, seed, n=20, jobs=1):
    """Run one suite (or ``all``) and return its report.  ``jobs > 1`` runs
    lemma instances in worker processes."""
    if seed is None:
        raise UnknownSuite("a seed is required")
    if name == "all":
        parts = [run_suite(s, seed, n, jobs) for s in ALL]
        rep = Report("suite all", "all", all(p.passed for p in parts),
                     counts={"suites": len(parts), "passed": sum(p.passed for p in parts)},
                     witnesses=[p.check for p in parts if not p.passed], seed=seed,
                     sections=parts)
        return rep
    start = time.perf_counter()
    if name in SUITES:
        rep = _lemma_report(name, seed, n, jobs)
    elif name == "factorization":
        rep = _factorization_report(seed)
    elif name == "initiality":
        rep = _initiality_report(seed, n)
    else:
        raise UnknownSuite("unknown suite %r; known: %s" % (name, ", ".join(ALL)), name)
    rep.elapsed = time.perf_counter() - start
    return rep
