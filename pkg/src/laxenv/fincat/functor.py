"""Functors and natural transformations between finite categories."""
from ..errors import EndpointMismatch, ValidationError


class CatFunctor:
    """A functor given by explicit object and morphism maps."""

    def __init__(self, source, target, obj, mor, name=""):
        self.source = source
        self.target = target
        self.obj = dict(obj)
        self.mor = dict(mor)
        self.name = name

    def __repr__(self):
        return "CatFunctor(%s)" % (self.name or "?")

    def __call__(self, x):
        """Apply to an object or a morphism id (objects take precedence)."""
        if x in self.obj:
            return self.obj[x]
        return self.mor[x]

    def __eq__(self, other):
        if not isinstance(other, CatFunctor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.obj == other.obj and self.mor == other.mor)

    def __hash__(self):
        return hash((tuple(sorted(self.obj.items())), tuple(sorted(self.mor.items()))))

    def key(self):
        return (tuple(sorted(self.obj.items())), tuple(sorted(self.mor.items())))

    def then(self, other):
        """``other . self``."""
        return compose_functors(other, self)


def functor_failures(F):
    """All violated functor laws as human-readable strings."""
    C, D = F.source, F.target
    bad = []
    if set(F.obj) != set(C.objects):
        bad.append("object map domain differs from source objects")
        return bad
    if set(F.mor) != set(C.morphisms):
        bad.append("morphism map domain differs from source morphisms")
        return bad
    dobjs = set(D.objects)
    for x, y in F.obj.items():
        if y not in dobjs:
            bad.append("object %s sent to unknown %s" % (x, y))
    if bad:
        return bad
    for f, (a, b) in C.morphisms.items():
        img = F.mor[f]
        if img not in D.morphisms:
            bad.append("morphism %s sent to unknown %s" % (f, img))
        elif D.morphisms[img] != (F.obj[a], F.obj[b]):
            bad.append("endpoints of %s not preserved" % f)
    if bad:
        return bad
    for x in C.objects:
        if F.mor[C.identity[x]] != D.identity[F.obj[x]]:
            bad.append("identity of %s not preserved" % x)
    for (g, f), h in C.composition.items():
        if D.composition[(F.mor[g], F.mor[f])] != F.mor[h]:
            bad.append("composite %s . %s not preserved" % (g, f))
    return bad


def validate_functor(F):
    bad = functor_failures(F)
    if bad:
        raise ValidationError("invalid functor %s: %s" % (F.name, bad[0]))
    return F


def identity_functor(C):
    return CatFunctor(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms}, "id")


def compose_functors(G, F):
    """``G . F``."""
    if F.target is not G.source and F.target != G.source:
        raise EndpointMismatch("cannot compose %s after %s" % (G.name, F.name))
    return CatFunctor(F.source, G.target,
                      {x: G.obj[y] for x, y in F.obj.items()},
                      {f: G.mor[g] for f, g in F.mor.items()},
                      "%s.%s" % (G.name, F.name))


def constant_functor(C, D, d):
    return CatFunctor(C, D, {x: d for x in C.objects},
                      {f: D.identity[d] for f in C.morphisms}, "const_" + d)


class NatTransformation:
    """A family of components ``F(x) -> G(x)`` indexed by source objects."""

    def __init__(self, source, target, components, name=""):
        self.source = source
        self.target = target
        self.components = dict(components)
        self.name = name

    def __repr__(self):
        return "NatTransformation(%s)" % (self.name or "?")

    def __getitem__(self, x):
        return self.components[x]

    def __eq__(self, other):
        if not isinstance(other, NatTransformation):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.components == other.components)

    def __hash__(self):
        return hash(tuple(sorted(self.components.items())))

    @property
    def domain(self):
        return self.source.source

    @property
    def codomain(self):
        return self.source.target


def transformation_failures(alpha):
    F, G = alpha.source, alpha.target
    C, D = F.source, F.target
    bad = []
    if not (G.source == C and G.target == D):
        return ["functors have different endpoints"]
    if set(alpha.components) != set(C.objects):
        return ["components not indexed by source objects"]
    for x in C.objects:
        c = alpha.components[x]
        if D.morphisms.get(c) != (F.obj[x], G.obj[x]):
            bad.append("component at %s has wrong endpoints" % x)
    if bad:
        return bad
    for f, (a, b) in C.morphisms.items():
        if D.comp(G.mor[f], alpha[a]) != D.comp(alpha[b], F.mor[f]):
            bad.append("naturality square at %s fails" % f)
    return bad


def validate_transformation(alpha):
    bad = transformation_failures(alpha)
    if bad:
        raise ValidationError("invalid transformation %s: %s" % (alpha.name, bad[0]))
    return alpha


def identity_transformation(F):
    return NatTransformation(F, F, {x: F.target.identity[F.obj[x]] for x in F.source.objects},
                             "id_" + F.name)


def vcomp(beta, alpha):
    """Vertical composite ``beta . alpha``."""
    D = alpha.codomain
    return NatTransformation(alpha.source, beta.target,
                             {x: D.comp(beta[x], alpha[x]) for x in alpha.source.source.objects},
                             "%s.%s" % (beta.name, alpha.name))


def whisker_left(H, alpha):
    """``H alpha`` for ``alpha: F => G`` and ``H`` after the codomain."""
    return NatTransformation(compose_functors(H, alpha.source), compose_functors(H, alpha.target),
                             {x: H.mor[c] for x, c in alpha.components.items()},
                             "%s%s" % (H.name, alpha.name))


def whisker_right(alpha, K):
    """``alpha K`` for ``K`` into the domain of ``alpha``."""
    return NatTransformation(compose_functors(alpha.source, K), compose_functors(alpha.target, K),
                             {x: alpha[K.obj[x]] for x in K.source.objects},
                             "%s%s" % (alpha.name, K.name))


def hcomp(beta, alpha):
    """Horizontal composite ``beta * alpha`` of ``alpha: F => G`` and
    ``beta: H => K``, computed as ``(beta G) . (H alpha)``."""
    return vcomp(whisker_right(beta, alpha.target), whisker_left(beta.source, alpha))


def is_invertible(alpha):
    D = alpha.codomain
    return all(D.is_iso(c) for c in alpha.components.values())


def non_invertible_components(alpha):
    D = alpha.codomain
    return sorted(x for x, c in alpha.components.items() if not D.is_iso(c))


def inverse_transformation(alpha):
    D = alpha.codomain
    return NatTransformation(alpha.target, alpha.source,
                             {x: D.inverse(c) for x, c in alpha.components.items()},
                             "inv_" + alpha.name)


def is_identity_transformation(alpha):
    D = alpha.codomain
    return alpha.source == alpha.target and all(D.is_identity(c) for c in alpha.components.values())
