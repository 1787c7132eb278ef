"""Exhaustive enumeration of functors and natural transformations."""
import builtins

from .. import config
from ..errors import SizeExceeded
from .functor import CatFunctor, NatTransformation


class Search:
    """Small backtracking engine with a node budget.

    ``candidates(var, assignment)`` yields the values to try;
    ``constraints`` maps each variable to checks ``(vars, pred)`` that are
    run once every variable in ``vars`` is assigned.
    """

    def __init__(self, variables, candidates, constraints, cap=None, what="search"):
        self.variables = list(variables)
        self.candidates = candidates
        self.position = {v: i for i, v in builtins.enumerate(self.variables)}
        self.checks = {v: [] for v in self.variables}
        for vars_, pred in constraints:
            last = max(vars_, key=self.position.__getitem__)
            self.checks[last].append((vars_, pred))
        self.limit = config.cap("search", cap)
        self.nodes = 0
        self.what = what

    def solutions(self):
        assignment = {}
        yield from self._extend(0, assignment)

    def _extend(self, k, assignment):
        if k == len(self.variables):
            yield dict(assignment)
            return
        var = self.variables[k]
        for value in self.candidates(var, assignment):
            self.nodes += 1
            if self.nodes > self.limit:
                raise SizeExceeded("%s exceeded %d search nodes" % (self.what, self.limit))
            assignment[var] = value
            if all(pred(assignment) for _, pred in self.checks[var]):
                yield from self._extend(k + 1, assignment)
            del assignment[var]


def _morphism_order(C):
    """Non-identity morphisms, those with fewer factorizations first."""
    counts = {f: 0 for f in C.morphisms}
    for (g, f), h in C.composition.items():
        if not C.is_identity(g) and not C.is_identity(f):
            counts[h] += 1
    return sorted((f for f in C.morphisms if not C.is_identity(f)), key=lambda f: (counts[f], f))


def enumerate_functors(C, D, cap=None, object_map=None, morphism_filter=None, object_filter=None):
    """All functors ``C -> D``, optionally with a fixed object map and
    candidate filters ``object_filter(x, y)`` and ``morphism_filter(f, g)``."""
    objs = C.sorted_objects()
    mors = _morphism_order(C)
    variables = [("o", x) for x in objs] + [("m", f) for f in mors]
    factor = {}
    for (g, f), h in C.composition.items():
        if not C.is_identity(g) and not C.is_identity(f):
            factor.setdefault(h, []).append((g, f))

    def image(assignment, f):
        if C.is_identity(f):
            return D.identity[assignment[("o", C.src(f))]]
        return assignment[("m", f)]

    def candidates(var, assignment):
        kind, x = var
        if kind == "o":
            if object_map is not None:
                return [object_map[x]]
            if object_filter is not None:
                return [y for y in D.sorted_objects() if object_filter(x, y)]
            return D.sorted_objects()
        a, b = C.morphisms[x]
        pool = D.hom(assignment[("o", a)], assignment[("o", b)])
        for g, f in factor.get(x, ()):
            gm = ("m", g) if not C.is_identity(g) else None
            fm = ("m", f) if not C.is_identity(f) else None
            if (gm is None or gm in assignment) and (fm is None or fm in assignment):
                forced = D.comp(image(assignment, g), image(assignment, f))
                pool = [forced] if forced in pool else []
                break
        if morphism_filter is not None:
            pool = [v for v in pool if morphism_filter(x, v)]
        return pool

    constraints = []
    for (g, f), h in C.composition.items():
        if C.is_identity(g) or C.is_identity(f):
            continue
        vars_ = [("m", g), ("m", f)]
        if not C.is_identity(h):
            vars_.append(("m", h))
        else:
            vars_.append(("o", C.src(h)))

        def pred(asg, g=g, f=f, h=h):
            return D.comp(image(asg, g), image(asg, f)) == image(asg, h)
        constraints.append((tuple(vars_), pred))

    search = Search(variables, candidates, constraints, cap, "functor enumeration")
    out = []
    for asg in search.solutions():
        obj = {x: asg[("o", x)] for x in objs}
        mor = {f: image(asg, f) for f in C.morphisms}
        out.append(CatFunctor(C, D, obj, mor, "F%d" % len(out)))
    return out


def enumerate_transformations(F, G, cap=None, component_filter=None):
    """All natural transformations ``F => G``."""
    C, D = F.source, F.target
    objs = C.sorted_objects()

    def candidates(x, assignment):
        pool = D.hom(F.obj[x], G.obj[x])
        if component_filter is not None:
            pool = [c for c in pool if component_filter(x, c)]
        return pool

    constraints = []
    for f, (a, b) in C.morphisms.items():
        def pred(asg, f=f, a=a, b=b):
            return D.comp(G.mor[f], asg[a]) == D.comp(asg[b], F.mor[f])
        constraints.append(((a, b), pred))
    search = Search(objs, candidates, constraints, cap, "transformation enumeration")
    return [NatTransformation(F, G, asg, "t%d" % i) for i, asg in builtins.enumerate(search.solutions())]


def enumerate(kind, source, target, cap=None):
    """Dispatch: ``kind`` is ``functors`` (categories) or
    ``nat_transformations`` (two parallel functors)."""
    if kind == "functors":
        return enumerate_functors(source, target, cap=cap)
    if kind == "nat_transformations":
        return enumerate_transformations(source, target, cap=cap)
    raise ValueError("unknown enumeration kind %r" % kind)
