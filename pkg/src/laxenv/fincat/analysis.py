"""Exhaustive property checks on functors and categories."""
from .enumerate import enumerate_transformations
from .functor import is_invertible


def is_fully_faithful(F):
    C, D = F.source, F.target
    for a in C.objects:
        for b in C.objects:
            images = [F.mor[f] for f in C.hom(a, b)]
            if len(set(images)) != len(images) or len(images) != len(D.hom(F.obj[a], F.obj[b])):
                return False
    return True


def is_essentially_surjective(F):
    D = F.target
    image = set(F.obj.values())
    return all(any(D.isomorphic(y, d) for y in image) for d in D.objects)


def is_conservative(F):
    C, D = F.source, F.target
    return all(C.is_iso(f) for f in C.morphisms if D.is_iso(F.mor[f]))


def is_iso_on_objects(F):
    vals = list(F.obj.values())
    return len(set(vals)) == len(vals) and set(vals) == set(F.target.objects)


def is_isomorphism(F):
    """Bijective on objects and on morphisms."""
    mvals = list(F.mor.values())
    return (is_iso_on_objects(F) and len(set(mvals)) == len(mvals)
            and set(mvals) == set(F.target.morphisms))


def analyze_functor(F):
    ff = is_fully_faithful(F)
    eso = is_essentially_surjective(F)
    return {
        "fully_faithful": ff,
        "essentially_surjective": eso,
        "equivalence": ff and eso,
        "conservative": is_conservative(F),
        "iso_on_objects": is_iso_on_objects(F),
    }


def find_terminal_object(C, prefer=None):
    """Return ``(t, witnesses)`` or ``(None, failing_info)``.

    ``witnesses`` maps each object to its unique morphism into ``t``.  Ties
    go to ``prefer`` when it is terminal, otherwise to the least id.
    """
    order = C.sorted_objects()
    if prefer is not None and prefer in C.objects:
        order = [prefer] + [x for x in order if x != prefer]
    for t in order:
        if all(len(C.hom(x, t)) == 1 for x in C.objects):
            return t, {x: C.hom(x, t)[0] for x in C.objects}
    return None, {}


def find_initial_object(C, prefer=None):
    order = C.sorted_objects()
    if prefer is not None and prefer in C.objects:
        order = [prefer] + [x for x in order if x != prefer]
    for t in order:
        if all(len(C.hom(t, x)) == 1 for x in C.objects):
            return t, {x: C.hom(t, x)[0] for x in C.objects}
    return None, {}


def find_natural_isomorphism(F, G, cap=None):
    """An invertible transformation ``F => G`` or ``None``."""
    D = F.target
    for alpha in enumerate_transformations(F, G, cap=cap,
                                           component_filter=lambda x, c: D.is_iso(c)):
        if is_invertible(alpha):
            return alpha
    return None


def isomorphism_classes(C):
    """Partition of the objects into isomorphism classes (sorted)."""
    seen, classes = set(), []
    for x in C.sorted_objects():
        if x in seen:
            continue
        cls = [y for y in C.sorted_objects() if C.isomorphic(x, y)]
        seen.update(cls)
        classes.append(cls)
    return classes
