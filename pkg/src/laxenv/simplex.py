"""Monotone maps between finite ordinals and the active/inert factorization.

Maps are stored in the covariant orientation: a ``SimplexMap`` with ranks
``(n, m)`` is a weakly monotone function ``{0..n} -> {0..m}``.  Consumers that
work over the opposite category read such a map as an arrow ``[m] -> [n]``.
"""
from dataclasses import dataclass
from itertools import combinations_with_replacement

from . import config
from .errors import NotMonotone, OutOfRange, SizeExceeded


@dataclass(frozen=True)
class SimplexMap:
    n: int
    m: int
    values: tuple

    def __call__(self, i):
        return self.values[i]

    def __str__(self):
        return "[%d]->[%d]:%s" % (self.n, self.m, ",".join(map(str, self.values)))

    def then(self, other):
        """``other . self``, i.e. apply self first."""
        if other.n != self.m:
            raise ValueError("cannot compose %s then %s" % (self, other))
        return SimplexMap(self.n, other.m, tuple(other.values[v] for v in self.values))

    def after(self, other):
        """``self . other``."""
        return other.then(self)

    @property
    def is_active(self):
        return self.values[0] == 0 and self.values[-1] == self.m

    @property
    def is_inert(self):
        v = self.values
        return all(v[i + 1] == v[i] + 1 for i in range(self.n))

    @property
    def is_identity(self):
        return self.n == self.m and self.values == tuple(range(self.n + 1))


def validate_simplex_map(n, m, values):
    values = tuple(int(v) for v in values)
    if n < 0 or m < 0 or len(values) != n + 1:
        raise OutOfRange("expected %d values for [%d]->[%d]" % (n + 1, n, m))
    for i, v in enumerate(values):
        if not 0 <= v <= m:
            raise OutOfRange("value %d at %d outside [0,%d]" % (v, i, m), str(i))
    for i in range(n):
        if values[i] > values[i + 1]:
            raise NotMonotone("values drop at %d: %d > %d" % (i, values[i], values[i + 1]), str(i))
    return SimplexMap(n, m, values)


def parse_simplex_map(text):
    """Parse the textual rendering ``[n]->[m]:v0,...,vn``."""
    try:
        head, vals = text.strip().split(":")
        left, right = head.split("->")
        n = int(left.strip()[1:-1])
        m = int(right.strip()[1:-1])
        values = [int(v) for v in vals.split(",")]
    except ValueError as exc:
        raise OutOfRange("cannot parse simplex map %r" % text) from exc
    return validate_simplex_map(n, m, values)


def identity(n):
    return SimplexMap(n, n, tuple(range(n + 1)))


def classify_simplex_map(alpha):
    return {"active": alpha.is_active, "inert": alpha.is_inert}


def factorize_active_inert(alpha):
    """Return ``(active, inert)`` with ``inert . active == alpha``."""
    lo, hi = alpha.values[0], alpha.values[-1]
    active = SimplexMap(alpha.n, hi - lo, tuple(v - lo for v in alpha.values))
    inert = SimplexMap(hi - lo, alpha.m, tuple(range(lo, hi + 1)))
    return active, inert


def enumerate_simplex_maps(n, m, kind="all", rank_cap=None):
    limit = config.cap("rank", rank_cap)
    if n > limit or m > limit:
        raise SizeExceeded("rank above cap %d" % limit)
    out = []
    for values in combinations_with_replacement(range(m + 1), n + 1):
        alpha = SimplexMap(n, m, values)
        if kind == "active" and not alpha.is_active:
            continue
        if kind == "inert" and not alpha.is_inert:
            continue
        out.append(alpha)
    return out


def inert_inclusion(n, m, start):
    """The interval inclusion ``[n] -> [m]`` starting at ``start``."""
    return SimplexMap(n, m, tuple(range(start, start + n + 1)))


def edge(n, i):
    """The inert edge ``[1] -> [n]`` picking ``i-1 < i`` (``1 <= i <= n``)."""
    return inert_inclusion(1, n, i - 1)


def decompose_inert(alpha):
    """Split an inert map into elementary one-step extensions.

    Each step ``[k] -> [k+1]`` is either the front-preserving inclusion
    (values ``0..k``) or the shift (values ``1..k+1``).  The list is ordered
    so that applying the steps left to right recomposes ``alpha``.
    """
    if not alpha.is_inert:
        raise ValueError("%s is not inert" % alpha)
    steps = []
    k, start = alpha.n, alpha.values[0]
    for _ in range(start):
        steps.append(inert_inclusion(k, k + 1, 1))
        k += 1
    while k < alpha.m:
        steps.append(inert_inclusion(k, k + 1, 0))
        k += 1
    return steps


def ordinal_sum(alpha, beta):
    """Glue two active maps end to end: ``[n1+n2] -> [m1+m2]``."""
    values = alpha.values + tuple(v + alpha.m for v in beta.values[1:])
    return SimplexMap(alpha.n + beta.n, alpha.m + beta.m, values)
