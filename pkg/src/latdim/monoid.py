"""Primitive monoids E(P, tri) computed inside the vector monoid F(P, tri).

An element is a vector P -> {0, 1, 2, ..., INF}. The generator for p is
infinite on everything strictly tri-below p, equal to 1 at p when p is not
tri-related to itself, and zero elsewhere. Equality of elements is pointwise
equality of vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, total_ordering
from itertools import combinations_with_replacement
from typing import Iterable, Sequence, Union

from .bits import bits
from .errors import NotInEError, SystemMismatchError, ValidationError
from .iso import find_isomorphism
from .order import FinPoset


@total_ordering
class _Infinity:
    """The point at infinity of the extended naturals. A singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("latdim.INF")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ExtNat = Union[int, _Infinity]


def ext_absorbs(a: ExtNat, b: ExtNat) -> bool:
    """a << b in the extended naturals: a + b == b."""
    return a == 0 or b is INF


@dataclass(frozen=True)
class QoSystem:
    """A finite set with a transitive relation ``tri`` (pairs of indices)."""

    labels: tuple[str, ...]
    tri: frozenset[tuple[int, int]]

    def __post_init__(self):
        for p, q in self.tri:
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise ValidationError(f"pair ({p}, {q}) out of range")
        for p, q in self.tri:
            for r in bits(self.above[q]):
                if (p, r) not in self.tri:
                    raise ValidationError(f"relation is not transitive: missing ({p}, {r})")

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def below(self) -> tuple[int, ...]:
        """below[p]: bitset of q with q tri p."""
        rows = [0] * self.n
        for q, p in self.tri:
            rows[p] |= 1 << q
        return tuple(rows)

    @cached_property
    def above(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for q, p in self.tri:
            rows[q] |= 1 << p
        return tuple(rows)

    def rel(self, p: int, q: int) -> bool:
        return (p, q) in self.tri

    def rel_eq(self, p: int, q: int) -> bool:
        return p == q or (p, q) in self.tri

    def reflexive(self, p: int) -> bool:
        return (p, p) in self.tri

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __repr__(self):
        edges = ", ".join(f"{self.labels[p]}<|{self.labels[q]}" for p, q in sorted(self.tri))
        return f"QoSystem({list(self.labels)}, {{{edges}}})"


def qo_system(labels: Sequence[str], pairs: Iterable[tuple[int, int]], close: bool = False) -> QoSystem:
    """Build a QO-system, optionally replacing ``pairs`` by their transitive closure."""
    labels = tuple(labels)
    pairs = set(pairs)
    if close:
        pairs = transitive_closure(len(labels), pairs)
    return QoSystem(labels, frozenset(pairs))


def transitive_closure(n: int, pairs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    """Non-reflexive transitive closure, Warshall over bitset rows."""
    rows = [0] * n
    for p, q in pairs:
        rows[p] |= 1 << q
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rows[k]
    return {(p, q) for p in range(n) for q in bits(rows[p])}


@dataclass(frozen=True)
class PrimElement:
    sys: QoSystem
    vec: tuple[ExtNat, ...]

    def __add__(self, other: "PrimElement") -> "PrimElement":
        return add(self, other)

    def __mul__(self, k: int) -> "PrimElement":
        return scale(self, k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.vec)

    def __str__(self):
        parts = [f"{self.sys.labels[i]}:{v}" for i, v in enumerate(self.vec) if v != 0]
        return "{" + ", ".join(parts) + "}"


def _same(a: PrimElement, b: PrimElement) -> None:
    if a.sys != b.sys:
        raise SystemMismatchError("elements belong to different QO-systems")


def zero(sys: QoSystem) -> PrimElement:
    return PrimElement(sys, (0,) * sys.n)


def gen(sys: QoSystem, p: int) -> PrimElement:
    vec = []
    for q in range(sys.n):
        if sys.rel(q, p):
            vec.append(INF)
        elif q == p:
            vec.append(1)
        else:
            vec.append(0)
    return PrimElement(sys, tuple(vec))


def add(a: PrimElement, b: PrimElement) -> PrimElement:
    _same(a, b)
    return PrimElement(a.sys, tuple(x + y for x, y in zip(a.vec, b.vec)))


def scale(a: PrimElement, k: int) -> PrimElement:
    return PrimElement(a.sys, tuple(v * k if v != INF else (INF if k else 0) for v in a.vec))


def from_multiset(sys: QoSystem, items: Iterable[int]) -> PrimElement:
    total = zero(sys)
    for p in items:
        total = add(total, gen(sys, p))
    return total


def eq(a: PrimElement, b: PrimElement) -> bool:
    _same(a, b)
    return a.vec == b.vec


def absorbs(a: PrimElement, b: PrimElement) -> bool:
    """a << b, that is a + b == b."""
    return add(a, b).vec == b.vec


def in_F(sys: QoSystem, vec: Sequence[ExtNat]) -> bool:
    """p tri q forces vec[q] << vec[p]."""
    return all(ext_absorbs(vec[q], vec[p]) for p, q in sys.tri)


def _infinite_support(vec: Sequence[ExtNat]) -> int:
    return sum(1 << i for i, v in enumerate(vec) if v is INF)


def leq(a: PrimElement, b: PrimElement) -> bool:
    """Algebraic order: some c in E has a + c == b.

    Any such c is pinned at the coordinates where b is finite, and may only
    use generators whose infinite part lies inside b's infinite support, so
    the largest admissible candidate decides the question.
    """
    _same(a, b)
    sys = a.sys
    inf_b = _infinite_support(b.vec)
    c = zero(sys)
    for q in range(sys.n):
        if b.vec[q] is INF:
            if sys.below[q] & ~inf_b == 0:
                c = add(c, gen(sys, q))
        else:
            if a.vec[q] is INF or a.vec[q] > b.vec[q]:
                return False
            c = add(c, scale(gen(sys, q), b.vec[q] - a.vec[q]))
    return add(a, c).vec == b.vec


def canonical_decomposition(a: PrimElement) -> tuple[int, ...]:
    """The generator multiset of the unique non-absorbing decomposition,
    as a sorted tuple with repetition.

    Finite nonzero coordinates give multiplicities directly. Infinite
    coordinates may use any generator whose down-set stays inside the
    infinite support; keeping only the tri-maximal ones (one per class of
    mutually related generators) removes every absorbed summand.
    """
    sys, vec = a.sys, a.vec
    inf = _infinite_support(vec)
    finite = [q for q in range(sys.n) if vec[q] is not INF and vec[q] > 0]
    candidates = [t for t in bits(inf) if sys.below[t] & ~inf == 0]
    chosen = finite + candidates
    reached = zero(sys)
    for q in finite:
        reached = add(reached, scale(gen(sys, q), vec[q]))
    for t in candidates:
        reached = add(reached, gen(sys, t))
    if reached.vec != vec:
        raise NotInEError(
            "vector lies outside E: the largest admissible generator sum differs",
            certificate={"candidates": tuple(chosen), "sum": reached.vec},
        )
    keep = []
    for t in candidates:
        strictly_below = any(sys.rel(t, s) and not sys.rel(s, t) for s in chosen if s != t)
        same_class_earlier = any(sys.rel(t, s) and sys.rel(s, t) for s in keep)
        if not strictly_below and not same_class_earlier:
            keep.append(t)
    out = []
    for q in finite:
        out.extend([q] * vec[q])
    out.extend(keep)
    return tuple(sorted(out))


def elements_up_to(sys: QoSystem, k: int) -> dict[tuple, PrimElement]:
    """All elements that are sums of at most k generators, keyed by vector."""
    out = {}
    for size in range(k + 1):
        for ms in combinations_with_replacement(range(sys.n), size):
            e = from_multiset(sys, ms)
            out.setdefault(e.vec, e)
    return out


def is_strongly_separative(sys: QoSystem) -> bool:
    return all(not sys.reflexive(p) for p in range(sys.n))


def satisfies_2x_eq_x(sys: QoSystem, k: int = 3) -> bool:
    """Empirical check of 2x = x  =>  x = 0 over sums of at most k generators."""
    for e in elements_up_to(sys, k).values():
        if not e.is_zero() and add(e, e).vec == e.vec:
            return False
    return True


def strongly_separative_witness(sys: QoSystem, k: int = 2) -> tuple[PrimElement, PrimElement] | None:
    """Search a + b == 2b with a != b over sums of at most k generators."""
    elems = list(elements_up_to(sys, k).values())
    doubled = {e.vec: add(e, e).vec for e in elems}
    for a in elems:
        for b in elems:
            if a.vec != b.vec and add(a, b).vec == doubled[b.vec]:
                return a, b
    return None


@dataclass(frozen=True)
class NormalSystem:
    """Quotient of a QO-system by mutual relatedness.

    ``order`` is the strict order on classes (reflexive pairs removed);
    ``idempotent[i]`` marks classes whose generator satisfies 2x = x.
    """

    classes: tuple[tuple[int, ...], ...]
    idempotent: tuple[bool, ...]
    order: frozenset[tuple[int, int]]
    labels: tuple[str, ...]

    def poset(self) -> FinPoset:
        n = len(self.classes)
        up = [1 << i for i in range(n)]
        for i, j in self.order:
            up[i] |= 1 << j
        return FinPoset.from_up_sets(up, self.labels)

    def invariant(self) -> tuple:
        """Cheap isomorphism invariant: class counts by (idempotent, height)."""
        P = self.poset()
        heights = {}
        for i in sorted(range(P.n), key=lambda x: bin(P.down[x]).count("1")):
            below = [j for j in bits(P.down[i]) if j != i]
            heights[i] = 1 + max((heights[j] for j in below), default=-1)
        counts = {}
        for i in range(P.n):
            key = (self.idempotent[i], heights[i])
            counts[key] = counts.get(key, 0) + 1
        return tuple(sorted(counts.items()))


def normalize(sys: QoSystem) -> NormalSystem:
    cls_of = {}
    classes = []
    for p in range(sys.n):
        if p in cls_of:
            continue
        members = [p] + [q for q in range(p + 1, sys.n) if sys.rel(p, q) and sys.rel(q, p)]
        for q in members:
            cls_of[q] = len(classes)
        classes.append(tuple(members))
    idempotent = tuple(sys.reflexive(c[0]) for c in classes)
    order = frozenset(
        (cls_of[p], cls_of[q]) for p, q in sys.tri if cls_of[p] != cls_of[q]
    )
    labels = tuple("{" + ",".join(sys.labels[q] for q in c) + "}" if len(c) > 1 else sys.labels[c[0]] for c in classes)
    return NormalSystem(tuple(classes), idempotent, order, labels)


def monoid_isomorphism(sys1: QoSystem, sys2: QoSystem) -> list[int] | None:
    """A class bijection witnessing E(sys1) ~ E(sys2), or None."""
    a, b = normalize(sys1), normalize(sys2)
    if len(a.classes) != len(b.classes):
        return None
    return find_isomorphism(a.poset(), b.poset(), [int(f) for f in a.idempotent], [int(f) for f in b.idempotent])


def monoid_iso(sys1: QoSystem, sys2: QoSystem) -> bool:
    return monoid_isomorphism(sys1, sys2) is not None


def primitive_tensor(A: QoSystem, B: QoSystem) -> QoSystem:
    """Product system on A x B: (a,b) tri (a',b') iff both coordinates are
    weakly related and at least one strictly. Pair (i, j) has index i*|B| + j."""
    nb = B.n
    labels = tuple(f"({a},{b})" for a in A.labels for b in B.labels)
    pairs = set()
    for a in range(A.n):
        for a2 in range(A.n):
            if not A.rel_eq(a, a2):
                continue
            for b in range(nb):
                for b2 in range(nb):
                    if B.rel_eq(b, b2) and (A.rel(a, a2) or B.rel(b, b2)):
                        pairs.add((a * nb + b, a2 * nb + b2))
    return QoSystem(labels, frozenset(pairs))
