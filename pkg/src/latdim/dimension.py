"""The dimension monoid of a finite lattice as a primitive monoid.

Generators are the join-irreducibles, merged along D0 and related along D1
and Dinf. Interval dimensions are evaluated along a maximal chain, each prime
interval being charged to a join-irreducible that transposes up onto it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .bits import bits
from .dependency import DependencyData
from .errors import PreconditionError
from .lattice import FinLattice, is_join_semidistributive
from .monoid import INF, ExtNat, PrimElement, QoSystem, add, gen, qo_system, zero
from .rewriting import RewritingSystem, Verdict, complete


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # smaller id stays the root, which keeps class numbering stable
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


@dataclass(frozen=True, eq=False)
class DimMonoid:
    source: FinLattice
    classes: tuple[tuple[int, ...], ...]
    sys: QoSystem
    class_of: dict[int, int]

    def generator(self, p: int) -> PrimElement:
        """The dimension of the prime interval [p_*, p]."""
        return gen(self.sys, self.class_of[p])

    def zero(self) -> PrimElement:
        return zero(self.sys)


def _class_label(L: FinLattice, members: Sequence[int]) -> str:
    if len(members) == 1:
        return L.labels[members[0]]
    return "{" + ",".join(L.labels[p] for p in members) + "}"


def dim_monoid(L: FinLattice, use_dinf: bool = True, deps: DependencyData | None = None) -> DimMonoid:
    """Classes of J(L) under the equivalence generated by D0, related by the
    transitive closure of the D1 (and, unless disabled, Dinf) edges."""
    dd = deps or DependencyData(L)
    d0, d1, dinf = dd.refined
    uf = _UnionFind(L.J)
    for p, q in d0:
        uf.union(p, q)
    groups: dict[int, list[int]] = {}
    for p in L.J:
        groups.setdefault(uf.find(p), []).append(p)
    classes = tuple(tuple(g) for _, g in sorted(groups.items()))
    class_of = {p: i for i, c in enumerate(classes) for p in c}
    edges = {(class_of[p], class_of[q]) for p, q in d1}
    if use_dinf:
        edges |= {(class_of[p], class_of[q]) for p, q in dinf}
    sys = qo_system([_class_label(L, c) for c in classes], edges, close=True)
    dm = DimMonoid(L, classes, sys, class_of)
    if use_dinf and is_join_semidistributive(L)[0]:
        shortcut = qo_system([L.labels[p] for p in L.J], [(L.J.index(p), L.J.index(q)) for p, q in dd.D], close=True)
        assert all(len(c) == 1 for c in classes), "D0 must be empty on a join-semidistributive lattice"
        assert shortcut == sys, "dependency shortcut disagrees with the D0/D1/Dinf presentation"
    return dm


def dependency_system(L: FinLattice, deps: DependencyData | None = None) -> QoSystem:
    """(J(L), tri) with element i standing for L.J[i]."""
    dd = deps or DependencyData(L)
    pos = {p: i for i, p in enumerate(L.J)}
    return qo_system([L.labels[p] for p in L.J], [(pos[p], pos[q]) for p, q in dd.tri])


def d_p(L: FinLattice, p: int, x: int, y: int, deps: DependencyData | None = None) -> ExtNat:
    if not L.leq(x, y):
        raise PreconditionError(f"need {L.labels[x]} <= {L.labels[y]}")
    dd = deps or DependencyData(L)
    strict, weak = dd.tri_class(p), dd.tri_eq_class(p)
    jx, jy = L.J_below(x), L.J_below(y)
    if jx & weak == jy & weak:
        return 0
    if jx & strict == jy & strict:
        # the weak classes differ only at p itself
        return 1
    return INF


def dep_dim_vector(L: FinLattice, x: int, y: int, deps: DependencyData | None = None) -> PrimElement:
    """The vector of all d_p(x, y), as an element over (J(L), tri)."""
    dd = deps or DependencyData(L)
    sys = dependency_system(L, dd)
    return PrimElement(sys, tuple(d_p(L, p, x, y, dd) for p in L.J))


def transposing_irreducibles(L: FinLattice, x: int, y: int) -> list[int]:
    """All p in J(L) with [p_*, p] transposing up onto [x, y]."""
    mt, jt = L.mt, L.jt
    return [p for p in L.J if mt[p][x] == L.star(p) and jt[p][x] == y]


def charged_irreducible(L: FinLattice, x: int, y: int) -> int:
    """A minimal element below y but not below x, for a cover x < y."""
    cand = L.down[y] & ~L.down[x]
    for p in bits(cand):
        if L.down[p] & cand == 1 << p:
            return p
    raise PreconditionError(f"{L.labels[x]} is not below {L.labels[y]}")


def lex_first_chain(L: FinLattice, x: int, y: int) -> list[int]:
    if not L.leq(x, y):
        raise PreconditionError(f"need {L.labels[x]} <= {L.labels[y]}")
    chain = [x]
    while chain[-1] != y:
        z = chain[-1]
        chain.append(min(c for c in L.upper_covers[z] if L.leq(c, y)))
    return chain


def maximal_chains(L: FinLattice, x: int, y: int) -> Iterator[list[int]]:
    if x == y:
        yield [x]
        return
    for c in L.upper_covers[x]:
        if L.leq(c, y):
            for rest in maximal_chains(L, c, y):
                yield [x] + rest


def delta_along(dm: DimMonoid, chain: Sequence[int], choose=None) -> PrimElement:
    """Sum of generator classes over the prime intervals of ``chain``.

    ``choose(x, y)`` picks the charged join-irreducible; the default is the
    minimal-element rule.
    """
    L = dm.source
    choose = choose or (lambda a, b: charged_irreducible(L, a, b))
    total = dm.zero()
    for a, b in zip(chain, chain[1:]):
        total = add(total, dm.generator(choose(a, b)))
    return total


def delta(L: FinLattice, dm: DimMonoid, x: int, y: int) -> PrimElement:
    return delta_along(dm, lex_first_chain(L, x, y))


def lessdot(L: FinLattice, a: int, b: int) -> bool:
    if not L.leq(a, b):
        raise PreconditionError(f"need {L.labels[a]} <= {L.labels[b]}")
    return bool(transposing_irreducibles(L, a, b))


# Presentation of the dimension monoid by all intervals, used as an oracle.

@dataclass(frozen=True, eq=False)
class DimensionOracle:
    L: FinLattice
    intervals: tuple[tuple[int, int], ...]
    system: RewritingSystem

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {iv: i for i, iv in enumerate(self.intervals)}

    def word(self, intervals: Iterable[tuple[int, int]]) -> tuple[int, ...]:
        w = [0] * len(self.intervals)
        for x, y in intervals:
            if not self.L.leq(x, y):
                raise PreconditionError(f"need {self.L.labels[x]} <= {self.L.labels[y]}")
            if x != y:
                w[self.index[(x, y)]] += 1
        return tuple(w)

    def decide(self, lhs: Iterable[tuple[int, int]], rhs: Iterable[tuple[int, int]]) -> Verdict:
        return self.system.decide(self.word(lhs), self.word(rhs))


def dimension_relations(L: FinLattice) -> tuple[list[tuple[int, int]], list]:
    """Generators: intervals x < y. Relations: additivity along x < y < z and
    transposition [x meet y, x] = [y, x join y] for incomparable x, y."""
    intervals = [(x, y) for x in range(L.n) for y in bits(L.up[x]) if y != x]
    idx = {iv: i for i, iv in enumerate(intervals)}
    g = len(intervals)

    def w(*ivs):
        v = [0] * g
        for iv in ivs:
            v[idx[iv]] += 1
        return tuple(v)

    rels = []
    for x, y in intervals:
        for z in bits(L.up[y]):
            if z != y:
                rels.append((w((x, z)), w((x, y), (y, z))))
    for x in range(L.n):
        for y in range(L.n):
            if x != y and not L.leq(x, y) and not L.leq(y, x):
                rels.append((w((L.mt[x][y], x)), w((y, L.jt[x][y]))))
    return intervals, rels


def bounded_congruence_oracle(L: FinLattice, depth: int) -> DimensionOracle:
    """Equality decider for interval words, independent of the primitive
    monoid machinery. Inconclusive answers surface as BUDGET_EXCEEDED."""
    if depth < 1:
        raise ValueError("depth must be positive")
    intervals, rels = dimension_relations(L)
    # weight each interval by its length, so additivity relations are homogeneous
    heights = [bin(d).count("1") for d in L.down]
    weights = [heights[y] - heights[x] for x, y in intervals]
    rs = complete(len(intervals), rels, depth, weights)
    return DimensionOracle(L, tuple(intervals), rs)


def primitive_oracle(sys: QoSystem, depth: int) -> RewritingSystem:
    """Completion of the defining relations p + q = q for p tri q."""
    rels = []
    for p, q in sorted(sys.tri):
        lhs = [0] * sys.n
        rhs = [0] * sys.n
        lhs[p] += 1
        lhs[q] += 1
        rhs[q] += 1
        rels.append((tuple(lhs), tuple(rhs)))
    return complete(sys.n, rels, depth)
