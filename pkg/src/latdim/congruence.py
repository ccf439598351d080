"""Congruence lattices of finite lattices, two ways.

The fast route reads Con L off the dependency order: a congruence is
determined by the set of join-irreducibles p it collapses onto p_*, and those
sets are exactly the subsets of J(L) that are down-closed for the reflexive
closure of tri. The brute-force route closes principal congruences under
joins on the partition level.
"""

from __future__ import annotations

from .bits import bits, popcount
from .dependency import DependencyData
from .dimension import DimMonoid, dim_monoid
from .errors import SizeError
from .iso import is_isomorphic
from .lattice import FinLattice, lattice_from_family
from .monoid import INF, add, gen, qo_system, zero


def _tri_down_closure(L: FinLattice, dd: DependencyData, mask: int) -> int:
    # p is forced whenever p tri q for some collapsed q
    out = mask
    for p in L.J:
        if dd.tri_rows[p] & mask:
            out |= 1 << p
    return out


def con_lattice(L: FinLattice, deps: DependencyData | None = None) -> tuple[FinLattice, list[int]]:
    """Con L as the lattice of down-closed subsets of (J(L), tri_eq).

    Returns the lattice and the J-bitset of each element.
    """
    dd = deps or DependencyData(L)
    family = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for p in L.J:
                t = _tri_down_closure(L, dd, s | 1 << p)
                if t not in family:
                    family.add(t)
                    nxt.append(t)
        frontier = nxt
    fam = sorted(family, key=lambda m: (popcount(m), m))
    labels = ["{" + ",".join(L.labels[p] for p in bits(m)) + "}" for m in fam]
    return lattice_from_family(fam, labels), fam


def principal_congruence_irreducibles(L: FinLattice, u: int, v: int, deps: DependencyData | None = None) -> int:
    """J-bitset of Theta(u, v) for u <= v: the down-closure of J(v) minus J(u)."""
    dd = deps or DependencyData(L)
    return _tri_down_closure(L, dd, L.J_below(v) & ~L.J_below(u))


class _Partition:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def key(self) -> tuple[int, ...]:
        return tuple(self.find(x) for x in range(len(self.parent)))


def principal_congruence(L: FinLattice, a: int, b: int) -> tuple[int, ...]:
    """Theta(a, b) as a partition key (smallest member of each block),
    closed under translations x -> x v t and x -> x ^ t."""
    jt, mt = L.jt, L.mt
    part = _Partition(L.n)
    part.union(a, b)
    changed = True
    while changed:
        changed = False
        for x in range(L.n):
            r = part.find(x)
            if r == x:
                continue
            for t in range(L.n):
                if part.union(jt[x][t], jt[r][t]):
                    changed = True
                if part.union(mt[x][t], mt[r][t]):
                    changed = True
    return part.key()


def _join_partitions(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    part = _Partition(len(a))
    for x in range(len(a)):
        part.union(x, a[x])
        part.union(x, b[x])
    return part.key()


def brute_force_congruences(L: FinLattice, max_n: int = 8) -> list[tuple[int, ...]]:
    """All congruences of L as partition keys, by closing principal ones under join."""
    if L.n > max_n:
        raise SizeError(f"brute-force congruences need n <= {max_n}, got {L.n}")
    principal = {principal_congruence(L, a, b) for a in range(L.n) for b in L.upper_covers[a]}
    found = {tuple(range(L.n))} | principal
    frontier = list(found)
    while frontier:
        nxt = []
        for c in frontier:
            for p in principal:
                j = _join_partitions(c, p)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found)


def brute_force_con_lattice(L: FinLattice, max_n: int = 8) -> FinLattice:
    """Congruences ordered by refinement, each encoded as its set of
    collapsed cover pairs (a congruence is fixed by the covers it collapses)."""
    cover_pairs = [(a, b) for a in range(L.n) for b in L.upper_covers[a]]
    fam = []
    for key in brute_force_congruences(L, max_n):
        fam.append(sum(1 << i for i, (a, b) in enumerate(cover_pairs) if key[a] == key[b]))
    fam.sort(key=lambda m: (popcount(m), m))
    return lattice_from_family(fam)


def semilattice_quotient(dm: DimMonoid) -> FinLattice:
    """The maximal semilattice quotient of E(dm.sys): every generator made
    idempotent. Its elements are {0, inf}-vectors, ordered by support."""
    sys = dm.sys
    pairs = set(sys.tri) | {(p, p) for p in range(sys.n)}
    idem = qo_system(sys.labels, pairs)
    start = zero(idem)
    seen = {start.vec: start}
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            for p in range(idem.n):
                f = add(e, gen(idem, p))
                if f.vec not in seen:
                    seen[f.vec] = f
                    nxt.append(f)
        frontier = nxt
    fam = sorted(
        (sum(1 << i for i, v in enumerate(vec) if v is INF) for vec in seen),
        key=lambda m: (popcount(m), m),
    )
    return lattice_from_family(fam)


def conc_cross_check(L: FinLattice, max_n: int = 8) -> bool:
    """Con L from the dependency order agrees with (a) brute force and
    (b) the maximal semilattice quotient of the dimension monoid."""
    dd = DependencyData(L)
    con, _ = con_lattice(L, dd)
    if L.n <= max_n and not is_isomorphic(con, brute_force_con_lattice(L, max_n)):
        return False
    return is_isomorphic(con, semilattice_quotient(dim_monoid(L, deps=dd)))
