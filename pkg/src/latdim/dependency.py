"""Join-covers and the join-dependency relations on J(L).

Relations are dicts mapping an ordered pair (p, q) of distinct
join-irreducibles to the first witness x, in ascending id order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .bits import bits
from .lattice import FinLattice, dual


def refines(L: FinLattice, X: Iterable[int], Y: Iterable[int]) -> bool:
    """X refines Y: every member of X lies below some member of Y."""
    Y = list(Y)
    return all(any(L.leq(x, y) for y in Y) for x in X)


def minimal_join_covers(L: FinLattice, p: int) -> list[tuple[int, ...]]:
    """All minimal nontrivial join-covers of the join-irreducible p.

    A set X of join-irreducibles not above p with p <= join(X) is minimal
    exactly when, for each x in X, replacing x by its lower cover loses the
    cover. That condition only gets harder as X grows, so the search prunes
    any branch where it already fails.
    """
    jt = L.jt
    cand = [q for q in L.J if not L.leq(p, q)]
    out = []

    def still_minimal(chosen):
        for i, x in enumerate(chosen):
            rest = L.join_of(chosen[:i] + chosen[i + 1:])
            if L.leq(p, jt[L.star(x)][rest]):
                return False
        return True

    def extend(start, chosen, total):
        for k in range(start, len(cand)):
            q = cand[k]
            if any(L.leq(q, c) or L.leq(c, q) for c in chosen):
                continue
            nxt = chosen + [q]
            if not still_minimal(nxt):
                continue
            t = jt[total][q]
            if L.leq(p, t):
                out.append(tuple(nxt))
            else:
                extend(k + 1, nxt, t)

    extend(0, [], L.bottom)
    return out


def dependency_D(L: FinLattice) -> dict[tuple[int, int], int]:
    """p D q iff some x has p <= q v x but p not below q_* v x."""
    jt = L.jt
    out = {}
    for p in L.J:
        for q in L.J:
            if p == q:
                continue
            qs = L.star(q)
            for x in range(L.n):
                if L.leq(p, jt[q][x]) and not L.leq(p, jt[qs][x]):
                    out[(p, q)] = x
                    break
    return out


def dependency_from_covers(L: FinLattice) -> set[tuple[int, int]]:
    """D recomputed as: q belongs to some minimal nontrivial join-cover of p."""
    return {(p, q) for p in L.J for cover in minimal_join_covers(L, p) for q in cover}


def d0_d1_dinf(L: FinLattice) -> tuple[dict, dict, dict]:
    """Exhaustive witness search for the three refinements of D."""
    jt, mt = L.jt, L.mt
    d0, d1, dinf = {}, {}, {}
    for p in L.J:
        ps = L.star(p)
        for q in L.J:
            if p == q:
                continue
            qs = L.star(q)
            base = jt[ps][qs]
            pq = jt[p][q]
            for x in range(L.n):
                if L.leq(p, x):
                    continue
                px, qx = jt[p][x], jt[q][x]
                if (p, q) not in d0 and L.leq(base, x) and px == qx:
                    d0[(p, q)] = x
                if (p, q) not in d1 and L.leq(qs, x) and L.leq(p, qx) and (
                    px == jt[ps][x] or not L.leq(q, px)
                ):
                    d1[(p, q)] = x
                if (
                    (p, q) not in dinf
                    and px == qx
                    and L.leq(base, x)
                    and not L.leq(p, jt[q][mt[x][pq]])
                ):
                    dinf[(p, q)] = x
    return d0, d1, dinf


def _closure_rows(J: tuple[int, ...], pairs: Iterable[tuple[int, int]]) -> dict[int, int]:
    rows = {p: 0 for p in J}
    for p, q in pairs:
        rows[p] |= 1 << q
    for k in J:
        bit = 1 << k
        for i in J:
            if rows[i] & bit:
                rows[i] |= rows[k]
    return rows


@dataclass(frozen=True, eq=False)
class DependencyData:
    L: FinLattice

    @cached_property
    def D(self) -> dict[tuple[int, int], int]:
        return dependency_D(self.L)

    @cached_property
    def refined(self) -> tuple[dict, dict, dict]:
        return d0_d1_dinf(self.L)

    @property
    def D0(self) -> dict:
        return self.refined[0]

    @property
    def D1(self) -> dict:
        return self.refined[1]

    @property
    def Dinf(self) -> dict:
        return self.refined[2]

    @cached_property
    def tri_rows(self) -> dict[int, int]:
        """tri_rows[p]: bitset of q with p tri q (transitive closure of D)."""
        return _closure_rows(self.L.J, self.D)

    @cached_property
    def tri(self) -> set[tuple[int, int]]:
        return {(p, q) for p, row in self.tri_rows.items() for q in bits(row)}

    @cached_property
    def tri_eq(self) -> set[tuple[int, int]]:
        return self.tri | {(p, p) for p in self.L.J}

    def tri_class(self, p: int) -> int:
        """[p]^tri as a bitset."""
        return self.tri_rows[p]

    def tri_eq_class(self, p: int) -> int:
        return self.tri_rows[p] | 1 << p

    @cached_property
    def mcovers(self) -> dict[int, list[tuple[int, ...]]]:
        return {p: minimal_join_covers(self.L, p) for p in self.L.J}


def closures(L: FinLattice) -> tuple[set, set, dict[int, int]]:
    """(tri, tri_eq, p -> [p]^tri as a bitset)."""
    dd = DependencyData(L)
    return dd.tri, dd.tri_eq, dict(dd.tri_rows)


def d_cycle_witness(L: FinLattice) -> int | None:
    """Some p with p tri p, or None."""
    rows = DependencyData(L).tri_rows
    return next((p for p in L.J if rows[p] >> p & 1), None)


def is_lower_bounded(L: FinLattice) -> bool:
    return d_cycle_witness(L) is None


def is_upper_bounded(L: FinLattice) -> bool:
    return is_lower_bounded(dual(L))
