"""Exhaustive searches over small lattices.

``search_dinfty_witness`` looks for a lattice in which Dinf cannot be dropped
from the dimension presentation, while some D0 pair still fails to absorb.
``search_square_jsd`` is the open experiment: L (x) L join-semidistributive
although L has a D-cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dependency import DependencyData, is_lower_bounded
from .dimension import DimMonoid, bounded_congruence_oracle, dim_monoid
from .enumerate import enumerate_lattices
from .errors import NotFound
from .lattice import FinLattice, is_join_semidistributive
from .monoid import absorbs, monoid_iso
from .rewriting import Verdict
from .tensor import tensor_lattice


@dataclass(frozen=True)
class DinftyWitness:
    lattice: FinLattice
    p: int
    q: int
    x: int
    dinf_pair: tuple[int, int]
    oracle_pair: Verdict
    oracle_dinf: Verdict
    depth: int

    def summary(self) -> dict:
        L = self.lattice
        lab = L.labels
        return {
            "n": L.n,
            "p": lab[self.p],
            "q": lab[self.q],
            "d0_witness": lab[self.x],
            "dinf_pair": [lab[self.dinf_pair[0]], lab[self.dinf_pair[1]]],
            "oracle_p_plus_q_vs_q": self.oracle_pair.value,
            "oracle_dinf_pair_absorbs": self.oracle_dinf.value,
            "oracle_depth": self.depth,
        }


def _absorbs_gen(dm: DimMonoid, p: int, q: int) -> bool:
    return absorbs(dm.generator(p), dm.generator(q))


def dinfty_candidate(L: FinLattice, deps: DependencyData | None = None):
    """(p, q, x, dinf_pair) if L qualifies, else None.

    Qualifies when the presentation without Dinf gives a monoid not
    isomorphic to the full one, and some p D0 q has Delta(p) + Delta(q) !=
    Delta(q) in the full monoid. The Dinf pair reported is the first one
    whose absorption the reduced presentation loses.
    """
    dd = deps or DependencyData(L)
    d0, _, dinf = dd.refined
    if not d0 or not dinf:
        return None
    full = dim_monoid(L, deps=dd)
    reduced = dim_monoid(L, use_dinf=False, deps=dd)
    if monoid_iso(full.sys, reduced.sys):
        return None
    for (p, q), x in sorted(d0.items()):
        if not _absorbs_gen(full, p, q):
            break
    else:
        return None
    lost = next((pq for pq in sorted(dinf) if not _absorbs_gen(reduced, *pq)), None)
    if lost is None:
        return None
    return p, q, x, lost


def _oracle_verdicts(L: FinLattice, p: int, q: int, pair: tuple[int, int], depth: int):
    oracle = bounded_congruence_oracle(L, depth)
    s = L.star
    v1 = oracle.decide([(s(p), p), (s(q), q)], [(s(q), q)])
    a, b = pair
    v2 = oracle.decide([(s(a), a), (s(b), b)], [(s(b), b)])
    return v1, v2


def search_dinfty_witness(max_n: int = 9, exact_n: int | None = None,
                          depths: tuple[int, ...] = (8, 12)) -> DinftyWitness:
    """First qualifying lattice in enumeration order, re-checked by the
    interval-presentation oracle (deeper budgets only if inconclusive)."""
    sizes = [exact_n] if exact_n is not None else range(1, max_n + 1)
    for n in sizes:
        for L in enumerate_lattices(n):
            found = dinfty_candidate(L)
            if found is None:
                continue
            p, q, x, pair = found
            for depth in depths:
                v1, v2 = _oracle_verdicts(L, p, q, pair, depth)
                if Verdict.BUDGET_EXCEEDED not in (v1, v2):
                    break
            return DinftyWitness(L, p, q, x, pair, v1, v2, depth)
    limit = exact_n if exact_n is not None else max_n
    raise NotFound(f"no lattice with {'exactly' if exact_n else 'at most'} {limit} elements qualifies")


def search_square_jsd(max_n: int = 7) -> list[FinLattice]:
    """Lattices L with a D-cycle whose tensor square is join-semidistributive.

    No answer is expected; an empty list is a legitimate outcome.
    """
    hits = []
    for n in range(1, max_n + 1):
        for L in enumerate_lattices(n):
            if is_lower_bounded(L) or not is_join_semidistributive(L)[0]:
                continue
            if is_join_semidistributive(tensor_lattice(L, L).lattice)[0]:
                hits.append(L)
    return hits

