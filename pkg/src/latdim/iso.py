"""Isomorphism and canonical forms for finite posets, with optional vertex
colours.

Both rest on colour refinement over the strict order: an element's new
colour is its old colour together with the multisets of colours strictly above
and strictly below it. Signatures are ranked by sorting, so colours never
depend on element ids.
"""

from __future__ import annotations

from typing import Sequence

from .bits import bits
from .order import FinPoset


def _strict(P: FinPoset) -> tuple[list[list[int]], list[list[int]]]:
    above = [list(bits(P.up[x] & ~(1 << x))) for x in range(P.n)]
    below = [list(bits(P.down[x] & ~(1 << x))) for x in range(P.n)]
    return above, below


def _refine(structs, colours: list[list]) -> list[list[int]]:
    """Jointly refine colourings of several posets until stable.

    ``structs`` holds (above, below) adjacency per poset; all posets share one
    ranking so equal colours mean the same thing across them.
    """
    cols = _rank(colours)
    count = len({c for cs in cols for c in cs})
    while True:
        sigs = []
        for (above, below), cs in zip(structs, cols):
            sigs.append([
                (cs[x], tuple(sorted(cs[y] for y in above[x])), tuple(sorted(cs[y] for y in below[x])))
                for x in range(len(cs))
            ])
        cols = _rank(sigs)
        new_count = len({c for cs in cols for c in cs})
        if new_count == count:
            return cols
        count = new_count


def _rank(sigs: list[list]) -> list[list[int]]:
    table = {s: i for i, s in enumerate(sorted({s for ss in sigs for s in ss}))}
    return [[table[s] for s in ss] for ss in sigs]


def _individualize(cs: list[int], x: int) -> list:
    # the chosen element sorts before the rest of its cell
    return [(c, 0 if y == x else 1) for y, c in enumerate(cs)]


def _target_cell(cs: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for x, c in enumerate(cs):
        cells.setdefault(c, []).append(x)
    big = [cell for cell in cells.values() if len(cell) > 1]
    if not big:
        return None
    # smallest non-singleton cell, ties broken by colour (which is invariant)
    return min(big, key=lambda cell: (len(cell), cs[cell[0]]))


def _twin_reps(P: FinPoset, cell: list[int]) -> list[int]:
    """One element per class of interchangeable elements in ``cell``.

    Twins have identical strict up- and down-sets, so swapping them is an
    automorphism fixing everything else; exploring one of them suffices.
    """
    seen = set()
    reps = []
    for x in cell:
        key = (P.up[x] & ~(1 << x), P.down[x] & ~(1 << x))
        if key not in seen:
            seen.add(key)
            reps.append(x)
    return reps


def canonical_form(P: FinPoset, colours: Sequence[int] | None = None) -> tuple:
    """A complete invariant: equal forms iff isomorphic (respecting colours).

    Individualization-refinement; the form is the lexicographically least
    relabelled (colours, up-sets) encoding over all leaves.
    """
    struct = _strict(P)
    base = list(colours) if colours is not None else [0] * P.n
    best = None

    def leaf_code(cs):
        # cs is discrete: cs[x] is the new label of x
        ups = [0] * P.n
        cols = [0] * P.n
        for x in range(P.n):
            m = 0
            for y in bits(P.up[x]):
                m |= 1 << cs[y]
            ups[cs[x]] = m
            cols[cs[x]] = base[x]
        return (P.n, tuple(cols), tuple(ups))

    def search(cs):
        nonlocal best
        cell = _target_cell(cs)
        if cell is None:
            code = leaf_code(cs)
            if best is None or code < best:
                best = code
            return
        for x in _twin_reps(P, cell):
            search(_refine([struct], [_individualize(cs, x)])[0])

    search(_refine([struct], [list(base)])[0])
    return best


def find_isomorphism(
    P: FinPoset, Q: FinPoset, colours_p: Sequence[int] | None = None, colours_q: Sequence[int] | None = None
) -> list[int] | None:
    """An order isomorphism P -> Q as a list, or None.

    Joint refinement prunes candidates; the search backtracks by
    individualizing the same colour on both sides.
    """
    if P.n != Q.n:
        return None
    sp, sq = _strict(P), _strict(Q)
    cp = list(colours_p) if colours_p is not None else [0] * P.n
    cq = list(colours_q) if colours_q is not None else [0] * Q.n
    if sorted(cp) != sorted(cq):
        return None

    def search(ca, cb):
        if sorted(ca) != sorted(cb):
            return None
        cell = _target_cell(ca)
        if cell is None:
            inverse = {c: y for y, c in enumerate(cb)}
            phi = [inverse[c] for c in ca]
            for x in range(P.n):
                image = 0
                for y in bits(P.up[x]):
                    image |= 1 << phi[y]
                if image != Q.up[phi[x]]:
                    return None
            return phi
        x = cell[0]
        for y in _twin_reps(Q, [z for z, c in enumerate(cb) if c == ca[x]]):
            na, nb = _refine([sp, sq], [_individualize(ca, x), _individualize(cb, y)])
            found = search(na, nb)
            if found is not None:
                return found
        return None

    ca, cb = _refine([sp, sq], [cp, cq])
    return search(ca, cb)


def is_isomorphic(P, Q, colours_p=None, colours_q=None) -> bool:
    """Accepts posets or lattices."""
    P = getattr(P, "poset", P)
    Q = getattr(Q, "poset", Q)
    return find_isomorphism(P, Q, colours_p, colours_q) is not None
