"""All finite lattices of a given size, up to isomorphism.

Removing an atom from a finite lattice with at least three elements leaves a
lattice, so every such lattice is a smaller one plus a new atom. The new
atom's strict up-set is a nonempty up-set of the smaller lattice avoiding its
bottom; each candidate is validated and isomorphs are rejected by canonical
form.
"""

from __future__ import annotations

from functools import lru_cache

from . import config
from .bits import bits, popcount
from .errors import NotALatticeError, SizeError
from .iso import canonical_form
from .lattice import FinLattice, lattice_validate
from .order import FinPoset


def _antichains(K: FinLattice, items: list[int]):
    """Nonempty antichains among ``items``, as bitsets."""

    def extend(start, chosen, blocked):
        for i in range(start, len(items)):
            x = items[i]
            if blocked >> x & 1:
                continue
            mask = chosen | 1 << x
            yield mask
            yield from extend(i + 1, mask, blocked | K.up[x] | K.down[x])

    yield from extend(0, 0, 0)


def _with_new_atom(K: FinLattice, generators: int) -> tuple[int, ...]:
    """Up-sets of K extended by a new element n below the up-closure of
    ``generators`` and above the bottom."""
    n = K.n
    new = 1 << n
    above = 0
    for g in bits(generators):
        above |= K.up[g]
    up = [u | new if x == K.bottom else u for x, u in enumerate(K.up)]
    up.append(new | above)
    return tuple(up)


def _relabel(up: tuple[int, ...]) -> tuple[int, ...]:
    """Renumber so ids follow down-set size (bottom 0, top n-1)."""
    n = len(up)
    downs = [0] * n
    for x in range(n):
        for y in bits(up[x]):
            downs[y] |= 1 << x
    order = sorted(range(n), key=lambda x: (popcount(downs[x]), x))
    pos = {x: i for i, x in enumerate(order)}
    out = []
    for x in order:
        out.append(sum(1 << pos[y] for y in bits(up[x])))
    return tuple(out)


@lru_cache(maxsize=None)
def _forms(n: int) -> tuple[tuple, ...]:
    if n == 1:
        return ((1, (0,), (1,)),)
    if n == 2:
        return ((2, (0, 0), (3, 2)),)
    forms = set()
    for K in _build(n - 1):
        items = [x for x in range(K.n) if x != K.bottom]
        for gens in _antichains(K, items):
            up = _with_new_atom(K, gens)
            P = FinPoset.from_up_sets(up)
            try:
                lattice_validate(P)
            except NotALatticeError:
                continue
            form = canonical_form(P)
            forms.add(form)
    return tuple(sorted(forms))


def _build(n: int) -> list[FinLattice]:
    return [lattice_validate(FinPoset.from_up_sets(_relabel(form[2]))) for form in _forms(n)]


def enumerate_lattices(n: int) -> list[FinLattice]:
    """One representative per isomorphism class, in canonical-form order."""
    if n < 1:
        raise ValueError("lattices have at least one element")
    if n > config.ENUM_MAX_N:
        raise SizeError(f"enumeration is capped at n = {config.ENUM_MAX_N}")
    return _build(n)


def lattices_up_to(max_n: int) -> list[FinLattice]:
    out = []
    for n in range(1, max_n + 1):
        out.extend(enumerate_lattices(n))
    return out
