"""Finite posets stored as bitset rows, and the lattice Co(P) of order-convex
subsets of a poset."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import config
from .bits import bits, popcount, to_mask
from .errors import CycleError, SizeError


@dataclass(frozen=True, eq=False)
class FinPoset:
    """A partial order on ``range(n)``.

    ``up[x]`` is the bitset of all ``y >= x`` and ``down[x]`` the bitset of
    all ``y <= x``; both are reflexive.
    """

    n: int
    up: tuple[int, ...]
    down: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.up[x] >> y & 1)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def leq_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for x in range(self.n):
            m[x, list(bits(self.up[x]))] = True
        return m

    def pairs(self) -> list[tuple[int, int]]:
        """All pairs x <= y, including the diagonal."""
        return [(x, y) for x in range(self.n) for y in bits(self.up[x])]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __eq__(self, other):
        if not isinstance(other, FinPoset):
            return NotImplemented
        return self.n == other.n and self.up == other.up

    def __hash__(self):
        return hash((self.n, self.up))

    @classmethod
    def from_up_sets(cls, up: Sequence[int], labels: Sequence[str] = ()) -> "FinPoset":
        """Trusted constructor: ``up`` must already be a reflexive partial order."""
        n = len(up)
        down = [0] * n
        for x in range(n):
            for y in bits(up[x]):
                down[y] |= 1 << x
        return cls(n, tuple(up), tuple(down), tuple(labels))


def poset_validate(n: int, pairs: Iterable[tuple[int, int]], labels: Sequence[str] = ()) -> FinPoset:
    """Close ``pairs`` reflexively and transitively; reject cycles."""
    up = [1 << i for i in range(n)]
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise IndexError(f"pair ({x}, {y}) out of range for n={n}")
        up[x] |= 1 << y
    # Warshall over bitset rows
    for k in range(n):
        bit = 1 << k
        row = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= row
    for x in range(n):
        for y in bits(up[x] & ~(1 << x)):
            if up[y] >> x & 1:
                raise CycleError(x, y)
    if labels and len(labels) != n:
        raise ValueError("labels length does not match n")
    return FinPoset.from_up_sets(up, labels)


def lower_covers(P: FinPoset, y: int) -> list[int]:
    strict = P.down[y] & ~(1 << y)
    return [z for z in bits(strict) if P.up[z] & strict == 1 << z]


def upper_covers(P: FinPoset, x: int) -> list[int]:
    strict = P.up[x] & ~(1 << x)
    return [z for z in bits(strict) if P.down[z] & strict == 1 << z]


def covers(P: FinPoset) -> set[tuple[int, int]]:
    """The covering relation: pairs (x, y) with x < y and nothing in between."""
    return {(x, y) for y in range(P.n) for x in lower_covers(P, y)}


def convex_hull(P: FinPoset, mask: int) -> int:
    """Smallest order-convex superset of ``mask``, iterated to a fixpoint."""
    while True:
        ups = downs = 0
        for x in bits(mask):
            ups |= P.up[x]
            downs |= P.down[x]
        hull = mask | (ups & downs)
        if hull == mask:
            return mask
        mask = hull


def is_convex(P: FinPoset, mask: int) -> bool:
    return convex_hull(P, mask) == mask


def co_lattice(P: FinPoset, max_poset: int | None = None, max_elements: int | None = None):
    """The lattice Co(P) of order-convex subsets of P under inclusion.

    Element ids are sorted by (size, members); labels use P's labels, so the
    singleton {p} is labelled ``{<label of p>}``.
    """
    from .lattice import lattice_from_family

    max_poset = config.CO_POSET_BOUND if max_poset is None else max_poset
    max_elements = config.element_budget() if max_elements is None else max_elements
    if P.n > max_poset:
        raise SizeError(f"Co(P) needs |P| <= {max_poset}, got {P.n}")
    family = []
    for mask in range(1 << P.n):
        if is_convex(P, mask):
            family.append(mask)
            if len(family) > max_elements:
                raise SizeError(f"Co(P) exceeds {max_elements} elements")
    family.sort(key=lambda m: (popcount(m), list(bits(m))))
    labels = ["{" + ",".join(P.labels[i] for i in bits(m)) + "}" for m in family]
    L = lattice_from_family(family, labels)
    return L, family


def delta_relation(P: FinPoset) -> set[tuple[int, int]]:
    """Pairs (p, q) with q < p < r or r < p < q for some r."""
    rel = set()
    for p in range(P.n):
        above = P.up[p] & ~(1 << p)
        below = P.down[p] & ~(1 << p)
        if above:
            rel.update((p, q) for q in bits(below))
        if below:
            rel.update((p, q) for q in bits(above))
    return rel


def chain_poset(n: int, labels: Sequence[str] = ()) -> FinPoset:
    """The chain 1 < 2 < ... < n (ids 0..n-1, labels counted from 1)."""
    labels = labels or [str(i + 1) for i in range(n)]
    return poset_validate(n, [(i, i + 1) for i in range(n - 1)], labels)


def antichain_poset(n: int) -> FinPoset:
    return poset_validate(n, [])


def to_mask_of(P: FinPoset, labels: Iterable[str]) -> int:
    return to_mask(P.index(s) for s in labels)
