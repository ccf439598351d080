"""Finite lattices: validation, join-irreducibles, semidistributivity tests,
duality and a handful of standard builders."""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from . import config
from .bits import bits, popcount
from .errors import GeneratorError, NotALatticeError, PreconditionError, SizeError, ValidationError
from .order import FinPoset, lower_covers, poset_validate, upper_covers


@dataclass(frozen=True)
class JoinIrreducibles:
    elements: tuple[int, ...]
    lower_cover: dict[int, int]

    def __contains__(self, p):
        return p in self.lower_cover

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True, eq=False)
class FinLattice:
    poset: FinPoset
    join: np.ndarray
    meet: np.ndarray
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels

    @property
    def up(self) -> tuple[int, ...]:
        return self.poset.up

    @property
    def down(self) -> tuple[int, ...]:
        return self.poset.down

    def leq(self, x: int, y: int) -> bool:
        return bool(self.poset.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def index(self, label: str) -> int:
        return self.poset.labels.index(label)

    # row-wise copies of the tables; inner loops index these instead of numpy
    @cached_property
    def jt(self) -> list:
        return [array("i", row) for row in self.join.tolist()]

    @cached_property
    def mt(self) -> list:
        return [array("i", row) for row in self.meet.tolist()]

    def join_of(self, xs: Iterable[int]) -> int:
        jt = self.jt
        return reduce(lambda a, b: jt[a][b], xs, self.bottom)

    def meet_of(self, xs: Iterable[int]) -> int:
        mt = self.mt
        return reduce(lambda a, b: mt[a][b], xs, self.top)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(lower_covers(self.poset, x)) for x in range(self.n))

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(upper_covers(self.poset, x)) for x in range(self.n))

    @cached_property
    def irreducibles(self) -> JoinIrreducibles:
        lower = {x: lc[0] for x, lc in enumerate(self.lower_covers) if len(lc) == 1}
        return JoinIrreducibles(tuple(sorted(lower)), lower)

    @property
    def J(self) -> tuple[int, ...]:
        return self.irreducibles.elements

    def star(self, p: int) -> int:
        """The unique lower cover of a join-irreducible p."""
        return self.irreducibles.lower_cover[p]

    @cached_property
    def J_mask(self) -> int:
        m = 0
        for p in self.J:
            m |= 1 << p
        return m

    def J_below(self, x: int) -> int:
        """Bitset of join-irreducibles below x."""
        return self.poset.down[x] & self.J_mask

    @cached_property
    def meet_irreducibles(self) -> tuple[int, ...]:
        return tuple(x for x, uc in enumerate(self.upper_covers) if len(uc) == 1)

    def __eq__(self, other):
        if not isinstance(other, FinLattice):
            return NotImplemented
        return self.poset == other.poset and self.labels == other.labels

    def __hash__(self):
        return hash(self.poset)

    def __repr__(self):
        return f"FinLattice(n={self.n}, |J|={len(self.J)})"


_FAST_MIN = 64


def lattice_validate(P: FinPoset) -> FinLattice:
    """Build join and meet tables; fail on the first pair lacking either.

    Pairs are scanned by id, meet before join, so the reported witness is the
    first offending pair in that order.
    """
    n = P.n
    if n == 0:
        raise ValidationError("the empty poset is not a lattice")
    if n >= _FAST_MIN:
        fast = _tables_by_covers(P)
        if fast is not None:
            return fast
    up, down = P.up, P.down
    by_up = {m: x for x, m in enumerate(up)}
    by_down = {m: x for x, m in enumerate(down)}
    join = [array("i", bytes(4 * n)) for _ in range(n)]
    meet = [array("i", bytes(4 * n)) for _ in range(n)]
    for x in range(n):
        ux, dx = up[x], down[x]
        jrow, mrow = join[x], meet[x]
        for y in range(x, n):
            m = by_down.get(dx & down[y])
            if m is None:
                raise NotALatticeError(x, y, "meet")
            j = by_up.get(ux & up[y])
            if j is None:
                raise NotALatticeError(x, y, "join")
            mrow[y] = meet[y][x] = m
            jrow[y] = join[y][x] = j
    full = (1 << n) - 1
    L = FinLattice(P, _to_numpy(join), _to_numpy(meet), by_up[full], by_down[full])
    # reuse the row arrays as the fast lookup tables
    L.__dict__["jt"] = join
    L.__dict__["mt"] = meet
    return L


def _to_numpy(rows: list[array]) -> np.ndarray:
    return np.vstack([np.frombuffer(r, dtype=np.intc) for r in rows]).astype(np.int32)


def _to_rows(table: np.ndarray) -> list[array]:
    out = []
    for row in table.astype(np.intc):
        a = array("i")
        a.frombytes(row.tobytes())
        out.append(a)
    return out


def _join_columns(leq: np.ndarray, rank: np.ndarray, covers: Sequence[Sequence[int]]) -> np.ndarray | None:
    """Join table from the upper covers, or None if some join is missing.

    For x not below y, every upper bound of x and y lies above some upper
    cover u of y, so x v y is the least of the x v u. Columns are filled from
    the top down; the least candidate is the one of smallest rank, and it is
    accepted only if it lies below all the others.
    """
    n = len(rank)
    table = np.empty((n, n), dtype=np.int32)
    rows = np.arange(n)
    for y in np.argsort(-rank, kind="stable"):
        above = leq[:, y]
        cs = covers[y]
        if not cs:
            if not above.all():
                return None
            table[:, y] = y
            continue
        cand = table[:, list(cs)]
        pick = cand[rows, np.argmin(rank[cand], axis=1)]
        if not (leq[pick[:, None], cand].all(axis=1) | above).all():
            return None
        table[:, y] = np.where(above, y, pick)
    return table


def _tables_by_covers(P: FinPoset) -> FinLattice | None:
    n = P.n
    nbytes = (n + 7) // 8
    raw = b"".join(u.to_bytes(nbytes, "little") for u in P.up)
    leq = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(n, nbytes), axis=1,
                        count=n, bitorder="little").astype(bool)
    # size of the down-set is a linear extension
    rank = leq.sum(axis=0)
    ucov = tuple(tuple(upper_covers(P, x)) for x in range(n))
    lcov = tuple(tuple(lower_covers(P, x)) for x in range(n))
    join = _join_columns(leq, rank, ucov)
    if join is None:
        return None
    meet = _join_columns(leq.T, n - rank, lcov)
    if meet is None:
        return None
    bottom = int(np.argmin(rank))
    top = int(np.argmax(rank))
    if not leq[bottom].all() or not leq[:, top].all():
        return None
    L = FinLattice(P, join, meet, bottom, top)
    L.__dict__.update(jt=_to_rows(join), mt=_to_rows(meet), upper_covers=ucov, lower_covers=lcov)
    return L


def lattice_from_pairs(n: int, pairs: Iterable[tuple[int, int]], labels: Sequence[str] = ()) -> FinLattice:
    return lattice_validate(poset_validate(n, pairs, labels))


def lattice_from_family(family: Sequence[int], labels: Sequence[str] = ()) -> FinLattice:
    """The lattice of a family of sets (as bitsets) ordered by inclusion."""
    m = len(family)
    width = max((f.bit_length() for f in family), default=0)
    nbytes = max(1, (width + 7) // 8)
    raw = b"".join(f.to_bytes(nbytes, "little") for f in family)
    members = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(m, nbytes), axis=1, bitorder="little")
    members = members.astype(np.float32)
    # a is inside b iff no member of a is missing from b
    outside = members @ (1.0 - members).T
    incl = outside < 0.5
    packed = np.packbits(incl, axis=1, bitorder="little")
    up = [int.from_bytes(row.tobytes(), "little") for row in packed]
    return lattice_validate(FinPoset.from_up_sets(up, labels))


def transposes_up(L: FinLattice, a: int, b: int, c: int, d: int) -> bool:
    """Whether [a,b] transposes up to [c,d]: a = b meet c and d = b join c."""
    if not L.leq(a, b) or not L.leq(c, d):
        raise PreconditionError(f"need {a} <= {b} and {c} <= {d}")
    return L.mt[b][c] == a and L.jt[b][c] == d


def is_join_semidistributive(L: FinLattice) -> tuple[bool, tuple[int, int, int] | None]:
    """Check x v y = x v z  =>  x v y = x v (y ^ z) over all triples.

    For fixed x, the elements y with the same x v y are folded with meet; the
    quasi-identity holds for x iff every fold keeps its join with x. A failing
    fold step yields the witness (x, meet-so-far, y).
    """
    jt, mt = L.jt, L.mt
    for x in range(L.n):
        acc: dict[int, int] = {}
        row = jt[x]
        for y in range(L.n):
            c = row[y]
            if c not in acc:
                acc[c] = y
                continue
            a = acc[c]
            folded = mt[a][y]
            if row[folded] != c:
                return False, (x, a, y)
            acc[c] = folded
    return True, None


def dual(L: FinLattice) -> FinLattice:
    P = L.poset
    Q = FinPoset(P.n, P.down, P.up, P.labels)
    return FinLattice(Q, L.meet, L.join, L.top, L.bottom)


def is_meet_semidistributive(L: FinLattice) -> tuple[bool, tuple[int, int, int] | None]:
    return is_join_semidistributive(dual(L))


def check_generators(L: FinLattice, G_minus: Iterable[int], G_plus: Iterable[int]) -> None:
    """Raise GeneratorError unless every element is a join of G_plus members
    and a meet of G_minus members."""
    gp, gm = set(G_plus), set(G_minus)
    for e in range(L.n):
        if L.join_of(g for g in sorted(gp) if L.leq(g, e)) != e:
            raise GeneratorError(f"element {L.labels[e]} is not a join of G_plus")
        if L.meet_of(g for g in sorted(gm) if L.leq(e, g)) != e:
            raise GeneratorError(f"element {L.labels[e]} is not a meet of G_minus")


def jsd_generator_test(
    L: FinLattice, G_minus: Iterable[int], G_plus: Iterable[int]
) -> tuple[bool, tuple[int, int, int] | None]:
    """Join-semidistributivity restricted to a in G_minus and b, c in G_plus.

    When G_plus join-generates and G_minus meet-generates L, a pass certifies
    the full quasi-identity.
    """
    G_minus, G_plus = sorted(set(G_minus)), sorted(set(G_plus))
    check_generators(L, G_minus, G_plus)
    jt, mt = L.jt, L.mt
    for a in G_minus:
        row = jt[a]
        for i, b in enumerate(G_plus):
            for c in G_plus[i + 1:]:
                if row[b] == row[c] and row[mt[b][c]] != row[b]:
                    return False, (a, b, c)
    return True, None


def is_modular(L: FinLattice) -> bool:
    jt, mt = L.jt, L.mt
    for x in range(L.n):
        for z in bits(L.up[x]):
            for y in range(L.n):
                if jt[x][mt[y][z]] != mt[jt[x][y]][z]:
                    return False
    return True


def is_distributive(L: FinLattice) -> bool:
    jt, mt = L.jt, L.mt
    r = range(L.n)
    return all(mt[x][jt[y][z]] == jt[mt[x][y]][mt[x][z]] for x in r for y in r for z in r)


def chain(n: int) -> FinLattice:
    if n < 1:
        raise ValueError("a chain needs at least one element")
    if n > config.element_budget():
        raise SizeError(f"chain({n}) exceeds the element budget")
    return lattice_from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def boolean(k: int) -> FinLattice:
    if 2**k > config.element_budget():
        raise SizeError(f"boolean({k}) exceeds the element budget")
    subsets = sorted(range(2**k), key=lambda m: (popcount(m), m))
    names = "abcdefghijklmnopqrstuvwxyz"
    labels = ["".join(names[i] for i in bits(m)) if m else "0" for m in subsets]
    return lattice_from_family(subsets, labels)


def m3() -> FinLattice:
    return lattice_from_pairs(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], ["0", "p", "q", "r", "1"])


def n5() -> FinLattice:
    # 0 < b < c < 1 and 0 < a < 1
    return lattice_from_pairs(5, [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)], ["0", "a", "b", "c", "1"])
