"""Bi-ideals of A x B, the tensor product, the box product and A[L].

A bi-ideal I is stored two ways. Its carrier is a bitset over A x B, with
pair (x, y) at bit x*|B| + y. Its rows list, for each x in A, the largest y
with (x, y) in I; hereditary bi-ideals are exactly the row maps that send
joins of A to meets of B and 0 to the top of B.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import config
from .bits import bits, popcount
from .congruence import con_lattice, principal_congruence_irreducibles
from .dependency import DependencyData, is_lower_bounded, minimal_join_covers
from .dimension import DimMonoid, delta, dim_monoid
from .errors import NotALatticeError, PreconditionError, SizeError
from .iso import is_isomorphic
from .lattice import FinLattice, is_join_semidistributive, lattice_from_family, lattice_validate
from .monoid import PrimElement, monoid_iso, primitive_tensor
from .order import FinPoset

Rows = tuple[int, ...]


def rows_to_carrier(A: FinLattice, B: FinLattice, rows: Rows) -> int:
    nb = B.n
    c = 0
    for x, r in enumerate(rows):
        c |= B.down[r] << (x * nb)
    return c


def carrier_to_rows(A: FinLattice, B: FinLattice, carrier: int) -> Rows:
    nb = B.n
    mask = (1 << nb) - 1
    by_down = {d: y for y, d in enumerate(B.down)}
    rows = []
    for x in range(A.n):
        row = (carrier >> (x * nb)) & mask
        if row not in by_down:
            raise ValueError("carrier is not a hereditary bi-ideal")
        rows.append(by_down[row])
    return tuple(rows)


def pairs_to_carrier(B: FinLattice, pairs: Iterable[tuple[int, int]]) -> int:
    return sum(1 << (x * B.n + y) for x, y in set(pairs))


def bottom_carrier(A: FinLattice, B: FinLattice) -> int:
    """The least bi-ideal: (A x {0}) together with ({0} x B)."""
    return rows_to_carrier(A, B, bottom_rows(A, B))


def bottom_rows(A: FinLattice, B: FinLattice) -> Rows:
    return tuple(B.top if x == A.bottom else B.bottom for x in range(A.n))


def close_rows(A: FinLattice, B: FinLattice, rows: Sequence[int]) -> Rows:
    """Least bi-ideal whose rows dominate ``rows``.

    Alternates two repairs until neither changes anything: push each row
    down to everything below it in A, and raise the row of x1 v x2 to at least
    row(x1) ^ row(x2).
    """
    r = list(rows)
    r[A.bottom] = B.top
    ajt, bjt, bmt = A.jt, B.jt, B.mt
    changed = True
    while changed:
        changed = False
        for x in range(A.n):
            acc = r[x]
            for z in bits(A.up[x]):
                acc = bjt[acc][r[z]]
            if acc != r[x]:
                r[x] = acc
                changed = True
        for x1 in range(A.n):
            for x2 in range(x1 + 1, A.n):
                j = ajt[x1][x2]
                v = bjt[r[j]][bmt[r[x1]][r[x2]]]
                if v != r[j]:
                    r[j] = v
                    changed = True
    return tuple(r)


def bi_ideal_closure(A: FinLattice, B: FinLattice, S: Iterable[tuple[int, int]]) -> int:
    """Carrier of the least bi-ideal containing the pairs S."""
    rows = list(bottom_rows(A, B))
    for x, y in S:
        rows[x] = B.jt[rows[x]][y]
    return rows_to_carrier(A, B, close_rows(A, B, rows))


def is_bi_ideal(A: FinLattice, B: FinLattice, carrier: int) -> bool:
    """Hereditary, contains the bottom bi-ideal, and closed under joins in
    either coordinate with the other fixed.

    Checked on rows: each row must be a principal ideal of B, the row tops
    must be antitone in x, and r(x1 v x2) >= r(x1) ^ r(x2).
    """
    nb = B.n
    if carrier >> (A.n * nb):
        return False
    by_down = {d: y for y, d in enumerate(B.down)}
    mask = (1 << nb) - 1
    rows = []
    for x in range(A.n):
        r = by_down.get(carrier >> (x * nb) & mask)
        if r is None:
            return False
        rows.append(r)
    if rows[A.bottom] != B.top:
        return False
    for x in range(A.n):
        rx = rows[x]
        if any(not B.leq(rx, rows[x2]) for x2 in A.lower_covers[x]):
            return False
        jrow, mrow = A.jt[x], B.mt[rx]
        for x2 in range(x + 1, A.n):
            if not B.leq(mrow[rows[x2]], rows[jrow[x2]]):
                return False
    return True


def pure_tensor(A: FinLattice, B: FinLattice, a: int, b: int) -> int:
    rows = tuple(B.top if x == A.bottom else (b if A.leq(x, a) else B.bottom) for x in range(A.n))
    return rows_to_carrier(A, B, rows)


def mixed_tensor(A: FinLattice, B: FinLattice, a: int, a2: int, b: int, b2: int) -> int:
    """(a (x) b2) united with (a2 (x) b), for a <= a2 and b <= b2."""
    if not A.leq(a, a2) or not B.leq(b, b2):
        raise PreconditionError("mixed tensor needs a <= a2 and b <= b2")
    return pure_tensor(A, B, a, b2) | pure_tensor(A, B, a2, b)


def box(A: FinLattice, B: FinLattice, a: int, b: int) -> int:
    """a box b: all (x, y) with x <= a or y <= b."""
    rows = tuple(B.top if A.leq(x, a) else b for x in range(A.n))
    return rows_to_carrier(A, B, rows)


def lower_rect(A: FinLattice, B: FinLattice, a: int, b: int) -> int:
    """All (x, y) with x <= a and y <= b."""
    return sum(B.down[b] << (x * B.n) for x in bits(A.down[a]))


@dataclass(frozen=True, eq=False)
class ProductLattice:
    """A sub-tensor product of A and B together with its carriers."""

    kind: str
    A: FinLattice
    B: FinLattice
    lattice: FinLattice
    carriers: tuple[int, ...]

    @cached_property
    def index(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.carriers)}

    def element(self, carrier: int) -> int:
        return self.index[carrier]

    def pure(self, a: int, b: int) -> int:
        return self.index[pure_tensor(self.A, self.B, a, b)]

    def mixed(self, a: int, a2: int, b: int, b2: int) -> int:
        return self.index[mixed_tensor(self.A, self.B, a, a2, b, b2)]

    def provenance(self) -> dict:
        return {
            "construction": self.kind,
            "factors": [list(self.A.labels), list(self.B.labels)],
            "pair_index": "x*|B| + y",
            "elements": [hex(c) for c in self.carriers],
        }


def _product_labels(A: FinLattice, B: FinLattice, rows_list: Sequence[Rows]) -> list[str]:
    # name each element by the rows that differ from the bottom bi-ideal
    out = []
    for rows in rows_list:
        parts = [f"{A.labels[x]}:{B.labels[r]}" for x, r in enumerate(rows) if x != A.bottom and r != B.bottom]
        out.append("[" + ",".join(parts) + "]")
    return out


def _finish(kind, A, B, rows_set, budget) -> ProductLattice:
    carriers = sorted((rows_to_carrier(A, B, r) for r in rows_set), key=lambda c: (popcount(c), c))
    rows_list = [carrier_to_rows(A, B, c) for c in carriers]
    L = lattice_from_family(carriers, _product_labels(A, B, rows_list))
    return ProductLattice(kind, A, B, L, tuple(carriers))


def tensor_lattice(A: FinLattice, B: FinLattice, budget: int | None = None) -> ProductLattice:
    """All bi-ideals of A x B: the joins of pure tensors of join-irreducibles,
    grown breadth-first from the bottom bi-ideal."""
    budget = config.TENSOR_BUDGET if budget is None else budget
    gens = [(p, q) for p in A.J for q in B.J]
    start = bottom_rows(A, B)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for rows in frontier:
            for p, q in gens:
                if B.leq(q, rows[p]):
                    continue
                r = list(rows)
                r[p] = B.jt[r[p]][q]
                new = close_rows(A, B, r)
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
                    if len(seen) > budget:
                        raise SizeError(f"tensor product exceeds {budget} elements")
        frontier = nxt
    return _finish("tensor", A, B, seen, budget)


def semilattice_tensor(S: FinLattice, T: FinLattice, budget: int | None = None) -> ProductLattice:
    """Tensor product of finite join-semilattices with zero. A finite
    join-semilattice with zero is a lattice, so the bi-ideal machinery applies."""
    return tensor_lattice(S, T, budget)


def box_join_rows(A: FinLattice, B: FinLattice, rows: Sequence[int]) -> Rows:
    """Least intersection of boxes containing the row map ``rows``.

    The box (a, b) contains it iff b bounds every row outside the ideal of a,
    so the least usable b for each a is the join of those rows.
    """
    out = [B.top] * A.n
    for a in range(A.n):
        b = B.bottom
        for x in range(A.n):
            if not A.leq(x, a):
                b = B.jt[b][rows[x]]
        for x in range(A.n):
            if not A.leq(x, a):
                out[x] = B.mt[out[x]][b]
    return tuple(out)


def box_product(A: FinLattice, B: FinLattice, budget: int | None = None, check_identity: bool = True) -> ProductLattice:
    """All intersections of the sets a box b, closed breadth-first under
    intersection starting from the whole of A x B."""
    budget = config.TENSOR_BUDGET if budget is None else budget
    gens = {tuple(B.top if A.leq(x, a) else b for x in range(A.n)) for a in range(A.n) for b in range(B.n)}
    full = tuple(B.top for _ in range(A.n))
    seen = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for rows in frontier:
            for g in gens:
                new = tuple(B.mt[u][v] for u, v in zip(rows, g))
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
                    if len(seen) > budget:
                        raise SizeError(f"box product exceeds {budget} elements")
        frontier = nxt
    P = _finish("box", A, B, seen, budget)
    if check_identity:
        assert_box_join_identity(P)
    return P


def assert_box_join_identity(P: ProductLattice) -> None:
    """(a box b) v (u (x) v) = ((a v u) box b) meet (a box (b v v))
    = (a box b) united with the rectangle below (a v u, b v v), for all a, u, b, v.

    The join on the left is taken in the box-product lattice itself.
    """
    A, B, L = P.A, P.B, P.lattice
    for a in range(A.n):
        for b in range(B.n):
            ab = box(A, B, a, b)
            e_ab = P.index[ab]
            for u in range(A.n):
                au = A.jt[a][u]
                for v in range(B.n):
                    bv = B.jt[b][v]
                    lhs = P.carriers[L.jt[e_ab][P.pure(u, v)]]
                    middle = box(A, B, au, b) & box(A, B, a, bv)
                    right = ab | lower_rect(A, B, au, bv)
                    if not lhs == middle == right:
                        raise AssertionError(
                            f"box join identity fails at a={A.labels[a]}, b={B.labels[b]}, "
                            f"u={A.labels[u]}, v={B.labels[v]}"
                        )


def is_subtensor_product(A: FinLattice, B: FinLattice, C: Iterable[int]) -> bool:
    """Bi-ideals, closed under intersection, containing every mixed tensor,
    and a lattice under inclusion."""
    fam = set(C)
    if not all(is_bi_ideal(A, B, c) for c in fam):
        return False
    for c in fam:
        for d in fam:
            if c & d not in fam:
                return False
    for a in range(A.n):
        for a2 in bits(A.up[a]):
            for b in range(B.n):
                for b2 in bits(B.up[b]):
                    if mixed_tensor(A, B, a, a2, b, b2) not in fam:
                        return False
    try:
        lattice_from_family(sorted(fam))
    except NotALatticeError:
        return False
    return True


def pi_image(P: ProductLattice, dmC: DimMonoid, a: int, a2: int, b: int, b2: int) -> PrimElement:
    """Dimension in C of [mixed tensor, a2 (x) b2]."""
    A, B = P.A, P.B
    if not A.leq(a, a2) or not B.leq(b, b2):
        raise PreconditionError("pi_image needs a <= a2 and b <= b2")
    return delta(P.lattice, dmC, P.mixed(a, a2, b, b2), P.pure(a2, b2))


def pure_irreducibles_check(P: ProductLattice) -> bool:
    """J(C) is the set of pure tensors of join-irreducibles, and the lower
    cover of a (x) b is (a_* (x) b) united with (a (x) b_*)."""
    A, B, C = P.A, P.B, P.lattice
    expected = {}
    for a in A.J:
        for b in B.J:
            lower = pure_tensor(A, B, A.star(a), b) | pure_tensor(A, B, a, B.star(b))
            expected[P.pure(a, b)] = P.index.get(lower)
    return expected == C.irreducibles.lower_cover


def pi_generators_surjective(P: ProductLattice, dmA: DimMonoid, dmB: DimMonoid, dmC: DimMonoid) -> bool:
    """The images of the generator pairs reach every generator class of C."""
    A, B = P.A, P.B
    hit = set()
    for a in A.J:
        for b in B.J:
            img = pi_image(P, dmC, A.star(a), a, B.star(b), b)
            hit.update(i for i, v in enumerate(img.vec) if v != 0)
    return hit == set(range(dmC.sys.n))


def dimtens_check(P: ProductLattice) -> bool:
    """Dim C agrees with the product system of Dim A and Dim B, both as
    abstract primitive monoids and through the map a (x) b -> (a, b)."""
    A, B, C = P.A, P.B, P.lattice
    if not is_join_semidistributive(A)[0] or not is_join_semidistributive(B)[0]:
        raise PreconditionError("both factors must be join-semidistributive")
    if not is_join_semidistributive(C)[0]:
        raise PreconditionError("the sub-tensor product must be join-semidistributive")
    if not is_subtensor_product(A, B, P.carriers):
        raise PreconditionError("not a sub-tensor product")
    dmA, dmB, dmC = dim_monoid(A), dim_monoid(B), dim_monoid(C)
    prod = primitive_tensor(dmA.sys, dmB.sys)
    if not monoid_iso(prod, dmC.sys):
        return False
    nb = dmB.sys.n
    phi = {}
    for a in A.J:
        for b in B.J:
            i = dmA.class_of[a] * nb + dmB.class_of[b]
            phi[i] = dmC.class_of[P.pure(a, b)]
    if sorted(phi) != list(range(prod.n)) or sorted(phi.values()) != list(range(dmC.sys.n)):
        return False
    return all(prod.rel(i, j) == dmC.sys.rel(phi[i], phi[j]) for i in phi for j in phi)


# A[L]: antitone maps on J(A) respecting minimal join-covers

@dataclass(frozen=True, eq=False)
class AofL:
    A: FinLattice
    L: FinLattice
    maps: tuple[tuple[int, ...], ...]
    lattice: FinLattice
    covers: dict[int, list[tuple[int, ...]]] = field(repr=False)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {m: i for i, m in enumerate(self.maps)}


def adjustment_join(A: FinLattice, L: FinLattice, covers, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    """Join in A[L]: pointwise join, then repeat the adjustment step
    z(p) <- z(p) v join over covers I of p of meet over q in I of z(q)
    until it stops changing."""
    J = A.J
    z = [L.jt[u][v] for u, v in zip(x, y)]
    limit = len(J) * L.n
    for _ in range(limit + 1):
        nz = list(z)
        for i, p in enumerate(J):
            for cover in covers[p]:
                nz[i] = L.jt[nz[i]][L.meet_of(z[J.index(q)] for q in cover)]
        if nz == z:
            return tuple(z)
        z = nz
    raise AssertionError(f"adjustment sequence did not settle within {limit} steps")


def a_of_l(A: FinLattice, L: FinLattice, budget: int | None = None) -> AofL:
    if not is_lower_bounded(A):
        raise PreconditionError("A must be lower bounded")
    budget = config.TENSOR_BUDGET if budget is None else budget
    J = A.J
    covers = {p: minimal_join_covers(A, p) for p in J}
    pos = {p: i for i, p in enumerate(J)}
    # assign smaller elements first so antitonicity is checked against set values
    order = sorted(range(len(J)), key=lambda i: (popcount(A.down[J[i]]), i))
    maps = []
    values = [None] * len(J)

    def assign(k):
        if k == len(order):
            for p in J:
                for cover in covers[p]:
                    if not L.leq(L.meet_of(values[pos[q]] for q in cover), values[pos[p]]):
                        return
            maps.append(tuple(values))
            if len(maps) > budget:
                raise SizeError(f"A[L] exceeds {budget} elements")
            return
        i = order[k]
        p = J[i]
        for v in range(L.n):
            if all(L.leq(v, values[pos[q]]) for q in J if q != p and A.leq(q, p) and values[pos[q]] is not None):
                values[i] = v
                assign(k + 1)
        values[i] = None

    assign(0)
    maps.sort()
    m = len(maps)
    up = []
    for u in maps:
        row = 0
        for j, w in enumerate(maps):
            if all(L.leq(a, b) for a, b in zip(u, w)):
                row |= 1 << j
        up.append(row)
    labels = ["(" + ",".join(L.labels[v] for v in mp) + ")" for mp in maps]
    lat = lattice_validate(FinPoset.from_up_sets(up, labels))
    result = AofL(A, L, tuple(maps), lat, covers)
    # the order-theoretic join must be the adjusted pointwise join
    index = result.index
    for i in range(m):
        for j in range(i + 1, m):
            adj = adjustment_join(A, L, covers, maps[i], maps[j])
            if index.get(adj) != lat.jt[i][j]:
                raise AssertionError("adjustment join disagrees with the order join")
    return result


# Congruence checks

def conc_tensor_check(A: FinLattice, B: FinLattice) -> bool:
    """Con(A (x) B) is isomorphic to Con A (x) Con B."""
    lhs, _ = con_lattice(tensor_lattice(A, B).lattice)
    cA, _ = con_lattice(A)
    cB, _ = con_lattice(B)
    return is_isomorphic(lhs, semilattice_tensor(cA, cB).lattice)


def epsilon_check(P: ProductLattice) -> bool:
    """The map Theta_A(a,a2) (x) Theta_B(b,b2) -> Theta_C(mixed, a2 (x) b2)
    is well defined on generators, and its join-extension to
    Con A (x) Con B is injective."""
    A, B, C = P.A, P.B, P.lattice
    ddA, ddB, ddC = DependencyData(A), DependencyData(B), DependencyData(C)
    cA, famA = con_lattice(A, ddA)
    cB, famB = con_lattice(B, ddB)
    idxA = {m: i for i, m in enumerate(famA)}
    idxB = {m: i for i, m in enumerate(famB)}
    T = semilattice_tensor(cA, cB)
    image: dict[int, int] = {}
    for a in range(A.n):
        for a2 in bits(A.up[a]):
            tA = idxA[principal_congruence_irreducibles(A, a, a2, ddA)]
            for b in range(B.n):
                for b2 in bits(B.up[b]):
                    tB = idxB[principal_congruence_irreducibles(B, b, b2, ddB)]
                    key = T.pure(tA, tB)
                    val = principal_congruence_irreducibles(C, P.mixed(a, a2, b, b2), P.pure(a2, b2), ddC)
                    if image.setdefault(key, val) != val:
                        return False
    # every element of the congruence tensor is a join of pure tensors
    ext = {}
    for e in range(T.lattice.n):
        ext[e] = 0
        for g, val in image.items():
            if T.lattice.leq(g, e):
                ext[e] |= val
    return len(set(ext.values())) == T.lattice.n


def capped_witness(P: ProductLattice, a: int, a2: int, b: int, b2: int) -> dict[str, bool]:
    """The four-atom failure of join-semidistributivity in a tensor square.

    H is the union of a(x)b, b(x)a2, a2(x)b2 and b2(x)a. The checks: that union
    is already a bi-ideal; a(x)a is not inside H; the joins of H with a(x)a,
    a(x)a2, a2(x)a2 and a2(x)a coincide; a(x)a meet a(x)a2 is the bottom.
    """
    A, B, C = P.A, P.B, P.lattice
    union = pure_tensor(A, B, a, b) | pure_tensor(A, B, b, a2) | pure_tensor(A, B, a2, b2) | pure_tensor(A, B, b2, a)
    H = P.index.get(union)
    checks = {"union_is_bi_ideal": H is not None and is_bi_ideal(A, B, union)}
    if H is None:
        return checks
    aa, aa2, a2a2, a2a = P.pure(a, a), P.pure(a, a2), P.pure(a2, a2), P.pure(a2, a)
    checks["aa_not_below_H"] = not C.leq(aa, H)
    joins = {C.jt[t][H] for t in (aa, aa2, a2a2, a2a)}
    checks["four_joins_equal"] = len(joins) == 1
    checks["meet_is_bottom"] = C.mt[aa][aa2] == C.bottom
    checks["jsd_fails_here"] = (
        C.jt[H][aa] == C.jt[H][aa2] and C.jt[H][C.mt[aa][aa2]] != C.jt[H][aa]
    )
    return checks
