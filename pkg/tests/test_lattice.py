from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latdim.errors import GeneratorError, NotALatticeError
from latdim.iso import is_isomorphic
from latdim.lattice import (
    boolean,
    chain,
    check_generators,
    dual,
    is_distributive,
    is_join_semidistributive,
    is_meet_semidistributive,
    is_modular,
    jsd_generator_test,
    lattice_from_family,
    lattice_from_pairs,
    lattice_validate,
    m3,
    n5,
    transposes_up,
)
from latdim.order import FinPoset, poset_validate


def naive_jsd(L) -> bool:
    r = range(L.n)
    return all(
        L.jt[x][y] != L.jt[x][z] or L.jt[x][y] == L.jt[x][L.mt[y][z]] for x in r for y in r for z in r
    )


def test_diamond_is_a_lattice():
    L = lattice_validate(poset_validate(4, [(0, 1), (0, 2), (1, 3), (2, 3)]))
    assert L.jt[1][2] == 3 and L.mt[1][2] == 0


def test_bowtie_reports_minimal_pair():
    P = poset_validate(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    with pytest.raises(NotALatticeError) as exc:
        lattice_validate(P)
    assert exc.value.witness == (0, 1)
    assert exc.value.op == "meet"


def test_m3_atoms_join_to_top():
    L = m3()
    for p in (1, 2, 3):
        for q in (1, 2, 3):
            if p != q:
                assert L.jt[p][q] == L.top


def test_join_irreducibles():
    C = chain(3)
    assert C.J == (1, 2) and C.star(1) == 0 and C.star(2) == 1
    M = m3()
    assert M.J == (1, 2, 3) and all(M.star(p) == 0 for p in M.J)


def test_co4_irreducibles_are_the_atoms(co4):
    assert sorted(co4.labels[p] for p in co4.J) == ["{1}", "{2}", "{3}", "{4}"]
    assert all(co4.star(p) == co4.bottom for p in co4.J)


def test_transposition():
    N = n5()
    a, b = N.index("a"), N.index("b")
    assert transposes_up(N, N.bottom, a, b, N.top)
    C = chain(2)
    # 0 = 0 meet 1 and 1 = 0 join 1, so the definition holds
    assert transposes_up(C, 0, 0, 1, 1)
    assert not transposes_up(C, 0, 1, 1, 1)
    B = boolean(2)
    assert transposes_up(B, 0, B.index("a"), B.index("b"), B.top)


def test_semidistributivity_examples(co4):
    assert is_join_semidistributive(n5())[0]
    ok, witness = is_join_semidistributive(m3())
    assert not ok
    x, y, z = witness
    M = m3()
    assert len({x, y, z}) == 3 and set(witness) <= set(M.J)
    assert M.jt[x][y] == M.jt[x][z] != M.jt[x][M.mt[y][z]]
    assert is_join_semidistributive(co4)[0]
    assert is_meet_semidistributive(n5())[0]
    assert not is_meet_semidistributive(m3())[0]
    assert is_meet_semidistributive(boolean(2))[0]


def test_generator_restricted_jsd():
    B = boolean(2)
    everything = range(B.n)
    assert jsd_generator_test(B, everything, everything)[0]
    M = m3()
    assert not jsd_generator_test(M, range(M.n), range(M.n))[0]
    N = n5()
    g_plus = set(N.J) | {N.bottom}
    g_minus = set(N.meet_irreducibles) | {N.top}
    assert jsd_generator_test(N, g_minus, g_plus)[0]


def test_generator_precondition():
    N = n5()
    with pytest.raises(GeneratorError):
        check_generators(N, [N.top], [N.bottom])


def test_duality_and_builders():
    assert is_isomorphic(dual(chain(3)).poset, chain(3).poset)
    assert is_isomorphic(dual(n5()).poset, n5().poset)
    assert boolean(2).n == 4 and boolean(4).n == 16
    assert is_distributive(boolean(3)) and not is_modular(n5()) and is_modular(m3())
    assert not is_distributive(m3())


def test_fast_path_agrees_with_exact_loop():
    # the cover-based validation only runs from 64 elements on
    rng = random.Random(7)
    for _ in range(6):
        fam = {0, (1 << 7) - 1}
        while len(fam) < 90:
            fam.add(rng.getrandbits(7))
        # close under intersection
        fam = set(fam)
        changed = True
        while changed:
            changed = False
            for a in list(fam):
                for b in list(fam):
                    if a & b not in fam:
                        fam.add(a & b)
                        changed = True
        fam = sorted(fam)
        L = lattice_from_family(fam)
        for _ in range(300):
            x, y = rng.randrange(L.n), rng.randrange(L.n)
            assert fam[L.mt[x][y]] == fam[x] & fam[y]
            ub = [z for z in range(L.n) if fam[z] & (fam[x] | fam[y]) == fam[x] | fam[y]]
            assert L.jt[x][y] == min(ub, key=lambda z: bin(fam[z]).count("1"))


def test_fast_path_reports_missing_meet():
    # two incomparable maximal elements over a large chain: no top
    n = 70
    pairs = [(i, i + 1) for i in range(n - 3)] + [(n - 3, n - 2), (n - 3, n - 1)]
    with pytest.raises(NotALatticeError) as exc:
        lattice_validate(poset_validate(n, pairs))
    assert exc.value.op == "join" and set(exc.value.witness) == {n - 2, n - 1}


def test_corpus_tables_are_lattice_laws(corpus6):
    for L in corpus6:
        r = range(L.n)
        jt, mt = L.jt, L.mt
        for x in r:
            assert jt[x][x] == x and mt[x][x] == x
            for y in r:
                assert jt[x][y] == jt[y][x] and mt[x][y] == mt[y][x]
                assert jt[x][mt[x][y]] == x
                for z in r:
                    assert jt[jt[x][y]][z] == jt[x][jt[y][z]]
                    assert mt[mt[x][y]][z] == mt[x][mt[y][z]]


def test_corpus_jsd_fold_and_generator_test_agree(corpus7):
    for L in corpus7:
        full = is_join_semidistributive(L)[0]
        assert full == naive_jsd(L)
        g_plus = set(L.J) | {L.bottom}
        g_minus = set(L.meet_irreducibles) | {L.top}
        assert jsd_generator_test(L, g_minus, g_plus)[0] == full


def test_double_dual_is_identity(corpus6):
    for L in corpus6:
        D = dual(dual(L))
        assert D.poset == L.poset and D.jt == L.jt and D.mt == L.mt


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 31), min_size=1, max_size=20))
def test_family_lattice_meets_are_intersections(raw):
    fam = sorted(set(raw) | {31})
    closed = set(fam)
    for a in fam:
        for b in fam:
            closed.add(a & b)
    while True:
        more = {a & b for a in closed for b in closed} - closed
        if not more:
            break
        closed |= more
    fam = sorted(closed)
    L = lattice_from_family(fam)
    for x in range(L.n):
        for y in range(L.n):
            assert fam[L.mt[x][y]] == fam[x] & fam[y]


def test_from_up_sets_round_trip():
    N = n5()
    P = FinPoset.from_up_sets(N.up, N.labels)
    assert lattice_validate(P).poset == N.poset
    assert lattice_from_pairs(2, [(0, 1)]).n == 2
