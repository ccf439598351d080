from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latdim.enumerate import enumerate_lattices, lattices_up_to
from latdim.errors import SizeError
from latdim.iso import canonical_form, find_isomorphism, is_isomorphic
from latdim.lattice import boolean, chain, m3, n5
from latdim.order import FinPoset
from oracles import naive_lattice_count

# number of lattices on 1..7 elements, from the brute-force oracle
LATTICE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53}


def relabelled(P: FinPoset, perm: list[int]) -> FinPoset:
    up = [0] * P.n
    for x in range(P.n):
        up[perm[x]] = sum(1 << perm[y] for y in range(P.n) if P.leq(x, y))
    return FinPoset.from_up_sets(up)


def test_counts_match_oracle():
    for n in range(1, 8):
        assert len(enumerate_lattices(n)) == LATTICE_COUNTS[n] == naive_lattice_count(n)


@pytest.mark.slow
def test_counts_eight_and_nine():
    # published counts of unlabelled lattices
    assert len(enumerate_lattices(8)) == 222
    assert len(enumerate_lattices(9)) == 1078


def test_enumeration_has_no_isomorphic_pair():
    for n in range(1, 8):
        forms = [canonical_form(L.poset) for L in enumerate_lattices(n)]
        assert len(set(forms)) == len(forms)


def test_enumeration_is_deterministic():
    a = [L.up for L in enumerate_lattices(6)]
    b = [L.up for L in enumerate_lattices(6)]
    assert a == b


def test_five_element_lattices_include_m3_and_n5():
    forms = {canonical_form(L.poset) for L in enumerate_lattices(5)}
    assert canonical_form(m3().poset) in forms
    assert canonical_form(n5().poset) in forms
    assert canonical_form(chain(5).poset) in forms


def test_enumeration_limits():
    with pytest.raises(ValueError):
        enumerate_lattices(0)
    with pytest.raises(SizeError):
        enumerate_lattices(11)
    assert len(lattices_up_to(4)) == 5


def test_isomorphism_examples():
    assert is_isomorphic(m3().poset, m3().poset)
    assert not is_isomorphic(m3().poset, n5().poset)
    assert not is_isomorphic(boolean(2).poset, chain(4).poset)


def test_colours_restrict_isomorphisms():
    P = boolean(2).poset
    # swapping the atoms is the only nontrivial automorphism
    assert find_isomorphism(P, P, [0, 1, 2, 3], [0, 2, 1, 3]) == [0, 2, 1, 3]
    assert not is_isomorphic(P, P, [0, 1, 1, 2], [0, 0, 1, 2])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 52), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant_under_relabelling(i, rnd):
    L = enumerate_lattices(7)[i]
    perm = list(range(L.n))
    rnd.shuffle(perm)
    Q = relabelled(L.poset, perm)
    assert canonical_form(Q) == canonical_form(L.poset)
    iso = find_isomorphism(L.poset, Q)
    assert iso is not None
    assert all(L.leq(x, y) == Q.leq(iso[x], iso[y]) for x in range(L.n) for y in range(L.n))


def test_nonisomorphic_corpus_pairs_have_no_isomorphism():
    corpus = enumerate_lattices(6)
    rng = random.Random(3)
    for _ in range(40):
        A, B = rng.sample(corpus, 2)
        assert find_isomorphism(A.poset, B.poset) is None
