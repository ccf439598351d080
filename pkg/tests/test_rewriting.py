from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from latdim.dimension import primitive_oracle
from latdim.monoid import from_multiset, qo_system
from latdim.rewriting import Verdict, complete


def test_idempotent_generator():
    rs = complete(1, [((2,), (1,))], depth=8)
    assert rs.complete
    assert rs.decide((5,), (1,)) is Verdict.EQUAL
    assert rs.decide((1,), (0,)) is Verdict.NOT_EQUAL


def test_free_monoid_has_no_rules():
    rs = complete(2, [], depth=4)
    assert rs.rules == [] and rs.decide((1, 0), (0, 1)) is Verdict.NOT_EQUAL


def test_commuting_relations_are_completed():
    # x + y = y and y + z = z give x + z = x + y + z = z
    rs = complete(3, [((1, 1, 0), (0, 1, 0)), ((0, 1, 1), (0, 0, 1))], depth=8)
    assert rs.complete
    assert rs.decide((1, 0, 1), (0, 0, 1)) is Verdict.EQUAL
    assert rs.decide((1, 0, 0), (0, 0, 1)) is Verdict.NOT_EQUAL
    assert rs.decide((0, 0, 2), (0, 0, 1)) is Verdict.NOT_EQUAL


def test_tiny_budget_reports_inconclusive():
    rels = [((2, 0), (0, 1)), ((1, 1), (1, 0))]
    rs = complete(2, rels, depth=1)
    assert not rs.complete and rs.skipped > 0
    assert Verdict.BUDGET_EXCEEDED in {rs.decide((3, 0), (0, 0)), rs.decide((1, 0), (0, 0))}


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=5))
    )
)
def test_primitive_presentation_matches_vectors(data):
    n, pairs = data
    sys = qo_system([str(i) for i in range(n)], pairs, close=True)
    rs = primitive_oracle(sys, depth=10)
    words = [(i, j) for i in range(n) for j in range(i, n)] + [(i,) for i in range(n)]
    for u in words:
        for v in words:
            verdict = rs.decide(_w(n, u), _w(n, v))
            same = from_multiset(sys, u).vec == from_multiset(sys, v).vec
            if verdict is Verdict.EQUAL:
                assert same
            elif verdict is Verdict.NOT_EQUAL:
                assert not same


def _w(n, ms):
    w = [0] * n
    for p in ms:
        w[p] += 1
    return tuple(w)
