"""Word problem for finitely presented commutative monoids.

Words are exponent vectors. A presentation is completed into a confluent
rewriting system (the commutative analogue of Knuth-Bendix) under a
weighted-degree, then lexicographic order. Critical pairs whose
overlap has more than ``depth`` letters are left unprocessed; if any are
skipped the system is marked incomplete and differing normal forms prove
nothing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

Word = tuple[int, ...]


class Verdict(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not-equal"
    BUDGET_EXCEEDED = "budget-exceeded"


def _divides(a: Word, b: Word) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass
class RewritingSystem:
    ngens: int
    weights: tuple[int, ...]
    depth: int
    rules: list[tuple[Word, Word]] = field(default_factory=list)
    complete: bool = False
    skipped: int = 0

    def key(self, w: Word):
        return (sum(a * b for a, b in zip(w, self.weights)), w)

    def reduce(self, w: Word) -> Word:
        changed = True
        while changed:
            changed = False
            for lhs, rhs in self.rules:
                if _divides(lhs, w):
                    w = tuple(x - l + r for x, l, r in zip(w, lhs, rhs))
                    changed = True
                    break
        return w

    def orient(self, u: Word, v: Word) -> tuple[Word, Word] | None:
        if u == v:
            return None
        return (u, v) if self.key(u) > self.key(v) else (v, u)

    def decide(self, u: Word, v: Word) -> Verdict:
        if self.reduce(u) == self.reduce(v):
            return Verdict.EQUAL
        return Verdict.NOT_EQUAL if self.complete else Verdict.BUDGET_EXCEEDED


def complete(ngens: int, relations: Sequence[tuple[Word, Word]], depth: int,
             weights: Sequence[int] | None = None, max_rules: int = 20000) -> RewritingSystem:
    """Run completion on ``relations`` (pairs of equal words)."""
    rs = RewritingSystem(ngens, tuple(weights or (1,) * ngens), depth)
    pending = [tuple(map(tuple, r)) for r in relations]
    skipped_any = False

    def add_rule(u, v):
        u, v = rs.reduce(u), rs.reduce(v)
        rule = rs.orient(u, v)
        if rule is None:
            return False
        lhs, rhs = rule
        # drop rules made redundant by the new one, re-queueing their content
        kept = []
        for l2, r2 in rs.rules:
            if _divides(lhs, l2):
                pending.append((l2, r2))
            else:
                kept.append((l2, r2))
        rs.rules = kept + [(lhs, rhs)]
        # keep right-hand sides normal
        rs.rules = [(l2, rs.reduce(r2)) for l2, r2 in rs.rules]
        return True

    while pending:
        u, v = pending.pop()
        add_rule(u, v)

    done_pairs = set()
    while True:
        todo = None
        for i, (l1, _) in enumerate(rs.rules):
            for j in range(i + 1, len(rs.rules)):
                l2 = rs.rules[j][0]
                if (l1, l2) in done_pairs:
                    continue
                if not any(a and b for a, b in zip(l1, l2)):
                    done_pairs.add((l1, l2))
                    continue
                todo = (i, j)
                break
            if todo:
                break
        if todo is None:
            break
        (l1, r1), (l2, r2) = rs.rules[todo[0]], rs.rules[todo[1]]
        done_pairs.add((l1, l2))
        lcm = tuple(max(a, b) for a, b in zip(l1, l2))
        if sum(lcm) > depth:
            skipped_any = True
            rs.skipped += 1
            continue
        w1 = tuple(m - a + b for m, a, b in zip(lcm, l1, r1))
        w2 = tuple(m - a + b for m, a, b in zip(lcm, l2, r2))
        pending.append((w1, w2))
        while pending:
            u, v = pending.pop()
            add_rule(u, v)
        if len(rs.rules) > max_rules:
            skipped_any = True
            break
    rs.complete = not skipped_any
    return rs
