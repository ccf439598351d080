"""The analysis report behind ``latdim analyze``.

Every field is recomputed from the lattice, and both renderings sort their
contents, so re-running on the same file reproduces the same bytes.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .congruence import con_lattice
from .dependency import DependencyData, d_cycle_witness, is_lower_bounded, is_upper_bounded
from .dimension import delta, dim_monoid
from .lattice import FinLattice, is_join_semidistributive, is_meet_semidistributive
from .monoid import (
    PrimElement,
    QoSystem,
    canonical_decomposition,
    is_strongly_separative,
    normalize,
    satisfies_2x_eq_x,
)


def _edges(L: FinLattice, rel: dict) -> list[dict]:
    return [{"p": L.labels[p], "q": L.labels[q], "x": L.labels[x]} for (p, q), x in sorted(rel.items())]


def normalized_system(sys: QoSystem) -> QoSystem:
    """The QO-system on mutual-relatedness classes: strict order plus a loop
    on each idempotent class. Presents a monoid isomorphic to E(sys)."""
    norm = normalize(sys)
    loops = {(i, i) for i, flag in enumerate(norm.idempotent) if flag}
    return QoSystem(norm.labels, frozenset(norm.order | loops))


def _presentation(sys: QoSystem) -> str:
    rels = ", ".join(f"{sys.labels[p]}◁{sys.labels[q]}" for p, q in sorted(sys.tri))
    body = "{" + ",".join(sys.labels) + "}"
    return f"E({body}{', ' + rels if rels else ''})"


def describe_monoid(sys: QoSystem) -> str:
    """E(generators, relations); when classes merge, also the normalized
    presentation; and a short name for the relation-free shapes."""
    text = _presentation(sys)
    norm = normalize(sys)
    if len(norm.classes) < sys.n:
        text += " ≅ " + _presentation(normalized_system(sys))
    if not norm.order:
        idem = sum(norm.idempotent)
        free = len(norm.classes) - idem
        parts = []
        if free:
            parts.append("Z+" if free == 1 else f"(Z+)^{free}")
        if idem:
            parts.append("2" if idem == 1 else f"2^{idem}")
        text += " ≅ " + (" x ".join(parts) if parts else "0")
    return text


def format_element(a: PrimElement) -> str:
    """A dimension value as its canonical sum of generators."""
    terms = canonical_decomposition(a)
    if not terms:
        return "0"
    counts: dict[int, int] = {}
    for t in terms:
        counts[t] = counts.get(t, 0) + 1
    return " + ".join(f"{k}·{a.sys.labels[t]}" if k > 1 else a.sys.labels[t] for t, k in sorted(counts.items()))


@dataclass
class AnalysisReport:
    n: int
    join_irreducibles: list[str]
    flags: dict[str, bool]
    d_cycle: str | None
    relations: dict[str, list[dict]]
    dim: dict
    separativity: dict
    con_size: int
    delta: list[dict] | None = field(default=None)

    def to_dict(self) -> dict:
        out = asdict(self)
        if self.delta is None:
            del out["delta"]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        f = self.flags
        yes = {True: "true", False: "false"}
        lines = [
            f"elements: {self.n}",
            f"join-irreducibles: {', '.join(self.join_irreducibles)}",
            f"JSD: {yes[f['join_semidistributive']]}",
            f"MSD: {yes[f['meet_semidistributive']]}",
            f"lower-bounded: {yes[f['lower_bounded']]}",
            f"upper-bounded: {yes[f['upper_bounded']]}",
        ]
        for name in ("D", "D0", "D1", "Dinf"):
            edges = self.relations[name]
            shown = ", ".join(f"{e['p']}→{e['q']} (x={e['x']})" for e in edges) or "none"
            lines.append(f"{name}: {shown}")
        lines.append(f"Dim: {self.dim['structure']}")
        classes = "; ".join(f"{c['label']} = {{{','.join(c['members'])}}}" for c in self.dim["classes"])
        lines.append(f"Dim classes: {classes}")
        lines.append(f"strongly separative: {yes[self.separativity['strongly_separative']]}")
        lines.append(f"2x = x implies x = 0: {yes[self.separativity['satisfies_2x_eq_x']]}")
        lines.append(f"Con L size: {self.con_size}")
        if self.delta is not None:
            lines.append("Delta:")
            for row in self.delta:
                lines.append(f"  [{row['x']}, {row['y']}] = {row['value']}")
        return "\n".join(lines) + "\n"


def analyze(L: FinLattice, with_delta: bool = False) -> AnalysisReport:
    dd = DependencyData(L)
    d0, d1, dinf = dd.refined
    dm = dim_monoid(L, deps=dd)
    cyc = d_cycle_witness(L)
    flags = {
        "join_semidistributive": is_join_semidistributive(L)[0],
        "meet_semidistributive": is_meet_semidistributive(L)[0],
        "lower_bounded": is_lower_bounded(L),
        "upper_bounded": is_upper_bounded(L),
    }
    sys = dm.sys
    dim = {
        "structure": describe_monoid(sys),
        "classes": [
            {"label": sys.labels[i], "members": [L.labels[p] for p in c], "idempotent": sys.reflexive(i)}
            for i, c in enumerate(dm.classes)
        ],
        "tri": [[sys.labels[p], sys.labels[q]] for p, q in sorted(sys.tri)],
    }
    norm = normalized_system(sys)
    dim["normalized"] = {
        "labels": list(norm.labels),
        "tri": [[norm.labels[p], norm.labels[q]] for p, q in sorted(norm.tri)],
    }
    separativity = {
        "strongly_separative": is_strongly_separative(sys),
        "satisfies_2x_eq_x": satisfies_2x_eq_x(sys),
        "idempotent_generators": [sys.labels[i] for i in range(sys.n) if sys.reflexive(i)],
    }
    table = None
    if with_delta:
        table = [
            {"x": L.labels[x], "y": L.labels[y], "value": format_element(delta(L, dm, x, y))}
            for x in range(L.n)
            for y in range(L.n)
            if L.leq(x, y)
        ]
    return AnalysisReport(
        n=L.n,
        join_irreducibles=[L.labels[p] for p in L.J],
        flags=flags,
        d_cycle=None if cyc is None else L.labels[cyc],
        relations={"D": _edges(L, dd.D), "D0": _edges(L, d0), "D1": _edges(L, d1), "Dinf": _edges(L, dinf)},
        dim=dim,
        separativity=separativity,
        con_size=con_lattice(L, dd)[0].n,
        delta=table,
    )
