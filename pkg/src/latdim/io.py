"""JSON file formats for posets, lattices, QO-systems and dimension monoids,
plus DOT export of cover diagrams.

A lattice or poset file stores ``n``, the cover pairs under ``leq`` (any
generating set of pairs is accepted on input; the closure is taken) and
optional ``labels``. Product lattices carry a ``provenance`` block.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from . import config
from .dimension import DimMonoid
from .errors import ParseError, SizeError
from .lattice import FinLattice, lattice_validate
from .monoid import INF, PrimElement, QoSystem, qo_system
from .order import FinPoset, covers, poset_validate


def _require(doc: dict, key: str, kind: type):
    if key not in doc:
        raise ParseError(f"missing field '{key}'")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"field '{key}' must be {kind.__name__}")
    return value


def _pairs(raw: Any, n: int, field: str) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise ParseError(f"field '{field}' must be a list of pairs")
    out = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2 and all(type(v) is int for v in item)):
            raise ParseError(f"bad pair {item!r} in '{field}'")
        i, j = item
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"pair {item!r} out of range for n={n}")
        out.append((i, j))
    return out


def _labels(doc: dict, n: int) -> list[str]:
    labels = doc.get("labels", [])
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise ParseError("labels must be a list of strings")
    if labels and len(labels) != n:
        raise ParseError(f"{len(labels)} labels for {n} elements")
    if len(set(labels)) != len(labels):
        raise ParseError("labels must be distinct")
    return labels


def loads_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    return doc


def poset_from_doc(doc: dict) -> FinPoset:
    n = _require(doc, "n", int)
    if n < 0:
        raise ParseError("n must be non-negative")
    if n > config.element_budget():
        raise SizeError(f"{n} elements exceed the element budget")
    pairs = _pairs(doc.get("leq", []), n, "leq")
    return poset_validate(n, pairs, _labels(doc, n))


def lattice_from_doc(doc: dict) -> FinLattice:
    return lattice_validate(poset_from_doc(doc))


def poset_to_doc(P: FinPoset, kind: str = "poset") -> dict:
    return {
        "kind": kind,
        "n": P.n,
        "labels": list(P.labels),
        "leq": [list(c) for c in sorted(covers(P))],
    }


def lattice_to_doc(L: FinLattice, provenance: dict | None = None) -> dict:
    doc = poset_to_doc(L.poset, "lattice")
    if provenance:
        doc["provenance"] = provenance
    return doc


def qosystem_to_doc(sys: QoSystem) -> dict:
    return {"kind": "qosystem", "labels": list(sys.labels), "tri": [list(e) for e in sorted(sys.tri)]}


def dim_monoid_to_doc(dm: DimMonoid) -> dict:
    L = dm.source
    doc = qosystem_to_doc(dm.sys)
    doc["kind"] = "dim-monoid"
    doc["classes"] = [[L.labels[p] for p in c] for c in dm.classes]
    doc["class_of"] = {L.labels[p]: i for p, i in sorted(dm.class_of.items())}
    return doc


def qosystem_from_doc(doc: dict) -> QoSystem:
    """Reads both plain QO-system and dim-monoid documents."""
    labels = _require(doc, "labels", list)
    if not all(isinstance(s, str) for s in labels):
        raise ParseError("labels must be strings")
    tri = _pairs(doc.get("tri", []), len(labels), "tri")
    return qo_system(labels, tri, close=bool(doc.get("close", False)))


def element_to_doc(a: PrimElement) -> list:
    return [[a.sys.labels[i], "inf" if v is INF else v] for i, v in enumerate(a.vec) if v != 0]


def element_from_doc(sys: QoSystem, raw: list) -> PrimElement:
    vec = [0] * sys.n
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError(f"bad entry {item!r}")
        label, value = item
        if label not in sys.labels:
            raise ParseError(f"unknown generator {label!r}")
        if value == "inf":
            value = INF
        elif type(value) is not int or value < 0:
            raise ParseError(f"bad value {value!r}")
        vec[sys.labels.index(label)] = value
    return PrimElement(sys, tuple(vec))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def read_document(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads_document(text)


def write_text(path: str | Path, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def to_dot(P: FinPoset | FinLattice, name: str = "hasse") -> str:
    if isinstance(P, FinLattice):
        P = P.poset
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(P.n):
        lines.append(f"  n{x} [label={json.dumps(P.labels[x])}];")
    for x, y in sorted(covers(P)):
        lines.append(f"  n{x} -> n{y} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
