"""Command-line front end.

Exit codes: 0 success, 1 search found nothing, 2 parse or validation
failure, 3 budget exceeded, 4 precondition violated.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import config, io
from .dimension import dim_monoid
from .enumerate import enumerate_lattices
from .errors import LatdimError, NotALatticeError, NotFound, ParseError
from .lattice import FinLattice, boolean, chain, lattice_validate, m3, n5
from .monoid import QoSystem, monoid_isomorphism, normalize, primitive_tensor
from .order import chain_poset, co_lattice
from .report import analyze
from .search import search_dinfty_witness
from .tensor import a_of_l, box_product, tensor_lattice


def _emit(text: str, out: str | None) -> None:
    if out:
        io.write_text(out, text)
    else:
        sys.stdout.write(text)


def _load_lattice(path: str) -> FinLattice:
    P = io.poset_from_doc(io.read_document(path))
    try:
        return lattice_validate(P)
    except NotALatticeError as exc:
        x, y = exc.witness
        raise NotALatticeError(P.labels[x], P.labels[y], exc.op) from None


def _load_system(path: str) -> QoSystem:
    """QO-system, dim-monoid or lattice document; a lattice yields its Dim."""
    doc = io.read_document(path)
    if doc.get("kind") in ("qosystem", "dim-monoid"):
        return io.qosystem_from_doc(doc)
    return dim_monoid(_load_lattice(path)).sys


def cmd_analyze(args) -> int:
    L = _load_lattice(args.file)
    report = analyze(L, with_delta=args.with_delta)
    _emit(report.to_json() if args.json else report.to_text(), args.output)
    if args.dot:
        io.write_text(args.dot, io.to_dot(L))
    if args.dim_out:
        io.write_text(args.dim_out, io.dumps(io.dim_monoid_to_doc(dim_monoid(L))))
    return 0


def _generated(args) -> list[FinLattice]:
    kind, size = args.name, args.size
    if kind in ("chain", "boolean", "co-chain", "enum") and size is None:
        raise ParseError(f"gen {kind} needs a size")
    if kind == "chain":
        return [chain(size)]
    if kind == "boolean":
        return [boolean(size)]
    if kind == "m3":
        return [m3()]
    if kind == "n5":
        return [n5()]
    if kind == "co-chain":
        return [co_lattice(chain_poset(size))[0]]
    return enumerate_lattices(size)


def cmd_gen(args) -> int:
    lattices = _generated(args)
    if args.name == "enum":
        doc = {"kind": "lattice-list", "n": args.size, "lattices": [io.lattice_to_doc(L) for L in lattices]}
    else:
        doc = io.lattice_to_doc(lattices[0])
        if args.dot:
            io.write_text(args.dot, io.to_dot(lattices[0]))
    _emit(io.dumps(doc), args.output)
    return 0


def cmd_product(args) -> int:
    A, B = _load_lattice(args.file_a), _load_lattice(args.file_b)
    if args.op == "aofl":
        R = a_of_l(A, B, budget=args.budget)
        prov = {
            "construction": "aofl",
            "factors": [list(A.labels), list(B.labels)],
            "domain": [A.labels[p] for p in A.J],
            "elements": [[B.labels[v] for v in m] for m in R.maps],
        }
        doc = io.lattice_to_doc(R.lattice, prov)
    else:
        build = tensor_lattice if args.op == "tensor" else box_product
        P = build(A, B, budget=args.budget)
        doc = io.lattice_to_doc(P.lattice, P.provenance())
    _emit(io.dumps(doc), args.output)
    return 0


def cmd_prim_tensor(args) -> int:
    sys_ = primitive_tensor(_load_system(args.file_a), _load_system(args.file_b))
    _emit(io.dumps(io.qosystem_to_doc(sys_)), args.output)
    return 0


def cmd_compare_monoid(args) -> int:
    s1, s2 = _load_system(args.file_a), _load_system(args.file_b)
    iso = monoid_isomorphism(s1, s2)
    inv1, inv2 = normalize(s1).invariant(), normalize(s2).invariant()
    result = {"isomorphic": iso is not None}
    if iso is None:
        result["invariants"] = [_invariant_doc(inv1), _invariant_doc(inv2)]
        result["distinguishing"] = "class counts by (idempotent, height)" if inv1 != inv2 else "order structure"
    if args.json:
        _emit(json.dumps(result, indent=2, sort_keys=True) + "\n", None)
    elif iso is not None:
        print("isomorphic")
    else:
        print("not isomorphic")
        print(f"  distinguishing: {result['distinguishing']}")
        print(f"  first:  {result['invariants'][0]}")
        print(f"  second: {result['invariants'][1]}")
    return 0


def _invariant_doc(inv: tuple) -> list:
    return [{"idempotent": idem, "height": h, "count": c} for (idem, h), c in inv]


def cmd_search_dinfty(args) -> int:
    try:
        w = search_dinfty_witness(args.max_n, exact_n=args.exact_n)
    except NotFound as exc:
        print(f"NotFound: {exc}")
        return exc.exit_code
    summary = w.summary()
    if args.output:
        io.write_text(args.output, io.dumps(io.lattice_to_doc(w.lattice, {"construction": "search-dinfty", **summary})))
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latdim", description="Dimension theory of finite lattices.")
    parser.add_argument("--max-elements", type=int, default=None, help="global element budget")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for a lattice file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--with-delta", action="store_true", help="include the interval dimension table")
    p.add_argument("--dot", help="write the cover diagram here")
    p.add_argument("--dim-out", help="write the dimension monoid here")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen", help="write a standard lattice")
    p.add_argument("name", choices=["chain", "boolean", "m3", "n5", "co-chain", "enum"])
    p.add_argument("size", type=int, nargs="?")
    p.add_argument("--dot")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    for op in ("tensor", "boxprod", "aofl"):
        p = sub.add_parser(op, help=f"{op} of two lattice files")
        p.add_argument("file_a")
        p.add_argument("file_b")
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("-o", "--output")
        p.set_defaults(func=cmd_product, op=op)

    p = sub.add_parser("prim-tensor", help="product QO-system of two monoid files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_prim_tensor)

    p = sub.add_parser("compare-monoid", help="isomorphism test for two primitive monoids")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare_monoid)

    p = sub.add_parser("search-dinfty", help="search for a lattice where Dinf cannot be dropped")
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--exact-n", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_search_dinfty)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_elements is not None:
        config.set_element_budget(args.max_elements)
    try:
        return args.func(args)
    except LatdimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    finally:
        config.set_element_budget(None)


if __name__ == "__main__":
    sys.exit(main())
