from __future__ import annotations

import json

import pytest

from latdim import config, io
from latdim.cli import main
from latdim.dimension import dim_monoid
from latdim.errors import ParseError, SizeError
from latdim.lattice import m3, n5
from latdim.monoid import INF, PrimElement, qo_system
from latdim.report import analyze


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("n5", "m3", "chain"):
        args = ["gen", name] + (["3"] if name == "chain" else []) + ["-o", str(tmp_path / f"{name}.json")]
        assert main(args) == 0
        out[name] = str(tmp_path / f"{name}.json")
    assert main(["gen", "co-chain", "4", "-o", str(tmp_path / "co4.json")]) == 0
    out["co4"] = str(tmp_path / "co4.json")
    return out


def test_round_trip_corpus(corpus7):
    for L in corpus7:
        doc = io.loads_document(io.dumps(io.lattice_to_doc(L)))
        back = io.lattice_from_doc(doc)
        assert back.poset == L.poset and back.labels == L.labels


def test_parse_errors():
    with pytest.raises(ParseError):
        io.loads_document("[1, 2]")
    with pytest.raises(ParseError):
        io.poset_from_doc({"leq": []})
    with pytest.raises(ParseError):
        io.poset_from_doc({"n": 2, "leq": [[0, 5]]})
    with pytest.raises(ParseError):
        io.poset_from_doc({"n": 2, "labels": ["x", "x"]})


def test_element_budget_from_environment(monkeypatch):
    monkeypatch.setenv("LATDIM_MAX_ELEMENTS", "3")
    with pytest.raises(SizeError):
        io.poset_from_doc({"n": 4})
    config.set_element_budget(10)
    try:
        assert io.poset_from_doc({"n": 4}).n == 4
    finally:
        config.set_element_budget(None)


def test_monoid_documents_round_trip():
    sys = qo_system(["u", "v"], [(1, 0)])
    assert io.qosystem_from_doc(io.qosystem_to_doc(sys)) == sys
    e = PrimElement(sys, (1, INF))
    assert io.element_to_doc(e) == [["u", 1], ["v", "inf"]]
    assert io.element_from_doc(sys, io.element_to_doc(e)) == e
    doc = io.dim_monoid_to_doc(dim_monoid(m3()))
    assert doc["classes"] == [["p", "q", "r"]] and doc["class_of"] == {"p": 0, "q": 0, "r": 0}


def test_dot_export():
    text = io.to_dot(n5())
    assert text.startswith("digraph hasse {") and text.count("->") == 5


def test_report_is_deterministic():
    a = analyze(n5(), with_delta=True)
    b = analyze(n5(), with_delta=True)
    assert a.to_json() == b.to_json() and a.to_text() == b.to_text()


def test_analyze_reports(files, capsys):
    assert main(["analyze", files["n5"]]) == 0
    out = capsys.readouterr().out
    assert "JSD: true" in out and "lower-bounded: true" in out
    assert "Dim: E({a,b,c}, c◁a, c◁b)" in out
    assert "strongly separative: true" in out
    assert main(["analyze", files["m3"]]) == 0
    out = capsys.readouterr().out
    assert "≅ Z+" in out and "lower-bounded: false" in out
    assert main(["analyze", files["co4"], "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["separativity"]["strongly_separative"] is False
    assert rep["dim"]["normalized"]["tri"] == [["{{2},{3}}", "{1}"], ["{{2},{3}}", "{{2},{3}}"], ["{{2},{3}}", "{4}"]]


def test_analyze_output_is_byte_identical(files, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["analyze", files["co4"], "--with-delta", "-o", str(a)]) == 0
    assert main(["analyze", files["co4"], "--with-delta", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_outputs(files, tmp_path, capsys):
    doc = io.read_document(files["chain"])
    assert doc["n"] == 3 and doc["leq"] == [[0, 1], [1, 2]]
    assert io.read_document(files["co4"])["n"] == 11
    assert main(["gen", "enum", "5"]) == 0
    listing = json.loads(capsys.readouterr().out)
    assert listing["kind"] == "lattice-list" and len(listing["lattices"]) == 5


def test_product_commands(files, tmp_path, capsys):
    box = tmp_path / "box.json"
    assert main(["boxprod", files["n5"], files["n5"], "-o", str(box)]) == 0
    assert main(["analyze", str(box), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["flags"]["join_semidistributive"] is True and rep["n"] == 42
    t, a = tmp_path / "t.json", tmp_path / "a.json"
    assert main(["tensor", files["n5"], files["co4"], "-o", str(t)]) == 0
    assert main(["aofl", files["n5"], files["co4"], "-o", str(a)]) == 0
    from latdim.iso import is_isomorphic

    lt, la = io.lattice_from_doc(io.read_document(t)), io.lattice_from_doc(io.read_document(a))
    assert is_isomorphic(lt.poset, la.poset)
    assert io.read_document(t)["provenance"]["construction"] == "tensor"


def test_monoid_commands(files, tmp_path, capsys):
    dn5, dm3 = tmp_path / "dn5.json", tmp_path / "dm3.json"
    assert main(["analyze", files["n5"], "--dim-out", str(dn5)]) == 0
    assert main(["analyze", files["m3"], "--dim-out", str(dm3)]) == 0
    capsys.readouterr()
    assert main(["compare-monoid", str(dm3), str(dn5)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "not isomorphic"
    two = write(tmp_path / "two.json", {"kind": "qosystem", "labels": ["p"], "tri": [[0, 0]]})
    one = write(tmp_path / "one.json", {"kind": "qosystem", "labels": ["p"], "tri": []})
    assert main(["compare-monoid", one, two, "--json"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["isomorphic"] is False
    c2 = tmp_path / "c2.json"
    assert main(["gen", "chain", "2", "-o", str(c2)]) == 0
    assert main(["compare-monoid", str(dm3), str(c2)]) == 0
    assert capsys.readouterr().out.strip() == "isomorphic"
    sq = tmp_path / "sq.json"
    assert main(["prim-tensor", str(dn5), str(dn5), "-o", str(sq)]) == 0
    box = tmp_path / "box.json"
    assert main(["boxprod", files["n5"], files["n5"], "-o", str(box)]) == 0
    assert main(["compare-monoid", str(sq), str(box)]) == 0
    assert capsys.readouterr().out.strip() == "isomorphic"


def test_exit_codes(files, tmp_path, capsys):
    cyc = write(tmp_path / "cyc.json", {"n": 2, "leq": [[0, 1], [1, 0]]})
    bowtie = write(tmp_path / "bow.json", {"n": 4, "leq": [[0, 2], [0, 3], [1, 2], [1, 3]]})
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    assert main(["analyze", cyc]) == 2
    assert main(["analyze", bowtie]) == 2
    assert main(["analyze", str(bad)]) == 2
    assert main(["analyze", str(tmp_path / "missing.json")]) == 2
    assert main(["--max-elements", "4", "analyze", files["n5"]]) == 3
    assert main(["tensor", files["m3"], files["m3"], "--budget", "10"]) == 3
    assert main(["aofl", files["m3"], files["n5"]]) == 4
    assert main(["search-dinfty", "--max-n", "5"]) == 1
    err = capsys.readouterr().err
    assert "no meet" in err
