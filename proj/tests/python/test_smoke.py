import os

import pytest

import lpakit


def fixture(name):
    return os.path.join(os.environ["LPAKIT_FIXTURES"], name)


def test_graph_roundtrip():
    g = lpakit.Graph.load(fixture("nopain.graph"))
    assert g.vertex_names() == ["v1", "v2", "L", "R", "c1", "c2"]
    assert len(g.edges()) == 12
    assert g.is_unweighted()
    reparsed = lpakit.Graph.parse(g.to_text())
    assert reparsed.to_text() == g.to_text()
    assert "6 vertices" in repr(g)


def test_classify():
    c = lpakit.classify(lpakit.Graph.load(fixture("nopain.graph")))
    assert c["class"] == "Polycephaly"
    assert [h["kind"] for h in c["heads"]] == ["cycle", "rose", "cycle"]
    bad = lpakit.classify(lpakit.Graph.load(fixture("wk0.graph")))
    assert bad["class"] == "NotPolycephaly"
    assert "exit" in bad["reason"]


def test_decompose_and_dims():
    g = lpakit.Graph.load(fixture("nopain.graph"))
    d = lpakit.decompose(g)
    assert d["text"] == (
        "M5(K[x,x^-1])(0,1,1,2,2) + M4(K[x^2,x^-2])(0,1,1,2) "
        "+ M7(L(1,2))(0,1,1,1,2,2,2)"
    )
    assert [b["size"] for b in d["blocks"]] == [5, 4, 7]
    assert d["blocks"][1]["shifts"] == [0, 1, 1, 2]
    dims = lpakit.component_dims(g, 0)
    assert dims["blocks"] == [25, 8, None]
    assert dims["total"] is None


def test_base_override():
    g = lpakit.Graph.load(fixture("two_cycle_tail.graph"))
    assert lpakit.decompose(g)["blocks"][0]["shifts"] == [0, 1, 1]
    assert lpakit.decompose(g, ["v"])["blocks"][0]["shifts"] == [0, 1, 2]


def test_iso_and_strongly_graded():
    e2 = lpakit.Graph.load(fixture("intro_e2.graph"))
    e3 = lpakit.Graph.load(fixture("intro_e3.graph"))
    assert lpakit.graded_iso(e2, e3) == "false"
    assert lpakit.graded_iso(e2, e2) == "true"
    assert lpakit.strongly_graded(e2)
    assert not lpakit.strongly_graded(lpakit.Graph.load(fixture("monster.graph")))
    assert lpakit.crossed_product(e2)["form"] == "SkewGroupRing"


def test_k0():
    k = lpakit.k0(lpakit.Graph.load(fixture("wk0.graph")))
    assert (k["free_rank"], k["invariant_factors"], k["text"]) == (1, [], "Z")
    k = lpakit.k0(lpakit.Graph.load(fixture("rose_l13.graph")))
    assert (k["free_rank"], k["invariant_factors"], k["text"]) == (0, [2], "Z/2")


def test_monoid():
    g = lpakit.Graph.load(fixture("monoid_e1.graph"))
    p = lpakit.monoid_presentation(g)
    assert p["generators"] == ["u", "t", "b"]
    assert p["relations"] == [("2u", "t + b")]
    r = lpakit.monoid_check(g, "refinement")
    assert not r["holds_up_to_bound"]
    assert r["witness"] == ["u", "u", "t", "b"]
    e3 = lpakit.Graph.load(fixture("monoid_e3.graph"))
    assert lpakit.monoid_eq(e3, "4v", "2v")["verdict"] == "equal"
    d = lpakit.monoid_eq(e3, "v", "2v")
    assert (d["verdict"], d["modulus"]) == ("distinct", 2)
    assert lpakit.monoid_eq(e3, "v", "3v")["verdict"] == "unknown"


def test_reduce():
    g = lpakit.Graph.load(fixture("intro_e2.graph"))
    assert lpakit.reduce(g, "g") == {"reduced": "g h h*", "degree": 1}
    assert lpakit.reduce(g, "b - g g*") == {"reduced": "0", "degree": 0}
    with pytest.raises(ValueError):
        lpakit.reduce(g, "nosuch")
    with pytest.raises(lpakit.UnsupportedError):
        lpakit.reduce(lpakit.Graph.load(fixture("monoid_e1.graph")), "u")


def test_transforms():
    opex = lpakit.Graph.load(fixture("opex.graph"))
    opp = opex.opposite()
    assert opp.opposite().to_text() == opex.to_text()
    assert not lpakit.strongly_graded(opp)
    merged = lpakit.Graph.load(fixture("nopain.graph")).associated_weighted()
    weights = {e[0]: e[3] for e in merged.edges()}
    assert weights["a1"] == 2 and weights["b1"] == 3
    t = lpakit.Graph.load(fixture("line2.graph")).tensor(
        lpakit.Graph.load(fixture("intro_e2.graph"))
    )
    assert len(t.vertex_names()) == 8


def test_parse_errors():
    with pytest.raises(lpakit.GraphParseError):
        lpakit.Graph.parse("vertex a\nedge e a b\n")
    with pytest.raises(ValueError):
        lpakit.Graph.load(fixture("absent.graph"))
