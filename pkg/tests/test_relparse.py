from fractions import Fraction

import pytest

from arrlie.freelie import LieElement, bracket
from arrlie.relparse import ParseError, load, load_text, parse_arrangement_file, parse_lie_expr

EX1 = (
    "ground: x y z u v\n"
    "deg: x=2 y=2 z=2 u=1 v=1\n"
    "block A: x y\n"
    "block B: x z u\n"
    "block C: y z v\n"
    "mode: custom\n"
    "rel B: [z,x]-[u,[u,x]]\n"
    "rel B: [z,u]-[u,x]\n"
    "rel C: [z,y]-[v,[v,y]]\n"
    "rel C: [z,v]-[v,y]\n"
)


def test_ten_fixture():
    spec = load("1033").spec
    assert len(spec.ground) == 10 and len(spec.blocks) == 10 and spec.mode == "holonomy"


def test_weighted_example_text():
    spec = parse_arrangement_file(EX1)
    assert spec.degrees == {"x": 2, "y": 2, "z": 2, "u": 1, "v": 1}
    assert spec.labels == ["A", "B", "C"]
    rels = dict()
    for lab, r in spec.relations:
        rels.setdefault(lab, []).append(r)
    assert rels["B"][0] == bracket("z", "x") - bracket("u", bracket("u", "x"))
    assert len(rels["C"]) == 2 and "A" not in rels


def test_unknown_name_located():
    with pytest.raises(ParseError) as e:
        parse_arrangement_file("ground: a b\nblock A: a q\n")
    assert (e.value.line, e.value.col) == (2, 12)


def test_file_errors():
    bad = [
        ("ground: a a\nblock A: a\n", "duplicate ground"),
        ("ground: a b\ndeg: a=0\nblock A: a b\n", "positive"),
        ("ground: a b\nfoo: 1\n", "unknown directive"),
        ("block A: a b\n", "missing 'ground:'"),
        ("ground: a b\nblock A: a b\nrel A: [a,b]\n", "mode: custom"),
        ("ground: a b\nblock A: a b\nmode: weird\n", "holonomy or custom"),
        ("ground: a b\nblock A: a b\ngroup: Z\n", "unknown block label"),
        ("ground: a b\nnormal a: 1 0\nnormal b: 0 1\nblock A: a b\n", "mutually exclusive"),
    ]
    for text, msg in bad:
        with pytest.raises(ParseError, match=msg):
            parse_arrangement_file(text)


def test_expr_examples():
    e = parse_lie_expr("[z,x]-[u,[u,x]]", "zxu")
    assert len(e) == 2
    assert parse_lie_expr("[x,y]") == bracket("x", "y")
    e = parse_lie_expr("3*[x,[x,y]] - [y,[x,y]]")
    assert dict(e.terms).values() and sorted(e.terms.values()) == [-1, 3]
    assert parse_lie_expr("-1/2*[a,b]") == LieElement([(("a", "b"), Fraction(-1, 2))])


def test_expr_errors():
    with pytest.raises(ParseError, match="bare generator"):
        parse_lie_expr("x + [x,y]")
    with pytest.raises(ParseError, match="expected ']'"):
        parse_lie_expr("[x,[x,y]")
    with pytest.raises(ParseError, match="unknown name"):
        parse_lie_expr("[x,w]", "xy")
    with pytest.raises(ParseError, match="unexpected"):
        parse_lie_expr("[x,y] [x,y]")
    with pytest.raises(ParseError, match="empty"):
        parse_lie_expr("  ")


def test_expr_error_column():
    with pytest.raises(ParseError) as e:
        parse_arrangement_file("ground: a b\nblock A: a b\nmode: custom\nrel A: [a,c]\n")
    assert (e.value.line, e.value.col) == (4, 11)


def test_normals_file():
    loaded = load("1033-normals")
    triples = sorted(b for b in loaded.arrangement.blocks if len(b) == 3)
    ten = sorted(load("1033").arrangement.blocks)
    assert triples == ten


def test_groups_and_comments():
    loaded = load_text(EX1 + "# partition\ngroup: A B C   # trailing\n")
    assert [g.labels for g in loaded.groups] == [("A", "B", "C")]


def test_load_fixture_fallback(tmp_path):
    p = tmp_path / "t.arr"
    p.write_text("ground: a b c\nblock A: a b c\n")
    assert load(p).arrangement.blocks == (("a", "b", "c"),)
    with pytest.raises(FileNotFoundError):
        load(tmp_path / "missing.arr")
