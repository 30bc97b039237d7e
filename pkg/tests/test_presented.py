import pytest

from arrlie.arrangement import validate_arrangement
from arrlie.coeff import QQ, Field
from arrlie.decompose import holonomy_presentation
from arrlie.freelie import Generator, bracket, gen, witt_dimension
from arrlie.presented import (
    GradedQuotient,
    LyndonQuotient,
    Presentation,
    PresentationError,
    Relation,
    TruncationError,
    build_quotient,
    dims,
    free_presentation,
    is_zero,
    subalgebra_dims,
)
from arrlie.relparse import load


def test_free_dims():
    q = build_quotient(free_presentation(["x", "y"]), 4)
    assert dims(q).dims == [2, 1, 2, 3]
    assert dims(q).derived == [0, 1, 2, 3]


def test_single_block_holonomy():
    arr = validate_arrangement(["1", "2", "3"], [["1", "2", "3"]])
    q = build_quotient(holonomy_presentation(arr), 4)
    assert dims(q).dims == [3, 1, 2, 3]


def test_abelian():
    p = Presentation((Generator("x"), Generator("y")), (Relation(bracket("x", "y")),))
    q = build_quotient(p, 3)
    assert dims(q).dims == [2, 0, 0]
    assert dims(q).derived == [0, 0, 0]


def test_rejects_bad_relations():
    gens = (Generator("x"), Generator("y"))
    with pytest.raises(PresentationError, match="unknown"):
        Presentation(gens, (Relation(bracket("x", "z")),))
    with pytest.raises(PresentationError):
        Presentation(gens, (Relation(bracket("x", "y") + bracket("x", bracket("x", "y"))),))
    with pytest.raises(PresentationError):
        Presentation(gens, (Relation(gen("x")),))


def test_is_zero_examples():
    q = build_quotient(free_presentation(["x", "y"]), 3)
    assert not is_zero(bracket("x", bracket("x", "y")), q)
    ten = load("1033").presentation
    q = build_quotient(ten, 3)
    for r in ten.relations:
        assert is_zero(r.element, q)
    assert is_zero(bracket("7", bracket("1", "2")), q)


def test_truncation_is_explicit():
    q = build_quotient(free_presentation(["x", "y"]), 2)
    with pytest.raises(TruncationError, match="undecidable"):
        q.is_zero(bracket("x", bracket("x", "y")))
    with pytest.raises(TruncationError):
        q.dim(3)


def test_relations_above_truncation_warn():
    p = Presentation((Generator("x"), Generator("y")),
                     (Relation(bracket("x", bracket("x", bracket("x", "y")))),))
    q = build_quotient(p, 2)
    assert q.warnings


def test_subalgebra_examples():
    q = build_quotient(free_presentation(["x", "y"]), 4)
    assert subalgebra_dims(q, ["x", "y"]) == dims(q).dims
    assert subalgebra_dims(q, ["x"]) == [1, 0, 0, 0]
    k4 = build_quotient(load("k4").presentation, 4)
    assert subalgebra_dims(k4, ["4", "5", "6"]) == [witt_dimension(3, d) for d in range(1, 5)]


def test_weighted_free():
    p = free_presentation(["u", "x"], [1, 2])
    q = build_quotient(p, 6)
    assert dims(q).dims == [witt_dimension((1, 2), d) for d in range(1, 7)]


def test_ten_dims_and_lyndon_route_agree():
    p = load("1033").presentation
    q = GradedQuotient(p, 4)
    assert q.dims().dims == [10, 10, 22, 39]
    assert LyndonQuotient(p, 4).dims() == [10, 10, 22, 39]


def test_fields_agree_on_fixtures():
    for name in ("1033", "k4", "ex1", "1033-normals"):
        p = load(name).presentation
        D = 5
        ref = GradedQuotient(p, D).dims().dims
        for prime in (101, 32003):
            assert GradedQuotient(p, D, Field(prime)).dims().dims == ref, name


def test_basis_trees_evaluate_to_themselves():
    q = GradedQuotient(load("ex1").presentation, 6)
    for d in range(1, 7):
        for i in q.basis(d):
            assert q.evaluate(q.element(i)) == {i: 1}


def test_kth_holonomy_relation_is_redundant():
    arr = validate_arrangement(list("abcd"), [list("abcd")])
    p = holonomy_presentation(arr)
    total = sum((gen(x) for x in "bcd"), gen("a"))
    extra = Presentation(p.generators, p.relations + (Relation(bracket("d", total), "A1"),), arr)
    assert GradedQuotient(p, 5).dims().dims == GradedQuotient(extra, 5).dims().dims


def test_bracket_antisymmetry_and_jacobi():
    q = GradedQuotient(load("ex1").presentation, 7)
    ids = [i for d in range(1, 4) for i in q.basis(d)]
    one = QQ.one()
    for a in ids:
        for b in ids:
            u, v = {a: one}, {b: one}
            if q.degree_of_id(a) + q.degree_of_id(b) > 7:
                continue
            ab = q.bracket(u, v)
            ba = q.bracket(v, u)
            assert {k: -x for k, x in ba.items()} == ab
