import pytest

from arrlie.freelie import (
    LieElement,
    LyndonBasis,
    ad_word,
    bracket,
    expand,
    gen,
    is_lyndon,
    lyndon_coords,
    lyndon_words,
    mobius,
    standard_bracketing,
    witt_dimension,
)
from arrlie.freelie import Generator

from oracles import brute_lyndon_count, brute_lyndon_words


def named(basis, d):
    return ["".join(basis.word_names(w)) for w in basis.words[d]]


def test_lyndon_words_two_letters():
    b = lyndon_words(["x", "y"], 3)
    assert named(b, 1) == ["x", "y"]
    assert named(b, 2) == ["xy"]
    assert named(b, 3) == ["xxy", "xyy"]


def test_lyndon_single_letter():
    b = lyndon_words(["x"], 5)
    assert [b.dim(d) for d in range(1, 6)] == [1, 0, 0, 0, 0]


def test_lyndon_weighted():
    b = lyndon_words([Generator("u", 1), Generator("x", 2)], 3)
    assert named(b, 1) == ["u"]
    assert named(b, 2) == ["x"]
    assert named(b, 3) == ["ux"]


def test_expand_examples():
    assert expand(bracket("x", "y")) == {("x", "y"): 1, ("y", "x"): -1}
    assert expand(bracket("x", "x")) == {}
    assert expand(bracket("x", bracket("x", "y"))) == {
        ("x", "x", "y"): 1, ("x", "y", "x"): -2, ("y", "x", "x"): 1}


def test_coords_examples():
    b = lyndon_words(["x", "y"], 3)
    assert lyndon_coords(bracket("y", "x"), b) == [-1]
    assert lyndon_coords(bracket("x", bracket("x", "y")), b) == [1, 0]
    assert lyndon_coords(bracket(bracket("x", "y"), "y"), b) == [0, 1]


def test_coords_errors():
    b = lyndon_words(["x", "y"], 2)
    with pytest.raises(ValueError, match="exceeds"):
        b.coords(bracket("x", bracket("x", "y")))
    with pytest.raises(ValueError, match="not in the basis"):
        b.coords(bracket("x", "z"))


def test_standard_bracketing():
    assert standard_bracketing((0, 0, 1)) == (0, (0, 1))
    assert standard_bracketing((0, 1, 1)) == ((0, 1), 1)
    assert is_lyndon((0, 1)) and not is_lyndon((1, 0)) and not is_lyndon((0, 0))


def test_witt_examples():
    assert [witt_dimension(2, d) for d in range(1, 6)] == [2, 1, 2, 3, 6]
    assert [witt_dimension(1, d) for d in range(1, 5)] == [1, 0, 0, 0]
    assert witt_dimension(3, 2) == 3 and witt_dimension(3, 3) == 8
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


@pytest.mark.parametrize("weights", [(1,), (1, 1), (1, 1, 1), (1, 1, 1, 1), (1, 2), (1, 1, 2), (2, 2, 2, 1, 1), (3, 1)])
def test_witt_matches_lyndon_counts(weights):
    for d in range(1, 9):
        assert witt_dimension(weights, d) == brute_lyndon_count(weights, d)


def test_basis_words_match_brute_force():
    b = LyndonBasis(list("abc"), [1, 2, 1], 7)
    for d in range(1, 8):
        assert set(b.words[d]) == brute_lyndon_words([1, 2, 1], d)


def test_triangularity():
    b = LyndonBasis(list("xyz"), None, 6)
    for d in range(1, 7):
        for w in b.words[d]:
            exp = b.expansion(w)
            assert exp[w] == 1
            assert all(u >= w and sorted(u) == sorted(w) for u in exp)


def test_ad_word():
    e = bracket("y", "z")
    assert ad_word([], e) == e
    assert ad_word(["x"], e) == bracket("x", e)
    assert ad_word(["x", "x"], e) == bracket("x", bracket("x", e))


def test_element_algebra_and_format():
    e = 3 * bracket("x", bracket("x", "y")) - bracket("y", bracket("x", "y"))
    assert str(e) == "3*[x,[x,y]] - [y,[x,y]]"
    assert e.degree() == 3 and e.is_commutator()
    assert not (gen("x") + bracket("x", "y")).is_homogeneous()
    assert (e - e) == LieElement()
    assert e.generators() == {"x", "y"}
