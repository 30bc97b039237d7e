"""Independent reference computations used by the tests.

Nothing here touches the Lyndon basis or the structure-constant engine:
Lie elements are pushed into the tensor algebra with ``expand`` and all
ranks are taken over words.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from arrlie.coeff import QQ, RowSpace
from arrlie.freelie import LieElement, bracket, expand


def is_lyndon_rotation(s: str) -> bool:
    return all(s < s[i:] + s[:i] for i in range(1, len(s)))


def words_of_degree(weights, d):
    """All words (as strings over chr(97+i)) of weighted degree ``d``."""
    letters = [chr(97 + i) for i in range(len(weights))]
    out = []

    def rec(prefix, rest):
        if rest == 0:
            out.append(prefix)
            return
        for a, w in zip(letters, weights):
            if w <= rest:
                rec(prefix + a, rest - w)

    rec("", d)
    return out


def brute_lyndon_count(weights, d) -> int:
    return sum(1 for w in words_of_degree(weights, d) if is_lyndon_rotation(w))


def brute_lyndon_words(weights, d) -> set[tuple[int, ...]]:
    return {
        tuple(ord(c) - 97 for c in w) for w in words_of_degree(weights, d) if is_lyndon_rotation(w)
    }


def _left_normed(word):
    t = word[-1]
    for x in reversed(word[:-1]):
        t = (x, t)
    return t


def free_spanning_set(names, degrees, d) -> list[LieElement]:
    """Left-normed brackets of all words of weighted degree ``d``."""
    deg = dict(zip(names, degrees))
    out = []
    for n in range(1, d + 1):
        for word in itertools.product(names, repeat=n):
            if sum(deg[x] for x in word) == d:
                e = LieElement([(_left_normed(word), 1)])
                if e:
                    out.append(e)
    return out


class TensorSpace:
    """Row space of degree-``d`` Lie elements, coordinatized by words."""

    def __init__(self, field, words):
        self.index = {w: i for i, w in enumerate(words)}
        self.space = RowSpace(field, len(words))

    def vec(self, e: LieElement):
        return {self.index[w]: c for w, c in expand(e).items()}

    def insert(self, e: LieElement) -> bool:
        return bool(self.space.insert(self.vec(e)))


def _words(names, degrees, d):
    deg = dict(zip(names, degrees))
    return [
        w
        for n in range(1, d + 1)
        for w in itertools.product(names, repeat=n)
        if sum(deg[x] for x in w) == d
    ]


def all_shapes_quotient_dims(names, degrees, relations, D, field=QQ) -> list[int]:
    """Quotient dimensions with the ideal spanned by brackets of every shape.

    ``I_d`` is the span of the degree-``d`` relations and of ``[b, i]`` with
    ``b`` in a spanning set of the free algebra in degree ``a`` and ``i`` in a
    basis of ``I_{d-a}``, for every ``a``.
    """
    deg = dict(zip(names, degrees))
    spanning = {d: free_spanning_set(names, degrees, d) for d in range(1, D + 1)}
    ideal: dict[int, list[LieElement]] = {}
    out = []
    for d in range(1, D + 1):
        words = _words(names, degrees, d)
        free = TensorSpace(field, words)
        for e in spanning[d]:
            free.insert(e)
        ideal_space = TensorSpace(field, words)
        basis = []
        cands = [r for r in relations if r and r.degree(deg) == d]
        for a in range(1, d):
            for b in spanning[a]:
                for i in ideal.get(d - a, ()):
                    cands.append(bracket(b, i))
        for e in cands:
            if e and ideal_space.insert(e):
                basis.append(e)
        ideal[d] = basis
        out.append(free.space.rank - ideal_space.space.rank)
    return out


def rational(x) -> Fraction:
    return Fraction(x)
