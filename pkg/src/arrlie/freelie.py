"""Free Lie algebras on weighted generators.

Lie monomials are binary trees: a leaf is a generator name (``str``) and a
bracket ``[a, b]`` is the pair ``(a, b)``.  A :class:`LieElement` is a finite
formal sum of such trees with integer or rational coefficients; it only maps
into a particular field when evaluated somewhere.

The Lyndon basis is used to give coordinates: the standard bracketing of a
Lyndon word ``w`` expands in the tensor algebra to ``w`` plus lexicographically
larger anagrams of ``w``, so coordinates follow by triangular elimination.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Generator",
    "LieElement",
    "bracket",
    "gen",
    "expand",
    "format_tree",
    "tree_degree",
    "witt_dimension",
    "mobius",
    "is_lyndon",
    "standard_bracketing",
    "LyndonBasis",
    "lyndon_words",
    "lyndon_coords",
    "ad_word",
    "tree_leaves",
]

Tree = "str | tuple"


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int = 1

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"generator {self.name} needs a positive degree")


def _degenerate(t) -> bool:
    if isinstance(t, str):
        return False
    a, b = t
    return a == b or _degenerate(a) or _degenerate(b)


def format_tree(t) -> str:
    if isinstance(t, str):
        return t
    return f"[{format_tree(t[0])},{format_tree(t[1])}]"


def tree_degree(t, degrees: Mapping[str, int] | None = None) -> int:
    if isinstance(t, str):
        return 1 if degrees is None else degrees[t]
    return tree_degree(t[0], degrees) + tree_degree(t[1], degrees)


def tree_leaves(t) -> Iterable[str]:
    if isinstance(t, str):
        yield t
    else:
        yield from tree_leaves(t[0])
        yield from tree_leaves(t[1])


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LieElement:
    """Formal linear combination of bracket trees.

    Terms whose tree contains a bracket of two identical subtrees are
    dropped (they vanish by antisymmetry); otherwise trees are kept exactly
    as written.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for t, c in items:
                if _degenerate(t):
                    continue
                acc[t] = acc.get(t, 0) + c
        self.terms = {t: _clean(c) for t, c in acc.items() if c != 0}

    @classmethod
    def generator(cls, name: str) -> LieElement:
        return cls({name: 1})

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: LieElement) -> LieElement:
        return LieElement(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> LieElement:
        return LieElement({t: -c for t, c in self.terms.items()})

    def __sub__(self, other: LieElement) -> LieElement:
        return self + (-other)

    def __mul__(self, c) -> LieElement:
        return LieElement({t: c * x for t, x in self.terms.items()})

    __rmul__ = __mul__

    def generators(self) -> set[str]:
        out = set()
        for t in self.terms:
            out.update(tree_leaves(t))
        return out

    def degrees(self, degrees: Mapping[str, int] | None = None) -> set[int]:
        return {tree_degree(t, degrees) for t in self.terms}

    def degree(self, degrees: Mapping[str, int] | None = None) -> int:
        """The common weighted degree; raises ``ValueError`` if inhomogeneous or zero."""
        ds = self.degrees(degrees)
        if len(ds) != 1:
            raise ValueError(
                "zero element has no degree" if not ds else f"inhomogeneous element {self}"
            )
        return ds.pop()

    def is_homogeneous(self, degrees: Mapping[str, int] | None = None) -> bool:
        return len(self.degrees(degrees)) <= 1

    def is_commutator(self) -> bool:
        """Every term is a bracket (no bare generator)."""
        return all(not isinstance(t, str) for t in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (t, c) in enumerate(self.terms.items()):
            neg = c < 0
            a = -c if neg else c
            body = format_tree(t) if a == 1 else f"{a}*{format_tree(t)}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LieElement({str(self)!r})"


def gen(name: str) -> LieElement:
    return LieElement.generator(name)


def bracket(a: LieElement | str, b: LieElement | str) -> LieElement:
    """Bilinear extension of ``[s, t] -> (s, t)``."""
    if isinstance(a, str):
        a = gen(a)
    if isinstance(b, str):
        b = gen(b)
    out = []
    for s, c in a:
        for t, d in b:
            out.append(((s, t), c * d))
    return LieElement(out)


def ad_word(prefix: Sequence[str | Generator], e: LieElement) -> LieElement:
    """``[p1, [p2, ..., [pk, e]...]]``."""
    for g in reversed(prefix):
        e = bracket(g.name if isinstance(g, Generator) else g, e)
    return e


# -- tensor algebra expansion ------------------------------------------------


@lru_cache(maxsize=None)
def _expand_tree(t) -> tuple:
    if not isinstance(t, tuple):
        return (((t,), 1),)
    left = dict(_expand_tree(t[0]))
    right = dict(_expand_tree(t[1]))
    acc: dict = {}
    for u, a in left.items():
        for v, b in right.items():
            acc[u + v] = acc.get(u + v, 0) + a * b
            acc[v + u] = acc.get(v + u, 0) - a * b
    return tuple((w, c) for w, c in acc.items() if c)


def expand(e: LieElement) -> dict[tuple[str, ...], object]:
    """Image in the free associative algebra: ``[a,b] -> ab - ba``."""
    acc: dict = {}
    for t, c in e:
        for w, d in _expand_tree(t):
            acc[w] = acc.get(w, 0) + c * d
    return {w: _clean(c) for w, c in acc.items() if c != 0}


# -- dimensions --------------------------------------------------------------


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    result, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            result = -result
        f += 1
    return -result if n > 1 else result


@lru_cache(maxsize=None)
def _witt(degrees: tuple[int, ...], d: int) -> int:
    # s_n = sum over divisors e of n of e * dim L_e, with S(t) = t p'(t) / (1 - p(t))
    s = [0] * (d + 1)
    for n in range(1, d + 1):
        total = sum(g for g in degrees if g == n)
        for g in degrees:
            if g < n:
                total += s[n - g]
        s[n] = total
    acc = sum(mobius(d // e) * s[e] for e in range(1, d + 1) if d % e == 0)
    assert acc % d == 0
    return acc // d


def witt_dimension(degrees: Iterable[int] | int, d: int) -> int:
    """Dimension of the degree-``d`` part of the free Lie algebra on generators of these weights.

    ``degrees`` may be an int ``k`` meaning ``k`` generators of degree one.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if isinstance(degrees, int):
        degrees = (1,) * degrees
    return _witt(tuple(sorted(degrees)), d)


# -- Lyndon words ------------------------------------------------------------


def is_lyndon(w: Sequence) -> bool:
    w = tuple(w)
    return len(w) > 0 and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def _standard_split(w: tuple) -> int:
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return i
    raise ValueError(f"{w} has no standard factorization")


def standard_bracketing(w: Sequence):
    """Tree of the standard (Chen-Fox-Lyndon) bracketing of a Lyndon word."""
    w = tuple(w)
    if len(w) == 1:
        return w[0]
    i = _standard_split(w)
    return (standard_bracketing(w[:i]), standard_bracketing(w[i:]))


def _duval(k: int, n: int):
    """Lyndon words of length <= n over range(k), in lexicographic order."""
    if k <= 0 or n <= 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


class LyndonBasis:
    """Lyndon words of weighted degree <= ``max_degree`` with bracketings and expansions.

    Words are tuples of letter indices into ``names`` (the alphabet order).
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int] | None, max_degree: int):
        if max_degree < 1:
            raise ValueError("max_degree must be positive")
        self.names = tuple(names)
        self.degrees = tuple(degrees) if degrees is not None else (1,) * len(self.names)
        if len(self.degrees) != len(self.names):
            raise ValueError("one degree per generator")
        self.max_degree = max_degree
        self.letter = {nm: i for i, nm in enumerate(self.names)}
        self.words: dict[int, list[tuple[int, ...]]] = {d: [] for d in range(1, max_degree + 1)}
        for w in _duval(len(self.names), max_degree):
            d = sum(self.degrees[i] for i in w)
            if d <= max_degree:
                self.words[d].append(w)
        self.position: dict[tuple[int, ...], int] = {}
        for d, ws in self.words.items():
            ws.sort()
            for i, w in enumerate(ws):
                self.position[w] = i
        self._exp: dict[tuple[int, ...], dict] = {}

    def dim(self, d: int) -> int:
        return len(self.words.get(d, ()))

    def word_names(self, w: tuple[int, ...]) -> tuple[str, ...]:
        return tuple(self.names[i] for i in w)

    def tree(self, w: tuple[int, ...]):
        return _map_tree(standard_bracketing(w), self.names)

    def element(self, d: int, coords: Mapping[int, object] | Sequence) -> LieElement:
        items = coords.items() if isinstance(coords, Mapping) else enumerate(coords)
        return LieElement([(self.tree(self.words[d][i]), c) for i, c in items if c])

    def expansion(self, w: tuple[int, ...]) -> dict[tuple[int, ...], int]:
        e = self._exp.get(w)
        if e is None:
            e = dict(_expand_tree(standard_bracketing(w)))
            self._exp[w] = e
        return e

    def coords(self, e: LieElement, field=None) -> tuple[int, dict[int, object]]:
        """``(degree, sparse coordinates)`` of a homogeneous Lie element."""
        if not e:
            return 0, {}
        unknown = e.generators() - self.letter.keys()
        if unknown:
            raise ValueError(f"generator {sorted(unknown)[0]} not in the basis alphabet")
        deg = e.degree(dict(zip(self.names, self.degrees)))
        if deg > self.max_degree:
            raise ValueError(f"degree {deg} exceeds basis truncation {self.max_degree}")
        letter = self.letter
        poly: dict = {}
        for w, c in expand(e).items():
            poly[tuple(letter[x] for x in w)] = c if field is None else field(c)
        heap = list(poly)
        heapq.heapify(heap)
        p = None if field is None else field.p
        out: dict[int, object] = {}
        while heap:
            w = heapq.heappop(heap)
            c = poly.pop(w, 0)
            if not c:
                continue
            pos = self.position.get(w)
            if pos is None:
                raise ArithmeticError(f"residual word {self.word_names(w)} is not Lyndon")
            out[pos] = c
            for u, a in self.expansion(w).items():
                if u == w:
                    continue
                x = poly.get(u, 0) - c * a
                if p is not None:
                    x %= p
                if u not in poly:
                    heapq.heappush(heap, u)
                poly[u] = x
        return deg, out


def _map_tree(t, names):
    if isinstance(t, int):
        return names[t]
    return (_map_tree(t[0], names), _map_tree(t[1], names))


def lyndon_words(gens: Sequence[Generator | str], max_degree: int) -> LyndonBasis:
    names = [g.name if isinstance(g, Generator) else g for g in gens]
    degrees = [g.degree if isinstance(g, Generator) else 1 for g in gens]
    return LyndonBasis(names, degrees, max_degree)


def lyndon_coords(e: LieElement, basis: LyndonBasis, field=None) -> list:
    """Dense coordinates of ``e`` in the Lyndon bracketing basis of its degree."""
    d, sparse = basis.coords(e, field)
    zero = 0 if field is None else field.zero()
    out = [zero] * basis.dim(d)
    for i, c in sparse.items():
        out[i] = c
    return out
