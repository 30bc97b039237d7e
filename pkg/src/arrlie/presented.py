"""Finitely presented graded Lie algebras, computed degree by degree.

:class:`GradedQuotient` builds ``L = F(X)/<R>`` up to a truncation degree
``D`` as a graded Lie algebra with an explicit basis and bracket table.  For
each degree ``d`` the candidate space is spanned by the generators of degree
``d`` and by formal products ``a ^ b`` of basis elements of lower degrees
(``a < b``).  The degree-``d`` component is that space modulo

* the Jacobi expressions ``[[a,b],c] + [[b,c],a] + [[c,a],b]`` for basis
  triples ``a < b < c`` of total degree ``d``, and
* the relations of degree ``d``, whose outermost bracket is read as a formal
  product of already known lower-degree elements.

The first family is exactly what is needed to present the free Lie algebra
this way (its second homology vanishes); ideal consequences ``[x, r]`` of
lower-degree relations vanish automatically because ``r`` is already zero.
Products involving a generator are ordered last, so surviving basis
elements are left-normed brackets ``[x, b]``.

:class:`LyndonQuotient` is the direct construction in Lyndon coordinates of
the free Lie algebra, spanning the ideal by left-normed ad-words of the
relations.  It is exponentially larger and is kept for cross-checks.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .arrangement import SetArrangement
from .coeff import QQ, Field, RowSpace
from .freelie import (
    Generator,
    LieElement,
    LyndonBasis,
    bracket,
    format_tree,
    tree_degree,
)

__all__ = [
    "AMBIENT",
    "PresentationError",
    "TruncationError",
    "Relation",
    "Presentation",
    "DimRow",
    "DimSeries",
    "GradedQuotient",
    "LyndonQuotient",
    "build_quotient",
    "is_zero",
    "dims",
    "subalgebra_dims",
    "free_presentation",
]

AMBIENT = "ambient-commutator"
DEFAULT_DIMS_DEGREE = 6


class PresentationError(ValueError):
    """Malformed presentation: unknown generator, inhomogeneous relation, ..."""


class TruncationError(ArithmeticError):
    """A question about degree ``degree`` cannot be answered below it."""

    def __init__(self, degree: int, max_degree: int, what: str = ""):
        self.degree = degree
        self.max_degree = max_degree
        self.what = what
        msg = f"undecidable at truncation D={max_degree}: degree {degree}"
        super().__init__(f"{msg} ({what})" if what else msg)


@dataclass(frozen=True)
class Relation:
    element: LieElement
    origin: str = AMBIENT

    def __str__(self) -> str:
        return f"{self.element}  [{self.origin}]"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[Generator, ...]
    relations: tuple[Relation, ...] = ()
    arrangement: SetArrangement | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator names")
        known = set(names)
        degrees = self.degrees
        for r in self.relations:
            unknown = r.element.generators() - known
            if unknown:
                raise PresentationError(
                    f"relation {r.element} ({r.origin}) uses unknown generators {sorted(unknown)}"
                )
            if not r.element.is_commutator():
                raise PresentationError(f"relation {r.element} ({r.origin}) is not a sum of brackets")
            if not r.element.is_homogeneous(degrees):
                raise PresentationError(f"relation {r.element} ({r.origin}) is not homogeneous")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def degrees(self) -> dict[str, int]:
        return {g.name: g.degree for g in self.generators}

    def relation_degree(self, r: Relation) -> int | None:
        return r.element.degree(self.degrees) if r.element else None

    @property
    def max_relation_degree(self) -> int:
        return max((self.relation_degree(r) or 0 for r in self.relations), default=0)

    @property
    def max_generator_degree(self) -> int:
        return max(g.degree for g in self.generators)

    def block_relations(self, label: str) -> list[LieElement]:
        return [r.element for r in self.relations if r.origin == label]

    def __str__(self) -> str:
        gens = " ".join(
            g.name if g.degree == 1 else f"{g.name}({g.degree})" for g in self.generators
        )
        lines = [f"generators: {gens}"]
        lines += [f"  {r}" for r in self.relations]
        return "\n".join(lines)


@dataclass(frozen=True)
class DimRow:
    degree: int
    dim: int
    derived: int


@dataclass
class DimSeries:
    rows: list[DimRow] = field(default_factory=list)

    @property
    def dims(self) -> list[int]:
        return [r.dim for r in self.rows]

    @property
    def derived(self) -> list[int]:
        return [r.derived for r in self.rows]

    def __getitem__(self, degree: int) -> DimRow:
        return self.rows[degree - 1]

    def __iter__(self):
        return iter(self.rows)


class GradedQuotient:
    """Basis and bracket table of ``F(X)/<R>`` in degrees ``1..max_degree``.

    Vectors are sparse dicts keyed by global basis ids; every id has a
    degree and a definition (a generator name or a pair of lower ids).
    """

    def __init__(self, presentation: Presentation, max_degree: int, field: Field = QQ):
        if max_degree < 1:
            raise ValueError("truncation degree must be positive")
        self.presentation = presentation
        self.max_degree = max_degree
        self.field = field
        self.warnings: list[str] = []
        self._deg: list[int] = []
        self._defn: list = []
        self._pos: list[int] = []
        self._ids: dict[int, list[int]] = {}
        self._gen_id: dict[str, int] = {}
        self._table: dict[tuple[int, int], dict[int, object]] = {}
        self.ideal: dict[int, RowSpace] = {}
        self.symbols: dict[int, list[tuple[int, int]]] = {}

        by_degree: dict[int, list[Relation]] = {}
        for r in presentation.relations:
            if r.element:
                by_degree.setdefault(presentation.relation_degree(r), []).append(r)
        top = max(by_degree, default=0)
        if top > max_degree:
            self.warnings.append(
                f"relations of degree up to {top} exceed D={max_degree}; "
                "they do not affect degrees <= D"
            )
        for d in range(1, max_degree + 1):
            self._build_degree(d, by_degree.get(d, []))

    # -- construction -------------------------------------------------------

    def _new(self, degree: int, defn) -> int:
        i = len(self._deg)
        ids = self._ids.setdefault(degree, [])
        self._deg.append(degree)
        self._defn.append(defn)
        self._pos.append(len(ids))
        ids.append(i)
        return i

    def is_generator_id(self, i: int) -> bool:
        return isinstance(self._defn[i], str)

    def _triples(self, da: int, db: int, dc: int):
        A, B, C = self._ids.get(da, []), self._ids.get(db, []), self._ids.get(dc, [])
        if da == db == dc:
            return itertools.combinations(A, 3)
        if da == db:
            return ((a, b, c) for a, b in itertools.combinations(A, 2) for c in C)
        if db == dc:
            return ((a, b, c) for a in A for b, c in itertools.combinations(B, 2))
        return itertools.product(A, B, C)

    def _build_degree(self, d: int, rels: list[Relation]) -> None:
        F = self.field
        p = F.p
        pairs: list[tuple[int, int]] = []
        for da in range(1, d // 2 + 1):
            A, B = self._ids.get(da, []), self._ids.get(d - da, [])
            if 2 * da == d:
                pairs.extend(itertools.combinations(A, 2))
            else:
                pairs.extend((a, b) for a in A for b in B)
        pairs.sort(key=lambda ab: self.is_generator_id(ab[0]) or self.is_generator_id(ab[1]))
        col = {ab: k for k, ab in enumerate(pairs)}
        space = RowSpace(F, len(pairs))

        def put(row: dict, i: int, j: int, c) -> None:
            if i == j:
                return
            if i < j:
                k = col[(i, j)]
            else:
                k = col[(j, i)]
                c = -c
            row[k] = row.get(k, 0) + c

        rows = []
        for da in range(1, d + 1):
            for db in range(da, d + 1):
                dc = d - da - db
                if dc < db:
                    break
                for a, b, c in self._triples(da, db, dc):
                    row: dict = {}
                    for s, t, w in ((a, b, c), (b, c, a), (c, a, b)):
                        for k, x in self._bracket_ids(s, t).items():
                            put(row, k, w, x)
                    rows.append(row)
        for r in rels:
            row = {}
            memo: dict = {}
            for t, c in r.element:
                u = self._eval_tree(t[0], memo)
                v = self._eval_tree(t[1], memo)
                cc = F(c)
                for i, x in u.items():
                    for j, y in v.items():
                        put(row, i, j, cc * x * y)
            rows.append(row)
        if p is not None:
            rows = [{k: x % p for k, x in row.items()} for row in rows]
        space.extend(rows)

        for g in self.presentation.generators:
            if g.degree == d:
                self._gen_id[g.name] = self._new(d, g.name)
        new_id = {k: self._new(d, pairs[k]) for k in space.free_cols()}
        one = F.one()
        for k, ab in enumerate(pairs):
            if k in new_id:
                self._table[ab] = {new_id[k]: one}
            else:
                row = space.row(k)
                self._table[ab] = {new_id[f]: F(-x) for f, x in row.items() if f != k}
        self.ideal[d] = space
        self.symbols[d] = pairs

    # -- arithmetic ---------------------------------------------------------

    def _bracket_ids(self, a: int, b: int) -> dict:
        if a == b:
            return {}
        if a < b:
            return self._table[(a, b)]
        return {k: -x for k, x in self._table[(b, a)].items()}

    def bracket(self, u: Mapping[int, object], v: Mapping[int, object]) -> dict[int, object]:
        """Bracket of two homogeneous vectors."""
        if not u or not v:
            return {}
        d = self._deg[next(iter(u))] + self._deg[next(iter(v))]
        if d > self.max_degree:
            raise TruncationError(d, self.max_degree, "bracket")
        p = self.field.p
        acc: dict = {}
        for i, x in u.items():
            for j, y in v.items():
                for k, z in self._bracket_ids(i, j).items():
                    acc[k] = acc.get(k, 0) + x * y * z
        if p is not None:
            return {k: c % p for k, c in acc.items() if c % p}
        return {k: c for k, c in acc.items() if c}

    def _eval_tree(self, t, memo: dict) -> dict:
        got = memo.get(t)
        if got is not None:
            return got
        if isinstance(t, str):
            try:
                out = {self._gen_id[t]: self.field.one()}
            except KeyError:
                if t in self.presentation.degrees:
                    raise TruncationError(self.presentation.degrees[t], self.max_degree, t) from None
                raise PresentationError(f"unknown generator {t}") from None
        else:
            out = self.bracket(self._eval_tree(t[0], memo), self._eval_tree(t[1], memo))
        memo[t] = out
        return out

    def degree_of(self, e: LieElement) -> int:
        try:
            return e.degree(self.presentation.degrees)
        except KeyError as err:
            raise PresentationError(f"unknown generator {err.args[0]}") from None

    def evaluate(self, e: LieElement) -> dict[int, object]:
        """Normal form of a homogeneous element as a sparse vector over basis ids."""
        if not e:
            return {}
        d = self.degree_of(e)
        if d > self.max_degree:
            raise TruncationError(d, self.max_degree, str(e))
        F = self.field
        memo: dict = {}
        acc: dict = {}
        for t, c in e:
            cc = F(c)
            for k, x in self._eval_tree(t, memo).items():
                acc[k] = acc.get(k, 0) + cc * x
        p = F.p
        if p is not None:
            return {k: c % p for k, c in acc.items() if c % p}
        return {k: c for k, c in acc.items() if c}

    def is_zero(self, e: LieElement) -> bool:
        return not self.evaluate(e)

    # -- basis --------------------------------------------------------------

    def dim(self, d: int) -> int:
        if d > self.max_degree:
            raise TruncationError(d, self.max_degree, "dimension")
        return len(self._ids.get(d, ()))

    def derived_dim(self, d: int) -> int:
        """Dimension of ``[L, L]`` in degree ``d``."""
        self.dim(d)
        return sum(1 for i in self._ids.get(d, ()) if not self.is_generator_id(i))

    def dims(self) -> DimSeries:
        return DimSeries(
            [DimRow(d, self.dim(d), self.derived_dim(d)) for d in range(1, self.max_degree + 1)]
        )

    def basis(self, d: int) -> list[int]:
        return list(self._ids.get(d, ()))

    def generator_id(self, name: str) -> int:
        return self._gen_id[name]

    def degree_of_id(self, i: int) -> int:
        return self._deg[i]

    def position(self, i: int) -> int:
        return self._pos[i]

    def local(self, v: Mapping[int, object]) -> dict[int, object]:
        """Re-key a vector by positions inside its degree."""
        return {self._pos[i]: x for i, x in v.items()}

    def globalize(self, d: int, v: Mapping[int, object]) -> dict[int, object]:
        ids = self._ids[d]
        return {ids[k]: x for k, x in v.items()}

    def tree(self, i: int):
        dfn = self._defn[i]
        if isinstance(dfn, str):
            return dfn
        return (self.tree(dfn[0]), self.tree(dfn[1]))

    def element(self, i: int) -> LieElement:
        return LieElement({self.tree(i): 1})

    def as_element(self, v: Mapping[int, object]) -> LieElement:
        return LieElement([(self.tree(i), x) for i, x in v.items()])

    def format_vector(self, v: Mapping[int, object]) -> str:
        return str(self.as_element(dict(sorted(v.items())))) if v else "0"

    # -- subalgebras --------------------------------------------------------

    def subalgebra(self, names: Iterable[str], max_degree: int | None = None) -> dict[int, RowSpace]:
        """Row spaces (in local coordinates) of the subalgebra generated by ``names``."""
        D = self.max_degree if max_degree is None else max_degree
        if D > self.max_degree:
            raise TruncationError(D, self.max_degree, "subalgebra")
        gens = []
        for nm in names:
            if nm not in self.presentation.degrees:
                raise PresentationError(f"unknown generator {nm}")
            gens.append(nm)
        spaces: dict[int, RowSpace] = {}
        spans: dict[int, list[dict]] = {}
        one = self.field.one()
        for d in range(1, D + 1):
            space = RowSpace(self.field, self.dim(d))
            vecs = []
            for nm in gens:
                e = self.presentation.degrees[nm]
                if e == d:
                    vecs.append({self._gen_id[nm]: one})
                elif e < d:
                    g = {self._gen_id[nm]: one}
                    vecs.extend(self.bracket(g, s) for s in spans.get(d - e, ()))
            space.extend(self.local(v) for v in vecs)
            spaces[d] = space
            spans[d] = [self.globalize(d, r) for r in space.sparse_rows()]
        return spaces

    def subalgebra_dims(self, names: Iterable[str], max_degree: int | None = None) -> list[int]:
        spaces = self.subalgebra(names, max_degree)
        return [spaces[d].rank for d in sorted(spaces)]

    def __repr__(self) -> str:
        return f"GradedQuotient(D={self.max_degree}, field={self.field!r}, dims={self.dims().dims})"


def build_quotient(p: Presentation, D: int, field: Field = QQ) -> GradedQuotient:
    return GradedQuotient(p, D, field)


def is_zero(e: LieElement, q: GradedQuotient) -> bool:
    return q.is_zero(e)


def dims(q: GradedQuotient) -> DimSeries:
    return q.dims()


def subalgebra_dims(q: GradedQuotient, gens: Iterable[str], D: int | None = None) -> list[int]:
    return q.subalgebra_dims(gens, D)


class LyndonQuotient:
    """``F(X)/<R>`` with ideal row spaces in Lyndon coordinates of ``F(X)``.

    The degree-``d`` ideal component is spanned by the relations of degree
    ``d`` and by ``[x, i]`` for generators ``x`` and ``i`` running over a
    basis of the ideal in degree ``d - deg x``; this is the span of all
    left-normed ad-words of relations.
    """

    def __init__(self, presentation: Presentation, max_degree: int, field: Field = QQ):
        self.presentation = presentation
        self.max_degree = max_degree
        self.field = field
        gens = presentation.generators
        self.basis = LyndonBasis([g.name for g in gens], [g.degree for g in gens], max_degree)
        by_degree: dict[int, list[LieElement]] = {}
        for r in presentation.relations:
            if r.element:
                by_degree.setdefault(presentation.relation_degree(r), []).append(r.element)
        self.ideal: dict[int, RowSpace] = {}
        for d in range(1, max_degree + 1):
            space = RowSpace(field, self.basis.dim(d))
            for r in by_degree.get(d, ()):
                space.extend([self.basis.coords(r, field)[1]])
            for g in gens:
                lower = d - g.degree
                if lower < 1:
                    continue
                for row in self.ideal[lower].sparse_rows():
                    elem = bracket(g.name, self.basis.element(lower, row))
                    if elem:
                        space.extend([self.basis.coords(elem, field)[1]])
            self.ideal[d] = space

    def dim(self, d: int) -> int:
        return self.basis.dim(d) - self.ideal[d].rank

    def dims(self) -> list[int]:
        return [self.dim(d) for d in range(1, self.max_degree + 1)]

    def is_zero(self, e: LieElement) -> bool:
        if not e:
            return True
        d = e.degree(self.presentation.degrees)
        if d > self.max_degree:
            raise TruncationError(d, self.max_degree, str(e))
        _, v = self.basis.coords(e, self.field)
        return self.ideal[d].contains(v)


def describe_tree(t, degrees: Mapping[str, int]) -> str:
    return f"{format_tree(t)} (degree {tree_degree(t, degrees)})"


def free_presentation(names: Sequence[str], degrees: Sequence[int] | None = None) -> Presentation:
    degrees = degrees or [1] * len(names)
    return Presentation(tuple(Generator(n, e) for n, e in zip(names, degrees)))
