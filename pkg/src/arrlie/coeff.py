"""Exact scalars over QQ and GF(p), and incrementally maintained row spaces.

A :class:`Field` coerces integers and fractions into its native scalar type
(``fractions.Fraction`` for the rationals, ``int`` in ``[0, p)`` for a prime
field).  :class:`RowSpace` keeps a set of sparse rows in reduced row-echelon
form, so that :meth:`RowSpace.reduce` returns a canonical coset representative.

Vectors are accepted either dense (any sequence) or sparse (a mapping from
column index to scalar); results come back in the same shape.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

__all__ = ["Field", "QQ", "RowSpace", "rank"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """The rationals (``p is None``) or the prime field GF(p), ``p < 2**31``."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not (p < 2**31 and _is_prime(p)):
                raise ValueError(f"{p} is not a prime below 2^31")
        self.p = p

    @classmethod
    def parse(cls, text: str) -> Field:
        """Read ``q``/``QQ`` or ``p:101``/``101``/``GF(101)``."""
        t = text.strip()
        if t.lower() in ("q", "qq", "rationals"):
            return cls()
        for prefix in ("p:", "P:", "GF(", "gf(", "F", "f"):
            if t.startswith(prefix):
                t = t[len(prefix):].rstrip(")")
                break
        try:
            return cls(int(t))
        except ValueError:
            raise ValueError(f"bad field {text!r}: expected q or p:<prime>") from None

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def name(self) -> str:
        return "q" if self.p is None else f"p:{self.p}"

    def __call__(self, x) -> Fraction | int:
        p = self.p
        if p is None:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, int):
            return x % p
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} has no image in GF({p})")
        return x.numerator * pow(x.denominator, -1, p) % p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


class RowSpace:
    """Subspace of ``field^ncols`` stored as rows in reduced row-echelon form.

    Every stored row has its pivot (leftmost nonzero column) equal to 1, and
    pivot columns are zero in every other row.  Insertion keeps this form,
    so :meth:`reduce` needs a single pass and returns the unique
    representative of ``v + span`` supported off the pivot columns.
    """

    def __init__(self, field: Field, ncols: int):
        if ncols < 0:
            raise ValueError("ncols must be nonnegative")
        self.field = field
        self.ncols = ncols
        self._rows: dict[int, dict[int, object]] = {}
        # column -> pivots of rows with a nonzero entry there (non-pivot columns only)
        self._occ: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivot_cols(self) -> list[int]:
        return sorted(self._rows)

    def free_cols(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self._rows]

    def is_pivot(self, col: int) -> bool:
        return col in self._rows

    def row(self, pivot: int) -> dict[int, object]:
        """The stored sparse row with the given pivot (do not mutate)."""
        return self._rows[pivot]

    @property
    def rows(self) -> list[list]:
        """Dense rows ordered by pivot column."""
        zero = self.field.zero()
        out = []
        for piv in sorted(self._rows):
            dense = [zero] * self.ncols
            for c, x in self._rows[piv].items():
                dense[c] = x
            out.append(dense)
        return out

    def sparse_rows(self) -> list[dict[int, object]]:
        return [dict(self._rows[piv]) for piv in sorted(self._rows)]

    def copy(self) -> RowSpace:
        new = RowSpace(self.field, self.ncols)
        new._rows = {k: dict(v) for k, v in self._rows.items()}
        new._occ = {k: set(v) for k, v in self._occ.items()}
        return new

    # -- coercion -----------------------------------------------------------

    def _sparse(self, v) -> tuple[dict[int, object], bool]:
        f = self.field
        if isinstance(v, Mapping):
            out = {}
            for c, x in v.items():
                if not 0 <= c < self.ncols:
                    raise ValueError(f"column {c} outside 0..{self.ncols - 1}")
                x = f(x)
                if x:
                    out[c] = x
            return out, True
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for a {self.ncols}-column space")
        return {c: y for c, x in enumerate(v) if (y := f(x))}, False

    def _shape(self, v: dict, sparse: bool):
        if sparse:
            return v
        zero = self.field.zero()
        dense = [zero] * self.ncols
        for c, x in v.items():
            dense[c] = x
        return dense

    # -- core ---------------------------------------------------------------

    def _reduce_inplace(self, v: dict) -> dict:
        p = self.field.p
        rows = self._rows
        for c in [c for c in v if c in rows]:
            a = v.pop(c)
            for k, b in rows[c].items():
                if k == c:
                    continue
                x = v.get(k, 0) - a * b
                if p is not None:
                    x %= p
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)
        return v

    def _insert_reduced(self, r: dict) -> None:
        p = self.field.p
        piv = min(r)
        inv = self.field.inv(r[piv])
        if p is None:
            row = {k: x * inv for k, x in r.items()}
        else:
            row = {k: x * inv % p for k, x in r.items()}
        occ = self._occ
        for q in occ.pop(piv, ()):
            other = self._rows[q]
            a = other.pop(piv)
            for k, b in row.items():
                if k == piv:
                    continue
                x = other.get(k, 0) - a * b
                if p is not None:
                    x %= p
                if x:
                    if k not in other:
                        occ.setdefault(k, set()).add(q)
                    other[k] = x
                elif k in other:
                    del other[k]
                    occ[k].discard(q)
        self._rows[piv] = row
        for k in row:
            if k != piv:
                occ.setdefault(k, set()).add(piv)

    def reduce(self, v):
        """Canonical representative of ``v`` modulo the space; zero iff ``v`` lies in it."""
        s, sparse = self._sparse(v)
        return self._shape(self._reduce_inplace(s), sparse)

    def insert(self, v):
        """Add ``v`` to the space and return its residue before insertion.

        The rank grows by one exactly when the returned residue is nonzero.
        """
        s, sparse = self._sparse(v)
        r = self._reduce_inplace(s)
        if r:
            self._insert_reduced(dict(r))
        return self._shape(r, sparse)

    def extend(self, vectors: Iterable) -> int:
        """Insert several vectors; returns the rank gained."""
        before = self.rank
        for v in vectors:
            s, _ = self._sparse(v)
            r = self._reduce_inplace(s)
            if r:
                self._insert_reduced(r)
        return self.rank - before

    def contains(self, v) -> bool:
        s, _ = self._sparse(v)
        return not self._reduce_inplace(s)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __repr__(self) -> str:
        return f"RowSpace({self.field!r}, ncols={self.ncols}, rank={self.rank})"


def rank(field: Field, vectors: Sequence, ncols: int | None = None) -> int:
    """Rank of a list of vectors (dense, or sparse with ``ncols`` given)."""
    if ncols is None:
        if not vectors:
            return 0
        ncols = len(vectors[0])
    space = RowSpace(field, ncols)
    space.extend(vectors)
    return space.rank
