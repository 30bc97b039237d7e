"""Set-arrangements: validation, 2-flats of rank-3 matroids, normals, closedness.

A set-arrangement on a ground set X is a family of subsets ("blocks") of size
at least two, any two of which meet in at most one element, covering X.
Blocks keep their input order and carry labels; members of a block are kept
in ground order.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import QQ, RowSpace

__all__ = [
    "ArrangementError",
    "SetArrangement",
    "Matroid3",
    "SubArrangement",
    "validate_arrangement",
    "complete_arrangement",
    "matroid_from_arrangement",
    "two_flats",
    "arrangement_from_normals",
    "is_closed",
    "validate_partition",
    "singleton_partition",
]

MAX_EXCHANGE_SIZE = 15


class ArrangementError(ValueError):
    """An input violates the set-arrangement axioms or a precondition."""


@dataclass(frozen=True)
class SetArrangement:
    ground: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]
    labels: tuple[str, ...]
    # indices of blocks added by completion (they commute in any Lie algebra)
    synthetic: frozenset[int] = frozenset()

    def __post_init__(self):
        if len(self.labels) != len(self.blocks):
            raise ArrangementError("one label per block required")

    @property
    def order(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.ground)}

    def block_sets(self) -> list[frozenset[str]]:
        return [frozenset(b) for b in self.blocks]

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ArrangementError(f"no block labelled {label!r}") from None

    def block(self, label: str) -> tuple[str, ...]:
        return self.blocks[self.label_index(label)]

    def covering_block(self, x: str, y: str) -> int | None:
        """Index of the block containing both ``x`` and ``y``, if any."""
        for i, b in enumerate(self.blocks):
            if x in b and y in b:
                return i
        return None

    def uncovered_pairs(self) -> list[tuple[str, str]]:
        covered = set()
        for b in self.blocks:
            covered.update(itertools.combinations(b, 2))
        return [p for p in itertools.combinations(self.ground, 2) if p not in covered]

    def canonical_blocks(self) -> list[tuple[str, ...]]:
        order = self.order
        return sorted(self.blocks, key=lambda b: [order[x] for x in b])

    def same_blocks(self, other: SetArrangement) -> bool:
        return set(self.ground) == set(other.ground) and set(
            map(frozenset, self.blocks)
        ) == set(map(frozenset, other.blocks))

    def __str__(self) -> str:
        inner = ", ".join("{" + ",".join(b) + "}" for b in self.blocks)
        return f"{{{inner}}}"


def _fresh_labels(taken: Iterable[str], count: int, prefix: str) -> list[str]:
    taken = set(taken)
    out, k = [], 1
    while len(out) < count:
        lab = f"{prefix}{k}"
        if lab not in taken:
            out.append(lab)
            taken.add(lab)
        k += 1
    return out


def validate_arrangement(
    ground: Sequence[str],
    blocks: Sequence[Iterable[str]],
    labels: Sequence[str] | None = None,
    synthetic: Iterable[int] = (),
) -> SetArrangement:
    """Check the set-arrangement axioms and return the normalized arrangement."""
    ground = tuple(ground)
    if len(ground) < 2:
        raise ArrangementError("ground set needs at least two names")
    if len(set(ground)) != len(ground):
        dup = sorted({x for x in ground if ground.count(x) > 1})
        raise ArrangementError(f"duplicate ground names: {', '.join(dup)}")
    order = {x: i for i, x in enumerate(ground)}
    if labels is None:
        labels = [f"A{i + 1}" for i in range(len(blocks))]
    labels = list(labels)
    if len(labels) != len(blocks):
        raise ArrangementError("one label per block required")
    if len(set(labels)) != len(labels):
        raise ArrangementError("block labels must be distinct")
    synthetic = set(synthetic)

    seen: dict[frozenset, int] = {}
    out_blocks, out_labels, out_syn = [], [], set()
    for i, (lab, b) in enumerate(zip(labels, blocks)):
        members = set(b)
        unknown = sorted(members - order.keys())
        if unknown:
            raise ArrangementError(f"block {lab}: unknown names {', '.join(unknown)}")
        if len(members) < 2:
            raise ArrangementError(f"block {lab} has fewer than two elements")
        key = frozenset(members)
        if key in seen:
            continue
        seen[key] = len(out_blocks)
        if i in synthetic:
            out_syn.add(len(out_blocks))
        out_blocks.append(tuple(sorted(members, key=order.__getitem__)))
        out_labels.append(lab)

    for (i, a), (j, b) in itertools.combinations(enumerate(out_blocks), 2):
        common = set(a) & set(b)
        if len(common) > 1:
            shared = ",".join(sorted(common, key=order.__getitem__))
            raise ArrangementError(
                f"blocks {out_labels[i]} and {out_labels[j]} share {{{shared}}}"
            )
    covered = set().union(*map(set, out_blocks)) if out_blocks else set()
    missing = [x for x in ground if x not in covered]
    if missing:
        raise ArrangementError(f"union of blocks misses {', '.join(missing)}")
    return SetArrangement(ground, tuple(out_blocks), tuple(out_labels), frozenset(out_syn))


def complete_arrangement(arr: SetArrangement) -> SetArrangement:
    """Add every 2-subset of the ground set not contained in a block."""
    extra = arr.uncovered_pairs()
    if not extra:
        return arr
    labels = _fresh_labels(arr.labels, len(extra), "c")
    n = len(arr.blocks)
    return validate_arrangement(
        arr.ground,
        list(arr.blocks) + extra,
        list(arr.labels) + labels,
        synthetic=set(arr.synthetic) | set(range(n, n + len(extra))),
    )


@dataclass(frozen=True)
class Matroid3:
    """Simple matroid of rank at most 3 given by its dependent 3-subsets."""

    ground: tuple[str, ...]
    dependent_triples: frozenset[frozenset[str]] = field(default_factory=frozenset)

    def dependent(self, x: str, y: str, z: str) -> bool:
        return frozenset((x, y, z)) in self.dependent_triples

    def check_exchange(self, max_size: int | None = MAX_EXCHANGE_SIZE) -> None:
        """Raise unless no pair a,b makes every element of an independent triple dependent.

        This is the exchange property for the matroid whose independent sets
        are all sets of size at most two plus the independent triples.
        """
        n = len(self.ground)
        if max_size is not None and n > max_size:
            raise ArrangementError(
                f"exchange check on {n} elements exceeds the size limit {max_size}"
            )
        for x1, x2, x3 in itertools.combinations(self.ground, 3):
            if self.dependent(x1, x2, x3):
                continue
            trip = (x1, x2, x3)
            for a, b in itertools.combinations(self.ground, 2):
                if all(
                    x in (a, b) or self.dependent(a, b, x) for x in trip
                ) and not ({a, b} <= set(trip)):
                    raise ArrangementError(
                        f"exchange fails: {{{a},{b}}} against independent {{{x1},{x2},{x3}}}"
                    )


def matroid_from_arrangement(
    arr: SetArrangement, check: bool = True, max_size: int | None = MAX_EXCHANGE_SIZE
) -> Matroid3:
    """Matroid whose dependent triples are those inside some block.

    The arrangement must already contain every pair not covered by a block.
    """
    if arr.uncovered_pairs():
        x, y = arr.uncovered_pairs()[0]
        raise ArrangementError(
            f"arrangement is not completed: pair {{{x},{y}}} lies in no block"
        )
    deps = set()
    for b in arr.blocks:
        for t in itertools.combinations(b, 3):
            deps.add(frozenset(t))
    m = Matroid3(arr.ground, frozenset(deps))
    if check:
        m.check_exchange(max_size)
    return m


def two_flats(m: Matroid3) -> SetArrangement:
    """All 2-flats ``{x,y} + {w : xyw dependent}``, deduplicated, in ground order."""
    order = {x: i for i, x in enumerate(m.ground)}
    flats: list[frozenset[str]] = []
    seen = set()
    for x, y in itertools.combinations(m.ground, 2):
        flat = frozenset({x, y} | {w for w in m.ground if w not in (x, y) and m.dependent(x, y, w)})
        if flat not in seen:
            seen.add(flat)
            flats.append(flat)
    maximal = [f for f in flats if not any(f < g for g in flats)]
    blocks = sorted(
        (tuple(sorted(f, key=order.__getitem__)) for f in maximal),
        key=lambda b: [order[x] for x in b],
    )
    return validate_arrangement(m.ground, blocks, [f"F{i + 1}" for i in range(len(blocks))])


def _rank_q(vectors: Sequence[Sequence[Fraction]]) -> int:
    space = RowSpace(QQ, len(vectors[0]))
    space.extend(vectors)
    return space.rank


def arrangement_from_normals(
    normals: Sequence[Sequence], names: Sequence[str] | None = None
) -> SetArrangement:
    """Blocks are the maximal sets of hyperplanes whose normals span a plane."""
    if len(normals) < 2:
        raise ArrangementError("need at least two normal vectors")
    if names is None:
        names = [str(i + 1) for i in range(len(normals))]
    names = list(names)
    if len(names) != len(normals):
        raise ArrangementError("one name per normal vector required")
    vecs = [[Fraction(c) for c in v] for v in normals]
    dim = len(vecs[0])
    for nm, v in zip(names, vecs):
        if len(v) != dim:
            raise ArrangementError(f"normal {nm} has length {len(v)}, expected {dim}")
        if not any(v):
            raise ArrangementError(f"normal {nm} is zero")
    for (i, a), (j, b) in itertools.combinations(enumerate(vecs), 2):
        if _rank_q([a, b]) < 2:
            raise ArrangementError(f"normals {names[i]} and {names[j]} are proportional")
    blocks, seen = [], set()
    n = len(vecs)
    for i, j in itertools.combinations(range(n), 2):
        flat = frozenset(k for k in range(n) if k in (i, j) or _rank_q([vecs[i], vecs[j], vecs[k]]) == 2)
        if flat not in seen:
            seen.add(flat)
            blocks.append(tuple(sorted(flat)))
    blocks.sort()
    return validate_arrangement(
        names,
        [[names[k] for k in b] for b in blocks],
        [f"F{i + 1}" for i in range(len(blocks))],
    )


@dataclass(frozen=True)
class SubArrangement:
    parent: SetArrangement
    members: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        bad = [m for m in self.members if not 0 <= m < len(self.parent.blocks)]
        if bad:
            raise ArrangementError(f"block indices out of range: {bad}")
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @property
    def support(self) -> tuple[str, ...]:
        s = set()
        for m in self.members:
            s.update(self.parent.blocks[m])
        return tuple(x for x in self.parent.ground if x in s)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.parent.labels[m] for m in self.members)

    @property
    def blocks(self) -> tuple[tuple[str, ...], ...]:
        return tuple(self.parent.blocks[m] for m in self.members)

    def as_arrangement(self) -> SetArrangement:
        return SetArrangement(
            self.support,
            self.blocks,
            self.labels,
            frozenset(k for k, m in enumerate(self.members) if m in self.parent.synthetic),
        )

    def describe(self) -> str:
        return f"{self.name or 'B'}={{" + ", ".join(self.labels) + "}"


def is_closed(sub: SubArrangement) -> tuple[bool, tuple[str, tuple[str, ...]] | None]:
    """Closedness: every outside block meets the support in at most one element.

    Returns ``(True, None)`` or ``(False, (label, intersection))``.
    """
    supp = set(sub.support)
    inside = set(sub.members)
    for i, b in enumerate(sub.parent.blocks):
        if i in inside:
            continue
        common = tuple(x for x in b if x in supp)
        if len(common) > 1:
            return False, (sub.parent.labels[i], common)
    return True, None


def validate_partition(
    parent: SetArrangement,
    groups: Sequence[Iterable[int]],
    names: Sequence[str] | None = None,
) -> list[SubArrangement]:
    """Check that ``groups`` are disjoint closed sub-arrangements covering all blocks."""
    groups = [tuple(g) for g in groups]
    if names is None:
        names = [f"B{i + 1}" for i in range(len(groups))]
    owner: dict[int, str] = {}
    subs = []
    for nm, g in zip(names, groups):
        if not g:
            raise ArrangementError(f"group {nm} is empty")
        for m in g:
            if m in owner:
                raise ArrangementError(
                    f"block {parent.labels[m]} lies in both {owner[m]} and {nm}"
                )
            owner[m] = nm
        subs.append(SubArrangement(parent, g, nm))
    missing = [parent.labels[i] for i in range(len(parent.blocks)) if i not in owner]
    if missing:
        raise ArrangementError(f"partition misses blocks {', '.join(missing)}")
    for sub in subs:
        ok, witness = is_closed(sub)
        if not ok:
            lab, common = witness
            raise ArrangementError(
                f"group {sub.name} is not closed: block {lab} meets its support in {{{','.join(common)}}}"
            )
    return subs


def singleton_partition(parent: SetArrangement) -> list[SubArrangement]:
    return validate_partition(
        parent, [(i,) for i in range(len(parent.blocks))], list(parent.labels)
    )
