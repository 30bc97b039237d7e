"""Localized Lie algebras of sub-arrangements and the decomposition checks.

Given a presentation backed by a set-arrangement and a partition of its
blocks into closed sub-arrangements, :func:`verify_decomposition` decides
whether the derived algebra ``L'`` splits as the direct sum of the derived
algebras of the localized algebras ``L_B``.  The evidence collected is

* the replacement condition for every block of size >= 3 and every
  generator it shares with another block,
* the triple products ``[x, [y, z]]`` with ``y, z`` in the support of a part
  and ``x`` outside it, taken over a basis of the span of the ``[y, z]``,
* the dimension identity ``dim L'_d = sum_i dim (L_Bi)'_d`` for ``d <= D``.

A nonzero triple or a dimension gap refutes the decomposition outright.
Vanishing triples together with replacement (and pairwise disjoint
noncommuting 2-blocks) prove it in every degree; otherwise the conclusion
is limited to the computed range.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from .arrangement import (
    ArrangementError,
    SetArrangement,
    SubArrangement,
    is_closed,
    validate_partition,
)
from .coeff import QQ, Field, RowSpace
from .freelie import Generator, LieElement, bracket, tree_leaves
from .presented import (
    AMBIENT,
    GradedQuotient,
    Presentation,
    PresentationError,
    Relation,
)

__all__ = [
    "holonomy_relations",
    "holonomy_presentation",
    "custom_presentation",
    "LocalizedPresentation",
    "localized",
    "project",
    "ReplacementVerdict",
    "check_replacement",
    "TripleCheck",
    "pair_representatives",
    "check_condition6",
    "DecompositionReport",
    "verify_decomposition",
    "PartialReport",
    "partial_decomposition",
    "default_check_degree",
]

SYMBOLIC = "symbolic-holonomy"
NUMERIC = "numeric"

DECOMPOSES = "decomposes"
NOT_DECOMPOSABLE = "does not decompose"
UNDECIDABLE = "undecidable at D"
INCONCLUSIVE = "inconclusive"

EXIT_CODES = {DECOMPOSES: 0, NOT_DECOMPOSABLE: 1, UNDECIDABLE: 3, INCONCLUSIVE: 3}


# -- presentations -------------------------------------------------------------


def holonomy_relations(block: Sequence[str]) -> list[LieElement]:
    """``[y_i, y_1 + ... + y_k]`` for ``i < k``; the last one is dependent."""
    total = LieElement([(y, 1) for y in block])
    return [bracket(y, total) for y in block[:-1]]


def _degree_map(arr: SetArrangement, degrees: Mapping[str, int] | None) -> dict[str, int]:
    degrees = dict(degrees or {})
    unknown = set(degrees) - set(arr.ground)
    if unknown:
        raise PresentationError(f"degrees given for unknown names {sorted(unknown)}")
    return {x: degrees.get(x, 1) for x in arr.ground}


def _ambient(arr: SetArrangement) -> list[Relation]:
    return [Relation(bracket(x, y), AMBIENT) for x, y in arr.uncovered_pairs()]


def holonomy_presentation(
    arr: SetArrangement, degrees: Mapping[str, int] | None = None
) -> Presentation:
    """Holonomy relations per block plus commutators of pairs in no block.

    A 2-block ``{x, y}`` gets ``[x, y]``, which is what the general formula
    gives for ``k = 2``.
    """
    deg = _degree_map(arr, degrees)
    rels = []
    for label, b in zip(arr.labels, arr.blocks):
        if len({deg[y] for y in b}) > 1:
            raise PresentationError(
                f"block {label}: holonomy relations need equal generator degrees"
            )
        rels += [Relation(r, label) for r in holonomy_relations(b)]
    rels += _ambient(arr)
    return Presentation(tuple(Generator(x, deg[x]) for x in arr.ground), tuple(rels), arr)


def custom_presentation(
    arr: SetArrangement,
    block_relations: Mapping[str, Iterable[LieElement]],
    degrees: Mapping[str, int] | None = None,
) -> Presentation:
    """A Lie algebra of the arrangement with the given relation set per block.

    Blocks added by completion get ``[x, y]`` so that the algebra is unchanged.
    """
    deg = _degree_map(arr, degrees)
    rels = []
    for label in block_relations:
        arr.label_index(label)
    for i, (label, b) in enumerate(zip(arr.labels, arr.blocks)):
        members = set(b)
        given = list(block_relations.get(label, ()))
        if i in arr.synthetic and not given:
            given = [bracket(b[0], b[1])]
        for r in given:
            outside = r.generators() - members
            if outside:
                raise PresentationError(
                    f"relation {r} of block {label} uses {sorted(outside)} outside the block"
                )
            rels.append(Relation(r, label))
    rels += _ambient(arr)
    return Presentation(tuple(Generator(x, deg[x]) for x in arr.ground), tuple(rels), arr)


def _arrangement(p: Presentation) -> SetArrangement:
    if p.arrangement is None:
        raise PresentationError("presentation is not backed by a set-arrangement")
    return p.arrangement


@dataclass(frozen=True)
class LocalizedPresentation:
    source: Presentation
    scope: SubArrangement
    presentation: Presentation


def localized(p: Presentation, sub: SubArrangement) -> LocalizedPresentation:
    """Presentation of ``L_B`` on the support of a closed sub-arrangement."""
    ok, witness = is_closed(sub)
    if not ok:
        lab, common = witness
        raise ArrangementError(
            f"{sub.describe()} is not closed: block {lab} meets its support in {{{','.join(common)}}}"
        )
    supp = sub.support
    deg = p.degrees
    rels = []
    for label in sub.labels:
        rels += [Relation(r, label) for r in p.block_relations(label)]
    inner = sub.as_arrangement()
    rels += _ambient(inner)
    pres = Presentation(tuple(Generator(x, deg[x]) for x in supp), tuple(rels), inner)
    return LocalizedPresentation(p, sub, pres)


def project(e: LieElement, sub: SubArrangement | Iterable[str]) -> LieElement:
    """Kill every monomial that involves a generator outside the support."""
    supp = set(sub.support if isinstance(sub, SubArrangement) else sub)
    return LieElement([(t, c) for t, c in e if set(tree_leaves(t)) <= supp])


def default_check_degree(p: Presentation) -> int:
    top = p.max_generator_degree
    return max(2 * top + p.max_relation_degree, 3 * top)


# -- replacement ---------------------------------------------------------------


@dataclass(frozen=True)
class ReplacementVerdict:
    block: str
    generator: str
    method: str
    holds: bool
    degree: int | None = None  # failing degree, or the range checked numerically

    def describe(self) -> str:
        if self.method == SYMBOLIC:
            return f"block {self.block}, {self.generator}: holds (holonomy identity)"
        if self.holds:
            return f"block {self.block}, {self.generator}: holds up to degree {self.degree}"
        return f"block {self.block}, {self.generator}: FAILS in degree {self.degree}"


def _pair_coords(r: LieElement, pos: Mapping[str, int]) -> dict[int, int] | None:
    k = len(pos)
    out: dict[int, object] = {}
    for t, c in r:
        if isinstance(t, str) or not (isinstance(t[0], str) and isinstance(t[1], str)):
            return None
        i, j = pos[t[0]], pos[t[1]]
        if i > j:
            i, j, c = j, i, -c
        out[i * k + j] = out.get(i * k + j, 0) + c
    return out


def is_holonomy_block(p: Presentation, label: str, block: Sequence[str]) -> bool:
    """Whether the block's relations span exactly its holonomy relations."""
    deg = p.degrees
    if len({deg[x] for x in block}) > 1:
        return False
    pos = {x: i for i, x in enumerate(block)}
    ncols = len(block) ** 2
    given = RowSpace(QQ, ncols)
    for r in p.block_relations(label):
        v = _pair_coords(r, pos)
        if v is None:
            return False
        given.extend([v])
    expected = RowSpace(QQ, ncols)
    expected.extend(_pair_coords(r, pos) for r in holonomy_relations(block))
    return given.rank == expected.rank and all(
        given.contains(v) for v in expected.sparse_rows()
    )


def check_replacement(p: Presentation, D: int, field: Field = QQ) -> list[ReplacementVerdict]:
    """Replacement verdicts for each block of size >= 3 and each shared generator."""
    arr = _arrangement(p)
    out = []
    for i, (label, b) in enumerate(zip(arr.labels, arr.blocks)):
        if len(b) < 3:
            continue
        shared = [
            x for x in b if any(x in c for j, c in enumerate(arr.blocks) if j != i)
        ]
        if not shared:
            continue
        if is_holonomy_block(p, label, b):
            out += [ReplacementVerdict(label, x, SYMBOLIC, True) for x in shared]
            continue
        q = GradedQuotient(localized(p, SubArrangement(arr, (i,))).presentation, D, field)
        for x in shared:
            spaces = q.subalgebra([y for y in b if y != x])
            failed = None
            for d in range(1, D + 1):
                for gid in q.basis(d):
                    if q.is_generator_id(gid):
                        continue
                    if not spaces[d].contains({q.position(gid): 1}):
                        failed = d
                        break
                if failed:
                    break
            out.append(ReplacementVerdict(label, x, NUMERIC, failed is None, failed or D))
    return out


# -- condition six -------------------------------------------------------------


@dataclass(frozen=True)
class TripleCheck:
    x: str
    y: str
    z: str
    group: str
    degree: int
    verdict: str  # "zero" | "nonzero" | "undecidable"
    residue: str | None = None

    def describe(self) -> str:
        s = f"[{self.x},[{self.y},{self.z}]] ({self.group}, degree {self.degree}): {self.verdict}"
        return s + (f" = {self.residue}" if self.residue else "")


def pair_representatives(
    q: GradedQuotient, support: Sequence[str]
) -> list[tuple[str, str, dict | None]]:
    """Pairs ``(y, z)`` in support order whose brackets form a basis of their span.

    Pairs whose bracket lies beyond the truncation come back with ``None``.
    """
    deg = q.presentation.degrees
    spaces: dict[int, RowSpace] = {}
    reps = []
    for y, z in itertools.combinations(support, 2):
        d = deg[y] + deg[z]
        if d > q.max_degree:
            reps.append((y, z, None))
            continue
        v = q.evaluate(bracket(y, z))
        if not v:
            continue
        space = spaces.setdefault(d, RowSpace(q.field, q.dim(d)))
        if space.insert(q.local(v)):
            reps.append((y, z, v))
    return reps


def _triple_tasks(q: GradedQuotient, groups: Sequence[tuple[str, Sequence[str], Sequence[str]]]):
    deg = q.presentation.degrees
    for name, support, outside in groups:
        for y, z, v in pair_representatives(q, support):
            for x in outside:
                yield name, x, y, z, v, deg[x] + deg[y] + deg[z]


def _run_triple(q: GradedQuotient, task) -> TripleCheck:
    name, x, y, z, v, d = task
    if v is None or d > q.max_degree:
        return TripleCheck(x, y, z, name, d, "undecidable")
    r = q.bracket({q.generator_id(x): q.field.one()}, v)
    if r:
        return TripleCheck(x, y, z, name, d, "nonzero", q.format_vector(r))
    return TripleCheck(x, y, z, name, d, "zero")


def _run_triples(q: GradedQuotient, groups, jobs: int) -> list[TripleCheck]:
    tasks = list(_triple_tasks(q, groups))
    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda t: _run_triple(q, t), tasks))
    return [_run_triple(q, t) for t in tasks]


def check_condition6(
    p: Presentation,
    partition: Sequence[SubArrangement],
    D: int,
    field: Field = QQ,
    quotient: GradedQuotient | None = None,
    jobs: int = 1,
) -> list[TripleCheck]:
    """``[x, [y, z]]`` for ``y, z`` in a part's support and ``x`` outside it.

    ``[y, z]`` runs over a basis of the span of such brackets (pairs that
    vanish, such as unrelated commuting pairs, drop out).
    """
    q = quotient or GradedQuotient(p, D, field)
    groups = []
    for sub in partition:
        supp = set(sub.support)
        groups.append(
            (sub.name or sub.describe(), sub.support, [x for x in p.names if x not in supp])
        )
    return _run_triples(q, groups, jobs)


def two_block_overlaps(p: Presentation, q: GradedQuotient) -> list[tuple[str, str]]:
    """Pairs of intersecting 2-blocks whose generators do not commute in ``L``.

    2-blocks with commuting generators can be dropped from the arrangement
    without changing the Lie algebra, so they are ignored.
    """
    arr = _arrangement(p)
    deg = p.degrees
    live = []
    for label, b in zip(arr.labels, arr.blocks):
        if len(b) != 2:
            continue
        if deg[b[0]] + deg[b[1]] <= q.max_degree and q.is_zero(bracket(b[0], b[1])):
            continue
        live.append((label, set(b)))
    return [(a, b) for (a, s), (b, t) in itertools.combinations(live, 2) if s & t]


# -- reports -------------------------------------------------------------------


@dataclass
class DecompositionReport:
    field: str
    max_degree: int
    partition: list[dict]
    closed: dict[str, bool]
    replacement: list[ReplacementVerdict]
    triples: list[TripleCheck]
    dims: dict[int, tuple[int, int]]
    two_block_overlaps: list[tuple[str, str]]
    verdict: str
    scope: str
    witness: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def triple_counts(self) -> dict[str, int]:
        counts = {"checked": len(self.triples), "zero": 0, "nonzero": 0, "undecidable": 0}
        for t in self.triples:
            counts[t.verdict] += 1
        return counts

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "max_degree": self.max_degree,
            "partition": self.partition,
            "closed": self.closed,
            "replacement": [asdict(r) for r in self.replacement],
            "triples": {
                **self.triple_counts(),
                "nonzero_list": [asdict(t) for t in self.triples if t.verdict == "nonzero"],
                "undecidable_list": [
                    asdict(t) for t in self.triples if t.verdict == "undecidable"
                ],
            },
            "dims": {str(d): list(v) for d, v in sorted(self.dims.items())},
            "two_block_overlaps": [list(x) for x in self.two_block_overlaps],
            "verdict": self.verdict,
            "scope": self.scope,
            "witness": self.witness,
            "notes": self.notes,
        }

    def to_text(self) -> str:
        lines = [f"field {self.field}, truncation D={self.max_degree}", "partition:"]
        for g in self.partition:
            mark = "closed" if self.closed[g["name"]] else "NOT closed"
            lines.append(
                f"  {g['name']}: blocks {','.join(g['blocks'])}  support {{{','.join(g['support'])}}}  {mark}"
            )
        lines.append("replacement:")
        lines += [f"  {r.describe()}" for r in self.replacement] or ["  (no shared generators in blocks of size >= 3)"]
        c = self.triple_counts()
        lines.append(
            f"triple products: {c['checked']} checked, {c['zero']} zero, "
            f"{c['nonzero']} nonzero, {c['undecidable']} undecidable"
        )
        for t in self.triples:
            if t.verdict != "zero":
                lines.append(f"  {t.describe()}")
        lines.append("dimension identity  d: dim L'_d | sum of dim (L_B)'_d")
        for d, (lhs, rhs) in sorted(self.dims.items()):
            lines.append(f"  {d}: {lhs} | {rhs}{'' if lhs == rhs else '   <- gap'}")
        if self.two_block_overlaps:
            lines.append(f"intersecting 2-blocks: {self.two_block_overlaps}")
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"verdict: {self.verdict} ({self.scope})")
        if self.witness:
            lines.append(f"witness: {self.witness}")
        return "\n".join(lines)


def _partition_entry(sub: SubArrangement) -> dict:
    return {"name": sub.name, "blocks": list(sub.labels), "support": list(sub.support)}


def _validated(p: Presentation, partition: Sequence[SubArrangement]) -> list[SubArrangement]:
    arr = _arrangement(p)
    for sub in partition:
        if sub.parent != arr:
            raise ArrangementError(f"group {sub.name} belongs to a different arrangement")
    names = [s.name or f"B{i + 1}" for i, s in enumerate(partition)]
    return validate_partition(arr, [s.members for s in partition], names)


def verify_decomposition(
    p: Presentation,
    partition: Sequence[SubArrangement],
    D: int,
    field: Field = QQ,
    jobs: int = 1,
) -> DecompositionReport:
    subs = _validated(p, partition)
    q = GradedQuotient(p, D, field)
    replacement = check_replacement(p, D, field)
    triples = check_condition6(p, subs, D, field, q, jobs)
    local = [GradedQuotient(localized(p, s).presentation, D, field) for s in subs]
    table = {
        d: (q.derived_dim(d), sum(lq.derived_dim(d) for lq in local)) for d in range(2, D + 1)
    }
    overlaps = two_block_overlaps(p, q)
    notes = list(q.warnings)

    nonzero = [t for t in triples if t.verdict == "nonzero"]
    undecided = [t for t in triples if t.verdict == "undecidable"]
    gaps = [d for d, (a, b) in table.items() if a != b]
    repl_ok = all(r.holds for r in replacement)
    symbolic = all(r.method == SYMBOLIC for r in replacement)
    upto = f"up to degree {D}"
    witness = None
    if nonzero:
        verdict, scope = NOT_DECOMPOSABLE, "all degrees"
        witness = nonzero[0].describe()
    elif gaps:
        verdict, scope = NOT_DECOMPOSABLE, "all degrees"
        a, b = table[gaps[0]]
        witness = f"dim L'_{gaps[0]} = {a} but the parts give {b}"
    elif undecided:
        verdict, scope = UNDECIDABLE, upto
        need = max(t.degree for t in undecided)
        witness = f"{len(undecided)} triple products need D >= {need}"
    elif repl_ok and not overlaps:
        verdict = DECOMPOSES
        scope = "all degrees" if symbolic else f"all degrees, replacement verified {upto}"
    else:
        verdict, scope = INCONCLUSIVE, upto
        if not repl_ok:
            notes.append("replacement fails, so vanishing triples do not prove the splitting")
        if overlaps:
            notes.append("intersecting noncommuting 2-blocks: the triple criterion does not apply")
        notes.append(f"dimension identity holds {upto}")
    if field.is_rational:
        notes.append("computed over QQ; integral statements are out of scope")
    return DecompositionReport(
        field=field.name,
        max_degree=D,
        partition=[_partition_entry(s) for s in subs],
        closed={s.name: True for s in subs},
        replacement=replacement,
        triples=triples,
        dims=table,
        two_block_overlaps=overlaps,
        verdict=verdict,
        scope=scope,
        witness=witness,
        notes=notes,
    )


# -- partial decomposition -----------------------------------------------------


@dataclass
class PartialReport:
    field: str
    max_degree: int
    sub: dict
    triples: list[TripleCheck]
    rows: list[dict]
    kernel_is_subalgebra: bool
    verdict: str
    notes: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    @property
    def consistent(self) -> bool:
        return all(r["kernel_direct"] == r["kernel_by_difference"] for r in self.rows) and (
            not self.kernel_is_subalgebra
            or all(r["kernel_direct"] == r["complement_subalgebra"] for r in self.rows)
        )

    def to_dict(self) -> dict:
        counts = {"checked": len(self.triples)}
        for v in ("zero", "nonzero", "undecidable"):
            counts[v] = sum(1 for t in self.triples if t.verdict == v)
        return {
            "field": self.field,
            "max_degree": self.max_degree,
            "sub": self.sub,
            "triples": {
                **counts,
                "nonzero_list": [asdict(t) for t in self.triples if t.verdict == "nonzero"],
            },
            "dims": self.rows,
            "kernel_is_subalgebra": self.kernel_is_subalgebra,
            "consistent": self.consistent,
            "verdict": self.verdict,
            "notes": self.notes,
        }

    def to_text(self) -> str:
        s = self.sub
        lines = [
            f"field {self.field}, truncation D={self.max_degree}",
            f"sub-arrangement {s['name']}: blocks {','.join(s['blocks'])}  support {{{','.join(s['support'])}}}",
        ]
        nz = sum(1 for t in self.triples if t.verdict == "nonzero")
        und = sum(1 for t in self.triples if t.verdict == "undecidable")
        lines.append(
            f"triple products: {len(self.triples)} checked, {len(self.triples) - nz - und} zero, {nz} nonzero, {und} undecidable"
        )
        lines += [f"  {t.describe()}" for t in self.triples if t.verdict != "zero"]
        lines.append("  d: dim L | dim L_B | ker pi (direct, difference, complement subalgebra) | L' = im s' + ker pi'")
        for r in self.rows:
            lines.append(
                f"  {r['degree']}: {r['dim_L']} | {r['dim_LB']} | "
                f"{r['kernel_direct']}, {r['kernel_by_difference']}, {r['complement_subalgebra']} | "
                f"{r['derived_L']} = {r['derived_LB']} + {r['derived_kernel']}"
            )
        if not self.kernel_is_subalgebra:
            lines.append("  (complement subalgebra need not equal the kernel here)")
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def projection_kernel_dims(
    q: GradedQuotient, lq: GradedQuotient, sub: SubArrangement
) -> list[int]:
    """``dim ker(pi_B)_d`` from the rank of the projection on a basis of ``L_d``."""
    out = []
    for d in range(1, q.max_degree + 1):
        space = RowSpace(q.field, lq.dim(d))
        for gid in q.basis(d):
            img = lq.evaluate(project(q.element(gid), sub))
            if img:
                space.extend([lq.local(img)])
        out.append(q.dim(d) - space.rank)
    return out


def partial_decomposition(
    p: Presentation,
    sub: SubArrangement,
    D: int,
    field: Field = QQ,
    jobs: int = 1,
) -> PartialReport:
    """Check whether ``L'`` splits as ``im(s_B') x ker(pi_B')`` for one closed part."""
    arr = _arrangement(p)
    loc = localized(p, sub)
    q = GradedQuotient(p, D, field)
    lq = GradedQuotient(loc.presentation, D, field)
    supp = set(sub.support)
    outside = [x for x in p.names if x not in supp]
    name = sub.name or "B"
    triples = _run_triples(q, [(name, sub.support, outside)], jobs)

    replacement = check_replacement(p, D, field)
    lonely_two = [
        lab for lab, b in zip(arr.labels, arr.blocks) if len(b) == 2 and len(set(b) & supp) == 1
    ]
    kernel_is_subalgebra = all(r.holds for r in replacement) and not lonely_two

    direct = projection_kernel_dims(q, lq, sub)
    complement = q.subalgebra_dims(outside)
    rows = []
    for d in range(1, D + 1):
        rows.append(
            {
                "degree": d,
                "dim_L": q.dim(d),
                "dim_LB": lq.dim(d),
                "kernel_direct": direct[d - 1],
                "kernel_by_difference": q.dim(d) - lq.dim(d),
                "complement_subalgebra": complement[d - 1],
                "derived_L": q.derived_dim(d),
                "derived_LB": lq.derived_dim(d),
                "derived_kernel": q.derived_dim(d) - lq.derived_dim(d),
            }
        )
    if any(t.verdict == "nonzero" for t in triples):
        verdict = NOT_DECOMPOSABLE
    elif any(t.verdict == "undecidable" for t in triples):
        verdict = UNDECIDABLE
    else:
        verdict = DECOMPOSES
    notes = list(q.warnings)
    if lonely_two:
        notes.append(f"2-blocks meeting the support once: {', '.join(lonely_two)}")
    report = PartialReport(
        field=field.name,
        max_degree=D,
        sub=_partition_entry(sub),
        triples=triples,
        rows=rows,
        kernel_is_subalgebra=kernel_is_subalgebra,
        verdict=verdict,
        notes=notes,
    )
    if not report.consistent:
        report.notes.append("kernel dimension cross-checks disagree")
    return report
