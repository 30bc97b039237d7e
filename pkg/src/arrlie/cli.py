"""Command line front end: ``arrlie flats|dims|check|partial FILE ...``.

Exit codes: 0 decomposes (or success), 1 does not decompose, 2 input error,
3 undecidable at the chosen truncation degree.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from collections.abc import Sequence
from dataclasses import dataclass

from .arrangement import (
    ArrangementError,
    SubArrangement,
    complete_arrangement,
    matroid_from_arrangement,
    singleton_partition,
    two_flats,
    validate_partition,
)
from .coeff import Field
from .decompose import (
    default_check_degree,
    partial_decomposition,
    verify_decomposition,
)
from .presented import DEFAULT_DIMS_DEGREE, GradedQuotient, PresentationError, TruncationError
from .relparse import Loaded, ParseError, format_arrangement, load

EXIT_OK, EXIT_NOT, EXIT_INPUT, EXIT_UNDECIDABLE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    path: str
    fields: list[Field]
    max_degree: int | None
    fmt: str
    jobs: int


def _fields(args) -> list[Field]:
    if args.all_fields:
        return [Field.parse(t) for t in args.all_fields.split(",") if t.strip()]
    return [Field.parse(args.field)]


def _config(args) -> RunConfig:
    if args.max_degree is not None and args.max_degree < 2:
        raise UsageError("--max-degree must be at least 2")
    if getattr(args, "jobs", 1) < 1:
        raise UsageError("--jobs must be positive")
    return RunConfig(
        args.command, args.file, _fields(args), args.max_degree, args.format, getattr(args, "jobs", 1)
    )


def _emit(cfg: RunConfig, payload, text: str) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _labels(text: str) -> list[str]:
    return [t for t in text.replace(" ", ",").split(",") if t]


def _partition(loaded: Loaded, args) -> list[SubArrangement]:
    arr = loaded.arrangement
    named: list[tuple[str, list[str]]] = []
    for item in args.partition or []:
        name, sep, rest = item.partition("=")
        if not sep or not name:
            raise UsageError(f"--partition expects NAME=label,label,... not {item!r}")
        named.append((name, _labels(rest)))
    if args.singletons:
        if named:
            raise UsageError("--singletons cannot be combined with --partition")
        return singleton_partition(arr)
    if named:
        used = {lab for _, labs in named for lab in labs}
        if args.singletons_rest:
            named += [(lab, [lab]) for lab in arr.labels if lab not in used]
        groups = [[arr.label_index(lab) for lab in labs] for _, labs in named]
        return validate_partition(arr, groups, [n for n, _ in named])
    if args.singletons_rest:
        return singleton_partition(arr)
    if loaded.groups:
        return loaded.groups
    return singleton_partition(arr)


def _sub(loaded: Loaded, text: str) -> SubArrangement:
    arr = loaded.arrangement
    name, sep, rest = text.partition("=")
    if not sep:
        name, rest = "B", text
    labs = _labels(rest)
    if not labs:
        raise UsageError("--sub needs at least one block label")
    return SubArrangement(arr, tuple(arr.label_index(lab) for lab in labs), name)


# -- commands ------------------------------------------------------------------


def cmd_flats(cfg: RunConfig, loaded: Loaded) -> int:
    arr = loaded.arrangement
    if loaded.spec.normals:
        out = arr
        header = ["blocks: maximal sets of hyperplanes meeting in codimension two"]
        triples = sorted(
            tuple(t) for b in arr.blocks if len(b) >= 3 for t in itertools.combinations(b, 3)
        )
    else:
        m = matroid_from_arrangement(complete_arrangement(arr))
        out = two_flats(m)
        header = ["2-flats of the rank-3 matroid of the completed arrangement"]
        order = arr.order
        triples = sorted(
            tuple(sorted(t, key=order.__getitem__)) for t in m.dependent_triples
        )
        triples.sort(key=lambda t: [order[x] for x in t])
    header.append(
        "dependent triples: " + (" ".join("{" + ",".join(t) + "}" for t in triples) or "none")
    )
    payload = {
        "ground": list(out.ground),
        "blocks": {lab: list(b) for lab, b in zip(out.labels, out.blocks)},
        "dependent_triples": [list(t) for t in triples],
    }
    _emit(cfg, payload, format_arrangement(out, loaded.spec.degrees, header).rstrip("\n"))
    return EXIT_OK


def cmd_dims(cfg: RunConfig, loaded: Loaded) -> int:
    D = cfg.max_degree or DEFAULT_DIMS_DEGREE
    p = loaded.presentation
    tables = {}
    warnings = []
    for f in cfg.fields:
        q = GradedQuotient(p, D, f)
        tables[f.name] = q.dims()
        warnings += q.warnings
    names = list(tables)
    cols = [c for n in names for c in (f"dim L ({n})", f"dim L' ({n})")]
    lines = [f"# truncation D={D}", "  ".join(["d"] + cols)]
    for d in range(1, D + 1):
        vals = [v for n in names for v in (tables[n][d].dim, tables[n][d].derived)]
        lines.append("  ".join([str(d)] + [str(v).rjust(len(c)) for v, c in zip(vals, cols)]))
    mismatch = [
        d for d in range(1, D + 1) if len({tables[n][d].dim for n in names}) > 1
    ]
    if mismatch:
        lines.append(f"# fields disagree in degrees {mismatch} (torsion in the integral form)")
    lines += [f"# warning: {w}" for w in dict.fromkeys(warnings)]
    payload = {
        "max_degree": D,
        "fields": {
            n: {str(r.degree): {"dim": r.dim, "derived": r.derived} for r in tables[n]}
            for n in names
        },
        "field_mismatch_degrees": mismatch,
        "warnings": list(dict.fromkeys(warnings)),
    }
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def _combine(codes: Sequence[int]) -> int:
    if EXIT_NOT in codes:
        return EXIT_NOT
    if EXIT_UNDECIDABLE in codes:
        return EXIT_UNDECIDABLE
    return EXIT_OK


def cmd_check(cfg: RunConfig, loaded: Loaded, args) -> int:
    p = loaded.presentation
    D = cfg.max_degree or default_check_degree(p)
    partition = _partition(loaded, args)
    reports = [verify_decomposition(p, partition, D, f, cfg.jobs) for f in cfg.fields]
    if len(reports) == 1:
        r = reports[0]
        _emit(cfg, r.to_dict(), r.to_text())
        return r.exit_code
    verdicts = {r.field: r.verdict for r in reports}
    text = "\n\n".join(f"== field {r.field} ==\n{r.to_text()}" for r in reports)
    if len(set(verdicts.values())) > 1:
        text += "\n\nfields disagree: " + ", ".join(f"{k}: {v}" for k, v in verdicts.items())
    _emit(cfg, {"by_field": {r.field: r.to_dict() for r in reports}}, text)
    return _combine([r.exit_code for r in reports])


def cmd_partial(cfg: RunConfig, loaded: Loaded, args) -> int:
    p = loaded.presentation
    D = cfg.max_degree or default_check_degree(p)
    sub = _sub(loaded, args.sub)
    reports = [partial_decomposition(p, sub, D, f, cfg.jobs) for f in cfg.fields]
    if len(reports) == 1:
        r = reports[0]
        _emit(cfg, r.to_dict(), r.to_text())
        return r.exit_code
    text = "\n\n".join(f"== field {r.field} ==\n{r.to_text()}" for r in reports)
    _emit(cfg, {"by_field": {r.field: r.to_dict() for r in reports}}, text)
    return _combine([r.exit_code for r in reports])


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="arrlie",
        description="Lie algebras of set-arrangements: dimensions and decomposition checks.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, jobs=False):
        sp.add_argument("file", help="arrangement file, or the name of a shipped fixture")
        sp.add_argument("-d", "--max-degree", type=int, help="truncation degree D")
        sp.add_argument("--field", default="q", help="q (default) or p:<prime>")
        sp.add_argument("--all-fields", metavar="LIST", help="comma list, e.g. q,2,3,101")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if jobs:
            sp.add_argument("--jobs", type=int, default=1, help="threads for triple checks")

    sp = sub.add_parser("flats", help="print the arrangement of 2-flats")
    common(sp)
    sp = sub.add_parser("dims", help="dimension table of L and L'")
    common(sp)
    sp = sub.add_parser("check", help="decide whether L' splits along a partition")
    common(sp, jobs=True)
    sp.add_argument(
        "--partition",
        action="append",
        metavar="NAME=LABELS",
        help="a group of block labels, repeatable",
    )
    sp.add_argument("--singletons", action="store_true", help="every block its own group")
    sp.add_argument(
        "--singletons-rest", action="store_true", help="blocks not in any --partition group are singletons"
    )
    sp = sub.add_parser("partial", help="split off one closed sub-arrangement")
    common(sp, jobs=True)
    sp.add_argument("--sub", required=True, metavar="[NAME=]LABELS")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        loaded = load(cfg.path)
        if cfg.command == "flats":
            return cmd_flats(cfg, loaded)
        if cfg.command == "dims":
            return cmd_dims(cfg, loaded)
        if cfg.command == "check":
            return cmd_check(cfg, loaded, args)
        return cmd_partial(cfg, loaded, args)
    except TruncationError as e:
        print(f"arrlie: {e}", file=sys.stderr)
        return EXIT_UNDECIDABLE
    except (ParseError, ArrangementError, PresentationError, UsageError, FileNotFoundError) as e:
        print(f"arrlie: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError) as e:
        print(f"arrlie: {e}", file=sys.stderr)
        return EXIT_INPUT


__all__ = ["main", "build_parser", "RunConfig"]
