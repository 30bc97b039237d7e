"""Arrangement files and Lie bracket expressions.

File format (UTF-8, one directive per line, ``#`` starts a comment)::

    ground: x y z u v            # required, once
    deg: x=2 y=2 z=2             # optional, default degree 1
    block B: x z u               # one per block; the label comes first
    mode: custom                 # holonomy (default) or custom
    rel B: [z,x]-[u,[u,x]]       # custom mode only
    group: A                     # optional partition, repeatable
    normal h1: 1 0 -1/2          # instead of blocks: hyperplane normals

Names and labels are runs of letters, digits and underscores, so numeric
names such as ``7`` are allowed.  Name lists may be separated by spaces or
commas.

Expression grammar::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := [coeff '*'] bracket
    coeff   := integer ['/' integer]
    bracket := '[' atom ',' atom ']'
    atom    := name | bracket
"""

from __future__ import annotations

import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .arrangement import (
    ArrangementError,
    SetArrangement,
    SubArrangement,
    arrangement_from_normals,
    validate_arrangement,
    validate_partition,
)
from .freelie import LieElement
from .presented import Presentation

__all__ = [
    "ParseError",
    "ArrangementSpec",
    "Loaded",
    "parse_arrangement_file",
    "parse_lie_expr",
    "load",
    "load_text",
    "fixture_path",
    "format_arrangement",
]

NAME = re.compile(r"[A-Za-z0-9_]+")
DIRECTIVES = ("ground", "deg", "block", "mode", "rel", "group", "normal")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


# -- expressions ---------------------------------------------------------------


class _ExprParser:
    def __init__(self, text: str, alphabet, line: int, col0: int):
        self.s = text
        self.i = 0
        self.alphabet = alphabet
        self.line = line
        self.col0 = col0

    def error(self, msg: str, at: int | None = None) -> ParseError:
        return ParseError(msg, self.line, self.col0 + (self.i if at is None else at))

    def skip(self) -> None:
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.i += 1

    def name(self) -> str:
        self.skip()
        m = NAME.match(self.s, self.i)
        if not m:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected a generator name or '[', found {found}")
        if self.alphabet is not None and m.group() not in self.alphabet:
            raise self.error(f"unknown name {m.group()!r}")
        self.i = m.end()
        return m.group()

    def atom(self):
        return self.bracket() if self.peek() == "[" else self.name()

    def bracket(self):
        self.expect("[")
        a = self.atom()
        self.expect(",")
        b = self.atom()
        self.expect("]")
        return (a, b)

    def term(self) -> LieElement:
        self.skip()
        start = self.i
        c: Fraction | int = 1
        m = re.compile(r"(\d+)(?:\s*/\s*(\d+))?\s*\*").match(self.s, self.i)
        if m:
            c = int(m.group(1)) if m.group(2) is None else Fraction(int(m.group(1)), int(m.group(2)))
            self.i = m.end()
        if self.peek() != "[":
            if NAME.match(self.s, self.i):
                raise self.error(
                    "a bare generator cannot be a term; relations must be brackets", start
                )
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected '[', found {found}")
        return LieElement([(self.bracket(), c)])

    def expr(self) -> LieElement:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        total = self.term() * sign
        while True:
            ch = self.peek()
            if not ch:
                return total
            if ch not in "+-":
                raise self.error(f"unexpected {ch!r}")
            self.i += 1
            t = self.term()
            total = total + t if ch == "+" else total - t


def parse_lie_expr(
    text: str, alphabet: Sequence[str] | None = None, line: int = 1, col: int = 1
) -> LieElement:
    """Parse a formal sum of brackets; names must come from ``alphabet`` if given."""
    if not text.strip():
        raise ParseError("empty expression", line, col)
    return _ExprParser(text, None if alphabet is None else set(alphabet), line, col).expr()


# -- files ---------------------------------------------------------------------


@dataclass
class ArrangementSpec:
    ground: list[str] = field(default_factory=list)
    degrees: dict[str, int] = field(default_factory=dict)
    blocks: list[tuple[str, list[str]]] = field(default_factory=list)
    mode: str = "holonomy"
    relations: list[tuple[str, LieElement]] = field(default_factory=list)
    groups: list[list[str]] = field(default_factory=list)
    normals: list[tuple[str, list[Fraction]]] = field(default_factory=list)

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.blocks]


def _names(text: str, line: int, col: int) -> list[tuple[str, int]]:
    out = []
    for m in re.finditer(r"[^\s,]+", text):
        if not NAME.fullmatch(m.group()):
            raise ParseError(f"bad name {m.group()!r}", line, col + m.start())
        out.append((m.group(), col + m.start()))
    return out


def parse_arrangement_file(text: str) -> ArrangementSpec:
    spec = ArrangementSpec()
    seen_ground = seen_mode = None
    pending_rels = []
    block_lines = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected '<directive>: ...'", ln, len(line) - len(line.lstrip()) + 1)
        col = len(head) + 2
        words = head.split()
        lead = len(head) - len(head.lstrip()) + 1
        if not words or words[0] not in DIRECTIVES:
            raise ParseError(f"unknown directive {head.strip()!r}", ln, lead)
        kind = words[0]
        labeled = kind in ("block", "rel", "normal")
        if labeled != (len(words) == 2) or len(words) > 2:
            want = f"'{kind} <label>:'" if labeled else f"'{kind}:'"
            raise ParseError(f"expected {want}", ln, lead)
        label = words[1] if labeled else None
        if label is not None and not NAME.fullmatch(label):
            raise ParseError(f"bad label {label!r}", ln, head.index(label) + 1)

        if kind == "ground":
            if seen_ground:
                raise ParseError(f"second ground line (first on line {seen_ground})", ln, lead)
            seen_ground = ln
            for nm, c in _names(rest, ln, col):
                if nm in spec.ground:
                    raise ParseError(f"duplicate ground name {nm!r}", ln, c)
                spec.ground.append(nm)
            if not spec.ground:
                raise ParseError("empty ground set", ln, col)
        elif kind == "deg":
            for m in re.finditer(r"\S+", rest):
                c = col + m.start()
                dm = re.fullmatch(r"([A-Za-z0-9_]+)=(-?\d+)", m.group())
                if not dm:
                    raise ParseError(f"expected name=degree, found {m.group()!r}", ln, c)
                if int(dm.group(2)) <= 0:
                    raise ParseError(f"degree of {dm.group(1)} must be positive", ln, c)
                spec.degrees[dm.group(1)] = int(dm.group(2))
                block_lines.append((dm.group(1), ln, c))
        elif kind == "block":
            if label in spec.labels:
                raise ParseError(f"duplicate block label {label!r}", ln, lead)
            names = _names(rest, ln, col)
            spec.blocks.append((label, [nm for nm, _ in names]))
            block_lines += [(nm, ln, c) for nm, c in names]
        elif kind == "mode":
            m = rest.strip()
            if m not in ("holonomy", "custom"):
                raise ParseError(f"mode must be holonomy or custom, not {m!r}", ln, col)
            if seen_mode:
                raise ParseError(f"second mode line (first on line {seen_mode})", ln, lead)
            seen_mode = ln
            spec.mode = m
        elif kind == "rel":
            stripped = rest.lstrip()
            pending_rels.append((label, stripped, ln, col + len(rest) - len(stripped)))
        elif kind == "group":
            labs = [nm for nm, _ in _names(rest, ln, col)]
            if not labs:
                raise ParseError("empty group", ln, col)
            spec.groups.append(labs)
            block_lines += [("#group:" + nm, ln, c) for nm, c in _names(rest, ln, col)]
        elif kind == "normal":
            vals = []
            for m in re.finditer(r"[^\s,]+", rest):
                try:
                    vals.append(Fraction(m.group()))
                except ValueError:
                    raise ParseError(f"bad rational {m.group()!r}", ln, col + m.start()) from None
            if any(nm == label for nm, _ in spec.normals):
                raise ParseError(f"duplicate normal {label!r}", ln, lead)
            spec.normals.append((label, vals))

    if seen_ground is None and not spec.normals:
        raise ParseError("missing 'ground:' line", 1, 1)
    if spec.normals and spec.blocks:
        raise ParseError("normal vectors and explicit blocks are mutually exclusive", 1, 1)
    if spec.normals:
        names = [nm for nm, _ in spec.normals]
        if seen_ground is None:
            spec.ground = names
        elif sorted(names) != sorted(spec.ground):
            raise ParseError("normal names differ from the ground set", seen_ground, 1)
        spec.normals.sort(key=lambda t: spec.ground.index(t[0]))
    ground = set(spec.ground)
    labels = set(spec.labels)
    for nm, ln, c in block_lines:
        if nm.startswith("#group:"):
            if not spec.normals and nm[7:] not in labels:
                raise ParseError(f"unknown block label {nm[7:]!r}", ln, c)
        elif nm not in ground:
            raise ParseError(f"unknown name {nm!r}", ln, c)
    for label, expr, ln, c in pending_rels:
        if spec.mode != "custom":
            raise ParseError("'rel' lines need 'mode: custom'", ln, 1)
        if spec.normals:
            raise ParseError("'rel' lines need explicit blocks", ln, 1)
        if label not in labels:
            raise ParseError(f"unknown block label {label!r}", ln, 1)
        spec.relations.append((label, parse_lie_expr(expr, spec.ground, ln, c)))
    return spec


# -- loading -------------------------------------------------------------------


@dataclass
class Loaded:
    spec: ArrangementSpec
    arrangement: SetArrangement
    presentation: Presentation
    groups: list[SubArrangement] | None
    source: str = ""


def _build_arrangement(spec: ArrangementSpec) -> SetArrangement:
    if spec.normals:
        arr = arrangement_from_normals([v for _, v in spec.normals], spec.ground)
        return arr
    if not spec.blocks:
        raise ArrangementError("no blocks given")
    return validate_arrangement(spec.ground, [b for _, b in spec.blocks], spec.labels)


def load_text(text: str, source: str = "") -> Loaded:
    from .decompose import custom_presentation, holonomy_presentation

    spec = parse_arrangement_file(text)
    arr = _build_arrangement(spec)
    if spec.mode == "custom":
        rels: dict[str, list[LieElement]] = {}
        for label, r in spec.relations:
            rels.setdefault(label, []).append(r)
        pres = custom_presentation(arr, rels, spec.degrees)
    else:
        pres = holonomy_presentation(arr, spec.degrees)
    groups = None
    if spec.groups:
        idx = [[arr.label_index(lab) for lab in g] for g in spec.groups]
        groups = validate_partition(arr, idx, [f"G{i + 1}" for i in range(len(idx))])
    return Loaded(spec, arr, pres, groups, source)


def fixture_path(name: str) -> Path | None:
    """Path of a shipped fixture (``1033``, ``1033.arr``, ...) or ``None``."""
    base = resources.files("arrlie") / "fixtures"
    for cand in (name, name + ".arr"):
        p = base / cand
        if p.is_file():
            return Path(str(p))
    return None


def load(path: str | Path) -> Loaded:
    """Load an arrangement file, falling back to the shipped fixtures by name."""
    p = Path(path)
    if not p.is_file():
        fx = fixture_path(str(path))
        if fx is None:
            raise FileNotFoundError(f"no such file or fixture: {path}")
        p = fx
    return load_text(p.read_text(encoding="utf-8"), str(p))


def format_arrangement(
    arr: SetArrangement,
    degrees: Mapping[str, int] | None = None,
    header: Sequence[str] = (),
) -> str:
    """Render an arrangement in the file format (holonomy mode)."""
    lines = [f"# {h}" for h in header]
    lines.append("ground: " + " ".join(arr.ground))
    extra = {x: d for x, d in (degrees or {}).items() if d != 1}
    if extra:
        lines.append("deg: " + " ".join(f"{x}={d}" for x, d in extra.items()))
    for lab, b in zip(arr.labels, arr.blocks):
        lines.append(f"block {lab}: " + " ".join(b))
    return "\n".join(lines) + "\n"

