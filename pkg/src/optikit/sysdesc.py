"""Plain-text description format for optical systems and resonators.

Grammar (line oriented; '#' starts a comment; keywords are case sensitive;
key=value fields may appear in any order within a line):

    document   := header body
    header     := "[system]" | "[resonator]"
    system     := (freespace interface)* freespace
    resonator  := interface (freespace interface)+
    freespace  := "freespace" "n=" REAL "d=" REAL
    interface  := "interface" ("plane" | "spherical" "R=" REAL)
                  ["kind=" ("transmitted" | "reflected")]

A [system] alternates freespace/interface lines and ends on its terminal
freespace.  In a [resonator] the first and last interfaces are the mirrors
(implicitly reflected; kind= is rejected there), each interior (freespace,
interface) pair is an inner component (transmitted unless kind=reflected),
and the final freespace before the right mirror is the cavity space.

Unknown keys, duplicate keys, missing keys, and trailing tokens are
positioned errors, never warnings: a silently dropped physical parameter is
the costliest failure this format could allow.  Serialization is canonical
(comments dropped, keys in the order n,d / R,kind, shortest float spelling
that re-reads to the same value) and `parse(serialize(doc))` reproduces the
document exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .errors import DomainError
from .rayoptics import (
    FreeSpace,
    InterfaceKind,
    OpticalComponent,
    OpticalSystem,
    Plane,
    Spherical,
)
from .resonator import Resonator

__all__ = [
    "ParseError",
    "FreespaceDirective",
    "InterfaceDirective",
    "Document",
    "parse",
    "serialize",
    "document_to_system",
    "document_to_resonator",
    "system_to_document",
    "resonator_to_document",
]

_REAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_KEYVAL = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)=(.*)$")


class ParseError(Exception):
    """Positioned grammar violation: 1-based line and column into the source."""

    def __init__(self, line: int, column: int, message: str, expected: str = ""):
        self.line = line
        self.column = column
        self.message = message
        self.expected = expected
        text = f"{line}:{column}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


@dataclass(frozen=True)
class FreespaceDirective:
    n: float
    d: float
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class InterfaceDirective:
    shape: str  # "plane" | "spherical"
    radius: float | None = None
    kind: str | None = None  # "transmitted" | "reflected" | None
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


Directive = Union[FreespaceDirective, InterfaceDirective]


@dataclass(frozen=True)
class Document:
    kind: str  # "system" | "resonator"
    items: tuple[Directive, ...]


def _tokenize(raw_line: str) -> list[tuple[str, int]]:
    """(token, 1-based column) pairs of a line with its comment stripped."""
    code = raw_line.split("#", 1)[0]
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", code)]


def _parse_real(value: str, line: int, col: int, key: str) -> float:
    if not _REAL.match(value):
        raise ParseError(line, col, f"invalid real for {key}: {value!r}", f"{key}=<real>")
    return float(value)


def _end_column(raw_line: str) -> int:
    return len(raw_line.rstrip("\n")) + 1


def _parse_fields(
    tokens: list[tuple[str, int]],
    line_no: int,
    raw_line: str,
    required: tuple[str, ...],
    optional: tuple[str, ...],
) -> dict[str, tuple[str, int]]:
    seen: dict[str, tuple[str, int]] = {}
    allowed = set(required) | set(optional)
    for text, col in tokens:
        m = _KEYVAL.match(text)
        if not m:
            raise ParseError(line_no, col, f"trailing token {text!r}", "key=value")
        key, value = m.group(1), m.group(2)
        if key not in allowed:
            raise ParseError(line_no, col, f"unknown key {key!r}", " or ".join(sorted(allowed)))
        if key in seen:
            raise ParseError(line_no, col, f"duplicate key {key!r}", "each key at most once")
        if value == "":
            raise ParseError(line_no, col, f"empty value for {key!r}", f"{key}=<value>")
        seen[key] = (value, col)
    for key in required:
        if key not in seen:
            raise ParseError(line_no, _end_column(raw_line), f"missing key {key!r}", f"{key}=")
    return seen


def _parse_freespace(tokens: list[tuple[str, int]], line_no: int, raw_line: str) -> FreespaceDirective:
    fields = _parse_fields(tokens[1:], line_no, raw_line, required=("n", "d"), optional=())
    n = _parse_real(fields["n"][0], line_no, fields["n"][1], "n")
    d = _parse_real(fields["d"][0], line_no, fields["d"][1], "d")
    return FreespaceDirective(n=n, d=d, line=line_no, column=tokens[0][1])


def _parse_interface(tokens: list[tuple[str, int]], line_no: int, raw_line: str) -> InterfaceDirective:
    if len(tokens) < 2:
        raise ParseError(line_no, _end_column(raw_line), "missing interface shape", "plane or spherical")
    shape, shape_col = tokens[1]
    if shape not in ("plane", "spherical"):
        raise ParseError(line_no, shape_col, f"unknown interface shape {shape!r}", "plane or spherical")
    if shape == "spherical":
        fields = _parse_fields(tokens[2:], line_no, raw_line, required=("R",), optional=("kind",))
        radius = _parse_real(fields["R"][0], line_no, fields["R"][1], "R")
    else:
        fields = _parse_fields(tokens[2:], line_no, raw_line, required=(), optional=("kind",))
        radius = None
    kind = None
    if "kind" in fields:
        kind, kind_col = fields["kind"]
        if kind not in ("transmitted", "reflected"):
            raise ParseError(line_no, kind_col, f"invalid kind {kind!r}", "transmitted or reflected")
    return InterfaceDirective(shape=shape, radius=radius, kind=kind, line=line_no, column=tokens[0][1])


def parse(source: str) -> Document:
    """Parse a document, raising ParseError at the first grammar violation."""
    raw_lines = source.split("\n")
    kind: str | None = None
    items: list[Directive] = []
    last_line_no = 1

    for line_no, raw in enumerate(raw_lines, start=1):
        tokens = _tokenize(raw)
        if not tokens:
            continue
        last_line_no = line_no
        head, head_col = tokens[0]

        if kind is None:
            if head not in ("[system]", "[resonator]"):
                raise ParseError(line_no, head_col, f"unexpected token {head!r}", "[system] or [resonator]")
            if len(tokens) > 1:
                raise ParseError(line_no, tokens[1][1], f"trailing token {tokens[1][0]!r}", "end of line")
            kind = head[1:-1]
            continue

        if kind == "system":
            expect = "freespace" if len(items) % 2 == 0 else "interface"
        else:
            expect = "interface" if len(items) % 2 == 0 else "freespace"
        if head != expect:
            raise ParseError(line_no, head_col, f"unexpected directive {head!r}", expect)

        if head == "freespace":
            items.append(_parse_freespace(tokens, line_no, raw))
        else:
            items.append(_parse_interface(tokens, line_no, raw))

    if kind is None:
        raise ParseError(1, 1, "empty document", "[system] or [resonator]")

    end_col = _end_column(raw_lines[last_line_no - 1])
    if kind == "system":
        if len(items) % 2 == 0:  # covers the empty body too
            raise ParseError(last_line_no, end_col, "system must end with a freespace line", "freespace")
    else:
        if len(items) < 3:
            raise ParseError(
                last_line_no, end_col,
                "resonator needs two mirror interfaces with a freespace between",
                "freespace/interface lines",
            )
        if len(items) % 2 == 0:
            raise ParseError(last_line_no, end_col, "resonator must end with an interface line", "interface")
        for mirror in (items[0], items[-1]):
            assert isinstance(mirror, InterfaceDirective)
            if mirror.kind is not None:
                raise ParseError(
                    mirror.line, mirror.column,
                    "kind is not allowed on a mirror interface",
                    "no kind= on the first/last interface",
                )

    return Document(kind=kind, items=tuple(items))


def _fmt(x: float) -> str:
    # repr gives the shortest spelling that re-reads to the same double
    return repr(float(x))


def _check_document(doc: Document) -> None:
    if doc.kind not in ("system", "resonator"):
        raise DomainError(f"unknown document kind {doc.kind!r}")
    offset = 0 if doc.kind == "system" else 1
    for i, item in enumerate(doc.items):
        want_freespace = (i + offset) % 2 == 0
        if want_freespace != isinstance(item, FreespaceDirective):
            raise DomainError(f"directive {i} out of order for a {doc.kind} document")
        if isinstance(item, InterfaceDirective):
            if item.shape == "spherical" and item.radius is None:
                raise DomainError(f"spherical directive {i} has no radius")
            if item.shape == "plane" and item.radius is not None:
                raise DomainError(f"plane directive {i} carries a radius")
    if doc.kind == "system" and len(doc.items) % 2 == 0:
        raise DomainError("system document must end with a freespace directive")
    if doc.kind == "resonator":
        if len(doc.items) < 3 or len(doc.items) % 2 == 0:
            raise DomainError("resonator document needs mirror/freespace/mirror structure")
        for mirror in (doc.items[0], doc.items[-1]):
            if mirror.kind is not None:  # type: ignore[union-attr]
                raise DomainError("mirror interfaces carry no kind")


def serialize(doc: Document) -> str:
    """Canonical text form; parse(serialize(doc)) reproduces doc exactly."""
    _check_document(doc)
    lines = [f"[{doc.kind}]"]
    for item in doc.items:
        if isinstance(item, FreespaceDirective):
            lines.append(f"freespace n={_fmt(item.n)} d={_fmt(item.d)}")
        else:
            parts = ["interface", item.shape]
            if item.shape == "spherical":
                parts.append(f"R={_fmt(item.radius)}")
            if item.kind is not None:
                parts.append(f"kind={item.kind}")
            lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def _to_interface(item: InterfaceDirective):
    return Plane() if item.shape == "plane" else Spherical(item.radius)


def _to_kind(kind: str | None) -> InterfaceKind:
    return InterfaceKind.REFLECTED if kind == "reflected" else InterfaceKind.TRANSMITTED


def document_to_system(doc: Document) -> OpticalSystem:
    """Materialize a [system] document into ray-optics types."""
    if doc.kind != "system":
        raise DomainError(f"expected a system document, got [{doc.kind}]")
    _check_document(doc)
    comps = []
    for i in range(0, len(doc.items) - 1, 2):
        fs: FreespaceDirective = doc.items[i]  # type: ignore[assignment]
        iface: InterfaceDirective = doc.items[i + 1]  # type: ignore[assignment]
        comps.append(
            OpticalComponent(FreeSpace(fs.n, fs.d), _to_interface(iface), _to_kind(iface.kind))
        )
    term: FreespaceDirective = doc.items[-1]  # type: ignore[assignment]
    return OpticalSystem(tuple(comps), FreeSpace(term.n, term.d))


def document_to_resonator(doc: Document) -> Resonator:
    """Materialize a [resonator] document into resonator types."""
    if doc.kind != "resonator":
        raise DomainError(f"expected a resonator document, got [{doc.kind}]")
    _check_document(doc)
    left: InterfaceDirective = doc.items[0]  # type: ignore[assignment]
    right: InterfaceDirective = doc.items[-1]  # type: ignore[assignment]
    space: FreespaceDirective = doc.items[-2]  # type: ignore[assignment]
    inner = []
    for i in range(1, len(doc.items) - 2, 2):
        fs: FreespaceDirective = doc.items[i]  # type: ignore[assignment]
        iface: InterfaceDirective = doc.items[i + 1]  # type: ignore[assignment]
        inner.append(
            OpticalComponent(FreeSpace(fs.n, fs.d), _to_interface(iface), _to_kind(iface.kind))
        )
    return Resonator(
        left=_to_interface(left),
        inner=tuple(inner),
        space=FreeSpace(space.n, space.d),
        right=_to_interface(right),
    )


def _from_interface(iface, kind: InterfaceKind | None) -> InterfaceDirective:
    kind_str = None if kind is None else kind.value
    if isinstance(iface, Spherical):
        return InterfaceDirective(shape="spherical", radius=iface.radius, kind=kind_str)
    return InterfaceDirective(shape="plane", radius=None, kind=kind_str)


def system_to_document(sys: OpticalSystem) -> Document:
    items: list[Directive] = []
    for comp in sys.components:
        items.append(FreespaceDirective(n=comp.space.n, d=comp.space.d))
        items.append(_from_interface(comp.iface, comp.kind))
    items.append(FreespaceDirective(n=sys.terminal.n, d=sys.terminal.d))
    return Document(kind="system", items=tuple(items))


def resonator_to_document(res: Resonator) -> Document:
    items: list[Directive] = [_from_interface(res.left, None)]
    for comp in res.inner:
        items.append(FreespaceDirective(n=comp.space.n, d=comp.space.d))
        items.append(_from_interface(comp.iface, comp.kind))
    items.append(FreespaceDirective(n=res.space.n, d=res.space.d))
    items.append(_from_interface(res.right, None))
    return Document(kind="resonator", items=tuple(items))
