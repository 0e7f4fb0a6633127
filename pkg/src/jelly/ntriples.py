"""N-Triples / N-Quads reader and writer."""

from __future__ import annotations

import re
from typing import Iterable, Iterator, TextIO

from .errors import InvalidTermError, QuadInTriplesOutput, RdfSyntaxError
from .terms import (
    DEFAULT_GRAPH,
    BlankNode,
    DefaultGraph,
    GraphEnd,
    GraphStart,
    EndOfGroup,
    Iri,
    Literal,
    Quad,
    Triple,
    render_term_nt,
)

_WS = re.compile(r"[ \t]*")
_IRIREF = re.compile(r'<((?:[^\x00-\x20<>"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)>')
_SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")
_PN_CHARS_BASE = (
    "A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF"
    "\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF\uFDF0-\uFFFD"
    "\U00010000-\U000EFFFF"
)
_PN_CHARS_U = _PN_CHARS_BASE + "_:"
_PN_CHARS = _PN_CHARS_U + "\\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
_BNODE = re.compile(f"_:([{_PN_CHARS_U}0-9](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?)")
_STRING = re.compile(r'"((?:[^"\\\n\r]|\\[tbnrf"\'\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)"')
_LANGTAG = re.compile(r"@([a-zA-Z]+(?:-[a-zA-Z0-9]+)*)")
_ESCAPE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))")
_ECHARS = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


class _LineError(Exception):
    def __init__(self, col: int, reason: str):
        self.col = col
        self.reason = reason


def _unescape(text: str, col: int, iri: bool = False) -> str:
    if "\\" not in text:
        return text

    def sub(m: re.Match) -> str:
        hexa = m.group(1) or m.group(2)
        if hexa is not None:
            cp = int(hexa, 16)
            if cp > 0x10FFFF or 0xD800 <= cp <= 0xDFFF:
                raise _LineError(col, f"escape \\{m.group()[1:]} is not a Unicode scalar value")
            return chr(cp)
        if iri:
            raise _LineError(col, "only \\u and \\U escapes are allowed in IRIs")
        return _ECHARS[m.group(3)]

    return _ESCAPE.sub(sub, text)


class _LineParser:
    __slots__ = ("line", "pos")

    def __init__(self, line: str):
        self.line = line
        self.pos = 0

    def skip_ws(self) -> None:
        self.pos = _WS.match(self.line, self.pos).end()

    def peek(self) -> str:
        return self.line[self.pos:self.pos + 1]

    def iri(self) -> Iri:
        col = self.pos
        m = _IRIREF.match(self.line, self.pos)
        if m is None:
            raise _LineError(col, "malformed IRI")
        value = _unescape(m.group(1), col, iri=True)
        if not _SCHEME.match(value):
            raise _LineError(col, f"relative IRI <{value}> is not allowed")
        try:
            term = Iri(value)
        except InvalidTermError as exc:
            raise _LineError(col, str(exc)) from None
        self.pos = m.end()
        return term

    def bnode(self) -> BlankNode:
        col = self.pos
        m = _BNODE.match(self.line, self.pos)
        if m is None:
            raise _LineError(col, "malformed blank node label")
        label = m.group(1)
        try:
            term = BlankNode(label)
        except InvalidTermError as exc:
            raise _LineError(col, str(exc)) from None
        self.pos = m.end()
        return term

    def literal(self) -> Literal:
        col = self.pos
        m = _STRING.match(self.line, self.pos)
        if m is None:
            raise _LineError(col, "malformed string literal")
        lexical = _unescape(m.group(1), col)
        self.pos = m.end()
        lang = datatype = None
        if self.line.startswith("@", self.pos):
            lm = _LANGTAG.match(self.line, self.pos)
            if lm is None:
                raise _LineError(self.pos, "malformed language tag")
            lang = lm.group(1)
            self.pos = lm.end()
        elif self.line.startswith("^^", self.pos):
            self.pos += 2
            datatype = self.iri().value
        try:
            return Literal(lexical, lang, datatype)
        except InvalidTermError as exc:
            raise _LineError(col, str(exc)) from None

    def term(self, allowed: str, what: str):
        ch = self.peek()
        if ch == "<" and "i" in allowed:
            return self.iri()
        if ch == "_" and "b" in allowed:
            return self.bnode()
        if ch == '"' and "l" in allowed:
            return self.literal()
        if not ch:
            raise _LineError(self.pos, f"expected {what}, found end of line")
        raise _LineError(self.pos, f"unexpected {ch!r} where {what} was expected")

    def statement(self, quads: bool):
        s = self.term("ib", "subject")
        self.skip_ws()
        p = self.term("i", "predicate")
        self.skip_ws()
        o = self.term("ibl", "object")
        self.skip_ws()
        g = DEFAULT_GRAPH
        if self.peek() != ".":
            if not quads:
                raise _LineError(self.pos, "expected '.' after the object")
            g = self.term("ib", "graph name or '.'")
            self.skip_ws()
        if self.peek() != ".":
            raise _LineError(self.pos, "expected '.' at end of statement")
        self.pos += 1
        self.skip_ws()
        rest = self.line[self.pos:]
        if rest and not rest.startswith("#"):
            raise _LineError(self.pos, f"unexpected text after '.': {rest[:20]!r}")
        if quads:
            return Quad(s, p, o, g)
        return Triple(s, p, o)


_EOL = re.compile(r"\r\n|\r|\n")


def _lines(source) -> Iterable[str]:
    # only CR and LF end a line; str.splitlines would also split on VT, FF, NEL...
    if isinstance(source, str):
        return _EOL.split(source)
    return source


def _parse(source, quads: bool) -> Iterator:
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.rstrip("\r\n")
        parser = _LineParser(line)
        parser.skip_ws()
        ch = parser.peek()
        if not ch or ch == "#":
            continue
        try:
            yield parser.statement(quads)
        except _LineError as exc:
            raise RdfSyntaxError(lineno, exc.col + 1, exc.reason) from None


def parse_nt_stream(source: str | TextIO | Iterable[str]) -> Iterator[Triple]:
    """Yield triples from N-Triples text (a string, text file or iterable of lines)."""
    return _parse(source, quads=False)


def parse_nq_stream(source: str | TextIO | Iterable[str]) -> Iterator[Quad]:
    """Yield quads from N-Quads text; statements without a graph land in the default graph."""
    return _parse(source, quads=True)


def parse_nt(text: str) -> list[Triple]:
    return list(parse_nt_stream(text))


def parse_nq(text: str) -> list[Quad]:
    return list(parse_nq_stream(text))


# -- writing -------------------------------------------------------------------

def _nt_line(st) -> str:
    if st.__class__ is Quad and st[3] is not DEFAULT_GRAPH and st[3].__class__ is not DefaultGraph:
        raise QuadInTriplesOutput(f"statement in named graph {st[3]!r} cannot be written as N-Triples")
    return f"{render_term_nt(st[0])} {render_term_nt(st[1])} {render_term_nt(st[2])} .\n"


def _nq_line(st) -> str:
    head = f"{render_term_nt(st[0])} {render_term_nt(st[1])} {render_term_nt(st[2])}"
    if st.__class__ is Quad and st[3].__class__ is not DefaultGraph:
        return f"{head} {render_term_nt(st[3])} .\n"
    return head + " .\n"


def iter_nt_lines(statements: Iterable) -> Iterator[str]:
    for st in statements:
        yield _nt_line(st)


def iter_nq_lines(statements: Iterable) -> Iterator[str]:
    for st in statements:
        yield _nq_line(st)


def serialize_nt(statements: Iterable) -> str:
    return "".join(iter_nt_lines(statements))


def serialize_nq(statements: Iterable) -> str:
    return "".join(iter_nq_lines(statements))


# -- grouped streams <-> flat statements -------------------------------------------

def flatten_events(events: Iterable, as_quads: bool) -> Iterator:
    """Turn an event stream into statements.

    Triples inside a ``GraphStart(g)`` ... ``GraphEnd`` block belong to ``g``;
    with *as_quads* they come out as quads in that graph.
    """
    graph = DEFAULT_GRAPH
    for ev in events:
        cls = ev.__class__
        if cls is Triple:
            if as_quads:
                yield Quad(ev[0], ev[1], ev[2], graph)
            elif graph is not DEFAULT_GRAPH:
                raise QuadInTriplesOutput(f"statement in named graph {graph!r} cannot be written as N-Triples")
            else:
                yield ev
        elif cls is Quad:
            yield ev
        elif cls is GraphStart:
            graph = ev.graph
        elif cls is GraphEnd:
            graph = DEFAULT_GRAPH
        elif cls is EndOfGroup:
            continue


def group_quads(quads: Iterable[Quad], end_of_group: bool = True) -> Iterator:
    """Turn quads into a grouped event stream: one graph block per run of equal graph names."""
    current = None
    for q in quads:
        g = q[3]
        if current is None or g != current:
            if current is not None:
                yield GraphEnd()
                if end_of_group:
                    yield EndOfGroup()
            yield GraphStart(g)
            current = g
        yield Triple(q[0], q[1], q[2])
    if current is not None:
        yield GraphEnd()
        if end_of_group:
            yield EndOfGroup()
