"""Frame and row schema, and the row <-> bytes codec.

Field numbers (all messages use wire kinds 0 and 2 only)::

    Frame          1 row (repeated)
    Row            1 options  2 triple  3 quad  4 graph_start  5 graph_end
                   7 name_entry  8 prefix_entry  9 datatype_entry
    Options        1 stream_name  2 physical_type  3 logical_type
                   4 max_name_table  5 max_prefix_table  6 max_datatype_table
                   7 version
    Entry          1 id  2 value
    Triple         1 s_iri  2 s_bnode  3 p_iri  4 o_iri  5 o_bnode  6 o_literal
    Quad           1-6 as Triple, 7 g_iri  8 g_bnode  9 g_default
    GraphStart     1 g_iri  2 g_bnode  3 g_default
    Iri            1 prefix_id  2 name_id
    Literal        1 lexical  2 langtag  3 datatype_id

A statement position with no field set repeats the previous statement's
term at that position. Zero-valued scalars are never written.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Union

from .errors import InvalidOptions, MalformedRow, WireError, WireErrorKind
from .wire import MAX_PAYLOAD_LENGTH, MAX_UINT64, VARINT_CACHE, encode_varint

VERSION = 1

DEFAULT_MAX_NAME_TABLE = 1024
DEFAULT_MAX_PREFIX_TABLE = 64
DEFAULT_MAX_DATATYPE_TABLE = 32

MIN_NAME_TABLE = 8
MIN_PREFIX_TABLE = 1
MIN_DATATYPE_TABLE = 1


class PhysicalType(enum.IntEnum):
    UNSPECIFIED = 0
    TRIPLES = 1
    QUADS = 2
    GRAPHS = 3


class LogicalType(enum.IntEnum):
    UNSPECIFIED = 0
    FLAT_TRIPLES = 1
    FLAT_QUADS = 2
    GRAPHS = 3
    DATASETS = 4


_TRIPLE_LIKE = (PhysicalType.TRIPLES, PhysicalType.GRAPHS)
_QUAD_LIKE = (PhysicalType.QUADS, PhysicalType.GRAPHS)
_COMPATIBLE = {
    LogicalType.UNSPECIFIED: tuple(PhysicalType)[1:],
    LogicalType.FLAT_TRIPLES: _TRIPLE_LIKE,
    LogicalType.GRAPHS: _TRIPLE_LIKE,
    LogicalType.FLAT_QUADS: _QUAD_LIKE,
    LogicalType.DATASETS: _QUAD_LIKE,
}


@dataclass(frozen=True)
class StreamOptions:
    """Stream header; always the first row of a stream. Doubles as the options row."""

    physical_type: PhysicalType = PhysicalType.TRIPLES
    logical_type: LogicalType = LogicalType.FLAT_TRIPLES
    max_name_table: int = DEFAULT_MAX_NAME_TABLE
    max_prefix_table: int = DEFAULT_MAX_PREFIX_TABLE
    max_datatype_table: int = DEFAULT_MAX_DATATYPE_TABLE
    stream_name: str = ""
    version: int = VERSION

    def problems(self) -> list[str]:
        out = []
        if self.max_name_table < MIN_NAME_TABLE:
            out.append(f"max_name_table must be >= {MIN_NAME_TABLE}, got {self.max_name_table}")
        if self.max_prefix_table < MIN_PREFIX_TABLE:
            out.append(f"max_prefix_table must be >= {MIN_PREFIX_TABLE}, got {self.max_prefix_table}")
        if self.max_datatype_table < MIN_DATATYPE_TABLE:
            out.append(f"max_datatype_table must be >= {MIN_DATATYPE_TABLE}, got {self.max_datatype_table}")
        if self.version != VERSION:
            out.append(f"unsupported version {self.version}")
        if self.physical_type == PhysicalType.UNSPECIFIED:
            out.append("physical_type must be specified")
        elif self.physical_type not in _COMPATIBLE[self.logical_type]:
            out.append(f"logical type {self.logical_type.name} is incompatible with physical type {self.physical_type.name}")
        return out

    def validate(self) -> "StreamOptions":
        problems = self.problems()
        if problems:
            raise InvalidOptions("; ".join(problems))
        return self

    def with_tables(self, name: int | None = None, prefix: int | None = None, datatype: int | None = None) -> "StreamOptions":
        return replace(
            self,
            max_name_table=self.max_name_table if name is None else name,
            max_prefix_table=self.max_prefix_table if prefix is None else prefix,
            max_datatype_table=self.max_datatype_table if datatype is None else datatype,
        )


# -- wire-level terms --------------------------------------------------------

class WireIri(NamedTuple):
    prefix_id: int = 0
    name_id: int = 0


class WireBnode(NamedTuple):
    label: str


class WireLiteral(NamedTuple):
    lexical: str
    langtag: str = ""
    datatype_id: int = 0


class WireDefaultGraph(NamedTuple):
    pass


WIRE_DEFAULT_GRAPH = WireDefaultGraph()

# None stands for an absent (repeated) position.
WireTerm = Optional[Union[WireIri, WireBnode, WireLiteral, WireDefaultGraph]]


# -- rows ---------------------------------------------------------------------

@dataclass(slots=True)
class TripleRow:
    subject: WireTerm = None
    predicate: WireTerm = None
    object: WireTerm = None


@dataclass(slots=True)
class QuadRow:
    subject: WireTerm = None
    predicate: WireTerm = None
    object: WireTerm = None
    graph: WireTerm = None


@dataclass(slots=True)
class GraphStartRow:
    graph: WireTerm = None


@dataclass(slots=True)
class GraphEndRow:
    pass


@dataclass(slots=True)
class NameEntry:
    id: int
    value: str


@dataclass(slots=True)
class PrefixEntry:
    id: int
    value: str


@dataclass(slots=True)
class DatatypeEntry:
    id: int
    value: str


Row = Union[StreamOptions, TripleRow, QuadRow, GraphStartRow, GraphEndRow, NameEntry, PrefixEntry, DatatypeEntry]
EntryRow = Union[NameEntry, PrefixEntry, DatatypeEntry]


@dataclass
class Frame:
    rows: list = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


ROW_OPTIONS = 1
ROW_TRIPLE = 2
ROW_QUAD = 3
ROW_GRAPH_START = 4
ROW_GRAPH_END = 5
ROW_NAME = 7
ROW_PREFIX = 8
ROW_DATATYPE = 9

_ENTRY_FIELD = {NameEntry: ROW_NAME, PrefixEntry: ROW_PREFIX, DatatypeEntry: ROW_DATATYPE}
_ENTRY_CLASS = {ROW_NAME: NameEntry, ROW_PREFIX: PrefixEntry, ROW_DATATYPE: DatatypeEntry}


# -- encoding -----------------------------------------------------------------

def _vb(value: int) -> bytes:
    if value < 16384:
        return VARINT_CACHE[value]
    return encode_varint(value)


def _ld(key: int, payload: bytes) -> bytes:
    """Length-delimited field with a precomputed single-byte key."""
    n = len(payload)
    if n < 16384:
        return VARINT_CACHE[key] + VARINT_CACHE[n] + payload
    if n >= MAX_PAYLOAD_LENGTH:
        raise WireError(WireErrorKind.LENGTH_OVERFLOW, 0, f"payload of {n} bytes")
    return VARINT_CACHE[key] + encode_varint(n) + payload


def _vf(key: int, value: int) -> bytes:
    if value == 0:
        return b""
    return VARINT_CACHE[key] + _vb(value)


def _key(number: int, kind: int) -> int:
    return (number << 3) | kind


def encode_wire_iri(prefix_id: int, name_id: int) -> bytes:
    """Body of an Iri message."""
    return _vf(0x08, prefix_id) + _vf(0x10, name_id)


def encode_wire_literal(lit: WireLiteral) -> bytes:
    out = b""
    if lit.lexical:
        out = _ld(0x0A, lit.lexical.encode("utf-8"))
    if lit.langtag:
        out += _ld(0x12, lit.langtag.encode("utf-8"))
    if lit.datatype_id:
        out += _vf(0x18, lit.datatype_id)
    return out


# per-position field numbers for (iri, bnode, literal, default graph)
_SUBJECT_FIELDS = (1, 2, None, None)
_PREDICATE_FIELDS = (3, None, None, None)
_OBJECT_FIELDS = (4, 5, 6, None)
_QUAD_GRAPH_FIELDS = (7, 8, None, 9)
_GRAPH_START_FIELDS = (1, 2, None, 3)


def _encode_term(term: WireTerm, fields: tuple, where: str) -> bytes:
    if term is None:
        return b""
    cls = term.__class__
    if cls is WireIri:
        number, body = fields[0], encode_wire_iri(term.prefix_id, term.name_id)
    elif cls is WireBnode:
        number, body = fields[1], term.label.encode("utf-8")
    elif cls is WireLiteral:
        if term.langtag and term.datatype_id:
            raise ValueError("a wire literal sets at most one of langtag / datatype_id")
        number, body = fields[2], encode_wire_literal(term)
    elif cls is WireDefaultGraph:
        number, body = fields[3], b""
    else:
        raise TypeError(f"not a wire term: {term!r}")
    if number is None:
        raise ValueError(f"{cls.__name__} is not allowed in the {where} position")
    return _ld(_key(number, 2), body)


def encode_options(opts: StreamOptions) -> bytes:
    out = b""
    if opts.stream_name:
        out += _ld(0x0A, opts.stream_name.encode("utf-8"))
    out += _vf(0x10, int(opts.physical_type))
    out += _vf(0x18, int(opts.logical_type))
    out += _vf(0x20, opts.max_name_table)
    out += _vf(0x28, opts.max_prefix_table)
    out += _vf(0x30, opts.max_datatype_table)
    out += _vf(0x38, opts.version)
    return out


def encode_entry(entry_id: int, value: str) -> bytes:
    body = _vf(0x08, entry_id)
    if value:
        body += _ld(0x12, value.encode("utf-8"))
    return body


def encode_row(row: Row) -> bytes:
    """Encode one Row message (the bytes inside the frame's row field)."""
    cls = row.__class__
    if cls is TripleRow:
        body = (
            _encode_term(row.subject, _SUBJECT_FIELDS, "subject")
            + _encode_term(row.predicate, _PREDICATE_FIELDS, "predicate")
            + _encode_term(row.object, _OBJECT_FIELDS, "object")
        )
        return _ld(_key(ROW_TRIPLE, 2), body)
    if cls is QuadRow:
        body = (
            _encode_term(row.subject, _SUBJECT_FIELDS, "subject")
            + _encode_term(row.predicate, _PREDICATE_FIELDS, "predicate")
            + _encode_term(row.object, _OBJECT_FIELDS, "object")
            + _encode_term(row.graph, _QUAD_GRAPH_FIELDS, "graph")
        )
        return _ld(_key(ROW_QUAD, 2), body)
    entry_field = _ENTRY_FIELD.get(cls)
    if entry_field is not None:
        return _ld(_key(entry_field, 2), encode_entry(row.id, row.value))
    if cls is StreamOptions:
        return _ld(_key(ROW_OPTIONS, 2), encode_options(row))
    if cls is GraphStartRow:
        if row.graph is None:
            raise ValueError("graph start row needs a graph name")
        return _ld(_key(ROW_GRAPH_START, 2), _encode_term(row.graph, _GRAPH_START_FIELDS, "graph"))
    if cls is GraphEndRow:
        return _ld(_key(ROW_GRAPH_END, 2), b"")
    raise TypeError(f"not a row: {row!r}")


def frame_row_field(row_bytes: bytes) -> bytes:
    """Wrap an encoded Row as field 1 of the Frame message."""
    return _ld(0x0A, row_bytes)


def encode_frame(frame: Frame | list) -> bytes:
    rows = frame.rows if isinstance(frame, Frame) else frame
    return b"".join([_ld(0x0A, encode_row(r)) for r in rows])


# -- decoding -----------------------------------------------------------------

def _read_varint(data: bytes, pos: int, end: int) -> tuple[int, int]:
    """Varint at *pos* bounded by *end*; returns (value, new_pos)."""
    if pos >= end:
        raise WireError(WireErrorKind.TRUNCATED_INPUT, pos, "varint runs past end of message")
    b = data[pos]
    if b < 0x80:
        return b, pos + 1
    start = pos
    value = 0
    shift = 0
    while True:
        if pos >= end:
            raise WireError(WireErrorKind.TRUNCATED_INPUT, pos, "varint runs past end of message")
        if pos - start >= 10:
            raise WireError(WireErrorKind.OVERLONG_VARINT, start)
        b = data[pos]
        value |= (b & 0x7F) << shift
        pos += 1
        if b < 0x80:
            if value > MAX_UINT64:
                raise WireError(WireErrorKind.OVERLONG_VARINT, start, "value exceeds 64 bits")
            return value, pos
        shift += 7


def _read_field(data: bytes, pos: int, end: int):
    """Read one field header and value. Returns (number, kind, value, new_pos).

    For length-delimited fields *value* is a (start, stop) pair.
    """
    key, pos = _read_varint(data, pos, end)
    kind = key & 7
    number = key >> 3
    if kind == 0:
        value, pos = _read_varint(data, pos, end)
        return number, 0, value, pos
    if kind == 2:
        length, pos = _read_varint(data, pos, end)
        stop = pos + length
        if stop > end:
            raise WireError(WireErrorKind.TRUNCATED_INPUT, pos, f"field declares {length} bytes, {end - pos} left")
        return number, 2, (pos, stop), stop
    raise WireError(WireErrorKind.UNKNOWN_WIRE_KIND, pos, f"wire kind {kind}")


def _utf8(data: bytes, span: tuple[int, int]) -> str:
    try:
        return data[span[0]:span[1]].decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedRow(f"invalid UTF-8 in string field: {exc}") from None


def decode_wire_iri(data: bytes, pos: int, end: int) -> WireIri:
    prefix_id = name_id = 0
    while pos < end:
        number, kind, value, pos = _read_field(data, pos, end)
        if number == 1 and kind == 0:
            prefix_id = value
        elif number == 2 and kind == 0:
            name_id = value
    return WireIri(prefix_id, name_id)


def decode_wire_literal(data: bytes, pos: int, end: int) -> WireLiteral:
    lexical = langtag = ""
    datatype_id = 0
    while pos < end:
        number, kind, value, pos = _read_field(data, pos, end)
        if number == 1 and kind == 2:
            lexical = _utf8(data, value)
        elif number == 2 and kind == 2:
            langtag = _utf8(data, value)
        elif number == 3 and kind == 0:
            datatype_id = value
    if langtag and datatype_id:
        raise MalformedRow("literal sets both langtag and datatype_id")
    return WireLiteral(lexical, langtag, datatype_id)


# field number -> (slot index, term kind) for statement rows
_IRI, _BNODE, _LIT, _DEFAULT = range(4)
_STATEMENT_SLOTS = {
    1: (0, _IRI), 2: (0, _BNODE),
    3: (1, _IRI),
    4: (2, _IRI), 5: (2, _BNODE), 6: (2, _LIT),
    7: (3, _IRI), 8: (3, _BNODE), 9: (3, _DEFAULT),
}
_GRAPH_START_SLOTS = {1: (0, _IRI), 2: (0, _BNODE), 3: (0, _DEFAULT)}


def _decode_slots(data: bytes, pos: int, end: int, slots: dict, width: int, max_field: int) -> list:
    terms = [None] * width
    while pos < end:
        number, kind, value, pos = _read_field(data, pos, end)
        if number > max_field or kind != 2:
            continue
        slot = slots.get(number)
        if slot is None:
            continue
        index, term_kind = slot
        if terms[index] is not None:
            raise MalformedRow(f"position {index} is set more than once")
        if term_kind == _IRI:
            terms[index] = decode_wire_iri(data, value[0], value[1])
        elif term_kind == _BNODE:
            terms[index] = WireBnode(_utf8(data, value))
        elif term_kind == _LIT:
            terms[index] = decode_wire_literal(data, value[0], value[1])
        else:
            terms[index] = WIRE_DEFAULT_GRAPH
    return terms


def decode_options(data: bytes, pos: int = 0, end: int | None = None) -> StreamOptions:
    if end is None:
        end = len(data)
    vals = {"stream_name": "", "physical_type": 0, "logical_type": 0, "max_name_table": 0,
            "max_prefix_table": 0, "max_datatype_table": 0, "version": 0}
    names = {2: "physical_type", 3: "logical_type", 4: "max_name_table", 5: "max_prefix_table",
             6: "max_datatype_table", 7: "version"}
    while pos < end:
        number, kind, value, pos = _read_field(data, pos, end)
        if number == 1 and kind == 2:
            vals["stream_name"] = _utf8(data, value)
        elif number in names and kind == 0:
            vals[names[number]] = value
    try:
        vals["physical_type"] = PhysicalType(vals["physical_type"])
        vals["logical_type"] = LogicalType(vals["logical_type"])
    except ValueError as exc:
        raise MalformedRow(f"options: {exc}") from None
    return StreamOptions(**vals)


def decode_entry(cls, data: bytes, pos: int, end: int):
    entry_id = 0
    value = ""
    while pos < end:
        number, kind, v, pos = _read_field(data, pos, end)
        if number == 1 and kind == 0:
            entry_id = v
        elif number == 2 and kind == 2:
            value = _utf8(data, v)
    return cls(entry_id, value)


def _decode_row_span(data: bytes, pos: int, end: int) -> Row | None:
    found = None
    while pos < end:
        number, kind, value, pos = _read_field(data, pos, end)
        if kind != 2 or number not in _KNOWN_ROW_FIELDS:
            continue
        if found is not None:
            raise MalformedRow("row sets more than one variant")
        found = (number, value)
    if found is None:
        return None
    number, (start, stop) = found
    if number == ROW_TRIPLE:
        return TripleRow(*_decode_slots(data, start, stop, _STATEMENT_SLOTS, 3, 6))
    if number == ROW_QUAD:
        return QuadRow(*_decode_slots(data, start, stop, _STATEMENT_SLOTS, 4, 9))
    if number in _ENTRY_CLASS:
        return decode_entry(_ENTRY_CLASS[number], data, start, stop)
    if number == ROW_OPTIONS:
        return decode_options(data, start, stop)
    if number == ROW_GRAPH_START:
        (graph,) = _decode_slots(data, start, stop, _GRAPH_START_SLOTS, 1, 3)
        if graph is None:
            raise MalformedRow("graph start row without a graph name")
        return GraphStartRow(graph)
    return GraphEndRow()


_KNOWN_ROW_FIELDS = frozenset((ROW_OPTIONS, ROW_TRIPLE, ROW_QUAD, ROW_GRAPH_START, ROW_GRAPH_END,
                               ROW_NAME, ROW_PREFIX, ROW_DATATYPE))


def decode_row(data: bytes) -> Row | None:
    """Decode one Row message. Returns None when it holds no known variant."""
    return _decode_row_span(data, 0, len(data))


def iter_row_spans(payload: bytes):
    """Yield (start, stop) of each row message inside a frame payload."""
    pos = 0
    end = len(payload)
    while pos < end:
        number, kind, value, pos = _read_field(payload, pos, end)
        if number == 1 and kind == 2:
            yield value


def decode_frame(payload: bytes) -> Frame:
    rows = []
    for start, stop in iter_row_spans(payload):
        row = _decode_row_span(payload, start, stop)
        if row is not None:
            rows.append(row)
    return Frame(rows)
