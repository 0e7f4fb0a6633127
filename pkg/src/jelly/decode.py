"""Streaming decoder: frames in, events out.

Mirrors the encoder's table and delta state. Two entry points share that
state: :meth:`Decoder.decode_frame_events` walks already-parsed
:class:`~jelly.messages.Frame` objects, and :meth:`Decoder.decode_payload`
parses frame bytes directly (the path used for files).
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass
from typing import BinaryIO, Iterator

from .errors import DecodeError, DecodeErrorKind, MalformedRow, WireError, WireErrorKind
from .messages import (
    VERSION,
    DatatypeEntry,
    Frame,
    GraphEndRow,
    GraphStartRow,
    LogicalType,
    NameEntry,
    PhysicalType,
    PrefixEntry,
    QuadRow,
    StreamOptions,
    TripleRow,
    WireBnode,
    WireDefaultGraph,
    WireIri,
    WireLiteral,
    _decode_row_span,
)
from .terms import (
    DEFAULT_GRAPH,
    BlankNode,
    GraphEnd,
    GraphStart,
    EndOfGroup,
    Iri,
    Literal,
    Quad,
    Triple,
    XSD_STRING,
    _IRI_FORBIDDEN,
    trusted_bnode,
    trusted_iri,
    trusted_literal,
    valid_bnode_label,
    valid_lang_tag,
)
from .wire import MAX_UINT64, BlockReader

log = logging.getLogger(__name__)

_E = DecodeErrorKind
_new_iri = trusted_iri
_new_bnode = trusted_bnode
_new_literal = trusted_literal
_tuple_new = tuple.__new__

PREFIX, NAME, DATATYPE = 0, 1, 2
_TABLE_NAMES = ("prefix", "name", "datatype")


@dataclass(frozen=True)
class DecoderLimits:
    """Largest table sizes a consumer is willing to allocate."""

    max_name_table: int | None = None
    max_prefix_table: int | None = None
    max_datatype_table: int | None = None


def _err(kind: DecodeErrorKind, detail: str = "") -> DecodeError:
    return DecodeError(kind, detail)


def _slow_varint(data: bytes, pos: int, end: int) -> tuple[int, int]:
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


def _utf8(data: bytes, start: int, stop: int) -> str:
    try:
        return data[start:stop].decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedRow(f"invalid UTF-8 in string field: {exc}") from None


def _skip(data: bytes, pos: int, end: int, key: int) -> int:
    """Skip the value of an unknown field whose key was already consumed."""
    kind = key & 7
    if kind == 0:
        return _slow_varint(data, pos, end)[1]
    if kind == 2:
        length, pos = _slow_varint(data, pos, end)
        if length > end - pos:
            raise WireError(WireErrorKind.TRUNCATED_INPUT, pos, f"field declares {length} bytes")
        return pos + length
    raise WireError(WireErrorKind.UNKNOWN_WIRE_KIND, pos, f"wire kind {kind}")


class Decoder:
    """Stateful single-stream decoder. Not thread-safe; serialize calls externally."""

    def __init__(self, limits: DecoderLimits | None = None, group_events: bool = False):
        self.limits = limits or DecoderLimits()
        self.group_events = group_events
        self.options: StreamOptions | None = None
        self.tables: list[list] = [[], [], []]
        self.last_set_id = [0, 0, 0]
        self.last_prefix_id = 0
        self.last_name_id = 0
        self.prev_subject = None
        self.prev_predicate = None
        self.prev_object = None
        self.prev_graph = None
        self.open_graph = None
        self.frame_index = 0
        self.row_index = 0
        self._seen_row = False
        self._physical = None
        self._quads = False
        # name id -> (prefix id, Iri); cleared when a prefix is overwritten
        self._iri_cache: list = []

    # -- table state --------------------------------------------------------

    def _set_entry(self, table: int, wire_id: int, value: str) -> None:
        if self.options is None:
            raise _err(_E.NO_OPTIONS_FIRST, "entry row before the options row")
        entry_id = self.last_set_id[table] + 1 if wire_id == 0 else wire_id
        values = self.tables[table]
        if entry_id >= len(values):
            raise _err(_E.ID_OUT_OF_RANGE, f"{_TABLE_NAMES[table]} id {entry_id} exceeds table size {len(values) - 1}")
        if _IRI_FORBIDDEN.search(value) is not None:
            raise MalformedRow(f"{_TABLE_NAMES[table]} entry {value!r} contains a character not allowed in IRIs")
        if table == DATATYPE and not value:
            raise MalformedRow("empty datatype IRI")
        values[entry_id] = value
        self.last_set_id[table] = entry_id
        if table == NAME:
            self._iri_cache[entry_id] = None
        elif table == PREFIX:
            self._iri_cache = [None] * len(self._iri_cache)

    def _iri(self, pid: int, nid: int) -> Iri:
        if pid == 0:
            pid = self.last_prefix_id
        else:
            self.last_prefix_id = pid
        if nid == 0:
            nid = self.last_name_id + 1
        self.last_name_id = nid
        cache = self._iri_cache
        if nid >= len(cache):
            raise _err(_E.ID_OUT_OF_RANGE, f"name id {nid} exceeds table size {len(cache) - 1}")
        cached = cache[nid]
        if cached is not None and cached[0] == pid:
            return cached[1]
        prefixes = self.tables[PREFIX]
        if pid == 0 or pid >= len(prefixes):
            raise _err(_E.ID_OUT_OF_RANGE, f"prefix id {pid} outside 1..{len(prefixes) - 1}")
        prefix = prefixes[pid]
        if prefix is None:
            raise _err(_E.UNSET_ID_REFERENCE, f"prefix id {pid} was never set")
        name = self.tables[NAME][nid]
        if name is None or nid == 0:
            raise _err(_E.UNSET_ID_REFERENCE, f"name id {nid} was never set")
        value = prefix + name
        if not value:
            raise MalformedRow("IRI resolves to the empty string")
        term = _new_iri(value)
        cache[nid] = (pid, term)
        return term

    def _literal(self, lexical: str, lang: str, dt: int) -> Literal:
        if lang:
            if dt:
                raise MalformedRow("literal sets both langtag and datatype_id")
            if not valid_lang_tag(lang):
                raise MalformedRow(f"invalid language tag {lang!r}")
            return _new_literal(lexical, lang, None)
        if dt:
            dts = self.tables[DATATYPE]
            if dt >= len(dts):
                raise _err(_E.ID_OUT_OF_RANGE, f"datatype id {dt} exceeds table size {len(dts) - 1}")
            datatype = dts[dt]
            if datatype is None:
                raise _err(_E.UNSET_ID_REFERENCE, f"datatype id {dt} was never set")
            if datatype == XSD_STRING:
                datatype = None
            return _new_literal(lexical, None, datatype)
        return _new_literal(lexical, None, None)

    def _bnode(self, label: str) -> BlankNode:
        if not valid_bnode_label(label):
            raise MalformedRow(f"invalid blank node label {label!r}")
        return _new_bnode(label)

    def _set_options(self, opts: StreamOptions) -> None:
        if self.options is not None:
            raise _err(_E.DUPLICATE_OPTIONS, "options row may only appear once, as the first row")
        if self._seen_row:
            raise _err(_E.NO_OPTIONS_FIRST, "options row is not the first row")
        if opts.version != VERSION:
            raise _err(_E.UNSUPPORTED_VERSION, f"stream version {opts.version}, expected {VERSION}")
        problems = opts.problems()
        if problems:
            raise MalformedRow("options: " + "; ".join(problems))
        lim = self.limits
        for label, declared, cap in (
            ("name", opts.max_name_table, lim.max_name_table),
            ("prefix", opts.max_prefix_table, lim.max_prefix_table),
            ("datatype", opts.max_datatype_table, lim.max_datatype_table),
        ):
            if cap is not None and declared > cap:
                raise _err(_E.LIMIT_EXCEEDED, f"stream declares a {label} table of {declared}, limit is {cap}")
        self.options = opts
        self._physical = opts.physical_type
        self._quads = opts.physical_type == PhysicalType.QUADS
        self.tables = [
            [None] * (opts.max_prefix_table + 1),
            [None] * (opts.max_name_table + 1),
            [None] * (opts.max_datatype_table + 1),
        ]
        self._iri_cache = [None] * (opts.max_name_table + 1)

    def _need_options(self) -> None:
        if self.options is None:
            raise _err(_E.NO_OPTIONS_FIRST, "first row of the stream is not an options row")

    # -- row-object path ----------------------------------------------------

    def _wire_term(self, wt, position: str):
        cls = wt.__class__
        if cls is WireIri:
            return self._iri(wt.prefix_id, wt.name_id)
        if cls is WireBnode:
            return self._bnode(wt.label)
        if cls is WireLiteral:
            return self._literal(wt.lexical, wt.langtag, wt.datatype_id)
        if cls is WireDefaultGraph:
            return DEFAULT_GRAPH
        raise MalformedRow(f"unexpected {cls.__name__} in {position} position")

    def _statement(self, s, p, o, g, quad: bool):
        if s is None:
            s = self.prev_subject
            if s is None:
                raise _err(_E.REPEAT_AT_STREAM_START, "subject repeats, but no statement precedes it")
        else:
            s = self._wire_term(s, "subject")
            if s.__class__ is Literal:
                raise MalformedRow("literal in subject position")
            self.prev_subject = s
        if p is None:
            p = self.prev_predicate
            if p is None:
                raise _err(_E.REPEAT_AT_STREAM_START, "predicate repeats, but no statement precedes it")
        else:
            if p.__class__ is not WireIri:
                raise MalformedRow("predicate must be an IRI")
            p = self._iri(p.prefix_id, p.name_id)
            self.prev_predicate = p
        if o is None:
            o = self.prev_object
            if o is None:
                raise _err(_E.REPEAT_AT_STREAM_START, "object repeats, but no statement precedes it")
        else:
            o = self._wire_term(o, "object")
            self.prev_object = o
        if not quad:
            return _tuple_new(Triple, (s, p, o))
        if g is None:
            g = self.prev_graph
            if g is None:
                raise _err(_E.REPEAT_AT_STREAM_START, "graph repeats, but no statement precedes it")
        else:
            g = self._wire_term(g, "graph")
            if g.__class__ is Literal:
                raise MalformedRow("literal in graph position")
            self.prev_graph = g
        return _tuple_new(Quad, (s, p, o, g))

    def apply_row(self, row):
        """Apply one row to the decoder state; return the event it yields, if any."""
        cls = row.__class__
        if cls is StreamOptions:
            self._set_options(row)
            self._seen_row = True
            return None
        self._need_options()
        self._seen_row = True
        if cls is NameEntry:
            self._set_entry(NAME, row.id, row.value)
            return None
        if cls is PrefixEntry:
            self._set_entry(PREFIX, row.id, row.value)
            return None
        if cls is DatatypeEntry:
            self._set_entry(DATATYPE, row.id, row.value)
            return None
        phys = self._physical
        if cls is TripleRow:
            if phys == PhysicalType.QUADS:
                raise _err(_E.PHYSICAL_TYPE_MISMATCH, "triple row in a QUADS stream")
            return self._statement(row.subject, row.predicate, row.object, None, False)
        if cls is QuadRow:
            if phys != PhysicalType.QUADS:
                raise _err(_E.PHYSICAL_TYPE_MISMATCH, f"quad row in a {phys.name} stream")
            return self._statement(row.subject, row.predicate, row.object, row.graph, True)
        if cls is GraphStartRow:
            if phys != PhysicalType.GRAPHS:
                raise _err(_E.PHYSICAL_TYPE_MISMATCH, f"graph start row in a {phys.name} stream")
            if self.open_graph is not None:
                raise _err(_E.GRAPH_STATE_ERROR, "graph start while a graph is open")
            g = self._wire_term(row.graph, "graph")
            if g.__class__ is Literal:
                raise MalformedRow("literal as graph name")
            self.open_graph = g
            return GraphStart(g)
        if cls is GraphEndRow:
            if phys != PhysicalType.GRAPHS:
                raise _err(_E.PHYSICAL_TYPE_MISMATCH, f"graph end row in a {phys.name} stream")
            if self.open_graph is None:
                raise _err(_E.GRAPH_STATE_ERROR, "graph end without an open graph")
            self.open_graph = None
            return GraphEnd()
        raise TypeError(f"not a row: {row!r}")

    def _end_of_frame(self, events: list) -> None:
        self.frame_index += 1
        if self.group_events and self.options is not None and self.options.logical_type in (
            LogicalType.GRAPHS,
            LogicalType.DATASETS,
        ):
            events.append(EndOfGroup())

    def decode_frame_events(self, frame: Frame) -> list:
        events = []
        for index, row in enumerate(frame.rows):
            self.row_index = index
            try:
                event = self.apply_row(row)
            except DecodeError as exc:
                raise exc.locate(self.frame_index, index) from None
            if event is not None:
                events.append(event)
        self._end_of_frame(events)
        return events

    # -- bytes path -----------------------------------------------------------

    def decode_payload(self, data: bytes) -> list:
        """Decode one frame payload straight from bytes."""
        events = []
        pos = 0
        end = len(data)
        row_index = 0
        try:
            while pos < end:
                key = data[pos]
                pos += 1
                if key != 0x0A:
                    if key >= 0x80:
                        key, pos = _slow_varint(data, pos - 1, end)
                    pos = _skip(data, pos, end, key)
                    continue
                length = data[pos] if pos < end else 0x80
                if length < 0x80:
                    pos += 1
                else:
                    length, pos = _slow_varint(data, pos, end)
                if length > end - pos:
                    raise WireError(WireErrorKind.TRUNCATED_INPUT, pos, f"row declares {length} bytes, {end - pos} left")
                rend = pos + length
                self.row_index = row_index
                if length >= 2:
                    # Fast path: a row holding one statement or entry field whose
                    # length fits in one or two varint bytes and fills the row.
                    rk = data[pos]
                    blen = data[pos + 1]
                    body = pos + 2
                    if blen >= 0x80 and length >= 3 and data[pos + 2] < 0x80:
                        blen = (blen & 0x7F) | (data[pos + 2] << 7)
                        body = pos + 3
                    if blen < 0x4000 and body + blen == rend:
                        if rk == 0x12 or rk == 0x1A:
                            if self.options is None:
                                raise _err(_E.NO_OPTIONS_FIRST, "first row of the stream is not an options row")
                            self._seen_row = True
                            events.append(self._statement_bytes(data, body, rend, rk == 0x1A))
                            pos = rend
                            row_index += 1
                            continue
                        if rk == 0x3A or rk == 0x42 or rk == 0x4A:
                            self._entry_bytes(data, body, rend, (rk >> 3) - 7)
                            pos = rend
                            row_index += 1
                            continue
                row = _decode_row_span(data, pos, rend)
                if row is not None:
                    event = self.apply_row(row)
                    if event is not None:
                        events.append(event)
                row_index += 1
                pos = rend
        except DecodeError as exc:
            raise exc.locate(self.frame_index, row_index) from None
        self._end_of_frame(events)
        return events

    def _entry_bytes(self, data: bytes, pos: int, end: int, which: int) -> None:
        # which: 0 name, 1 prefix, 2 datatype (row field order)
        if self.options is None:
            raise _err(_E.NO_OPTIONS_FIRST, "first row of the stream is not an options row")
        self._seen_row = True
        entry_id = 0
        value = ""
        while pos < end:
            k = data[pos]
            pos += 1
            if k == 0x08:
                v = data[pos] if pos < end else 0x80
                if v < 0x80:
                    entry_id = v
                    pos += 1
                else:
                    entry_id, pos = _slow_varint(data, pos, end)
            elif k == 0x12:
                n = data[pos] if pos < end else 0x80
                if n < 0x80:
                    pos += 1
                else:
                    n, pos = _slow_varint(data, pos, end)
                if n > end - pos:
                    raise WireError(WireErrorKind.TRUNCATED_INPUT, pos, f"string declares {n} bytes")
                value = _utf8(data, pos, pos + n)
                pos += n
            else:
                if k >= 0x80:
                    k, pos = _slow_varint(data, pos - 1, end)
                pos = _skip(data, pos, end, k)
        self._set_entry((NAME, PREFIX, DATATYPE)[which], entry_id, value)

    def _statement_bytes(self, data: bytes, pos: int, end: int, quad: bool):
        if quad:
            if not self._quads:
                raise _err(_E.PHYSICAL_TYPE_MISMATCH, f"quad row in a {self._physical.name} stream")
        elif self._quads:
            raise _err(_E.PHYSICAL_TYPE_MISMATCH, "triple row in a QUADS stream")

        # Collect wire values first, resolve in position order afterwards so
        # that delta state advances s, p, o, g regardless of field order.
        # kind: 0 absent, 1 iri, 2 bnode, 3 literal, 4 default graph
        sk = pk = ok = gk = 0
        s_pid = s_nid = p_pid = p_nid = o_pid = o_nid = g_pid = g_nid = dt = 0
        s_label = o_label = g_label = lex = lang = ""
        max_field = 0x4A if quad else 0x32
        while pos < end:
            k = data[pos]
            if k >= 0x80 or k & 7 != 2 or k > max_field:
                key, pos = _slow_varint(data, pos, end)
                pos = _skip(data, pos, end, key)
                continue
            pos += 1
            n = data[pos] if pos < end else 0x80
            if n < 0x80:
                pos += 1
            else:
                n, pos = _slow_varint(data, pos, end)
            if n > end - pos:
                raise WireError(WireErrorKind.TRUNCATED_INPUT, pos, f"field declares {n} bytes, {end - pos} left")
            stop = pos + n
            slot = k >> 3
            if slot == 1 or slot == 3 or slot == 4 or slot == 7:
                pid = nid = 0
                q = pos
                while q < stop:
                    fk = data[q]
                    q += 1
                    if fk == 0x08 or fk == 0x10:
                        v = data[q] if q < stop else 0x80
                        if v < 0x80:
                            q += 1
                        elif q + 1 < stop and data[q + 1] < 0x80:
                            v = (v & 0x7F) | (data[q + 1] << 7)
                            q += 2
                        else:
                            v, q = _slow_varint(data, q, stop)
                        if fk == 0x08:
                            pid = v
                        else:
                            nid = v
                    else:
                        if fk >= 0x80:
                            fk, q = _slow_varint(data, q - 1, stop)
                        q = _skip(data, q, stop, fk)
                if slot == 1:
                    if sk:
                        raise MalformedRow("subject set more than once")
                    sk, s_pid, s_nid = 1, pid, nid
                elif slot == 3:
                    if pk:
                        raise MalformedRow("predicate set more than once")
                    pk, p_pid, p_nid = 1, pid, nid
                elif slot == 4:
                    if ok:
                        raise MalformedRow("object set more than once")
                    ok, o_pid, o_nid = 1, pid, nid
                else:
                    if gk:
                        raise MalformedRow("graph set more than once")
                    gk, g_pid, g_nid = 1, pid, nid
            elif slot == 2 or slot == 5 or slot == 8:
                label = _utf8(data, pos, stop)
                if slot == 2:
                    if sk:
                        raise MalformedRow("subject set more than once")
                    sk, s_label = 2, label
                elif slot == 5:
                    if ok:
                        raise MalformedRow("object set more than once")
                    ok, o_label = 2, label
                else:
                    if gk:
                        raise MalformedRow("graph set more than once")
                    gk, g_label = 2, label
            elif slot == 6:
                if ok:
                    raise MalformedRow("object set more than once")
                lex = lang = ""
                dt = 0
                q = pos
                while q < stop:
                    fk = data[q]
                    q += 1
                    if fk == 0x0A or fk == 0x12:
                        m = data[q] if q < stop else 0x80
                        if m < 0x80:
                            q += 1
                        else:
                            m, q = _slow_varint(data, q, stop)
                        if m > stop - q:
                            raise WireError(WireErrorKind.TRUNCATED_INPUT, q, f"string declares {m} bytes")
                        if fk == 0x0A:
                            lex = _utf8(data, q, q + m)
                        else:
                            lang = _utf8(data, q, q + m)
                        q += m
                    elif fk == 0x18:
                        v = data[q] if q < stop else 0x80
                        if v < 0x80:
                            q += 1
                        else:
                            v, q = _slow_varint(data, q, stop)
                        dt = v
                    else:
                        if fk >= 0x80:
                            fk, q = _slow_varint(data, q - 1, stop)
                        q = _skip(data, q, stop, fk)
                ok = 3
            elif slot == 9:
                if gk:
                    raise MalformedRow("graph set more than once")
                gk = 4
            pos = stop

        if sk == 1:
            s = self.prev_subject = self._iri(s_pid, s_nid)
        elif sk == 2:
            s = self.prev_subject = self._bnode(s_label)
        else:
            s = self.prev_subject
            if s is None:
                raise _err(_E.REPEAT_AT_STREAM_START, "subject repeats, but no statement precedes it")
        if pk:
            p = self.prev_predicate = self._iri(p_pid, p_nid)
        else:
            p = self.prev_predicate
            if p is None:
                raise _err(_E.REPEAT_AT_STREAM_START, "predicate repeats, but no statement precedes it")
        if ok == 1:
            o = self.prev_object = self._iri(o_pid, o_nid)
        elif ok == 3:
            o = self.prev_object = self._literal(lex, lang, dt)
        elif ok == 2:
            o = self.prev_object = self._bnode(o_label)
        else:
            o = self.prev_object
            if o is None:
                raise _err(_E.REPEAT_AT_STREAM_START, "object repeats, but no statement precedes it")
        if not quad:
            return _tuple_new(Triple, (s, p, o))
        if gk == 1:
            g = self.prev_graph = self._iri(g_pid, g_nid)
        elif gk == 2:
            g = self.prev_graph = self._bnode(g_label)
        elif gk == 4:
            g = self.prev_graph = DEFAULT_GRAPH
        else:
            g = self.prev_graph
            if g is None:
                raise _err(_E.REPEAT_AT_STREAM_START, "graph repeats, but no statement precedes it")
        return _tuple_new(Quad, (s, p, o, g))

    def finish(self) -> None:
        if self.open_graph is not None:
            log.warning("stream ended with graph %r still open", self.open_graph)


def new_decoder(limits: DecoderLimits | None = None, group_events: bool = False) -> Decoder:
    return Decoder(limits, group_events)


def _as_stream(source) -> BinaryIO:
    if isinstance(source, (bytes, bytearray, memoryview)):
        return io.BytesIO(bytes(source))
    return source


def iter_frames(source) -> Iterator[bytes]:
    """Yield raw frame payloads from a ``.jelly`` byte source, one block at a time."""
    yield from BlockReader(_as_stream(source))


def decode_file(source, limits: DecoderLimits | None = None, group_events: bool = False) -> Iterator:
    """Lazily yield the events of a ``.jelly`` stream (bytes or binary file)."""
    decoder = Decoder(limits, group_events)
    reader = BlockReader(_as_stream(source))
    while True:
        payload = reader.read_block()
        if payload is None:
            break
        yield from decoder.decode_payload(payload)
    decoder.finish()


def decode_statements(source, limits: DecoderLimits | None = None) -> list:
    """All statements of a stream, without graph boundary events."""
    return [e for e in decode_file(source, limits) if e.__class__ is Triple or e.__class__ is Quad]
