"""Streaming encoder: events in, frame payloads out.

The encoder keeps three LRU lookup tables (IRI prefixes, IRI names,
datatypes) and writes ids as deltas so that the common cases become zero
and vanish from the wire:

* an IRI's prefix id is 0 when it repeats the previous IRI's prefix id;
* an IRI's name id is 0 when it is the previous IRI's name id plus one;
* an entry row's id is 0 when it is that table's previous entry id plus one.

A statement position equal to the same position of the previous statement
is left out entirely. Frame payloads are returned as ``bytes``; wrap them
with :func:`jelly.wire.delimited_block` (or use :class:`JellyWriter`) to
produce a file.
"""

from __future__ import annotations

from array import array
from typing import BinaryIO, Iterable

from .errors import EncoderSealed, GraphStateError, InvalidOptions, PhysicalTypeMismatch
from .messages import PhysicalType, StreamOptions, encode_row
from .terms import BlankNode, DefaultGraph, EndOfGroup, GraphEnd, GraphStart, Iri, Literal, Quad, Triple
from .wire import VARINT_CACHE, encode_varint, write_delimited_block

DEFAULT_ROWS_PER_FRAME = 256

_VC = VARINT_CACHE


def _vb(value: int) -> bytes:
    if value < 16384:
        return _VC[value]
    return encode_varint(value)


def _ld(key_bytes: bytes, payload: bytes) -> bytes:
    n = len(payload)
    if n < 16384:
        return key_bytes + _VC[n] + payload
    return key_bytes + encode_varint(n) + payload


def split_iri(iri: str) -> tuple[str, str]:
    """Split after the last '#' or '/'; the delimiter stays with the prefix."""
    cut = max(iri.rfind("#"), iri.rfind("/")) + 1
    return iri[:cut], iri[cut:]


class LookupTable:
    """Fixed-capacity value -> id map with least-recently-used eviction.

    Ids run from 1 to ``capacity``. Fresh ids are handed out in increasing
    order until the table is full; after that, a new value takes over the id
    of the least recently used one.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("lookup table capacity must be positive")
        self.capacity = capacity
        self.entries: dict[str, int] = {}
        self.next_free = 1
        self.last_set_id = 0
        # Recency order as a circular doubly linked list over ids, with id 0
        # as the sentinel: _next[0] is the least recently used id and
        # _prev[0] the most recently used one.
        self._values: list = [None] * (capacity + 1)
        self._prev = array("i", bytes(4 * (capacity + 1)))
        self._next = array("i", bytes(4 * (capacity + 1)))

    def __len__(self):
        return len(self.entries)

    def __contains__(self, value):
        return value in self.entries

    def lookup(self, value: str) -> int:
        """The id of *value*, marked most recently used; 0 when absent."""
        found = self.entries.get(value)
        if found is None:
            return 0
        fid = found
        prev = self._prev
        if prev[0] != fid:
            nxt = self._next
            before = prev[fid]
            after = nxt[fid]
            nxt[before] = after
            prev[after] = before
            last = prev[0]
            nxt[last] = fid
            prev[fid] = last
            nxt[fid] = 0
            prev[0] = fid
        return fid

    def insert(self, value: str) -> int:
        """Add an absent *value*, evicting the least recently used one if full."""
        prev = self._prev
        nxt = self._next
        if self.next_free <= self.capacity:
            new_id = self.next_free
            self.next_free += 1
        else:
            new_id = nxt[0]
            after = nxt[new_id]
            nxt[0] = after
            prev[after] = 0
            del self.entries[self._values[new_id]]
        self._values[new_id] = value
        self.entries[value] = new_id
        last = prev[0]
        nxt[last] = new_id
        prev[new_id] = last
        nxt[new_id] = 0
        prev[0] = new_id
        return new_id

    def get_or_insert(self, value: str) -> tuple[int, bool]:
        found = self.lookup(value)
        if found:
            return found, False
        return self.insert(value), True

    def entry_delta(self, entry_id: int) -> int:
        """Wire id for an entry row setting *entry_id*; updates last_set_id."""
        wire = 0 if entry_id == self.last_set_id + 1 else entry_id
        self.last_set_id = entry_id
        return wire


# Row-level keys, frame-level wrapper and term field keys.
_FRAME_ROW = b"\x0a"
_ROW_OPTIONS = b"\x0a"
_ROW_TRIPLE = b"\x12"
_ROW_QUAD = b"\x1a"
_ROW_GRAPH_START = b"\x22"
_ROW_GRAPH_END = b"\x2a"
_ROW_NAME = b"\x3a"
_ROW_PREFIX = b"\x42"
_ROW_DATATYPE = b"\x4a"

_S_IRI, _S_BNODE = 0x0A, b"\x12"
_P_IRI = 0x1A
_O_IRI, _O_BNODE, _O_LIT = 0x22, b"\x2a", b"\x32"
_G_IRI, _G_BNODE, _G_DEFAULT = 0x3A, b"\x42", b"\x4a\x00"
_GS_IRI, _GS_BNODE, _GS_DEFAULT = 0x0A, b"\x12", b"\x1a\x00"

# Iri field headers by field number and body length (the body is at most
# two 5-byte varints plus their keys).
_IRI_HEAD = [[bytes((number << 3 | 2, n)) for n in range(23)] for number in range(8)]

# Encoded prefix_id / name_id fields for ids below _ID_FIELD_CACHE.
_ID_FIELD_CACHE = 4096
_PID_FIELD = [b"\x08" + _VC[i] for i in range(_ID_FIELD_CACHE)]
_NID_FIELD = [b"\x10" + _VC[i] for i in range(_ID_FIELD_CACHE)]
_DID_FIELD = [b"\x18" + _VC[i] for i in range(_ID_FIELD_CACHE)]

# Frame-row wrapper plus statement-row header, by statement body length.
_HEAD_CACHE_SIZE = 2048


def _row_heads(row_key: bytes) -> list:
    out = []
    for n in range(_HEAD_CACHE_SIZE):
        inner = row_key + _VC[n]
        out.append(_FRAME_ROW + _VC[len(inner) + n] + inner)
    return out


_TRIPLE_HEAD = _row_heads(_ROW_TRIPLE)
_QUAD_HEAD = _row_heads(_ROW_QUAD)
_LIT_HEAD = [_O_LIT + _VC[n] for n in range(_HEAD_CACHE_SIZE)]


def _same(a, b) -> bool:
    """Term equality, with the common cases decided without a method call."""
    if a is b:
        return True
    cls = a.__class__
    if cls is not b.__class__:
        return False
    if cls is Iri:
        ia = a
        ib = b
        return ia.value == ib.value
    return a == b


_STATEMENT_TYPES = {
    PhysicalType.TRIPLES: Triple,
    PhysicalType.QUADS: Quad,
    PhysicalType.GRAPHS: Triple,
}


class Encoder:
    """Stateful single-stream encoder. Not thread-safe; serialize calls externally."""

    def __init__(self, options: StreamOptions | None = None, rows_per_frame: int = DEFAULT_ROWS_PER_FRAME):
        options = StreamOptions() if options is None else options
        options.validate()
        if rows_per_frame < 1:
            raise InvalidOptions(f"rows_per_frame must be >= 1, got {rows_per_frame}")
        self.options = options
        self.rows_per_frame = rows_per_frame
        self.prefix_table = LookupTable(options.max_prefix_table)
        self.name_table = LookupTable(options.max_name_table)
        self.datatype_table = LookupTable(options.max_datatype_table)
        self.last_prefix_id = 0
        self.last_name_id = 0
        self.prev_subject = None
        self.prev_predicate = None
        self.prev_object = None
        self.prev_graph = None
        self.open_graph = None
        self.sealed = False
        self._statement_type = _STATEMENT_TYPES[options.physical_type]
        self._grouped = options.physical_type == PhysicalType.GRAPHS
        # bounded memo of IRI splits; cleared when full
        self._splits: dict[str, tuple[str, str]] = {}
        self._splits_limit = 4 * options.max_name_table + 1024
        # only tiny prefix tables can be overrun by the IRIs of one statement
        self._prefix_guard = options.max_prefix_table < 4
        self._flat_iris = False
        # Pieces of the frame being built, joined once when the frame is cut,
        # and the number of complete rows among them.
        self._pieces: list[bytes] = [_ld(_FRAME_ROW, encode_row(options))]
        self._nrows = 1
        # Frames cut but not yet handed to the caller.
        self._ready: list[bytes] = []
        self.frames_emitted = 0
        if rows_per_frame == 1:
            self._cut()

    # -- table plumbing -----------------------------------------------------

    def _cut(self) -> None:
        self._ready.append(b"".join(self._pieces))
        self._pieces = []
        self._nrows = 0
        self.frames_emitted += 1

    def _row_done(self) -> None:
        self._nrows += 1
        if self._nrows >= self.rows_per_frame:
            self._cut()

    def _take_ready(self) -> list[bytes]:
        ready = self._ready
        if ready:
            self._ready = []
        return ready

    def _entry(self, row_key: bytes, table: LookupTable, entry_id: int, value: str) -> None:
        wire_id = table.entry_delta(entry_id)
        if wire_id == 0:
            id_field = b""
        elif wire_id < _ID_FIELD_CACHE:
            id_field = _PID_FIELD[wire_id]
        else:
            id_field = b"\x08" + _vb(wire_id)
        data = value.encode("utf-8")
        n = len(data)
        if n:
            vlen = _vb(n)
            body = len(id_field) + 1 + len(vlen) + n
        else:
            body = len(id_field)
        blen = _vb(body)
        pieces = self._pieces
        pieces.append(_FRAME_ROW)
        pieces.append(_vb(1 + len(blen) + body))
        pieces.append(row_key)
        pieces.append(blen)
        pieces.append(id_field)
        if n:
            pieces.append(b"\x12")
            pieces.append(vlen)
            pieces.append(data)
        self._row_done()

    def _split(self, value: str) -> tuple[str, str]:
        if self._flat_iris:
            return "", value
        split = self._splits.get(value)
        if split is None:
            if len(self._splits) >= self._splits_limit:
                self._splits.clear()
            cut = max(value.rfind("#"), value.rfind("/")) + 1
            split = self._splits[value] = (value[:cut], value[cut:])
        return split

    def _iri(self, value: str, key: int, parts: list) -> int:
        """Emit any needed entry rows and append the encoded Iri field to parts.

        Returns the number of bytes appended.
        """
        split = self._split(value)
        prefix = split[0]
        name = split[1]

        table = self.prefix_table
        pid = table.lookup(prefix)
        if pid == 0:
            pid = table.insert(prefix)
            self._entry(_ROW_PREFIX, table, pid, prefix)
        table = self.name_table
        nid = table.lookup(name)
        if nid == 0:
            nid = table.insert(name)
            self._entry(_ROW_NAME, table, nid, name)

        heads = _IRI_HEAD[key >> 3]
        size = 0
        if pid != self.last_prefix_id:
            self.last_prefix_id = pid
            pf = _PID_FIELD[pid] if pid < _ID_FIELD_CACHE else b"\x08" + _vb(pid)
            size = len(pf)
        else:
            pf = None
        if nid != self.last_name_id + 1:
            nf = _NID_FIELD[nid] if nid < _ID_FIELD_CACHE else b"\x10" + _vb(nid)
            size += len(nf)
        else:
            nf = None
        self.last_name_id = nid
        head = heads[size]
        parts.append(head)
        if pf is not None:
            parts.append(pf)
        if nf is not None:
            parts.append(nf)
        return len(head) + size

    def _literal(self, lit: Literal, parts: list) -> int:
        """Append the encoded Literal field to parts; returns its size."""
        at = len(parts)
        parts.append(None)
        body = 0
        lex = lit.lexical
        if lex:
            data = lex.encode("utf-8")
            n = _vb(len(data))
            parts.append(b"\x0a")
            parts.append(n)
            parts.append(data)
            body = 1 + len(n) + len(data)
        if lit.language is not None:
            data = lit.language.encode("utf-8")
            n = _vb(len(data))
            parts.append(b"\x12")
            parts.append(n)
            parts.append(data)
            body += 1 + len(n) + len(data)
        elif lit.datatype is not None:
            table = self.datatype_table
            dt = lit.datatype
            did = table.lookup(dt)
            if did == 0:
                did = table.insert(dt)
                self._entry(_ROW_DATATYPE, table, did, dt)
            field = _DID_FIELD[did] if did < _ID_FIELD_CACHE else b"\x18" + _vb(did)
            parts.append(field)
            body += len(field)
        head = _LIT_HEAD[body] if body < _HEAD_CACHE_SIZE else _O_LIT + _vb(body)
        parts[at] = head
        return len(head) + body

    def _guard_prefixes(self, terms) -> None:
        # With fewer prefix slots than IRIs in the statement, a later IRI could
        # evict a prefix an earlier IRI still points at. Fall back to the
        # empty prefix for the whole statement when that could happen.
        self._flat_iris = False
        prefixes = set()
        for t in terms:
            if t.__class__ is Iri:
                prefixes.add(self._split(t.value)[0])
        self._flat_iris = len(prefixes) > self.prefix_table.capacity

    # -- public operations --------------------------------------------------

    def encode_statement(self, statement) -> list[bytes]:
        if self.sealed:
            raise EncoderSealed("encoder is finished")
        if statement.__class__ is not self._statement_type:
            raise PhysicalTypeMismatch(
                f"cannot write a {statement.__class__.__name__} into a {self.options.physical_type.name} stream"
            )
        if self._prefix_guard:
            pending = [t for t, prev in zip(statement, self._prev_tuple()) if t is not prev and t != prev]
            self._guard_prefixes(pending)

        s = statement[0]
        p = statement[1]
        o = statement[2]
        parts = [None]
        size = 0
        if not _same(s, self.prev_subject):
            if s.__class__ is Iri:
                si = s
                size = self._iri(si.value, _S_IRI, parts)
            else:
                field = _ld(_S_BNODE, s.label.encode("utf-8"))
                parts.append(field)
                size = len(field)
            self.prev_subject = s
        if not _same(p, self.prev_predicate):
            pi = p
            size += self._iri(pi.value, _P_IRI, parts)
            self.prev_predicate = p
        if not _same(o, self.prev_object):
            cls = o.__class__
            if cls is Iri:
                oi = o
                size += self._iri(oi.value, _O_IRI, parts)
            elif cls is Literal:
                size += self._literal(o, parts)
            else:
                field = _ld(_O_BNODE, o.label.encode("utf-8"))
                parts.append(field)
                size += len(field)
            self.prev_object = o
        if len(statement) == 4:
            g = statement[3]
            if not _same(g, self.prev_graph):
                field = self._graph_field(g, _G_IRI, _G_BNODE, _G_DEFAULT)
                parts.append(field)
                size += len(field)
                self.prev_graph = g
            heads = _QUAD_HEAD
            row_key = _ROW_QUAD
        else:
            heads = _TRIPLE_HEAD
            row_key = _ROW_TRIPLE
        self._flat_iris = False
        if size < _HEAD_CACHE_SIZE:
            parts[0] = heads[size]
        else:
            n = _vb(size)
            parts[0] = _FRAME_ROW + _vb(1 + len(n) + size) + row_key + n
        self._pieces.extend(parts)
        self._row_done()
        return self._take_ready()

    def _prev_tuple(self):
        return (self.prev_subject, self.prev_predicate, self.prev_object, self.prev_graph)

    def _graph_field(self, g, iri_key: int, bnode_key: bytes, default_field: bytes) -> bytes:
        cls = g.__class__
        if cls is Iri:
            parts = []
            self._iri(g.value, iri_key, parts)
            return b"".join(parts)
        if cls is BlankNode:
            return _ld(bnode_key, g.label.encode("utf-8"))
        if cls is DefaultGraph:
            return default_field
        raise TypeError(f"not a graph name: {g!r}")

    def signal_graph(self, event) -> list[bytes]:
        if self.sealed:
            raise EncoderSealed("encoder is finished")
        if not self._grouped:
            raise PhysicalTypeMismatch(f"graph boundaries need a GRAPHS stream, not {self.options.physical_type.name}")
        if event.__class__ is GraphStart:
            if self.open_graph is not None:
                raise GraphStateError("a graph is already open")
            if self._prefix_guard:
                self._flat_iris = False
            body = self._graph_field(event.graph, _GS_IRI, _GS_BNODE, _GS_DEFAULT)
            self.open_graph = event.graph
            self._pieces.append(_ld(_FRAME_ROW, _ld(_ROW_GRAPH_START, body)))
        elif event.__class__ is GraphEnd:
            if self.open_graph is None:
                raise GraphStateError("no open graph to end")
            self.open_graph = None
            self._pieces.append(_FRAME_ROW + b"\x02" + _ROW_GRAPH_END + b"\x00")
        else:
            raise TypeError(f"not a graph event: {event!r}")
        self._row_done()
        return self._take_ready()

    def add(self, event) -> list[bytes]:
        """Encode any stream event; returns the frames that became complete."""
        cls = event.__class__
        if cls is Triple or cls is Quad:
            return self.encode_statement(event)
        if cls is GraphStart or cls is GraphEnd:
            return self.signal_graph(event)
        if cls is EndOfGroup:
            frame = self.flush()
            return [] if frame is None else [frame]
        raise TypeError(f"not a stream event: {event!r}")

    def flush(self) -> bytes | None:
        if self.sealed:
            raise EncoderSealed("encoder is finished")
        if self._ready:
            # only an options frame cut at construction can still be waiting
            return self._ready.pop()
        if not self._nrows:
            return None
        self._cut()
        return self._ready.pop()

    def finish(self) -> bytes | None:
        frame = self.flush()
        self.sealed = True
        return frame

    @property
    def buffered_rows(self) -> int:
        return self._nrows


def new_encoder(options: StreamOptions | None = None, rows_per_frame: int = DEFAULT_ROWS_PER_FRAME) -> Encoder:
    return Encoder(options, rows_per_frame)


class JellyWriter:
    """Encodes events straight into a binary stream as delimited frames."""

    def __init__(self, out: BinaryIO, options: StreamOptions | None = None, rows_per_frame: int = DEFAULT_ROWS_PER_FRAME):
        self.out = out
        self.encoder = Encoder(options, rows_per_frame)
        self.bytes_written = 0

    def _emit(self, frames) -> None:
        for frame in frames:
            self.bytes_written += write_delimited_block(self.out, frame)

    def write(self, event) -> None:
        self._emit(self.encoder.add(event))

    def write_all(self, events: Iterable) -> None:
        add = self.encoder.add
        for event in events:
            frames = add(event)
            if frames:
                self._emit(frames)

    def flush(self) -> None:
        frame = self.encoder.flush()
        if frame is not None:
            self._emit([frame])

    def close(self) -> None:
        frame = self.encoder.finish()
        if frame is not None:
            self._emit([frame])

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.close()


def encode_events(events: Iterable, options: StreamOptions | None = None, rows_per_frame: int = DEFAULT_ROWS_PER_FRAME) -> bytes:
    """Encode a whole event sequence into the bytes of a ``.jelly`` file."""
    import io

    buf = io.BytesIO()
    with JellyWriter(buf, options, rows_per_frame) as writer:
        writer.write_all(events)
    return buf.getvalue()
