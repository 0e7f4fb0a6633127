"""Merge and recompress streams without rebuilding RDF terms.

The input side replays each input's lookup tables and deltas, but instead of
terms it produces lightweight keys made of the raw table strings. The output
side pushes those strings through its own LRU tables and re-applies delta
and repeated-term coding. IRIs are never re-split: an input (prefix, name)
pair is carried over as is.
"""

from __future__ import annotations

from typing import BinaryIO, Iterable, Iterator, NamedTuple

from .decode import PREFIX, NAME, DATATYPE, Decoder, DecoderLimits, _as_stream
from .encode import DEFAULT_ROWS_PER_FRAME, LookupTable, _ld, _vb
from .errors import (
    DecodeError,
    DecodeErrorKind,
    EncoderSealed,
    InvalidOptions,
    MalformedRow,
)
from .messages import StreamOptions, encode_row, iter_row_spans
from .terms import GraphStart, Quad, Triple, valid_bnode_label, valid_lang_tag
from .wire import BlockReader, write_delimited_block


class IriKey(NamedTuple):
    prefix: str
    name: str


class LiteralKey(NamedTuple):
    lexical: str
    language: str | None
    datatype: str | None


class BnodeKey(NamedTuple):
    label: str


_E = DecodeErrorKind


class _KeyDecoder(Decoder):
    """A decoder that yields raw-string keys in place of RDF terms."""

    def _iri(self, pid: int, nid: int) -> IriKey:
        if pid == 0:
            pid = self.last_prefix_id
        else:
            self.last_prefix_id = pid
        nid = self.last_name_id + 1 if nid == 0 else nid
        self.last_name_id = nid
        prefixes, names = self.tables[PREFIX], self.tables[NAME]
        if pid == 0 or pid >= len(prefixes):
            raise DecodeError(_E.ID_OUT_OF_RANGE, f"prefix id {pid} outside 1..{len(prefixes) - 1}")
        if nid >= len(names):
            raise DecodeError(_E.ID_OUT_OF_RANGE, f"name id {nid} exceeds table size {len(names) - 1}")
        prefix, name = prefixes[pid], names[nid]
        if prefix is None:
            raise DecodeError(_E.UNSET_ID_REFERENCE, f"prefix id {pid} was never set")
        if name is None:
            raise DecodeError(_E.UNSET_ID_REFERENCE, f"name id {nid} was never set")
        if not prefix and not name:
            raise MalformedRow("IRI resolves to the empty string")
        return IriKey(prefix, name)

    def _literal(self, lexical: str, lang: str, dt: int) -> LiteralKey:
        if lang:
            if dt:
                raise MalformedRow("literal sets both langtag and datatype_id")
            if not valid_lang_tag(lang):
                raise MalformedRow(f"invalid language tag {lang!r}")
            return LiteralKey(lexical, lang, None)
        if dt:
            dts = self.tables[DATATYPE]
            if dt >= len(dts):
                raise DecodeError(_E.ID_OUT_OF_RANGE, f"datatype id {dt} exceeds table size {len(dts) - 1}")
            if dts[dt] is None:
                raise DecodeError(_E.UNSET_ID_REFERENCE, f"datatype id {dt} was never set")
            return LiteralKey(lexical, None, dts[dt])
        return LiteralKey(lexical, None, None)

    def _bnode(self, label: str) -> BnodeKey:
        if not valid_bnode_label(label):
            raise MalformedRow(f"invalid blank node label {label!r}")
        return BnodeKey(label)


_SUBJECT = (0x0A, b"\x12")
_PREDICATE = (0x1A, None)
_OBJECT = (0x22, b"\x2a")
_QUAD_GRAPH = (0x3A, b"\x42", b"\x4a\x00")
_START_GRAPH = (0x0A, b"\x12", b"\x1a\x00")


class Transcoder:
    """Rewrites one or more input streams into a single output stream."""

    def __init__(
        self,
        out_options: StreamOptions,
        rows_per_frame: int = DEFAULT_ROWS_PER_FRAME,
        limits: DecoderLimits | None = None,
    ):
        out_options.validate()
        if rows_per_frame < 1:
            raise InvalidOptions(f"rows_per_frame must be >= 1, got {rows_per_frame}")
        self.options = out_options
        self.rows_per_frame = rows_per_frame
        self.limits = limits
        self.prefix_table = LookupTable(out_options.max_prefix_table)
        self.name_table = LookupTable(out_options.max_name_table)
        self.datatype_table = LookupTable(out_options.max_datatype_table)
        self.last_prefix_id = 0
        self.last_name_id = 0
        self._prev = [None, None, None, None]
        self._rows: list[bytes] = [_ld(b"\x0a", encode_row(out_options))]
        self._input: _KeyDecoder | None = None
        self.inputs_seen = 0
        self.frame_index = 0
        self.statements = 0
        self.sealed = False

    # -- output side ---------------------------------------------------------

    def _entry(self, row_key: bytes, table: LookupTable, entry_id: int, value: str) -> None:
        wire_id = table.entry_delta(entry_id)
        body = b"\x08" + _vb(wire_id) if wire_id else b""
        if value:
            body += _ld(b"\x12", value.encode("utf-8"))
        self._rows.append(_ld(b"\x0a", _ld(row_key, body)))

    def _iri(self, key: IriKey, field_key: int, flat: bool) -> bytes:
        prefix, name = key
        if flat:
            prefix, name = "", prefix + name
        pid, new = self.prefix_table.get_or_insert(prefix)
        if new:
            self._entry(b"\x42", self.prefix_table, pid, prefix)
        nid, new = self.name_table.get_or_insert(name)
        if new:
            self._entry(b"\x3a", self.name_table, nid, name)
        inner = b""
        if pid != self.last_prefix_id:
            inner = b"\x08" + _vb(pid)
            self.last_prefix_id = pid
        if nid != self.last_name_id + 1:
            inner += b"\x10" + _vb(nid)
        self.last_name_id = nid
        return bytes((field_key, len(inner))) + inner

    def _literal(self, key: LiteralKey) -> bytes:
        body = _ld(b"\x0a", key.lexical.encode("utf-8")) if key.lexical else b""
        if key.language is not None:
            body += _ld(b"\x12", key.language.encode("utf-8"))
        elif key.datatype is not None:
            did, new = self.datatype_table.get_or_insert(key.datatype)
            if new:
                self._entry(b"\x4a", self.datatype_table, did, key.datatype)
            body += b"\x18" + _vb(did)
        return _ld(b"\x32", body)

    def _term(self, key, fields: tuple, flat: bool) -> bytes:
        cls = key.__class__
        if cls is IriKey:
            return self._iri(key, fields[0], flat)
        if cls is BnodeKey:
            return _ld(fields[1], key.label.encode("utf-8"))
        if cls is LiteralKey:
            return self._literal(key)
        return fields[2]  # default graph

    def _needs_flat(self, keys: list) -> bool:
        prefixes = {k.prefix for k in keys if k.__class__ is IriKey}
        return len(prefixes) > self.prefix_table.capacity

    def _emit_statement(self, st) -> None:
        prev = self._prev
        changed = [i for i in range(len(st)) if st[i] != prev[i]]
        flat = self._needs_flat([st[i] for i in changed])
        body = b""
        for i in changed:
            body += self._term(st[i], (_SUBJECT, _PREDICATE, _OBJECT, _QUAD_GRAPH)[i], flat)
            prev[i] = st[i]
        row = _ld(b"\x1a" if len(st) == 4 else b"\x12", body)
        self._rows.append(_ld(b"\x0a", row))
        self.statements += 1

    def _emit_graph(self, event) -> None:
        if event.__class__ is GraphStart:
            body = self._term(event.graph, _START_GRAPH, False)
            self._rows.append(_ld(b"\x0a", _ld(b"\x22", body)))
        else:
            self._rows.append(b"\x0a\x02\x2a\x00")

    # -- input side ----------------------------------------------------------

    def _start_input(self) -> None:
        if self._input is not None:
            self._input.finish()
        self._input = _KeyDecoder(self.limits)
        self._prev = [None, None, None, None]
        self.inputs_seen += 1

    def _check_input_options(self) -> None:
        opts = self._input.options
        if opts.physical_type != self.options.physical_type:
            raise DecodeError(
                _E.PHYSICAL_TYPE_MISMATCH,
                f"input stream is {opts.physical_type.name}, output is {self.options.physical_type.name}",
                frame_index=self.frame_index,
            )

    def ingest_frame(self, payload: bytes) -> list[bytes]:
        """Transcode one input frame; returns output frames that became complete."""
        if self.sealed:
            raise EncoderSealed("transcoder is finished")
        # an options row at the head of a frame starts a new input
        for start, stop in iter_row_spans(payload):
            if stop > start and payload[start] == 0x0A:
                self._start_input()
            break
        if self._input is None:
            self._start_input()
        dec = self._input
        fresh = dec.options is None
        dec.frame_index = self.frame_index
        events = dec.decode_payload(payload)
        if fresh and dec.options is not None:
            self._check_input_options()
        for ev in events:
            cls = ev.__class__
            if cls is Triple or cls is Quad:
                self._emit_statement(ev)
            else:
                self._emit_graph(ev)
        self.frame_index += 1
        return self._drain()

    def ingest_stream(self, source) -> Iterator[bytes]:
        """Transcode every frame of a ``.jelly`` source (bytes or binary stream).

        A stream may hold several concatenated files; each options row starts
        a new input with fresh input-side tables.
        """
        reader = BlockReader(_as_stream(source))
        while True:
            payload = reader.read_block()
            if payload is None:
                break
            yield from self.ingest_frame(payload)

    def ingest_file(self, source) -> Iterator[bytes]:
        """Transcode a single input file; the next ingested frame starts a new input."""
        yield from self.ingest_stream(source)
        self.end_input()

    def end_input(self) -> None:
        """Close the current input; the next frame must start with an options row."""
        if self._input is not None:
            self._input.finish()
        self._input = None

    def _drain(self) -> list[bytes]:
        rows = self._rows
        rpf = self.rows_per_frame
        out = []
        while len(rows) >= rpf:
            out.append(b"".join(rows[:rpf]))
            del rows[:rpf]
        return out

    def flush(self) -> bytes | None:
        if not self._rows:
            return None
        frame = b"".join(self._rows)
        self._rows = []
        return frame

    def finish(self) -> bytes | None:
        if self.sealed:
            raise EncoderSealed("transcoder is finished")
        if self._input is not None:
            self._input.finish()
        frame = self.flush()
        self.sealed = True
        return frame


def new_transcoder(out_options: StreamOptions, rows_per_frame: int = DEFAULT_ROWS_PER_FRAME) -> Transcoder:
    return Transcoder(out_options, rows_per_frame)


def transcode(
    sources: Iterable,
    out: BinaryIO,
    out_options: StreamOptions,
    rows_per_frame: int = DEFAULT_ROWS_PER_FRAME,
) -> Transcoder:
    """Merge *sources* (bytes or binary streams) into *out* as one stream."""
    tc = Transcoder(out_options, rows_per_frame)
    for source in sources:
        for frame in tc.ingest_file(source):
            write_delimited_block(out, frame)
    frame = tc.finish()
    if frame is not None:
        write_delimited_block(out, frame)
    return tc


def transcode_bytes(sources: Iterable, out_options: StreamOptions, rows_per_frame: int = DEFAULT_ROWS_PER_FRAME) -> bytes:
    import io

    buf = io.BytesIO()
    transcode(sources, buf, out_options, rows_per_frame)
    return buf.getvalue()
