"""Varint and tag/length-delimited field codec.

The byte layout is the usual protobuf one restricted to wire kinds 0
(varint) and 2 (length-delimited). A file is a sequence of blocks, each a
varint byte length followed by that many bytes.
"""

from __future__ import annotations

import enum
from typing import BinaryIO, Iterator, NamedTuple

from .errors import WireError, WireErrorKind

MAX_UINT64 = (1 << 64) - 1
MAX_FIELD_NUMBER = (1 << 29) - 1
MAX_VARINT_BYTES = 10
MAX_PAYLOAD_LENGTH = 1 << 32
MAX_BLOCK_LENGTH = 1 << 28

VARINT = 0
LENGTH_DELIMITED = 2


class WireKind(enum.IntEnum):
    Varint = VARINT
    LengthDelimited = LENGTH_DELIMITED


class FieldHeader(NamedTuple):
    field_number: int
    wire_kind: int

    def encode(self) -> bytes:
        return encode_varint((self.field_number << 3) | self.wire_kind)


def encode_varint(value: int) -> bytes:
    if value < 0 or value > MAX_UINT64:
        raise ValueError(f"varint out of range: {value}")
    if value < 0x80:
        return bytes((value,))
    out = bytearray()
    while value >= 0x80:
        out.append((value & 0x7F) | 0x80)
        value >>= 7
    out.append(value)
    return bytes(out)


# Hot paths index into this instead of calling encode_varint.
VARINT_CACHE: tuple[bytes, ...] = tuple(encode_varint(i) for i in range(1 << 14))


def varint_bytes(value: int) -> bytes:
    if value < 16384:
        return VARINT_CACHE[value]
    return encode_varint(value)


def decode_varint(data: bytes, pos: int = 0) -> tuple[int, int]:
    """Decode one varint at *pos*; return ``(value, bytes_consumed)``."""
    end = len(data)
    result = 0
    shift = 0
    i = pos
    while True:
        if i >= end:
            raise WireError(WireErrorKind.TRUNCATED_INPUT, i, "varint runs past end of input")
        if i - pos >= MAX_VARINT_BYTES:
            raise WireError(WireErrorKind.OVERLONG_VARINT, pos)
        b = data[i]
        result |= (b & 0x7F) << shift
        i += 1
        if not b & 0x80:
            break
        shift += 7
    if result > MAX_UINT64:
        raise WireError(WireErrorKind.OVERLONG_VARINT, pos, "value exceeds 64 bits")
    return result, i - pos


def read_header(data: bytes, pos: int) -> tuple[FieldHeader, int]:
    key, n = decode_varint(data, pos)
    return FieldHeader(key >> 3, key & 7), n


def write_varint_field(field_number: int, value: int) -> bytes:
    """A varint field, or nothing at all when *value* is the default 0."""
    if value == 0:
        return b""
    return varint_bytes(field_number << 3) + varint_bytes(value)


def write_length_delimited_field(field_number: int, payload: bytes) -> bytes:
    if not 1 <= field_number <= MAX_FIELD_NUMBER:
        raise ValueError(f"field number out of range: {field_number}")
    n = len(payload)
    if n >= MAX_PAYLOAD_LENGTH:
        raise WireError(WireErrorKind.LENGTH_OVERFLOW, 0, f"payload of {n} bytes")
    return varint_bytes((field_number << 3) | LENGTH_DELIMITED) + varint_bytes(n) + bytes(payload)


def skip_unknown_field(header: FieldHeader, data: bytes, pos: int = 0) -> int:
    """Return the number of bytes the value of *header* occupies at *pos*."""
    kind = header.wire_kind
    if kind == VARINT:
        return decode_varint(data, pos)[1]
    if kind == LENGTH_DELIMITED:
        length, n = decode_varint(data, pos)
        if pos + n + length > len(data):
            raise WireError(WireErrorKind.TRUNCATED_INPUT, pos + n, f"field declares {length} bytes")
        return n + length
    raise WireError(WireErrorKind.UNKNOWN_WIRE_KIND, pos, f"wire kind {kind}")


def iter_fields(data: bytes) -> Iterator[tuple[int, int, int | bytes, int]]:
    """Yield ``(field_number, wire_kind, value, offset)`` for each field in a message.

    Varint values are ints, length-delimited values are bytes. Any other wire
    kind raises UnknownWireKind since the value length is unknowable here.
    """
    pos = 0
    end = len(data)
    while pos < end:
        start = pos
        key, n = decode_varint(data, pos)
        pos += n
        kind = key & 7
        number = key >> 3
        if number == 0:
            raise WireError(WireErrorKind.UNKNOWN_WIRE_KIND, start, "field number 0")
        if kind == VARINT:
            value, n = decode_varint(data, pos)
            pos += n
            yield number, kind, value, start
        elif kind == LENGTH_DELIMITED:
            length, n = decode_varint(data, pos)
            pos += n
            if pos + length > end:
                raise WireError(WireErrorKind.TRUNCATED_INPUT, pos, f"field declares {length} bytes, {end - pos} left")
            yield number, kind, data[pos:pos + length], start
            pos += length
        else:
            raise WireError(WireErrorKind.UNKNOWN_WIRE_KIND, start, f"wire kind {kind}")


# -- block (frame) framing over a byte stream ------------------------------

def write_delimited_block(out: BinaryIO, payload: bytes) -> int:
    if len(payload) > MAX_BLOCK_LENGTH:
        raise WireError(WireErrorKind.LENGTH_OVERFLOW, 0, f"block of {len(payload)} bytes")
    head = varint_bytes(len(payload))
    out.write(head)
    out.write(payload)
    return len(head) + len(payload)


def delimited_block(payload: bytes) -> bytes:
    if len(payload) > MAX_BLOCK_LENGTH:
        raise WireError(WireErrorKind.LENGTH_OVERFLOW, 0, f"block of {len(payload)} bytes")
    return varint_bytes(len(payload)) + payload


class BlockReader:
    """Reads varint-length-prefixed blocks from a binary stream, one at a time.

    Never reads past the end of the block being returned, so a caller can
    stop after any block without the source having been drained.
    """

    def __init__(self, source: BinaryIO, max_block: int = MAX_BLOCK_LENGTH):
        self._read = source.read
        self.offset = 0
        self.max_block = max_block

    def read_block(self) -> bytes | None:
        read = self._read
        first = read(1)
        if not first:
            return None
        start = self.offset
        b = first[0]
        length = b & 0x7F
        shift = 7
        used = 1
        while b & 0x80:
            nxt = read(1)
            if not nxt:
                raise WireError(WireErrorKind.TRUNCATED_INPUT, start + used, "block length varint cut short")
            if used >= MAX_VARINT_BYTES:
                raise WireError(WireErrorKind.OVERLONG_VARINT, start)
            b = nxt[0]
            length |= (b & 0x7F) << shift
            shift += 7
            used += 1
        if length > self.max_block:
            raise WireError(WireErrorKind.LENGTH_OVERFLOW, start, f"block of {length} bytes exceeds limit {self.max_block}")
        payload = read(length) if length else b""
        # pipes may return short reads
        while len(payload) < length:
            more = read(length - len(payload))
            if not more:
                raise WireError(
                    WireErrorKind.TRUNCATED_INPUT,
                    start + used + len(payload),
                    f"block declares {length} bytes, got {len(payload)}",
                )
            payload += more
        self.offset = start + used + length
        return payload

    def __iter__(self) -> Iterator[bytes]:
        while True:
            block = self.read_block()
            if block is None:
                return
            yield block


def read_delimited_block(source: BinaryIO) -> bytes | None:
    """Read one block from *source*; None at a clean end of stream."""
    return BlockReader(source).read_block()


def iter_blocks_from_bytes(data: bytes) -> Iterator[bytes]:
    pos = 0
    end = len(data)
    while pos < end:
        length, n = decode_varint(data, pos)
        pos += n
        if length > MAX_BLOCK_LENGTH:
            raise WireError(WireErrorKind.LENGTH_OVERFLOW, pos - n, f"block of {length} bytes")
        if pos + length > end:
            raise WireError(WireErrorKind.TRUNCATED_INPUT, pos, f"block declares {length} bytes, {end - pos} left")
        yield data[pos:pos + length]
        pos += length
