"""Exception hierarchy shared by every layer of the codec."""

from __future__ import annotations

import enum


class JellyError(Exception):
    pass


# -- terms -----------------------------------------------------------------

class InvalidTermError(JellyError, ValueError):
    pass


class InvalidIri(InvalidTermError):
    pass


class InvalidLangTag(InvalidTermError):
    pass


class InvalidBlankLabel(InvalidTermError):
    pass


class InvalidStatement(InvalidTermError):
    pass


# -- wire ------------------------------------------------------------------

class WireErrorKind(enum.Enum):
    TRUNCATED_INPUT = "TruncatedInput"
    OVERLONG_VARINT = "OverlongVarint"
    UNKNOWN_WIRE_KIND = "UnknownWireKind"
    LENGTH_OVERFLOW = "LengthOverflow"


class WireError(JellyError):
    def __init__(self, kind: WireErrorKind, offset: int, detail: str = ""):
        self.kind = kind
        self.offset = offset
        self.detail = detail
        msg = f"{kind.value} at byte offset {offset}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


# -- encoding --------------------------------------------------------------

class EncodeError(JellyError):
    pass


class InvalidOptions(EncodeError, ValueError):
    pass


class PhysicalTypeMismatch(EncodeError):
    pass


class GraphStateError(EncodeError):
    pass


class EncoderSealed(EncodeError):
    pass


# -- decoding --------------------------------------------------------------

class DecodeErrorKind(enum.Enum):
    NO_OPTIONS_FIRST = "NoOptionsFirst"
    DUPLICATE_OPTIONS = "DuplicateOptions"
    UNSUPPORTED_VERSION = "UnsupportedVersion"
    ID_OUT_OF_RANGE = "IdOutOfRange"
    UNSET_ID_REFERENCE = "UnsetIdReference"
    REPEAT_AT_STREAM_START = "RepeatAtStreamStart"
    GRAPH_STATE_ERROR = "GraphStateError"
    PHYSICAL_TYPE_MISMATCH = "PhysicalTypeMismatch"
    MALFORMED_ROW = "MalformedRow"
    LIMIT_EXCEEDED = "LimitExceeded"


class DecodeError(JellyError):
    def __init__(
        self,
        kind: DecodeErrorKind,
        detail: str = "",
        frame_index: int | None = None,
        row_index: int | None = None,
    ):
        self.kind = kind
        self.detail = detail
        self.frame_index = frame_index
        self.row_index = row_index
        super().__init__(self._message())

    def _message(self) -> str:
        where = []
        if self.frame_index is not None:
            where.append(f"frame {self.frame_index}")
        if self.row_index is not None:
            where.append(f"row {self.row_index}")
        msg = self.kind.value
        if where:
            msg += " at " + ", ".join(where)
        if self.detail:
            msg += f": {self.detail}"
        return msg

    def locate(self, frame_index: int, row_index: int | None) -> "DecodeError":
        if self.frame_index is None:
            self.frame_index = frame_index
        if self.row_index is None:
            self.row_index = row_index
        self.args = (self._message(),)
        return self


class MalformedRow(DecodeError):
    def __init__(self, detail: str = ""):
        super().__init__(DecodeErrorKind.MALFORMED_ROW, detail)


# -- text formats ----------------------------------------------------------

class RdfSyntaxError(JellyError, ValueError):
    def __init__(self, line: int, column: int, reason: str):
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__(f"line {line}, column {column}: {reason}")


class QuadInTriplesOutput(JellyError, ValueError):
    pass
