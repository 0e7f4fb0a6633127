"""Streaming binary RDF: encoder, decoder, transcoder and N-Triples/N-Quads interop."""

import os as _os
import sys as _sys
from importlib import util as _util

# The hot modules may be installed compiled. JELLY_PURE_PYTHON=1 at import
# time loads their .py sources instead, which behave identically.
_HOT_MODULES = ("terms", "wire", "encode", "decode", "transcode")
if _os.environ.get("JELLY_PURE_PYTHON") == "1":
    for _name in _HOT_MODULES:
        _path = _os.path.join(_os.path.dirname(__file__), _name + ".py")
        _spec = _util.spec_from_file_location(f"{__name__}.{_name}", _path)
        _module = _util.module_from_spec(_spec)
        _sys.modules[_spec.name] = _module
        _spec.loader.exec_module(_module)

from .decode import Decoder, DecoderLimits, decode_file, decode_statements, iter_frames, new_decoder
from .encode import Encoder, JellyWriter, LookupTable, encode_events, new_encoder, split_iri
from .errors import (
    DecodeError,
    DecodeErrorKind,
    EncodeError,
    EncoderSealed,
    GraphStateError,
    InvalidOptions,
    InvalidTermError,
    JellyError,
    MalformedRow,
    PhysicalTypeMismatch,
    QuadInTriplesOutput,
    RdfSyntaxError,
    WireError,
    WireErrorKind,
)
from .isomorphism import find_bijection, isomorphic
from .messages import Frame, LogicalType, PhysicalType, StreamOptions
from .ntriples import parse_nq, parse_nq_stream, parse_nt, parse_nt_stream, serialize_nq, serialize_nt
from .terms import (
    DEFAULT_GRAPH,
    BlankNode,
    DefaultGraph,
    EndOfGroup,
    GraphEnd,
    GraphStart,
    Iri,
    Literal,
    Quad,
    Triple,
)
from .transcode import Transcoder, new_transcoder, transcode

__version__ = "0.1.0"

COMPILED = not _sys.modules[__name__ + ".decode"].__file__.endswith(".py")

__all__ = [
    "Decoder",
    "DecoderLimits",
    "decode_file",
    "decode_statements",
    "iter_frames",
    "new_decoder",
    "Encoder",
    "JellyWriter",
    "LookupTable",
    "encode_events",
    "new_encoder",
    "split_iri",
    "DecodeError",
    "DecodeErrorKind",
    "EncodeError",
    "EncoderSealed",
    "GraphStateError",
    "InvalidOptions",
    "InvalidTermError",
    "JellyError",
    "MalformedRow",
    "PhysicalTypeMismatch",
    "QuadInTriplesOutput",
    "RdfSyntaxError",
    "WireError",
    "WireErrorKind",
    "find_bijection",
    "isomorphic",
    "Frame",
    "LogicalType",
    "PhysicalType",
    "StreamOptions",
    "parse_nq",
    "parse_nq_stream",
    "parse_nt",
    "parse_nt_stream",
    "serialize_nq",
    "serialize_nt",
    "DEFAULT_GRAPH",
    "BlankNode",
    "DefaultGraph",
    "EndOfGroup",
    "GraphEnd",
    "GraphStart",
    "Iri",
    "Literal",
    "Quad",
    "Triple",
    "Transcoder",
    "new_transcoder",
    "transcode",
    "COMPILED",
    "__version__",
]
