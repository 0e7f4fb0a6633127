"""In-memory RDF 1.1 data model.

Terms are immutable once built. The public constructors validate; the
``trusted_*`` helpers skip validation for callers that already checked the
input (the decoder validates lookup entries when they arrive, not per use).
"""

from __future__ import annotations

import re
from typing import NamedTuple, Union

from .errors import InvalidBlankLabel, InvalidIri, InvalidLangTag, InvalidStatement

XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"
RDF_LANG_STRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"

# space, <>"{}|^`\ and C0/C1 controls
_IRI_FORBIDDEN = re.compile(r'[\x00-\x20<>"{}|^`\\\x7f-\x9f]')
_LANG_TAG = re.compile(r"[A-Za-z]{1,8}(?:-[A-Za-z0-9]{1,8})*")
_BNODE_LABEL = re.compile(r"[\w\-]+(?:\.+[\w\-]+)*")


def check_iri_chars(text: str) -> bool:
    """True when *text* has no character forbidden inside an IRI (empty is ok)."""
    return _IRI_FORBIDDEN.search(text) is None


def valid_lang_tag(tag: str) -> bool:
    return _LANG_TAG.fullmatch(tag) is not None


def valid_bnode_label(label: str) -> bool:
    return _BNODE_LABEL.fullmatch(label) is not None


class Iri:
    __slots__ = ("value",)

    def __init__(self, value: str):
        if not value:
            raise InvalidIri("IRI must not be empty")
        m = _IRI_FORBIDDEN.search(value)
        if m is not None:
            raise InvalidIri(f"forbidden character {m.group()!r} in IRI {value!r}")
        self.value = value

    def __eq__(self, other):
        return other.__class__ is Iri and other.value == self.value

    def __ne__(self, other):
        return not (other.__class__ is Iri and other.value == self.value)

    def __hash__(self):
        return hash((1, self.value))

    def __repr__(self):
        return f"Iri({self.value!r})"

    def n3(self) -> str:
        return render_term_nt(self)


class BlankNode:
    __slots__ = ("label",)

    def __init__(self, label: str):
        if not valid_bnode_label(label):
            raise InvalidBlankLabel(f"invalid blank node label {label!r}")
        self.label = label

    def __eq__(self, other):
        return other.__class__ is BlankNode and other.label == self.label

    def __ne__(self, other):
        return not (other.__class__ is BlankNode and other.label == self.label)

    def __hash__(self):
        return hash((2, self.label))

    def __repr__(self):
        return f"BlankNode({self.label!r})"

    def n3(self) -> str:
        return render_term_nt(self)


class Literal:
    """A literal: simple when both *language* and *datatype* are None.

    A datatype of xsd:string is folded into the simple form, so every RDF 1.1
    literal has exactly one representation.
    """

    __slots__ = ("lexical", "language", "datatype")

    def __init__(self, lexical: str, language: str | None = None, datatype: str | None = None):
        if not isinstance(lexical, str):
            raise TypeError("lexical form must be a str")
        if language is not None:
            if datatype is not None and datatype != RDF_LANG_STRING:
                raise InvalidLangTag("a literal cannot have both a language tag and a datatype")
            if not valid_lang_tag(language):
                raise InvalidLangTag(f"invalid language tag {language!r}")
            datatype = None
        elif datatype is not None:
            if not datatype:
                raise InvalidIri("datatype IRI must not be empty")
            m = _IRI_FORBIDDEN.search(datatype)
            if m is not None:
                raise InvalidIri(f"forbidden character {m.group()!r} in datatype {datatype!r}")
            if datatype == XSD_STRING:
                datatype = None
        self.lexical = lexical
        self.language = language
        self.datatype = datatype

    def __eq__(self, other):
        return (
            other.__class__ is Literal
            and other.lexical == self.lexical
            and other.language == self.language
            and other.datatype == self.datatype
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((3, self.lexical, self.language, self.datatype))

    def __repr__(self):
        if self.language is not None:
            return f"Literal({self.lexical!r}, language={self.language!r})"
        if self.datatype is not None:
            return f"Literal({self.lexical!r}, datatype={self.datatype!r})"
        return f"Literal({self.lexical!r})"

    def n3(self) -> str:
        return render_term_nt(self)


def trusted_iri(value: str) -> Iri:
    obj = Iri.__new__(Iri)
    obj.value = value
    return obj


def trusted_bnode(label: str) -> BlankNode:
    obj = BlankNode.__new__(BlankNode)
    obj.label = label
    return obj


def trusted_literal(lexical: str, language: str | None = None, datatype: str | None = None) -> Literal:
    obj = Literal.__new__(Literal)
    obj.lexical = lexical
    obj.language = language
    obj.datatype = datatype
    return obj


def _set_once(self, name, value):
    try:
        getattr(self, name)
    except AttributeError:
        object.__setattr__(self, name, value)
        return
    raise AttributeError("terms are immutable")


# The compiled build declares the fields readonly. Interpreted classes are
# heap types and get a write-once __setattr__ instead.
for _cls in (Iri, BlankNode, Literal):
    if _cls.__flags__ & (1 << 9):
        _cls.__setattr__ = _set_once


class DefaultGraph:
    """The unnamed graph of a dataset. Use the ``DEFAULT_GRAPH`` singleton."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = object.__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DEFAULT_GRAPH"

    def __reduce__(self):
        return (DefaultGraph, ())


DEFAULT_GRAPH = DefaultGraph()

Term = Union[Iri, BlankNode, Literal]
GraphName = Union[Iri, BlankNode, DefaultGraph]


def make_iri(text: str) -> Iri:
    return Iri(text)


def make_bnode(label: str) -> BlankNode:
    return BlankNode(label)


def make_literal(lexical: str, language: str | None = None, datatype: str | None = None) -> Literal:
    return Literal(lexical, language, datatype)


def _check_positions(s, p, o):
    if s.__class__ is not Iri and s.__class__ is not BlankNode:
        raise InvalidStatement(f"subject must be an IRI or blank node, got {s!r}")
    if p.__class__ is not Iri:
        raise InvalidStatement(f"predicate must be an IRI, got {p!r}")
    if o.__class__ not in _OBJECT_TYPES:
        raise InvalidStatement(f"object must be an RDF term, got {o!r}")


_OBJECT_TYPES = frozenset((Iri, BlankNode, Literal))
_GRAPH_TYPES = frozenset((Iri, BlankNode, DefaultGraph))


class _TripleFields(NamedTuple):
    subject: Term
    predicate: Iri
    object: Term


class _QuadFields(NamedTuple):
    subject: Term
    predicate: Iri
    object: Term
    graph: GraphName


class Triple(_TripleFields):
    __slots__ = ()

    def __new__(cls, subject, predicate, object):
        _check_positions(subject, predicate, object)
        return tuple.__new__(cls, (subject, predicate, object))

    def __repr__(self):
        return f"Triple({self[0]!r}, {self[1]!r}, {self[2]!r})"


class Quad(_QuadFields):
    __slots__ = ()

    def __new__(cls, subject, predicate, object, graph=DEFAULT_GRAPH):
        _check_positions(subject, predicate, object)
        if graph.__class__ not in _GRAPH_TYPES:
            raise InvalidStatement(f"graph name must be an IRI, blank node or the default graph, got {graph!r}")
        return tuple.__new__(cls, (subject, predicate, object, graph))

    def __repr__(self):
        return f"Quad({self[0]!r}, {self[1]!r}, {self[2]!r}, {self[3]!r})"


Statement = Union[Triple, Quad]


# -- grouped stream markers ------------------------------------------------

class GraphStart(NamedTuple):
    graph: GraphName


class _Marker:
    __slots__ = ()

    def __eq__(self, other):
        return other.__class__ is self.__class__

    def __hash__(self):
        return hash(self.__class__.__name__)

    def __repr__(self):
        return f"{self.__class__.__name__}()"


class GraphEnd(_Marker):
    """Closes the graph opened by the latest :class:`GraphStart`."""

    __slots__ = ()


class EndOfGroup(_Marker):
    """Marks the end of one element of a grouped stream (a frame boundary)."""

    __slots__ = ()


StreamEvent = Union[Triple, Quad, GraphStart, GraphEnd, EndOfGroup]


# -- N-Triples rendering ---------------------------------------------------

_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_NEEDS_ESCAPE = re.compile(r'["\\\x00-\x1f\x7f]')


def _escape_char(m: re.Match) -> str:
    ch = m.group()
    esc = _ESCAPES.get(ch)
    if esc is not None:
        return esc
    return f"\\u{ord(ch):04X}"


def escape_string(text: str) -> str:
    return _NEEDS_ESCAPE.sub(_escape_char, text)


def render_term_nt(term) -> str:
    cls = term.__class__
    if cls is Iri:
        return f"<{term.value}>"
    if cls is BlankNode:
        return f"_:{term.label}"
    if cls is Literal:
        lex = escape_string(term.lexical)
        if term.language is not None:
            return f'"{lex}"@{term.language}'
        if term.datatype is not None:
            return f'"{lex}"^^<{term.datatype}>'
        return f'"{lex}"'
    raise TypeError(f"not an RDF term: {term!r}")
