import copy
import pickle

import pytest
from hypothesis import given

from gen import objects, quads, triples
from jelly.errors import InvalidBlankLabel, InvalidIri, InvalidLangTag, InvalidStatement
from jelly.ntriples import parse_nt
from jelly.terms import (
    DEFAULT_GRAPH,
    BlankNode,
    DefaultGraph,
    EndOfGroup,
    GraphEnd,
    Iri,
    Literal,
    Quad,
    Triple,
    make_bnode,
    make_iri,
    make_literal,
    render_term_nt,
    trusted_bnode,
    trusted_iri,
    trusted_literal,
)

XSD_INT = "http://www.w3.org/2001/XMLSchema#int"


def test_make_iri():
    assert make_iri("http://example.org/s") == Iri("http://example.org/s")
    with pytest.raises(InvalidIri):
        make_iri("")
    with pytest.raises(InvalidIri):
        make_iri("http://ex.org/a b")


@pytest.mark.parametrize("bad", ["a<b", "a>b", 'a"b', "a{b", "a}b", "a|b", "a^b", "a`b", "a\\b", "a\x01b", "a\x85b"])
def test_iri_forbidden_characters(bad):
    with pytest.raises(InvalidIri):
        Iri(bad)


def test_make_literal():
    assert make_literal("hello") == Literal("hello")
    hi = make_literal("hi", datatype="http://www.w3.org/2001/XMLSchema#string")
    assert hi == Literal("hi") and hi.datatype is None
    with pytest.raises(InvalidLangTag):
        make_literal("x", language="en-US!")
    with pytest.raises(InvalidIri):
        make_literal("x", datatype="bad iri")
    assert Literal("", language="en").language == "en"


def test_make_bnode():
    assert make_bnode("b0") == BlankNode("b0")
    assert make_bnode("a.b").label == "a.b"
    for bad in ["", ".a", "a.", "a b", "a:b"]:
        with pytest.raises(InvalidBlankLabel):
            make_bnode(bad)


def test_render_examples():
    assert render_term_nt(Iri("http://e.org/s")) == "<http://e.org/s>"
    assert render_term_nt(Literal('a"b')) == '"a\\"b"'
    assert render_term_nt(Literal("1", datatype=XSD_INT)) == '"1"^^<http://www.w3.org/2001/XMLSchema#int>'
    assert render_term_nt(Literal("x\n\r\t\\\x01")) == '"x\\n\\r\\t\\\\\\u0001"'
    assert render_term_nt(Literal("chat", language="fr")) == '"chat"@fr'
    assert render_term_nt(BlankNode("b1")) == "_:b1"


def test_terms_are_immutable():
    iri = Iri("http://e.org/")
    with pytest.raises(AttributeError):
        iri.value = "http://other/"
    lit = Literal("x")
    with pytest.raises(AttributeError):
        lit.lexical = "y"
    with pytest.raises(AttributeError):
        lit.language = "en"
    with pytest.raises(AttributeError):
        BlankNode("b").label = "c"
    with pytest.raises(AttributeError):
        iri.extra = 1


@given(objects)
def test_terms_survive_pickle_and_copy(term):
    for clone in (pickle.loads(pickle.dumps(term)), copy.deepcopy(term), copy.copy(term)):
        assert clone == term
        assert hash(clone) == hash(term)


def test_trusted_constructors_match_validated_ones():
    assert trusted_iri("http://e.org/") == Iri("http://e.org/")
    assert trusted_bnode("b1") == BlankNode("b1")
    assert trusted_literal("1", None, XSD_INT) == Literal("1", datatype=XSD_INT)
    assert trusted_literal("chat", "fr") == Literal("chat", language="fr")
    assert trusted_literal("x") == Literal("x")
    with pytest.raises(AttributeError):
        trusted_iri("http://e.org/").value = "urn:x"


def test_statement_positions():
    s, p, o = Iri("http://e.org/s"), Iri("http://e.org/p"), Literal("o")
    with pytest.raises(InvalidStatement):
        Triple(o, p, o)
    with pytest.raises(InvalidStatement):
        Triple(s, BlankNode("b"), o)
    with pytest.raises(InvalidStatement):
        Quad(s, p, o, Literal("g"))
    assert Quad(s, p, o).graph is DEFAULT_GRAPH
    assert Quad(s, p, o, DEFAULT_GRAPH) != Quad(s, p, o, Iri("http://e.org/g"))


def test_markers_compare_by_kind():
    assert GraphEnd() == GraphEnd()
    assert GraphEnd() != EndOfGroup()
    assert DefaultGraph() is DEFAULT_GRAPH


def test_literal_kinds_are_distinct():
    assert Literal("1") != Literal("1", datatype=XSD_INT)
    assert Literal("1", language="en") != Literal("1")
    assert Literal("a", language="en") != Literal("a", language="de")
    assert len({Literal("1"), Literal("1"), Literal("1", datatype=XSD_INT)}) == 2


@given(objects)
def test_term_token_round_trip(term):
    line = f"<http://e.org/s> <http://e.org/p> {render_term_nt(term)} ."
    assert parse_nt(line)[0].object == term


@given(objects, objects)
def test_equal_terms_render_identically(a, b):
    if a == b:
        assert render_term_nt(a) == render_term_nt(b)
        assert hash(a) == hash(b)


@given(triples)
def test_triple_token_round_trip(t):
    text = f"{render_term_nt(t[0])} {render_term_nt(t[1])} {render_term_nt(t[2])} .\n"
    assert parse_nt(text) == [t]


@given(quads)
def test_quad_equality_includes_graph(q):
    other = Quad(q[0], q[1], q[2], Iri("urn:x:elsewhere"))
    assert (q == other) == (q[3] == other[3])
