"""Random RDF data for round-trip and transcode tests."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from jelly.messages import LogicalType, PhysicalType, StreamOptions
from jelly.terms import DEFAULT_GRAPH, BlankNode, EndOfGroup, GraphEnd, GraphStart, Iri, Literal, Quad, Triple

XSD = "http://www.w3.org/2001/XMLSchema#"
DATATYPES = [XSD + "int", XSD + "date", XSD + "boolean", XSD + "string", "http://e.org/dt/custom", "urn:x-dt"]
LANGS = ["en", "en-US", "de", "pl", "zh-Hant-TW"]
LEXICALS = ["", "hello", "a\"b", "line\nbreak", "tab\there", "zażółć", "☃ snow", "1", "x" * 40]


class TermPool:
    """A vocabulary with shared namespaces so that prefixes and names repeat."""

    def __init__(self, rng: random.Random, n_ns: int = 6, n_names: int = 60, n_bnodes: int = 12):
        self.rng = rng
        self.namespaces = [f"http://ns{i}.example.org/v{i % 3}/" for i in range(n_ns - 2)]
        self.namespaces += ["http://example.com/voc#", ""]
        self.names = [f"n{i}" for i in range(n_names)] + ["Person", "knows", "urn:uuid:1234"]
        self.bnodes = [f"b{i}" for i in range(n_bnodes)] + ["x.y", "node-1"]

    def iri(self) -> Iri:
        ns = self.rng.choice(self.namespaces)
        name = self.rng.choice(self.names)
        if not ns and ":" not in name:
            name = "urn:x:" + name
        return Iri(ns + name)

    def bnode(self) -> BlankNode:
        return BlankNode(self.rng.choice(self.bnodes))

    def literal(self) -> Literal:
        lex = self.rng.choice(LEXICALS)
        kind = self.rng.randrange(3)
        if kind == 0:
            return Literal(lex)
        if kind == 1:
            return Literal(lex, language=self.rng.choice(LANGS))
        return Literal(lex, datatype=self.rng.choice(DATATYPES))

    def subject(self):
        return self.iri() if self.rng.random() < 0.8 else self.bnode()

    def obj(self):
        r = self.rng.random()
        if r < 0.45:
            return self.iri()
        if r < 0.6:
            return self.bnode()
        return self.literal()

    def graph(self):
        r = self.rng.random()
        if r < 0.3:
            return DEFAULT_GRAPH
        if r < 0.8:
            return self.iri()
        return self.bnode()


def random_statements(rng: random.Random, n: int, quads: bool, pool: TermPool | None = None) -> list:
    """Statements with runs of repeated subjects, predicates, objects and graphs."""
    pool = pool or TermPool(rng)
    out = []
    s = p = o = None
    g = DEFAULT_GRAPH
    for _ in range(n):
        if s is None or rng.random() < 0.4:
            s = pool.subject()
        if p is None or rng.random() < 0.6:
            p = pool.iri()
        if o is None or rng.random() < 0.85:
            o = pool.obj()
        if quads:
            if rng.random() < 0.2:
                g = pool.graph()
            out.append(Quad(s, p, o, g))
        else:
            out.append(Triple(s, p, o))
    return out


def random_grouped(rng: random.Random, n: int, pool: TermPool | None = None) -> list:
    """A GRAPHS-style event stream: graph blocks of triples, some closed with EndOfGroup."""
    pool = pool or TermPool(rng)
    events = []
    left = n
    while left > 0:
        size = min(left, rng.randint(1, 50))
        events.append(GraphStart(pool.graph()))
        events.extend(random_statements(rng, size, False, pool))
        events.append(GraphEnd())
        if rng.random() < 0.5:
            events.append(EndOfGroup())
        left -= size
    return events


CAPACITIES = [(n, p, d) for n in (8, 16, 64, 1024) for p in (1, 4, 64) for d in (1, 4, 32)]


def options_for(kind: str, caps: tuple[int, int, int]) -> StreamOptions:
    physical, logical = {
        "triples": (PhysicalType.TRIPLES, LogicalType.FLAT_TRIPLES),
        "quads": (PhysicalType.QUADS, LogicalType.FLAT_QUADS),
        "graphs": (PhysicalType.GRAPHS, LogicalType.DATASETS),
    }[kind]
    return StreamOptions(physical, logical, *caps)


def random_case(rng: random.Random, size: int):
    """(options, events) for one randomized round-trip case."""
    kind = rng.choice(["triples", "quads", "graphs"])
    opts = options_for(kind, rng.choice(CAPACITIES))
    if kind == "graphs":
        events = random_grouped(rng, size)
    else:
        events = random_statements(rng, size, kind == "quads")
    return opts, events


# -- hypothesis strategies ----------------------------------------------------

_iri_chars = st.characters(
    blacklist_categories=("Cs", "Cc"),
    blacklist_characters=' <>"{}|^`\\\x7f',
)
iris = st.builds(
    lambda scheme, path: Iri(f"{scheme}:{path}"),
    st.sampled_from(["http", "urn", "tag", "x-y"]),
    st.text(_iri_chars, max_size=30),
)
bnodes = st.from_regex(r"\A[A-Za-z0-9_][A-Za-z0-9_\-]{0,6}(\.[A-Za-z0-9_\-]{1,4})?\Z").map(BlankNode)
lang_tags = st.from_regex(r"\A[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8}){0,2}\Z")
_lex = st.text(st.characters(blacklist_categories=("Cs",)), max_size=20)
literals = st.one_of(
    st.builds(Literal, _lex),
    st.builds(lambda lex, tag: Literal(lex, language=tag), _lex, lang_tags),
    st.builds(lambda lex, dt: Literal(lex, datatype=dt.value), _lex, iris),
)
subjects = st.one_of(iris, bnodes)
objects = st.one_of(iris, bnodes, literals)
graph_names = st.one_of(st.just(DEFAULT_GRAPH), iris, bnodes)
triples = st.builds(Triple, subjects, iris, objects)
quads = st.builds(Quad, subjects, iris, objects, graph_names)


@st.composite
def statement_runs(draw, quad: bool = False, max_size: int = 40):
    """Statements drawn from a small pool so repeats and table reuse happen."""
    pool_s = draw(st.lists(subjects, min_size=1, max_size=5))
    pool_p = draw(st.lists(iris, min_size=1, max_size=4))
    pool_o = draw(st.lists(objects, min_size=1, max_size=6))
    pool_g = draw(st.lists(graph_names, min_size=1, max_size=3))
    n = draw(st.integers(1, max_size))
    out = []
    for _ in range(n):
        s = draw(st.sampled_from(pool_s))
        p = draw(st.sampled_from(pool_p))
        o = draw(st.sampled_from(pool_o))
        out.append(Quad(s, p, o, draw(st.sampled_from(pool_g))) if quad else Triple(s, p, o))
    return out


small_caps = st.tuples(st.sampled_from([8, 9, 16]), st.integers(1, 5), st.integers(1, 4))
