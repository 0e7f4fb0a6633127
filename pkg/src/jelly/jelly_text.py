"""Human-readable dump of frames, for debugging delta and table state.

Each row becomes one line. Ids written as 0 on the wire are shown with the
id they resolve to, e.g. ``name[0⇒3]`` or ``iri(0⇒1,0⇒3)``. Positions left
out of a statement row print as ``<repeat>``.
"""

from __future__ import annotations

from .messages import (
    DatatypeEntry,
    Frame,
    GraphEndRow,
    GraphStartRow,
    NameEntry,
    PrefixEntry,
    QuadRow,
    StreamOptions,
    TripleRow,
    WireBnode,
    WireDefaultGraph,
    WireIri,
    WireLiteral,
)
from .terms import escape_string

ARROW = "⇒"


def _quote(text: str) -> str:
    return f'"{escape_string(text)}"'


def _id(wire: int, resolved: int) -> str:
    return str(wire) if wire == resolved else f"{wire}{ARROW}{resolved}"


class JellyTextRenderer:
    """Renders frames in stream order, tracking the delta state needed to resolve ids."""

    def __init__(self):
        self.last_set = {NameEntry: 0, PrefixEntry: 0, DatatypeEntry: 0}
        self.last_prefix_id = 0
        self.last_name_id = 0

    def _entry(self, row) -> str:
        resolved = row.id or self.last_set[row.__class__] + 1
        self.last_set[row.__class__] = resolved
        label = {NameEntry: "name", PrefixEntry: "prefix", DatatypeEntry: "datatype"}[row.__class__]
        return f"{label}[{_id(row.id, resolved)}] = {_quote(row.value)}"

    def _term(self, t) -> str:
        if t is None:
            return "<repeat>"
        cls = t.__class__
        if cls is WireIri:
            pid = t.prefix_id or self.last_prefix_id
            nid = t.name_id or self.last_name_id + 1
            self.last_prefix_id, self.last_name_id = pid, nid
            return f"iri({_id(t.prefix_id, pid)},{_id(t.name_id, nid)})"
        if cls is WireBnode:
            return f"bnode({_quote(t.label)})"
        if cls is WireLiteral:
            extra = ""
            if t.langtag:
                extra = f",@{t.langtag}"
            elif t.datatype_id:
                extra = f",dt={t.datatype_id}"
            return f"literal({_quote(t.lexical)}{extra})"
        if cls is WireDefaultGraph:
            return "default"
        return repr(t)

    def row(self, row) -> str:
        cls = row.__class__
        if cls is TripleRow:
            return f"triple s={self._term(row.subject)} p={self._term(row.predicate)} o={self._term(row.object)}"
        if cls is QuadRow:
            return (
                f"quad s={self._term(row.subject)} p={self._term(row.predicate)} "
                f"o={self._term(row.object)} g={self._term(row.graph)}"
            )
        if cls in self.last_set:
            return self._entry(row)
        if cls is StreamOptions:
            line = (
                f"options physical={row.physical_type.name} logical={row.logical_type.name} "
                f"name={row.max_name_table} prefix={row.max_prefix_table} dt={row.max_datatype_table} "
                f"version={row.version}"
            )
            if row.stream_name:
                line += f" stream={_quote(row.stream_name)}"
            return line
        if cls is GraphStartRow:
            return f"graph_start g={self._term(row.graph)}"
        if cls is GraphEndRow:
            return "graph_end"
        return repr(row)

    def advance(self, frame: Frame) -> None:
        """Update state for a frame without rendering it."""
        for r in frame.rows:
            self.row(r)

    def render(self, frame: Frame, frame_index: int) -> str:
        lines = [f"frame {frame_index} {{"]
        lines.extend("  " + self.row(r) for r in frame.rows)
        lines.append("}")
        return "\n".join(lines) + "\n"


def render_jelly_text(frame: Frame, frame_index: int = 0, renderer: JellyTextRenderer | None = None) -> str:
    """Render one frame. Pass the same *renderer* for consecutive frames of a stream."""
    return (renderer or JellyTextRenderer()).render(frame, frame_index)
