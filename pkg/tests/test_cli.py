"""Golden stdout and exit codes for ``jelly rdf <command>``."""

from __future__ import annotations

import io
import random

import pytest

from gen import random_statements
from jelly.cli import main
from jelly.encode import encode_events, new_encoder
from jelly.messages import LogicalType, PhysicalType, StreamOptions
from jelly.ntriples import iter_nq_lines, iter_nt_lines
from jelly.terms import BlankNode, Iri, Literal, Quad, Triple
from jelly.wire import write_delimited_block

FIXTURE_OPTS = StreamOptions(max_name_table=8, max_prefix_table=4, max_datatype_table=4)
T1 = Triple(Iri("http://e.org/s"), Iri("http://e.org/p"), Literal("hello"))
T2 = Triple(Iri("http://e.org/s"), Iri("http://e.org/p"), Iri("http://e.org/o"))

FIXTURE_HEX = (
    "440a0e0a0c1001180120082804300438010a11420f120d687474703a2f2f652e6f72672f"
    "0a053a031201730a053a031201700a11120f0a0208011a0032070a0568656c6c6f"
    "0d0a053a0312016f0a0412022200"
)

INSPECT_TOTALS = """\
stream_name:
physical_type: TRIPLES
logical_type: FLAT_TRIPLES
max_name_table: 8
max_prefix_table: 4
max_datatype_table: 4
version: 1
frames: 2
rows: 7
options_rows: 1
triples: 2
quads: 0
graph_starts: 0
graph_ends: 0
name_entries: 3
prefix_entries: 1
datatype_entries: 0
statements: 2
bytes: 81
"""

INSPECT_FRAMES = """\
[frame 0]
  rows: 5
  options_rows: 1
  triples: 1
  quads: 0
  graph_starts: 0
  graph_ends: 0
  name_entries: 2
  prefix_entries: 1
  datatype_entries: 0
  statements: 1
  bytes: 68
[frame 1]
  rows: 2
  options_rows: 0
  triples: 1
  quads: 0
  graph_starts: 0
  graph_ends: 0
  name_entries: 1
  prefix_entries: 0
  datatype_entries: 0
  statements: 1
  bytes: 13
"""

JELLY_TEXT = """\
frame 0 {
  options physical=TRIPLES logical=FLAT_TRIPLES name=8 prefix=4 dt=4 version=1
  prefix[0⇒1] = "http://e.org/"
  name[0⇒1] = "s"
  name[0⇒2] = "p"
  triple s=iri(1,0⇒1) p=iri(0⇒1,0⇒2) o=literal("hello")
}
frame 1 {
  name[0⇒3] = "o"
  triple s=<repeat> p=<repeat> o=iri(0⇒1,0⇒3)
}
"""

FIXTURE_NT = """\
<http://e.org/s> <http://e.org/p> "hello" .
<http://e.org/s> <http://e.org/p> <http://e.org/o> .
"""


def fixture_bytes() -> bytes:
    enc = new_encoder(FIXTURE_OPTS)
    enc.encode_statement(T1)
    first = enc.flush()
    enc.encode_statement(T2)
    second = enc.finish()
    out = io.BytesIO()
    write_delimited_block(out, first)
    write_delimited_block(out, second)
    return out.getvalue()


def run(*argv: str, stdin: bytes = b"") -> tuple[int, bytes]:
    out = io.BytesIO()
    code = main(["rdf", *argv], io.BytesIO(stdin), out)
    return code, out.getvalue()


@pytest.fixture
def fixture_file(tmp_path):
    path = tmp_path / "fixture.jelly"
    path.write_bytes(fixture_bytes())
    return path


def write_nt(path, statements) -> None:
    path.write_text("".join(iter_nt_lines(statements)), encoding="utf-8")


def test_fixture_file_bytes():
    assert fixture_bytes().hex() == FIXTURE_HEX


# -- inspect -----------------------------------------------------------------------


def test_inspect_golden(fixture_file):
    code, out = run("inspect", str(fixture_file))
    assert code == 0
    assert out.decode() == INSPECT_TOTALS


def test_inspect_per_frame_golden(fixture_file):
    code, out = run("inspect", str(fixture_file), "--per-frame=true")
    assert code == 0
    assert out.decode() == INSPECT_TOTALS + INSPECT_FRAMES


def test_inspect_empty_file(tmp_path):
    path = tmp_path / "empty.jelly"
    path.write_bytes(b"")
    code, out = run("inspect", str(path))
    assert code == 0
    assert "frames: 0\n" in out.decode()


def test_inspect_garbage_is_input_error(tmp_path):
    path = tmp_path / "bad.jelly"
    path.write_bytes(b"\x05\x0a\x03\xff\xff")
    assert run("inspect", str(path))[0] == 3


# An independent counter: walks the raw protobuf fields of each frame with its
# own varint reader and tallies row kinds by field number.
_ROW_FIELDS = {1: "options_rows", 2: "triples", 3: "quads", 4: "graph_starts",
               5: "graph_ends", 7: "name_entries", 8: "prefix_entries", 9: "datatype_entries"}


def _varint(buf: bytes, pos: int) -> tuple[int, int]:
    shift = value = 0
    while True:
        byte = buf[pos]
        pos += 1
        value |= (byte & 0x7F) << shift
        if byte < 0x80:
            return value, pos
        shift += 7


def _fields(buf: bytes):
    pos = 0
    while pos < len(buf):
        key, pos = _varint(buf, pos)
        if key & 7 == 0:
            value, pos = _varint(buf, pos)
        else:
            n, pos = _varint(buf, pos)
            value, pos = buf[pos:pos + n], pos + n
        yield key >> 3, value


def walk_frames(data: bytes) -> list[dict]:
    frames = []
    pos = 0
    while pos < len(data):
        n, pos = _varint(data, pos)
        payload = data[pos:pos + n]
        pos += n
        counts = dict.fromkeys(_ROW_FIELDS.values(), 0)
        counts["rows"] = 0
        for number, row in _fields(payload):
            assert number == 1
            counts["rows"] += 1
            (kind, _), = _fields(row)
            counts[_ROW_FIELDS[kind]] += 1
        counts["statements"] = counts["triples"] + counts["quads"]
        counts["bytes"] = n
        frames.append(counts)
    return frames


def parse_report(text: str) -> tuple[dict, list[dict]]:
    totals, frames, current = {}, [], None
    for line in text.splitlines():
        if line.startswith("[frame "):
            current = {}
            frames.append(current)
        elif current is not None:
            key, value = line.strip().split(": ")
            current[key] = int(value)
        else:
            key, _, value = line.partition(": ")
            totals[key] = value
    return totals, frames


@pytest.mark.parametrize("seed", range(4))
def test_inspect_totals_match_frame_walker(tmp_path, seed):
    rng = random.Random(seed)
    kind = seed % 2
    statements = random_statements(rng, 300, quads=bool(kind))
    opts = StreamOptions(PhysicalType.QUADS, LogicalType.FLAT_QUADS, 16, 4, 4) if kind else StreamOptions(
        max_name_table=16, max_prefix_table=4, max_datatype_table=4)
    data = encode_events(statements, opts, rows_per_frame=37)
    path = tmp_path / "r.jelly"
    path.write_bytes(data)
    code, out = run("inspect", str(path), "--per-frame=true")
    assert code == 0
    totals, frames = parse_report(out.decode())
    oracle = walk_frames(data)
    assert int(totals["frames"]) == len(oracle) == len(frames)
    for ours, theirs in zip(frames, oracle):
        for key, value in theirs.items():
            assert ours[key] == value
    for key in oracle[0]:
        assert int(totals[key]) == sum(f[key] for f in oracle)
        assert int(totals[key]) == sum(f[key] for f in frames)


# -- from-jelly --------------------------------------------------------------------


def test_from_jelly_nt_golden(fixture_file):
    code, out = run("from-jelly", str(fixture_file), "--out-format=nt")
    assert code == 0
    assert out.decode() == FIXTURE_NT


def test_from_jelly_default_is_nquads(fixture_file):
    code, out = run("from-jelly", str(fixture_file))
    assert code == 0
    assert out.decode() == FIXTURE_NT


def test_from_jelly_text_golden(fixture_file):
    code, out = run("from-jelly", str(fixture_file), "--out-format=jelly-text")
    assert code == 0
    assert out.decode("utf-8") == JELLY_TEXT


def test_from_jelly_take_frames_keeps_table_state(fixture_file):
    code, out = run("from-jelly", str(fixture_file), "--out-format=nt", "--take-frames=1")
    assert code == 0
    assert out.decode() == "<http://e.org/s> <http://e.org/p> <http://e.org/o> .\n"
    code, out = run("from-jelly", str(fixture_file), "--out-format=jelly-text", "--take-frames=1..1")
    assert out.decode("utf-8") == JELLY_TEXT[JELLY_TEXT.index("frame 1"):]


def test_from_jelly_frame_range(tmp_path):
    statements = [Triple(Iri(f"http://e.org/s{i}"), Iri("http://e.org/p"), Literal(str(i))) for i in range(10)]
    path = tmp_path / "ten.jelly"
    enc = new_encoder(StreamOptions())
    with open(path, "wb") as fh:
        for st in statements:
            enc.encode_statement(st)
            write_delimited_block(fh, enc.flush())
    code, out = run("from-jelly", str(path), "--out-format=nt", "--take-frames=3..5")
    assert code == 0
    assert out.decode() == "".join(iter_nt_lines(statements[3:6]))
    code, out = run("from-jelly", str(path), "--out-format=jelly-text", "--take-frames=3..5")
    assert [line for line in out.decode().splitlines() if line.endswith("{")] == [
        "frame 3 {", "frame 4 {", "frame 5 {"]


@pytest.mark.parametrize("bad", ["5..3", "x", "..-1", "1..b"])
def test_from_jelly_bad_range(fixture_file, bad):
    assert run("from-jelly", str(fixture_file), f"--take-frames={bad}")[0] == 2


def test_from_jelly_rejects_turtle(fixture_file, tmp_path, capsys):
    code, _ = run("from-jelly", str(fixture_file), f"--to={tmp_path / 'out.ttl'}")
    assert code == 2
    err = capsys.readouterr().err
    assert "nt" in err and "nq" in err and "jelly-text" in err


def test_from_jelly_truncated_input(fixture_file):
    data = fixture_file.read_bytes()[:-3]
    assert run("from-jelly", "--out-format=nt", stdin=data)[0] == 3


def test_from_jelly_to_file(fixture_file, tmp_path):
    target = tmp_path / "out.nt"
    code, out = run("from-jelly", str(fixture_file), f"--to={target}")
    assert code == 0 and out == b""
    assert target.read_text() == FIXTURE_NT


# -- to-jelly ----------------------------------------------------------------------


def test_to_jelly_reproduces_fixture_frame_contents(tmp_path):
    src = tmp_path / "in.nt"
    write_nt(src, [T1, T2])
    code, out = run("to-jelly", str(src), "--opt.max-name-table-size=8",
                    "--opt.max-prefix-table-size=4", "--opt.max-datatype-table-size=4")
    assert code == 0
    # One frame holding both statements: the rows of both fixture frames in order.
    single = fixture_bytes()
    first_len, second_len = single[0], single[1 + single[0]]
    body = single[1:1 + first_len] + single[2 + first_len:]
    assert len(body) == first_len + second_len
    assert out == bytes([len(body)]) + body


def test_to_jelly_to_file_and_syntax_error(tmp_path, capsys):
    good = tmp_path / "in.nq"
    good.write_text('<http://e.org/s> <http://e.org/p> "x" <http://e.org/g> .\n')
    target = tmp_path / "out.jelly"
    code, out = run("to-jelly", str(good), f"--to={target}")
    assert code == 0 and out == b"" and target.stat().st_size > 0
    bad = tmp_path / "bad.nt"
    bad.write_text("<http://e.org/s> <http://e.org/p> <http://e.org/o> .\n<http://e.org/s> oops .\n")
    capsys.readouterr()
    code, _ = run("to-jelly", str(bad), f"--to={tmp_path / 'o.jelly'}")
    assert code == 3
    assert "line 2" in capsys.readouterr().err


def test_to_jelly_rejects_turtle_input(tmp_path):
    src = tmp_path / "in.ttl"
    src.write_text("")
    assert run("to-jelly", str(src))[0] == 2


def test_to_jelly_stdin_to_stdout():
    text = "".join(iter_nt_lines([T1, T2])).encode()
    code, out = run("to-jelly", "--in-format=nt", stdin=text)
    assert code == 0
    code, back = run("from-jelly", "--out-format=nt", stdin=out)
    assert code == 0 and back == text


def test_roundtrip_text_is_stable(tmp_path):
    rng = random.Random(7)
    statements = random_statements(rng, 400, quads=True)
    src = tmp_path / "in.nq"
    src.write_text("".join(iter_nq_lines(statements)), encoding="utf-8")
    code, first = run("to-jelly", str(src), "--rows-per-frame=50")
    assert code == 0
    code, text1 = run("from-jelly", stdin=first)
    assert code == 0
    code, second = run("to-jelly", "--in-format=nq", "--rows-per-frame=50", stdin=text1)
    assert code == 0
    code, text2 = run("from-jelly", stdin=second)
    assert code == 0
    assert text1 == text2
    assert text1.decode("utf-8") == "".join(iter_nq_lines(statements))


# -- transcode ---------------------------------------------------------------------


def test_transcode_concatenated_stdin(fixture_file):
    a = fixture_bytes()
    other = encode_events([Triple(Iri("http://f.org/x"), Iri("http://e.org/p"), Literal("bye"))])
    code, out = run("transcode", "--opt.max-name-table-size=8192", stdin=a + other)
    assert code == 0
    code, text = run("from-jelly", "--out-format=nt", stdin=out)
    assert text.decode() == FIXTURE_NT + '<http://f.org/x> <http://e.org/p> "bye" .\n'
    code, report = run("inspect", stdin=out)
    assert "max_name_table: 8192\n" in report.decode()
    assert "options_rows: 1\n" in report.decode()


def test_transcode_paths_and_file_output(fixture_file, tmp_path):
    target = tmp_path / "merged.jelly"
    code, out = run("transcode", str(fixture_file), str(fixture_file), f"--to={target}")
    assert code == 0 and out == b""
    code, text = run("from-jelly", str(target), "--out-format=nt")
    assert text.decode() == FIXTURE_NT * 2


def test_transcode_physical_type_mismatch(fixture_file, tmp_path):
    quads = tmp_path / "q.jelly"
    quads.write_bytes(encode_events(
        [Quad(*T1, Iri("http://e.org/g"))], StreamOptions(PhysicalType.QUADS, LogicalType.FLAT_QUADS)))
    assert run("transcode", str(fixture_file), str(quads))[0] == 3


# -- validate ----------------------------------------------------------------------


def test_validate_fixture(fixture_file):
    assert run("validate", str(fixture_file)) == (0, b"")


def test_validate_expect_options(fixture_file, capsys):
    assert run("validate", str(fixture_file), "--expect-options=max-name-table-size=8")[0] == 0
    assert run("validate", str(fixture_file), "--expect-options=physical-type=TRIPLES,version=1")[0] == 0
    capsys.readouterr()
    assert run("validate", str(fixture_file), "--expect-options=max-name-table-size=8192")[0] == 1
    assert "max_name_table" in capsys.readouterr().err
    assert run("validate", str(fixture_file), "--expect-options=bogus=1")[0] == 2


def test_validate_default_file_against_8192():
    data = encode_events([T1])
    assert run("validate", "--expect-options=max-name-table-size=8192", stdin=data)[0] == 1


def test_validate_undecodable(tmp_path):
    path = tmp_path / "bad.jelly"
    path.write_bytes(b"\x02\x0a\x00\x07")
    assert run("validate", str(path))[0] == 3


def _bnode_data(rng):
    statements = random_statements(rng, 200, quads=False)
    statements += [
        Triple(BlankNode("a"), Iri("http://e.org/knows"), BlankNode("b")),
        Triple(BlankNode("b"), Iri("http://e.org/knows"), BlankNode("c")),
        Triple(BlankNode("c"), Iri("http://e.org/name"), Literal("c")),
    ]
    return statements


def _rename(term, table):
    return BlankNode(table.setdefault(term.label, f"r{len(table)}")) if isinstance(term, BlankNode) else term


def test_validate_compare_to(tmp_path, capsys):
    rng = random.Random(11)
    statements = _bnode_data(rng)
    jelly = tmp_path / "data.jelly"
    jelly.write_bytes(encode_events(statements))

    same = tmp_path / "same.nt"
    write_nt(same, statements)
    assert run("validate", str(jelly), f"--compare-to={same}")[0] == 0

    table: dict = {}
    renamed = [Triple(*(_rename(t, table) for t in st)) for st in reversed(statements)]
    iso = tmp_path / "iso.nt"
    write_nt(iso, renamed)
    assert run("validate", str(jelly), f"--compare-to={iso}")[0] == 0

    mutated = list(statements)
    victim = mutated[57]
    mutated[57] = Triple(victim[0], victim[1], Literal("mutated"))
    diff = tmp_path / "diff.nt"
    write_nt(diff, mutated)
    capsys.readouterr()
    assert run("validate", str(jelly), f"--compare-to={diff}")[0] == 1
    err = capsys.readouterr().err
    assert "mutated" in err

    dropped = tmp_path / "dropped.nt"
    write_nt(dropped, statements[:-1])
    assert run("validate", str(jelly), f"--compare-to={dropped}")[0] == 1

    ref_jelly = tmp_path / "ref.jelly"
    ref_jelly.write_bytes(encode_events(renamed))
    assert run("validate", str(jelly), f"--compare-to={ref_jelly}")[0] == 0


# -- bench -------------------------------------------------------------------------

BENCH_KEYS = ["source", "statements", "encode_mtps", "jelly_bytes", "ntriples_bytes",
              "ratio_vs_ntriples", "decode_mtps", "roundtrip_equal"]


def test_bench_roundtrip_synthetic():
    code, out = run("bench", "--synthetic=2000", "--repeat=1")
    assert code == 0
    lines = out.decode().splitlines()
    assert [line.split(": ")[0] for line in lines] == BENCH_KEYS
    assert lines[0] == "source: synthetic:2000"
    assert lines[1] == "statements: 2000"
    assert lines[-1] == "roundtrip_equal: true"


def test_bench_file_modes(tmp_path):
    src = tmp_path / "in.nt"
    write_nt(src, random_statements(random.Random(3), 500, quads=False))
    code, out = run("bench", str(src), "--mode=encode", "--repeat=1")
    assert code == 0
    keys = [line.split(": ")[0] for line in out.decode().splitlines()]
    assert keys == BENCH_KEYS[:6]
    jelly = tmp_path / "in.jelly"
    code, _ = run("to-jelly", str(src), f"--to={jelly}")
    code, out = run("bench", str(jelly), "--mode=decode", "--repeat=1")
    assert code == 0
    assert out.decode().splitlines() == ["statements: 500", out.decode().splitlines()[1]]
    assert out.decode().splitlines()[1].startswith("decode_mtps: ")


def test_bench_needs_input():
    assert run("bench")[0] == 2


def test_usage_errors():
    assert run("nope")[0] == 2
    assert main([], io.BytesIO(), io.BytesIO()) == 2
