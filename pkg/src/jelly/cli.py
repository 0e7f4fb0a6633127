"""``jelly rdf <command>``: convert, transcode, inspect, validate and benchmark files.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 unreadable input
(parse or decode error). Payload goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import io
import logging
import os
import sys
import time
from dataclasses import dataclass, replace
from typing import BinaryIO, Iterator

from . import __version__
from .decode import Decoder, iter_frames
from .encode import DEFAULT_ROWS_PER_FRAME, JellyWriter
from .errors import DecodeError, DecodeErrorKind, InvalidOptions, JellyError, QuadInTriplesOutput, RdfSyntaxError, WireError
from .isomorphism import TooManyBlankNodes, find_bijection, naive_diff
from .jelly_text import JellyTextRenderer
from .messages import (
    DatatypeEntry,
    GraphEndRow,
    GraphStartRow,
    LogicalType,
    NameEntry,
    PhysicalType,
    PrefixEntry,
    QuadRow,
    StreamOptions,
    TripleRow,
    decode_frame,
)
from .ntriples import (
    flatten_events,
    group_quads,
    iter_nq_lines,
    iter_nt_lines,
    parse_nq_stream,
    parse_nt_stream,
)
from .terms import DEFAULT_GRAPH, Quad, Triple
from .transcode import Transcoder
from .wire import write_delimited_block

log = logging.getLogger("jelly")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_INPUT = 3

RDF_FORMATS = ("nt", "nq")
OUT_FORMATS = ("nt", "nq", "jelly-text")
_EXTENSIONS = {".nt": "nt", ".nq": "nq", ".jelly": "jelly", ".jt": "jelly-text", ".txt": "jelly-text"}


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    pass


# -- frame ranges -----------------------------------------------------------------

@dataclass(frozen=True)
class FrameRange:
    """Inclusive, 0-based frame range; ``end`` None means open-ended."""

    start: int = 0
    end: int | None = None

    def __contains__(self, index: int) -> bool:
        return index >= self.start and (self.end is None or index <= self.end)

    def past(self, index: int) -> bool:
        return self.end is not None and index > self.end

    @classmethod
    def parse(cls, text: str) -> "FrameRange":
        text = text.strip()
        try:
            if ".." in text:
                left, right = text.split("..", 1)
                start = int(left) if left else 0
                end = int(right) if right else None
            else:
                start = end = int(text)
        except ValueError:
            raise UsageError(f"malformed frame range {text!r}; use a..b, a.., ..b or a") from None
        if start < 0 or (end is not None and end < start):
            raise UsageError(f"malformed frame range {text!r}: need 0 <= start <= end")
        return cls(start, end)


# -- I/O helpers --------------------------------------------------------------------

def _detect(path: str | None, explicit: str | None, allowed: tuple, default: str | None = None) -> str:
    if explicit:
        if explicit not in allowed:
            raise UsageError(f"unsupported format {explicit!r}; supported: {', '.join(allowed)}")
        return explicit
    if path and path != "-":
        ext = os.path.splitext(path)[1].lower()
        fmt = _EXTENSIONS.get(ext)
        if fmt in allowed:
            return fmt
        if default is None or ext:
            raise UsageError(
                f"cannot use format of {path!r} here; supported: {', '.join(allowed)} (use an explicit format flag)"
            )
    if default is None:
        raise UsageError(f"cannot detect format; pass it explicitly ({', '.join(allowed)})")
    return default


def _open_in(path: str | None, stdin: BinaryIO) -> BinaryIO:
    if path is None or path == "-":
        return stdin
    try:
        return open(path, "rb")
    except OSError as exc:
        raise UsageError(f"cannot open {path}: {exc.strerror}") from None


def _open_out(path: str | None, stdout: BinaryIO) -> BinaryIO:
    if path is None or path == "-":
        return stdout
    try:
        return open(path, "wb")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _text_lines(stream: BinaryIO) -> Iterator[str]:
    return io.TextIOWrapper(stream, encoding="utf-8", newline="")


def _rows_per_frame(value: int | None) -> int:
    if value is not None:
        rpf = value
    else:
        env = os.environ.get("JELLY_ROWS_PER_FRAME")
        try:
            rpf = int(env) if env else DEFAULT_ROWS_PER_FRAME
        except ValueError:
            raise UsageError(f"JELLY_ROWS_PER_FRAME must be an integer, got {env!r}") from None
    if rpf < 1:
        raise UsageError(f"rows per frame must be >= 1, got {rpf}")
    return rpf


def _parse_rdf(stream: BinaryIO, fmt: str):
    lines = _text_lines(stream)
    return parse_nq_stream(lines) if fmt == "nq" else parse_nt_stream(lines)


def _as_quads(statements):
    for st in statements:
        if st.__class__ is Triple:
            yield Quad(st[0], st[1], st[2], DEFAULT_GRAPH)
        else:
            yield st


# -- commands ---------------------------------------------------------------------------

def _table_overrides(args) -> dict:
    return {
        "name": args.max_name_table,
        "prefix": args.max_prefix_table,
        "datatype": args.max_datatype_table,
    }


def cmd_to_jelly(args, stdin: BinaryIO, stdout: BinaryIO) -> int:
    fmt = _detect(args.input, args.in_format, RDF_FORMATS, default="nq")
    rpf = _rows_per_frame(args.rows_per_frame)
    if args.physical:
        physical = PhysicalType[args.physical.upper()]
    else:
        physical = PhysicalType.QUADS if fmt == "nq" else PhysicalType.TRIPLES
    if args.logical:
        logical = LogicalType[args.logical.upper().replace("-", "_")]
    else:
        logical = {
            PhysicalType.TRIPLES: LogicalType.FLAT_TRIPLES,
            PhysicalType.QUADS: LogicalType.FLAT_QUADS,
            PhysicalType.GRAPHS: LogicalType.DATASETS if fmt == "nq" else LogicalType.GRAPHS,
        }[physical]
    opts = StreamOptions(physical_type=physical, logical_type=logical, stream_name=args.stream_name or "")
    opts = opts.with_tables(**_table_overrides(args))
    try:
        opts.validate()
    except InvalidOptions as exc:
        raise UsageError(str(exc)) from None

    source = _open_in(args.input, stdin)
    statements = _parse_rdf(source, fmt)
    if physical == PhysicalType.TRIPLES:
        if fmt == "nq":
            statements = (_triple_of(q) for q in statements)
        events = statements
    elif physical == PhysicalType.QUADS:
        events = _as_quads(statements)
    else:
        events = group_quads(_as_quads(statements), end_of_group=True)

    out = _open_out(args.to, stdout)
    try:
        writer = JellyWriter(out, opts, rpf)
        writer.write_all(events)
        writer.close()
    finally:
        if out is not stdout:
            out.close()
        if source is not stdin:
            source.close()
    log.info("wrote %d frames", writer.encoder.frames_emitted)
    return EXIT_OK


def _triple_of(q):
    if q[3] is not DEFAULT_GRAPH:
        raise QuadInTriplesOutput(f"statement in named graph {q[3]!r} cannot go into a TRIPLES stream")
    return Triple(q[0], q[1], q[2])


def cmd_from_jelly(args, stdin: BinaryIO, stdout: BinaryIO) -> int:
    out_fmt = _detect(args.to, args.out_format, OUT_FORMATS, default="nq")
    selection = FrameRange.parse(args.take_frames) if args.take_frames else FrameRange()
    source = _open_in(args.input, stdin)
    out = _open_out(args.to, stdout)
    try:
        decoder = Decoder()
        renderer = JellyTextRenderer() if out_fmt == "jelly-text" else None
        options_seen = None
        for index, payload in enumerate(iter_frames(source)):
            if selection.past(index):
                break
            if renderer is not None:
                frame = decode_frame(payload)
                decoder.decode_frame_events(frame)
                if index in selection:
                    out.write(renderer.render(frame, index).encode("utf-8"))
                else:
                    renderer.advance(frame)
                continue
            events = decoder.decode_payload(payload)
            if options_seen is None:
                options_seen = decoder.options
            if index not in selection:
                continue
            as_quads = out_fmt == "nq"
            statements = flatten_events(events, as_quads)
            lines = iter_nq_lines(statements) if as_quads else iter_nt_lines(statements)
            out.write("".join(lines).encode("utf-8"))
    finally:
        if out is not stdout:
            out.close()
        else:
            out.flush()
        if source is not stdin:
            source.close()
    return EXIT_OK


def _read_first_options(payload: bytes) -> StreamOptions:
    frame = decode_frame(payload)
    if not frame.rows or frame.rows[0].__class__ is not StreamOptions:
        raise DecodeError(DecodeErrorKind.NO_OPTIONS_FIRST,
                          "first row of the stream is not an options row", frame_index=0, row_index=0)
    return frame.rows[0]


def cmd_transcode(args, stdin: BinaryIO, stdout: BinaryIO) -> int:
    rpf = _rows_per_frame(args.rows_per_frame)
    paths = args.inputs or ["-"]
    sources = [_open_in(p, stdin) for p in paths]
    out = _open_out(args.to, stdout)
    try:
        tc = None
        for source in sources:
            frames = iter_frames(source)
            for payload in frames:
                if tc is None:
                    first = _read_first_options(payload)
                    opts = replace(first, stream_name=args.stream_name if args.stream_name is not None else first.stream_name)
                    opts = opts.with_tables(**_table_overrides(args))
                    try:
                        opts.validate()
                    except InvalidOptions as exc:
                        raise UsageError(str(exc)) from None
                    tc = Transcoder(opts, rpf)
                for frame in tc.ingest_frame(payload):
                    _write_block(out, frame)
            if tc is not None:
                tc.end_input()
        if tc is not None:
            frame = tc.finish()
            if frame is not None:
                _write_block(out, frame)
            log.info("transcoded %d inputs, %d statements", tc.inputs_seen, tc.statements)
    finally:
        if out is not stdout:
            out.close()
        else:
            out.flush()
        for s in sources:
            if s is not stdin:
                s.close()
    return EXIT_OK


def _write_block(out: BinaryIO, payload: bytes) -> None:
    write_delimited_block(out, payload)


_COUNT_KEYS = (
    "rows", "options_rows", "triples", "quads", "graph_starts", "graph_ends",
    "name_entries", "prefix_entries", "datatype_entries", "statements", "bytes",
)
_ROW_KEY = {
    StreamOptions: "options_rows",
    TripleRow: "triples",
    QuadRow: "quads",
    GraphStartRow: "graph_starts",
    GraphEndRow: "graph_ends",
    NameEntry: "name_entries",
    PrefixEntry: "prefix_entries",
    DatatypeEntry: "datatype_entries",
}


def frame_counts(payload: bytes, frame) -> dict:
    counts = dict.fromkeys(_COUNT_KEYS, 0)
    for row in frame.rows:
        counts["rows"] += 1
        counts[_ROW_KEY[row.__class__]] += 1
    counts["statements"] = counts["triples"] + counts["quads"]
    counts["bytes"] = len(payload)
    return counts


def _options_lines(opts: StreamOptions | None) -> list[str]:
    if opts is None:
        return []
    return [
        f"stream_name: {opts.stream_name}".rstrip(),
        f"physical_type: {opts.physical_type.name}",
        f"logical_type: {opts.logical_type.name}",
        f"max_name_table: {opts.max_name_table}",
        f"max_prefix_table: {opts.max_prefix_table}",
        f"max_datatype_table: {opts.max_datatype_table}",
        f"version: {opts.version}",
    ]


def cmd_inspect(args, stdin: BinaryIO, stdout: BinaryIO) -> int:
    source = _open_in(args.input, stdin)
    totals = dict.fromkeys(_COUNT_KEYS, 0)
    per_frame = []
    decoder = Decoder()
    n_frames = 0
    try:
        for index, payload in enumerate(iter_frames(source)):
            frame = decode_frame(payload)
            decoder.decode_frame_events(frame)
            counts = frame_counts(payload, frame)
            for k, v in counts.items():
                totals[k] += v
            if args.per_frame:
                per_frame.append(counts)
            n_frames += 1
    finally:
        if source is not stdin:
            source.close()
    lines = _options_lines(decoder.options)
    lines.append(f"frames: {n_frames}")
    lines.extend(f"{k}: {totals[k]}" for k in _COUNT_KEYS)
    for index, counts in enumerate(per_frame):
        lines.append(f"[frame {index}]")
        lines.extend(f"  {k}: {counts[k]}" for k in _COUNT_KEYS)
    stdout.write(("\n".join(lines) + "\n").encode("utf-8"))
    stdout.flush()
    return EXIT_OK


_EXPECTABLE = {
    "max-name-table-size": "max_name_table",
    "max-prefix-table-size": "max_prefix_table",
    "max-datatype-table-size": "max_datatype_table",
    "physical-type": "physical_type",
    "logical-type": "logical_type",
    "stream-name": "stream_name",
    "version": "version",
}


def parse_expected_options(text: str) -> dict:
    out = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in item:
            raise UsageError(f"expected key=value in --expect-options, got {item!r}")
        key, value = (s.strip() for s in item.split("=", 1))
        key = key.removeprefix("opt.").replace("_", "-")
        attr = _EXPECTABLE.get(key)
        if attr is None:
            raise UsageError(f"unknown option {key!r}; known: {', '.join(sorted(_EXPECTABLE))}")
        out[attr] = value
    return out


def _options_mismatches(opts: StreamOptions, expected: dict) -> list[str]:
    problems = []
    for attr, want in expected.items():
        have = getattr(opts, attr)
        shown = have.name if hasattr(have, "name") else str(have)
        if shown.upper().replace("-", "_") != want.upper().replace("-", "_"):
            problems.append(f"option {attr}: file has {shown}, expected {want}")
    return problems


def cmd_validate(args, stdin: BinaryIO, stdout: BinaryIO) -> int:
    expected = parse_expected_options(args.expect_options) if args.expect_options else None
    ref_fmt = None
    if args.compare_to:
        ref_fmt = _detect(args.compare_to, args.compare_format, RDF_FORMATS + ("jelly",))
    source = _open_in(args.input, stdin)
    decoder = Decoder()
    statements = []
    try:
        for payload in iter_frames(source):
            events = decoder.decode_payload(payload)
            if args.compare_to:
                statements.extend(flatten_events(events, as_quads=True))
        decoder.finish()
    finally:
        if source is not stdin:
            source.close()

    problems = []
    if decoder.options is None:
        log.info("stream is empty")
    if expected:
        if decoder.options is None:
            problems.append("stream has no options row to compare")
        else:
            problems += _options_mismatches(decoder.options, expected)
    if args.compare_to:
        ref_stream = _open_in(args.compare_to, stdin)
        try:
            if ref_fmt == "jelly":
                ref_events = []
                ref_dec = Decoder()
                for payload in iter_frames(ref_stream):
                    ref_events.extend(ref_dec.decode_payload(payload))
                reference = list(flatten_events(ref_events, as_quads=True))
            else:
                reference = list(_as_quads(_parse_rdf(ref_stream, ref_fmt)))
        finally:
            ref_stream.close()
        try:
            mapping = find_bijection(statements, reference)
        except TooManyBlankNodes as exc:
            raise UsageError(str(exc)) from None
        if mapping is None:
            only_file, only_ref = naive_diff(statements, reference)
            problems.append(
                f"contents differ from {args.compare_to}: {len(set(statements))} distinct statements in file, "
                f"{len(set(reference))} in reference; {len(only_file)} only in file, {len(only_ref)} only in reference"
            )
            for st in only_file[:5]:
                problems.append(f"  - only in file: {_nq(st)}")
            for st in only_ref[:5]:
                problems.append(f"  + only in reference: {_nq(st)}")
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def _nq(st) -> str:
    return "".join(iter_nq_lines([st])).rstrip("\n")


def _best_of(repeat: int, fn):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def ntriples_size(statements) -> int:
    return sum(len(line.encode("utf-8")) for line in iter_nq_lines(statements))


def cmd_bench(args, stdin: BinaryIO, stdout: BinaryIO) -> int:
    from .corpus import synthetic_triples
    from .decode import decode_file
    from .encode import encode_events

    rpf = _rows_per_frame(args.rows_per_frame)
    lines = []
    if args.synthetic:
        statements = synthetic_triples(n_triples=args.synthetic)
        opts = StreamOptions().with_tables(**_table_overrides(args))
        source_desc = f"synthetic:{args.synthetic}"
    else:
        if args.input is None:
            raise UsageError("bench needs an input file or --synthetic N")
        fmt = _detect(args.input, args.in_format, RDF_FORMATS + ("jelly",))
        source = _open_in(args.input, stdin)
        try:
            if fmt == "jelly":
                data = source.read()
                if args.mode == "decode":
                    best, events = _best_of(args.repeat, lambda: list(decode_file(data)))
                    n = sum(1 for e in events if e.__class__ is Triple or e.__class__ is Quad)
                    stdout.write(f"statements: {n}\ndecode_mtps: {n / best / 1e6:.3f}\n".encode())
                    return EXIT_OK
                events = list(decode_file(data))
                statements = [e for e in events if e.__class__ is Triple or e.__class__ is Quad]
            else:
                statements = list(_parse_rdf(source, fmt))
        finally:
            if source is not stdin:
                source.close()
        if statements and statements[0].__class__ is Quad:
            opts = StreamOptions(PhysicalType.QUADS, LogicalType.FLAT_QUADS).with_tables(**_table_overrides(args))
        else:
            opts = StreamOptions().with_tables(**_table_overrides(args))
        source_desc = args.input

    n = len(statements)
    nt_bytes = ntriples_size(statements)
    lines.append(f"source: {source_desc}")
    lines.append(f"statements: {n}")
    t_enc, data = _best_of(args.repeat, lambda: encode_events(statements, opts, rpf))
    if args.mode in ("encode", "roundtrip"):
        lines.append(f"encode_mtps: {n / t_enc / 1e6:.3f}")
        lines.append(f"jelly_bytes: {len(data)}")
        lines.append(f"ntriples_bytes: {nt_bytes}")
        lines.append(f"ratio_vs_ntriples: {len(data) / nt_bytes if nt_bytes else 0:.4f}")
    status = EXIT_OK
    if args.mode in ("decode", "roundtrip"):
        t_dec, decoded = _best_of(args.repeat, lambda: list(decode_file(data)))
        lines.append(f"decode_mtps: {n / t_dec / 1e6:.3f}")
        if args.mode == "roundtrip":
            same = decoded == list(statements)
            lines.append(f"roundtrip_equal: {str(same).lower()}")
            status = EXIT_OK if same else EXIT_INVALID
    stdout.write(("\n".join(lines) + "\n").encode("utf-8"))
    stdout.flush()
    return status


# -- argument parsing ----------------------------------------------------------------

def _bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("true", "1", "yes", "on"):
        return True
    if value in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _add_table_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--opt.max-name-table-size", dest="max_name_table", type=int, metavar="N")
    p.add_argument("--opt.max-prefix-table-size", dest="max_prefix_table", type=int, metavar="N")
    p.add_argument("--opt.max-datatype-table-size", dest="max_datatype_table", type=int, metavar="N")
    p.add_argument("--opt.stream-name", dest="stream_name", metavar="NAME")
    p.add_argument("--rows-per-frame", type=int, metavar="N",
                   help=f"rows per frame (default: $JELLY_ROWS_PER_FRAME or {DEFAULT_ROWS_PER_FRAME})")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jelly", description="Jelly RDF binary format tool")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    rdf = top.add_parser("rdf", help="RDF stream commands")
    sub = rdf.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("to-jelly", help="convert N-Triples / N-Quads to Jelly")
    p.add_argument("input", nargs="?", help="input file (default: stdin)")
    p.add_argument("--to", help="output file (default: stdout)")
    p.add_argument("--in-format", choices=RDF_FORMATS)
    p.add_argument("--physical", choices=("triples", "quads", "graphs"))
    p.add_argument("--logical", choices=("flat-triples", "flat-quads", "graphs", "datasets"))
    _add_table_flags(p)
    p.set_defaults(func=cmd_to_jelly)

    p = sub.add_parser("from-jelly", help="convert Jelly to N-Triples / N-Quads / jelly-text")
    p.add_argument("input", nargs="?", help="input file (default: stdin)")
    p.add_argument("--to", help="output file (default: stdout)")
    p.add_argument("--out-format", help=f"one of {', '.join(OUT_FORMATS)}")
    p.add_argument("--take-frames", metavar="RANGE", help="0-based inclusive frame range: a..b, a.., ..b or a")
    p.set_defaults(func=cmd_from_jelly)

    p = sub.add_parser("transcode", help="merge and recompress Jelly streams")
    p.add_argument("inputs", nargs="*", help="input files (default: concatenated streams on stdin)")
    p.add_argument("--to", help="output file (default: stdout)")
    _add_table_flags(p)
    p.set_defaults(func=cmd_transcode)

    p = sub.add_parser("inspect", help="print statistics about a Jelly file")
    p.add_argument("input", nargs="?", help="input file (default: stdin)")
    p.add_argument("--per-frame", type=_bool, nargs="?", const=True, default=False, metavar="BOOL")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("validate", help="check a Jelly file, optionally against reference data")
    p.add_argument("input", nargs="?", help="input file (default: stdin)")
    p.add_argument("--compare-to", metavar="FILE", help="reference RDF file (.nt, .nq or .jelly)")
    p.add_argument("--compare-format", choices=RDF_FORMATS + ("jelly",))
    p.add_argument("--expect-options", metavar="K=V[,K=V...]",
                   help="e.g. max-name-table-size=8192,physical-type=TRIPLES")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="measure encode / decode throughput")
    p.add_argument("input", nargs="?")
    p.add_argument("--in-format", choices=RDF_FORMATS + ("jelly",))
    p.add_argument("--mode", choices=("encode", "decode", "roundtrip"), default="roundtrip")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--synthetic", type=int, metavar="N", help="benchmark a generated corpus of N triples")
    _add_table_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None, stdin: BinaryIO | None = None, stdout: BinaryIO | None = None) -> int:
    stdin = stdin if stdin is not None else sys.stdin.buffer
    stdout = stdout if stdout is not None else sys.stdout.buffer
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"jelly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="jelly: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args, stdin, stdout)
    except UsageError as exc:
        print(f"jelly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RdfSyntaxError as exc:
        print(f"jelly: syntax error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DecodeError, WireError) as exc:
        print(f"jelly: decode error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (JellyError, UnicodeDecodeError) as exc:
        print(f"jelly: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
