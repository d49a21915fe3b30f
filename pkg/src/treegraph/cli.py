"""Command-line front door.

Subcommands: convert, validate, edit, stats, serve.  Exit codes are a
stable pipeline contract: 0 success, 1 validation failure, 2 conversion
loss, 3 I/O or parse error (usage errors also exit 3).  Input "-" reads
stdin; the TREEGRAPH_FORMAT environment variable supplies the default
format where one is not given and cannot be guessed from the file
extension.
"""

from __future__ import annotations

import argparse
import os
import sys

from .ag_core import ArcType, GraphError
from . import constituency as con
from . import dependency as dep
from . import editscript
from . import formats
from .formats import ConversionLossError, ParseError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_LOSS = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors must not collide with exit 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, "%s: error: %s\n" % (self.prog, message))


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _pick_format(explicit: str | None, path: str) -> str:
    fmt = explicit or (formats.guess_format(path) if path != "-" else None) \
        or os.environ.get("TREEGRAPH_FORMAT")
    if not fmt:
        raise ParseError(
            "cannot determine format for %r: pass --format or set TREEGRAPH_FORMAT"
            % path)
    if fmt not in formats.FORMAT_IDS:
        raise ParseError("unknown format %r (expected one of %s)"
                         % (fmt, ", ".join(formats.FORMAT_IDS)))
    return fmt


def _load(path: str, explicit_format: str | None):
    fmt = _pick_format(explicit_format, path)
    return fmt, formats.read_corpus(fmt, _read_input(path))


def cmd_convert(args) -> int:
    try:
        _, docs = _load(args.input, args.from_format)
        losses = []
        for i, doc in enumerate(docs, 1):
            try:
                formats.write_corpus(args.to, [doc],
                                     allow_unlabeled=args.allow_unlabeled)
            except ConversionLossError as exc:
                losses.append("sentence %d: %s" % (i, exc))
        if losses:
            for line in losses:
                print(line, file=sys.stderr)
            return EXIT_LOSS
        _write_output(args.output, formats.write_corpus(
            args.to, docs, allow_unlabeled=args.allow_unlabeled))
        return EXIT_OK
    except (ParseError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO


def _unlabeled_warnings(doc) -> list[str]:
    g = doc.graph
    tops = g.children_in_order(None)
    out = []
    for arc in g.arcs(ArcType.PHRASAL):
        if arc.label:
            continue
        is_wrapper = arc.parent is None and len(tops) == 1
        if not is_wrapper:
            out.append("arc %s has no label" % arc.id)
    return out


def cmd_validate(args) -> int:
    try:
        _, docs = _load(args.input, args.format)
    except (ParseError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO
    failed = False
    for i, doc in enumerate(docs, 1):
        violations = doc.graph.validate()
        if args.discontinuity:
            from .ag_core import Violation
            violations += [
                Violation("discontinuity", a.id,
                          "arc %s covers a non-contiguous terminal block" % a.id)
                for a in con.discontinuities(doc.graph)]
        for v in violations:
            print("sentence %d: %s" % (i, v))
            failed = True
        for w in _unlabeled_warnings(doc):
            print("sentence %d: warning: %s" % (i, w))
    if not failed:
        print("%d sentence(s), no violations" % len(docs))
    return EXIT_INVALID if failed else EXIT_OK


def cmd_edit(args) -> int:
    try:
        fmt, docs = _load(args.input, args.format)
        script = editscript.parse_script(_read_input(args.script))
    except (ParseError, OSError, GraphError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO
    out_fmt = args.output_format or fmt
    try:
        for doc in docs:
            editscript.run_script(doc, script)
    except GraphError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    try:
        _write_output(args.output, formats.write_corpus(
            out_fmt, docs, allow_unlabeled=args.allow_unlabeled))
    except ConversionLossError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_LOSS
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_stats(args) -> int:
    try:
        _, docs = _load(args.input, args.format)
    except (ParseError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO
    counts = {t.value: 0 for t in ArcType}
    crossings = 0
    coindexed = 0
    for doc in docs:
        g = doc.graph
        for arc in g.arcs():
            counts[arc.type.value] += 1
            if arc.fields.get("coindex"):
                coindexed += 1
        if doc.kind == "dependency":
            crossings += len(dep.projectivity_report(
                dep.DependencyView(g, doc.root)))
        else:
            crossings += len(con.discontinuities(g))
    print("sentences: %d" % len(docs))
    for name in ("word", "phrasal", "root", "trace", "pred", "arg", "mod"):
        print("%s arcs: %d" % (name, counts[name]))
    print("coindexed arcs: %d" % coindexed)
    print("crossing/discontinuous: %d" % crossings)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import DocumentStore, create_app

    store = DocumentStore.from_corpus(args.corpus)
    app = create_app(store)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _Parser(prog="treegraph",
                     description="treebank conversion, validation and editing")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="translate between treebank formats")
    p.add_argument("--from", dest="from_format", metavar="FORMAT")
    p.add_argument("--to", required=True, metavar="FORMAT")
    p.add_argument("--allow-unlabeled", action="store_true",
                   help="serialize nodes that still carry the empty label")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("validate", help="check graph invariants")
    p.add_argument("--format", metavar="FORMAT")
    p.add_argument("--discontinuity", action="store_true",
                   help="also report constituents over non-contiguous terminals")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("edit", help="apply an edit script to every sentence")
    p.add_argument("--format", metavar="FORMAT")
    p.add_argument("--output-format", metavar="FORMAT",
                   help="write result in a different (writable) format")
    p.add_argument("--script", required=True)
    p.add_argument("--allow-unlabeled", action="store_true")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_edit)

    p = sub.add_parser("stats", help="corpus counts")
    p.add_argument("--format", metavar="FORMAT")
    p.add_argument("input")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("serve", help="run the HTTP edit service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--corpus", required=True)
    p.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
