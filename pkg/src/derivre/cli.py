"""Grep-like command line front end."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .api import Regex
from .bench import STYLES, BenchSpec, gen_pattern
from .engine import MatchSpan
from .nodes import Kind, Node, pred_to_pattern, to_pattern
from .parser import UNSUPPORTED, ParseError

EXIT_MATCH, EXIT_NO_MATCH, EXIT_ERROR = 0, 1, 2
ORACLE_LIMIT = 8


@dataclass
class CliConfig:
    pattern: str
    input_path: str | None = None
    mode: str = "first"
    output: str = "text"
    skip_enabled: bool = True
    oracle_check: bool = False
    byte_offsets: bool = False


class CliError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="derivre",
        description="Search text with extended regexes (& intersection, ~ complement, lookarounds). "
                    "Matches are leftmost-longest.",
    )
    ap.add_argument("-e", "--pattern", help="pattern to search for")
    ap.add_argument("input", nargs="?", help="input file (default: standard input)")
    mode = ap.add_mutually_exclusive_group()
    mode.add_argument("--all", dest="mode", action="store_const", const="all", help="report every match")
    mode.add_argument("--count", dest="mode", action="store_const", const="count", help="print the number of matches")
    mode.add_argument("--test", dest="mode", action="store_const", const="test",
                      help="print nothing; exit 0 iff there is a match")
    out = ap.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json",
                     help="emit a JSON array of {start, end, text}")
    out.add_argument("--spans", dest="output", action="store_const", const="spans",
                     help="print matches as start:end:text")
    ap.add_argument("--no-skip", action="store_true", help="disable startset skipping")
    ap.add_argument("--byte-offsets", action="store_true", help="report UTF-8 byte offsets instead of code points")
    ap.add_argument("--oracle-check", action="store_true", help=argparse.SUPPRESS)
    ap.add_argument("--dump-ast", action="store_true", help="print the canonical pattern tree and exit")
    ap.add_argument("--dump-minterms", action="store_true", help="print the pattern's minterms and exit")
    ap.add_argument("--gen", nargs=2, metavar=("STYLE", "N"),
                    help=f"print a benchmark pattern ({', '.join(STYLES)}) for N words and exit")
    ap.set_defaults(mode="first", output="text")
    return ap


def _dump_tree(node: Node, depth: int = 0, out: list[str] | None = None) -> list[str]:
    out = [] if out is None else out
    pad = "  " * depth
    k = node.kind
    if k is Kind.PRED:
        out.append(f"{pad}Pred {pred_to_pattern(node.pred)}")
    elif k is Kind.EPS:
        out.append(f"{pad}Epsilon")
    elif k is Kind.LOOP:
        hi = "inf" if node.hi == float("inf") else node.hi
        out.append(f"{pad}Loop {{{node.lo},{hi}}}")
        _dump_tree(node.body, depth + 1, out)
    elif k is Kind.NOT:
        out.append(f"{pad}Complement")
        _dump_tree(node.body, depth + 1, out)
    elif k is Kind.LOOK:
        direction = "ahead" if node.ahead else "back"
        polarity = "negative" if node.negative else "positive"
        out.append(f"{pad}Look {direction} {polarity}")
        _dump_tree(node.body, depth + 1, out)
    else:
        kids = node.concat_items() if k is Kind.CONCAT else node.kids
        out.append(f"{pad}{k.name.capitalize()}")
        for c in kids:
            _dump_tree(c, depth + 1, out)
    return out


def _read_input(path: str | None) -> str:
    try:
        if path is None or path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as f:
                data = f.read()
    except OSError as exc:
        raise CliError(f"cannot read input: {exc}") from exc
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CliError(f"input is not valid UTF-8 at byte {exc.start}") from exc
    for k, ch in enumerate(text):
        if ord(ch) > 0xFFFF:
            raise CliError(f"input character U+{ord(ch):X} at position {k} is outside the Basic Multilingual Plane")
    return text


def _byte_mapper(text: str):
    offsets = [0]
    for ch in text:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))
    return offsets.__getitem__


def _oracle_check(regex: Regex, text: str, spans: list[MatchSpan], mode: str, err) -> bool:
    from .oracle import OracleConfig, oracle_all_matches, oracle_posix

    if len(text) > ORACLE_LIMIT:
        print(f"oracle-check: skipped, input longer than {ORACLE_LIMIT} characters", file=err)
        return True
    cfg = OracleConfig(max_len=ORACLE_LIMIT)
    expected = oracle_posix(text, regex.node, cfg)
    first = spans[0] if spans else None
    if mode == "first" or mode == "test":
        ok = first == expected
    else:
        every = oracle_all_matches(text, regex.node, cfg)
        ok = first == expected and all(sp in every for sp in spans)
    print(f"oracle-check: {'ok' if ok else f'MISMATCH engine={first} oracle={expected}'}", file=err)
    return ok


def run(config: CliConfig, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        regex = Regex(config.pattern)
    except ParseError as exc:
        print(f"pattern error at {exc.diagnostics}", file=err)
        if exc.diagnostics.kind == UNSUPPORTED and "lazy" in exc.diagnostics.message:
            print("note: lookahead-style benchmark patterns use lazy loops and are meant for "
                  "backtracking engines; try --gen conjunction N", file=err)
        return EXIT_ERROR
    try:
        text = _read_input(config.input_path)
    except CliError as exc:
        print(f"input error: {exc}", file=err)
        return EXIT_ERROR

    skip = config.skip_enabled
    if config.mode == "first" or config.mode == "test":
        m = regex.find(text, skip=skip)
        spans = [] if m is None else [m]
    else:
        spans = regex.find_all(text, skip=skip)

    if config.oracle_check and not _oracle_check(regex, text, spans, config.mode, err):
        return EXIT_ERROR

    if config.mode == "count":
        print(len(spans), file=out)
        return EXIT_MATCH
    if config.mode == "test":
        return EXIT_MATCH if spans else EXIT_NO_MATCH

    pos = _byte_mapper(text) if config.byte_offsets else (lambda k: k)
    if config.output == "json":
        rows = [{"start": pos(s), "end": pos(e), "text": text[s:e]} for s, e in spans]
        print(json.dumps(rows, ensure_ascii=False), file=out)
    else:
        for s, e in spans:
            if config.output == "spans":
                print(f"{pos(s)}:{pos(e)}:{text[s:e]}", file=out)
            else:
                print(text[s:e], file=out)
    return EXIT_MATCH if spans else EXIT_NO_MATCH


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)

    if args.gen:
        style, n = args.gen
        try:
            print(gen_pattern(BenchSpec(style, int(n))))
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        return EXIT_MATCH

    if args.pattern is None:
        ap.print_usage(sys.stderr)
        print("error: a pattern is required (-e PATTERN)", file=sys.stderr)
        return EXIT_ERROR
    if any(0xD800 <= ord(ch) <= 0xDFFF for ch in args.pattern):
        print("pattern error: pattern is not valid UTF-8", file=sys.stderr)
        return EXIT_ERROR

    if args.dump_ast or args.dump_minterms:
        try:
            regex = Regex(args.pattern)
        except ParseError as exc:
            print(f"pattern error at {exc.diagnostics}", file=sys.stderr)
            return EXIT_ERROR
        if args.dump_ast:
            print(to_pattern(regex.node))
            print("\n".join(_dump_tree(regex.node)))
        if args.dump_minterms:
            for k, m in enumerate(regex.minterms.minterms):
                print(f"{k}: {pred_to_pattern(m)}")
        return EXIT_MATCH

    config = CliConfig(
        pattern=args.pattern,
        input_path=args.input,
        mode=args.mode,
        output=args.output,
        skip_enabled=not args.no_skip,
        oracle_check=args.oracle_check,
        byte_offsets=args.byte_offsets,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
