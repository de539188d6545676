import io
import json
import subprocess
import sys

import pytest

from derivre.bench import excerpt, gen_pattern
from derivre.cli import build_parser, main
from derivre.parser import parse

PASSWORD = r".*[a-z].*&.*[A-Z].*&.*\d.*&[a-zA-Z\d]{8,}"
KING = r"King~([\s\S]*\d\d[\s\S]*)Paris"


class Stdin:
    def __init__(self, data: bytes):
        self.buffer = io.BytesIO(data)


def run(monkeypatch, capsys, args, data: str | bytes = b""):
    if isinstance(data, str):
        data = data.encode("utf-8")
    monkeypatch.setattr(sys, "stdin", Stdin(data))
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_first_match_spans(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["-e", PASSWORD, "--spans"], "xx Passw0rdXy zz")
    assert code == 0
    assert out == "3:13:Passw0rdXy\n"


def test_default_output_is_text(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["-e", KING], "The King in Paris")
    assert (code, out) == (0, "King in Paris\n")


def test_no_match_exit_codes(monkeypatch, capsys):
    assert run(monkeypatch, capsys, ["-e", KING], "The King 11 Paris")[:2] == (1, "")
    assert run(monkeypatch, capsys, ["-e", "a(?=c)", "--test"], "ab")[:2] == (1, "")
    assert run(monkeypatch, capsys, ["-e", "a(?=c)", "--test"], "ac")[:2] == (0, "")
    assert run(monkeypatch, capsys, ["-e", "z", "--all"], "ab")[0] == 1


def test_count_mode(monkeypatch, capsys):
    assert run(monkeypatch, capsys, ["-e", "a", "--count"], "banana")[:2] == (0, "3\n")
    assert run(monkeypatch, capsys, ["-e", "z", "--count"], "banana")[:2] == (0, "0\n")


def test_all_json(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["-e", "a(?=c)", "--all", "--json"], "ac ab ac")
    assert code == 0
    assert json.loads(out) == [{"start": 0, "end": 1, "text": "a"}, {"start": 6, "end": 7, "text": "a"}]


def test_byte_offsets(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["-e", r"w\w+", "--spans", "--byte-offsets"], "héllo wörld")
    assert out == "7:13:wörld\n"
    code, out, _ = run(monkeypatch, capsys, ["-e", r"w\w+", "--spans"], "héllo wörld")
    assert out == "6:11:wörld\n"


def test_input_file(tmp_path, monkeypatch, capsys):
    path = tmp_path / "in.txt"
    path.write_text("one two\nthree", encoding="utf-8")
    code, out, _ = run(monkeypatch, capsys, ["-e", r"\w+$", "--all", "--spans", str(path)])
    assert out == "4:7:two\n8:13:three\n"


def test_missing_file(monkeypatch, capsys):
    code, _, err = run(monkeypatch, capsys, ["-e", "a", "/nonexistent/file"])
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize("data", [b"\xff\xfe", "a\U0001F600".encode("utf-8")])
def test_bad_input(monkeypatch, capsys, data):
    code, out, err = run(monkeypatch, capsys, ["-e", "a"], data)
    assert code == 2 and out == "" and "input error" in err


@pytest.mark.parametrize("pattern,kind", [("a**", "syntax"), ("a{2,1}", "bad-loop-bounds"),
                                          ("a+?", "unsupported-construct")])
def test_pattern_errors(monkeypatch, capsys, pattern, kind):
    code, _, err = run(monkeypatch, capsys, ["-e", pattern], "a")
    assert code == 2
    assert f": {kind}: " in err


def test_lazy_benchmark_pattern_is_refused_with_notice(monkeypatch, capsys):
    code, _, err = run(monkeypatch, capsys, ["-e", gen_pattern("lookahead", 2)], "x")
    assert code == 2 and "note:" in err


def test_missing_pattern(monkeypatch, capsys):
    assert run(monkeypatch, capsys, [], "a")[0] == 2


def test_gen(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["--gen", "conjunction", "1"])
    assert code == 0 and out == gen_pattern("conjunction", 1) + "\n"
    assert run(monkeypatch, capsys, ["--gen", "conjunction", "13"])[0] == 2
    assert run(monkeypatch, capsys, ["--gen", "nope", "1"])[0] == 2


def test_no_skip_output_is_identical(monkeypatch, capsys):
    text = excerpt()
    for pattern in (gen_pattern("conjunction", 2), KING, r"\bwar\b"):
        a = run(monkeypatch, capsys, ["-e", pattern, "--all", "--spans"], text)
        b = run(monkeypatch, capsys, ["-e", pattern, "--all", "--spans", "--no-skip"], text)
        assert a == b


def test_dumps(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["-e", "ab|c", "--dump-ast"])
    assert code == 0 and "Union" in out
    assert parse(out.splitlines()[0]) is parse("ab|c")
    code, out, _ = run(monkeypatch, capsys, ["-e", "ab", "--dump-minterms"])
    assert out.splitlines() == ["0: [^ab]", "1: a", "2: b"]


def test_oracle_check(monkeypatch, capsys):
    code, _, err = run(monkeypatch, capsys, ["-e", "(a|ab)*", "--oracle-check", "--spans"], "abab")
    assert code == 0 and "oracle-check: ok" in err
    code, _, err = run(monkeypatch, capsys, ["-e", "a", "--oracle-check"], "a" * 20)
    assert code == 0 and "skipped" in err


def test_oracle_check_is_hidden():
    assert "--oracle-check" not in build_parser().format_help()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "derivre", "-e", "a(?=c)", "--spans"],
                          input=b"ab ac", capture_output=True)
    assert proc.returncode == 0
    assert proc.stdout == b"3:4:a\n"
