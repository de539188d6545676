"""Regenerate src/derivre/_unicode_tables.py from the host ``re`` module.

The tables freeze the BMP membership of \\d, \\w and \\s so that matching
does not drift with the Python version running the tests.
"""
import re
import sys
import unicodedata
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "derivre" / "_unicode_tables.py"


def intervals(regex):
    rx = re.compile(regex)
    out = []
    start = None
    for cp in range(0x10000):
        hit = rx.fullmatch(chr(cp)) is not None
        if hit and start is None:
            start = cp
        elif not hit and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, 0xFFFF))
    return out


def main():
    lines = [
        "# Generated by scripts/gen_unicode_tables.py; do not edit.",
        f"# Source: Python {sys.version.split()[0]} re module, Unicode {unicodedata.unidata_version}.",
        "",
    ]
    for name, rx in (("DIGIT", r"\d"), ("WORD", r"\w"), ("SPACE", r"\s")):
        ivs = intervals(rx)
        lines.append(f"{name} = (")
        for lo, hi in ivs:
            lines.append(f"    (0x{lo:04X}, 0x{hi:04X}),")
        lines.append(")")
        lines.append("")
    OUT.write_text("\n".join(lines))


if __name__ == "__main__":
    main()
