"""Concrete syntax: standard regex notation plus ``&`` (intersection) and
``~`` (complement).

Precedence from loosest to tightest: ``|``, ``&``, concatenation, prefix
``~``, postfix quantifiers.  ``~`` applies to the following atom together
with its quantifier, so ``~a*`` is ``~(a*)``.  Anchors are desugared into
lookarounds; groups never capture.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import charset as cs
from .charset import CharSet
from .nodes import (
    EPS, INF, TOP, Node, mk_complement, mk_concat, mk_inter, mk_look, mk_loop,
    mk_pred, mk_union,
)

SYNTAX = "syntax"
UNSUPPORTED = "unsupported-construct"
NON_BMP = "non-BMP-literal"
BAD_BOUNDS = "bad-loop-bounds"


@dataclass
class ParseDiagnostics:
    position: int
    message: str
    kind: str

    def __str__(self) -> str:
        return f"{self.position}: {self.kind}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostics: ParseDiagnostics):
        super().__init__(str(diagnostics))
        self.diagnostics = diagnostics


def _w() -> Node:
    return mk_pred(cs.WORD)


def desugar_anchor(name: str) -> Node:
    """Lookaround definition of an anchor given by its escape (``\\b``, ``^``, ...)."""
    ahead = lambda neg, body: mk_look(True, neg, body)  # noqa: E731
    back = lambda neg, body: mk_look(False, neg, body)  # noqa: E731
    nl = mk_pred(cs.NEWLINE)
    start = back(True, TOP)
    end = ahead(True, TOP)
    if name == r"\A":
        return start
    if name == r"\z":
        return end
    if name == "^":
        return mk_union(start, back(False, nl))
    if name == "$":
        return mk_union(end, ahead(False, nl))
    if name == r"\Z":
        return mk_union(end, ahead(False, mk_concat(nl, end)))
    w = _w()
    if name == r"\b":
        return mk_union(
            mk_concat(back(False, w), ahead(True, w)),
            mk_concat(back(True, w), ahead(False, w)),
        )
    if name == r"\B":
        return mk_union(
            mk_concat(back(False, w), ahead(False, w)),
            mk_concat(back(True, w), ahead(True, w)),
        )
    raise ValueError(f"unknown anchor {name!r}")


_SIMPLE_ESCAPES = {
    "n": 0x0A, "r": 0x0D, "t": 0x09, "f": 0x0C, "v": 0x0B, "0": 0x00, "e": 0x1B, "a": 0x07,
}
_CLASS_ESCAPES = {
    "d": cs.DIGIT, "D": ~cs.DIGIT,
    "w": cs.WORD, "W": ~cs.WORD,
    "s": cs.SPACE, "S": ~cs.SPACE,
}
_ANCHOR_ESCAPES = {"A", "z", "Z", "b", "B"}
_QUANT_START = set("*+?{")


class _Parser:
    def __init__(self, pattern: str):
        self.p = pattern
        self.i = 0

    # -- helpers
    def error(self, message: str, kind: str = SYNTAX, at: int | None = None) -> ParseError:
        pos = self.i if at is None else at
        pos = min(pos, len(self.p))
        byte_pos = len(self.p[:pos].encode("utf-8", "surrogatepass"))
        return ParseError(ParseDiagnostics(byte_pos, message, kind))

    def peek(self, k: int = 0) -> str:
        j = self.i + k
        return self.p[j] if j < len(self.p) else ""

    def eat(self, s: str) -> bool:
        if self.p.startswith(s, self.i):
            self.i += len(s)
            return True
        return False

    # -- grammar
    def parse(self) -> Node:
        for k, ch in enumerate(self.p):
            if ord(ch) > 0xFFFF:
                raise self.error(f"character U+{ord(ch):X} is outside the Basic Multilingual Plane", NON_BMP, k)
        node = self.alternation()
        if self.i < len(self.p):
            if self.peek() == ")":
                raise self.error("unbalanced ')'")
            raise self.error(f"unexpected {self.peek()!r}")
        return node

    def alternation(self) -> Node:
        alts = [self.intersection()]
        while self.eat("|"):
            alts.append(self.intersection())
        return alts[0] if len(alts) == 1 else mk_union(*alts)

    def intersection(self) -> Node:
        parts = [self.concatenation()]
        while self.eat("&"):
            parts.append(self.concatenation())
        return parts[0] if len(parts) == 1 else mk_inter(*parts)

    def concatenation(self) -> Node:
        items = []
        while self.i < len(self.p) and self.peek() not in "|&)":
            items.append(self.unary())
        return mk_concat(*items) if items else EPS

    def unary(self) -> Node:
        if self.eat("~"):
            if self.i >= len(self.p) or self.peek() in "|&)":
                raise self.error("'~' needs an operand")
            return mk_complement(self.unary())
        return self.postfix()

    def postfix(self) -> Node:
        if self.peek() in _QUANT_START and self._quantifier_ahead():
            raise self.error("quantifier has nothing to repeat")
        atom = self.atom()
        start = self.i
        q = self.quantifier()
        if q is None:
            return atom
        lo, hi = q
        if self.peek() == "?":
            raise self.error(
                "lazy quantifiers are not supported; express the boundary with a "
                "complement or a negated class instead (e.g. a[^b\\n]*b for a.*?b)",
                UNSUPPORTED,
            )
        if self.peek() in _QUANT_START and self._quantifier_ahead():
            raise self.error("nested quantifier")
        if hi < lo:
            raise self.error(f"loop bounds {{{lo},{hi}}} have min > max", BAD_BOUNDS, start)
        return mk_loop(atom, lo, hi)

    def _quantifier_ahead(self) -> bool:
        ch = self.peek()
        if ch in "*+?":
            return True
        save = self.i
        try:
            return self._brace() is not None
        finally:
            self.i = save

    def quantifier(self) -> tuple[int, float] | None:
        if self.eat("*"):
            return 0, INF
        if self.eat("+"):
            return 1, INF
        if self.eat("?"):
            return 0, 1
        if self.peek() == "{":
            save = self.i
            q = self._brace()
            if q is None:
                self.i = save
            return q
        return None

    def _brace(self) -> tuple[int, float] | None:
        # {m} {m,} {m,n}; anything else leaves '{' to be read as a literal
        if not self.eat("{"):
            return None
        lo = self._int()
        if lo is None:
            return None
        if self.eat("}"):
            return lo, lo
        if not self.eat(","):
            return None
        if self.eat("}"):
            return lo, INF
        hi = self._int()
        if hi is None or not self.eat("}"):
            return None
        return lo, hi

    def _int(self) -> int | None:
        j = self.i
        while self.peek().isdigit() and self.peek().isascii():
            self.i += 1
        return int(self.p[j:self.i]) if self.i > j else None

    def atom(self) -> Node:
        ch = self.peek()
        if ch == "(":
            return self.group()
        if ch == "[":
            return mk_pred(self.char_class())
        if ch == ".":
            self.i += 1
            return mk_pred(cs.DOT)
        if ch == "^":
            self.i += 1
            return desugar_anchor("^")
        if ch == "$":
            self.i += 1
            return desugar_anchor("$")
        if ch == "\\":
            return self.escape()
        if ch == "]" or ch == "}":
            self.i += 1
            return mk_pred(CharSet.of(ch))
        if ch == "":
            raise self.error("unexpected end of pattern")
        self.i += 1
        return mk_pred(CharSet.of(ch))

    def group(self) -> Node:
        open_at = self.i
        self.i += 1
        look = None
        if self.eat("?"):
            if self.eat(":"):
                pass
            elif self.eat("="):
                look = (True, False)
            elif self.eat("!"):
                look = (True, True)
            elif self.eat("<="):
                look = (False, False)
            elif self.eat("<!"):
                look = (False, True)
            elif self.peek() in ("<", "P", "'"):
                raise self.error("named groups are not supported", UNSUPPORTED, open_at)
            elif self.peek() == "(":
                raise self.error("conditionals are not supported", UNSUPPORTED, open_at)
            elif self.peek() == ">":
                raise self.error("atomic groups are not supported", UNSUPPORTED, open_at)
            else:
                raise self.error("inline options and other (?...) constructs are not supported",
                                 UNSUPPORTED, open_at)
        body = self.alternation()
        if not self.eat(")"):
            raise self.error("missing ')'", at=open_at)
        if look is None:
            return body
        return mk_look(look[0], look[1], body)

    def escape(self) -> Node:
        at = self.i
        self.i += 1
        ch = self.peek()
        if ch == "":
            raise self.error("trailing backslash", at=at)
        self.i += 1
        if ch in _ANCHOR_ESCAPES:
            return desugar_anchor("\\" + ch)
        if ch == "G":
            raise self.error(r"\G is not supported", UNSUPPORTED, at)
        if ch in _CLASS_ESCAPES:
            return mk_pred(_CLASS_ESCAPES[ch])
        if ch.isdigit() and ch != "0" or ch == "k":
            raise self.error("backreferences are not supported", UNSUPPORTED, at)
        return mk_pred(CharSet.of([self._escaped_char(ch, at)]))

    def _escaped_char(self, ch: str, at: int) -> int:
        """Code point of an escape whose backslash and letter were consumed."""
        if ch in _SIMPLE_ESCAPES:
            return _SIMPLE_ESCAPES[ch]
        if ch == "x":
            return self._hex(2, at)
        if ch == "u":
            return self._hex(4, at)
        if ch == "c":
            letter = self.peek()
            if not (letter.isascii() and letter.isalpha()):
                raise self.error(r"\c must be followed by a letter", at=at)
            self.i += 1
            return ord(letter.upper()) - 64
        if ch.isascii() and ch.isalnum():
            raise self.error(f"unrecognized escape \\{ch}", UNSUPPORTED, at)
        return ord(ch)

    def _hex(self, width: int, at: int) -> int:
        digits = self.p[self.i:self.i + width]
        if len(digits) != width or any(d not in "0123456789abcdefABCDEF" for d in digits):
            raise self.error(f"expected {width} hex digits", at=at)
        self.i += width
        return int(digits, 16)

    def char_class(self) -> CharSet:
        open_at = self.i
        self.i += 1
        negate = self.eat("^")
        acc = cs.BOT
        first = True
        sub = None
        while True:
            ch = self.peek()
            if ch == "":
                raise self.error("missing ']'", at=open_at)
            if ch == "]" and not first:
                self.i += 1
                break
            if ch == "-" and self.peek(1) == "[" and not first:
                self.i += 1
                sub = self.char_class()
                if not self.eat("]"):
                    raise self.error("class subtraction must end the class", at=open_at)
                break
            first = False
            lo_item = self.class_item()
            if isinstance(lo_item, CharSet):
                acc = acc | lo_item
                continue
            if self.peek() == "-" and self.peek(1) not in ("]", "") and self.peek(1) != "[":
                save = self.i
                self.i += 1
                hi_item = self.class_item()
                if isinstance(hi_item, CharSet):
                    raise self.error("invalid range endpoint", at=save)
                if hi_item < lo_item:
                    raise self.error("range out of order", at=save)
                acc = acc | CharSet.range(lo_item, hi_item)
            else:
                acc = acc | CharSet.of([lo_item])
        result = ~acc if negate else acc
        if sub is not None:
            result = result - sub
        return result

    def class_item(self) -> int | CharSet:
        ch = self.peek()
        if ch != "\\":
            self.i += 1
            return ord(ch)
        at = self.i
        self.i += 1
        ch = self.peek()
        if ch == "":
            raise self.error("trailing backslash", at=at)
        self.i += 1
        if ch in _CLASS_ESCAPES:
            return _CLASS_ESCAPES[ch]
        if ch == "b":
            return 0x08
        if ch.isdigit() and ch != "0":
            raise self.error("backreferences are not supported", UNSUPPORTED, at)
        return self._escaped_char(ch, at)


def parse(pattern: str) -> Node:
    """Parse ``pattern`` into a canonical node; raises :class:`ParseError`."""
    return _Parser(pattern).parse()
