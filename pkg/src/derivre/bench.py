"""Paragraph-extraction benchmark patterns.

Each style finds paragraphs (text between blank lines) mentioning every word
of a list, in any order.  The conjunction style grows linearly with the word
count; the other two enumerate every permutation of the words.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources

DEFAULT_WORDS = (
    "King", "Paris", "English", "would", "rise", "struck",
    "council", "march", "war", "May", "Orleans", "work",
)
STYLES = ("lookahead", "loop", "conjunction")
MAX_N = 12

_ANY = r"[\s\S]"
_NOT_BLANK = r"((?!\n\n)[\s\S])*?"


@dataclass(frozen=True)
class BenchSpec:
    style: str
    n: int
    words: tuple[str, ...] = field(default=DEFAULT_WORDS)

    def __post_init__(self):
        if self.style not in STYLES:
            raise ValueError(f"unknown style {self.style!r}; expected one of {', '.join(STYLES)}")
        if not 1 <= self.n <= min(MAX_N, len(self.words)):
            raise ValueError(f"n must be in 1..{min(MAX_N, len(self.words))}, got {self.n}")


def _conjunction(words) -> str:
    head = rf"\n\n~({_ANY}*\n\n{_ANY}*)\n"
    return head + "".join(f"&{_ANY}*{w}{_ANY}*" for w in words)


def _lookahead(words) -> str:
    alts = "|".join(_NOT_BLANK.join(p) for p in itertools.permutations(words))
    return rf"\n\n{_NOT_BLANK}({alts}){_NOT_BLANK}\n\n"


def _loop(words) -> str:
    lines = r"(.+\n)+?"
    gap = r"(.+\n)*?"
    alts = "|".join(gap.join(rf".*{w}.*\n" for w in p) for p in itertools.permutations(words))
    return rf"\n\n({lines}({alts}){lines})\n"


_GENERATORS = {"conjunction": _conjunction, "lookahead": _lookahead, "loop": _loop}


def gen_pattern(spec: BenchSpec | str, n: int | None = None, words=None) -> str:
    """Pattern text for ``spec`` (or for ``style, n[, words]``)."""
    if not isinstance(spec, BenchSpec):
        spec = BenchSpec(spec, n, tuple(words) if words else DEFAULT_WORDS)
    return _GENERATORS[spec.style](spec.words[: spec.n])


def permutation_pattern_length(style: str, n: int, words=DEFAULT_WORDS) -> int:
    """Length of a permutation-style pattern, computed without building it."""
    words = tuple(words[:n])
    total = sum(map(len, words))
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    if style == "lookahead":
        sep = len(_NOT_BLANK)
        alt = total + sep * (n - 1)
        return 4 + sep + 1 + fact * alt + (fact - 1) + 1 + sep + 4
    if style == "loop":
        alt = total + 6 * n + len(r"(.+\n)*?") * (n - 1)
        return 4 + 1 + len(r"(.+\n)+?") * 2 + 2 + fact * alt + (fact - 1) + 1 + 2
    raise ValueError(f"{style!r} is not a permutation style")


def excerpt() -> str:
    """The bundled multi-paragraph sample text."""
    return resources.files("derivre").joinpath("data/excerpt.txt").read_text(encoding="utf-8")
