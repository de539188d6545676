from __future__ import annotations

from .charset import MintermTable, compute_minterms
from .engine import MatchSpan, Matcher
from .nodes import TOP_STAR, Node, mk_concat, predicates
from .parser import parse


class Regex:
    """A compiled pattern.  Immutable after construction apart from the
    derivative cache, so one instance can be shared across threads."""

    def __init__(self, pattern: str | Node):
        if isinstance(pattern, Node):
            self.pattern = str(pattern)
            self.node = pattern
        else:
            self.pattern = pattern
            self.node = parse(pattern)
        self.minterms: MintermTable = compute_minterms(predicates(self.node))
        self._matcher = Matcher(self.minterms)
        self._anywhere = mk_concat(TOP_STAR, self.node)

    def __repr__(self) -> str:
        return f"Regex({self.pattern!r})"

    def is_match(self, subject: str) -> bool:
        return self._matcher.is_match(subject, 0, False, self._anywhere)

    def find(self, subject: str, start: int = 0, *, skip: bool = True) -> MatchSpan | None:
        return self._matcher.search(subject, self.node, start, skip)

    def find_all(self, subject: str, *, skip: bool = True) -> list[MatchSpan]:
        return self._matcher.find_all(subject, self.node, skip)

    def count(self, subject: str, *, skip: bool = True) -> int:
        return len(self.find_all(subject, skip=skip))


def compile(pattern: str | Node) -> Regex:  # noqa: A001
    return Regex(pattern)
