"""Brute-force reference semantics for the match relation.

Nothing here touches derivatives: concatenation is an existential split,
loops are unrolled, lookarounds scan the subject for a witness.  It is
exponential-ish and only meant for subjects of a handful of characters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .engine import MatchSpan
from .nodes import INF, Kind, Node

MAX_GUARD = 8


@dataclass(frozen=True)
class OracleConfig:
    max_len: int = 5
    alphabet: tuple[str, ...] = field(default=("a", "b", "\n"))

    def __post_init__(self):
        if self.max_len > MAX_GUARD:
            raise ValueError(f"max_len {self.max_len} exceeds the guard of {MAX_GUARD}")


class _Relation:
    def __init__(self, s: str):
        self.s = s
        self.n = len(s)
        self.matches = lru_cache(maxsize=None)(self._matches)

    def _matches(self, i: int, node: Node, j: int) -> bool:
        if j < i:
            return False
        s = self.s
        k = node.kind
        if k is Kind.EPS:
            return i == j
        if k is Kind.PRED:
            return j == i + 1 and ord(s[i]) in node.pred
        if k is Kind.UNION:
            return any(self.matches(i, c, j) for c in node.kids)
        if k is Kind.INTER:
            return all(self.matches(i, c, j) for c in node.kids)
        if k is Kind.NOT:
            return not self.matches(i, node.body, j)
        if k is Kind.CONCAT:
            return any(
                self.matches(i, node.head, z) and self.matches(z, node.tail, j)
                for z in range(i, j + 1)
            )
        if k is Kind.LOOP:
            return self._loop(i, node, j)
        if k is Kind.LOOK:
            if i != j:
                return False
            if node.ahead:
                hit = any(self.matches(i, node.body, y) for y in range(i, self.n + 1))
            else:
                hit = any(self.matches(z, node.body, i) for z in range(0, i + 1))
            return hit != node.negative
        raise AssertionError(node)

    def _loop(self, i: int, node: Node, j: int) -> bool:
        # Dropping empty iterations keeps a derivation valid as long as the
        # count stays >= lo, so max(lo, j - i) iterations always suffice.
        body, lo, hi = node.body, node.lo, node.hi
        cap = max(lo, j - i)
        if hi != INF:
            cap = min(cap, hi)
        reach = {i}
        for count in range(1, cap + 1):
            reach = {y for z in reach for y in range(z, j + 1) if self.matches(z, body, y)}
            if not reach:
                return lo == 0 and i == j
            if count >= lo and j in reach:
                return True
        return lo == 0 and i == j


def oracle_matches(s: str, i: int, node: Node, j: int) -> bool:
    """Whether ``node`` matches ``s`` from border ``i`` to border ``j``."""
    if not (0 <= i <= len(s) and 0 <= j <= len(s)):
        raise ValueError("locations out of range")
    return _Relation(s).matches(i, node, j)


def oracle_all_matches(s: str, node: Node, config: OracleConfig = OracleConfig()) -> set[MatchSpan]:
    if len(s) > config.max_len:
        raise ValueError(f"subject of length {len(s)} exceeds oracle limit {config.max_len}")
    rel = _Relation(s)
    n = len(s)
    return {MatchSpan(i, j) for i in range(n + 1) for j in range(i, n + 1) if rel.matches(i, node, j)}


def oracle_posix(s: str, node: Node, config: OracleConfig = OracleConfig()) -> MatchSpan | None:
    spans = oracle_all_matches(s, node, config)
    if not spans:
        return None
    i = min(sp.start for sp in spans)
    return MatchSpan(i, max(sp.end for sp in spans if sp.start == i))
