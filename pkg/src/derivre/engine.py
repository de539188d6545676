"""Location derivatives and matching.

Positions are border positions ``0..len(s)``.  A *view* of a subject is the
subject itself or its reversal; reversed views are never materialized,
position ``i`` of the reversed view reads ``s[len(s) - 1 - i]``.

Internally everything runs on ``(s, i, rev)`` triples; :class:`Location`
is the public wrapper.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .charset import CharSet, MintermTable, compute_minterms
from .nodes import (
    BOT, EPS, INF, TOP_STAR, Kind, Node, Null, mk_complement, mk_concat, mk_inter,
    mk_loop, mk_union, predicates, reverse,
)
from .startset import first_chars, skip_info, skip_to


@dataclass(frozen=True, slots=True)
class Location:
    subject: str
    pos: int
    reversed: bool = False

    @property
    def valid(self) -> bool:
        return 0 <= self.pos <= len(self.subject)

    @property
    def is_final(self) -> bool:
        return self.pos == len(self.subject)

    @property
    def is_initial(self) -> bool:
        return self.pos == 0

    def char(self) -> str:
        """The character right after this border position."""
        s = self.subject
        return s[len(s) - 1 - self.pos] if self.reversed else s[self.pos]

    def rev(self) -> "Location":
        if self is FAIL:
            return FAIL
        return Location(self.subject, len(self.subject) - self.pos, not self.reversed)

    def __lt__(self, other: "Location") -> bool:
        return self.pos < other.pos

    def __le__(self, other: "Location") -> bool:
        return self.pos <= other.pos


FAIL = Location("", -1)
_UNSET = object()


class MatchSpan(NamedTuple):
    start: int
    end: int


@dataclass
class TopLevelBranch:
    state: Node
    start: int
    last: int | None = None


def _decr(k):
    return k if k == 0 or k == INF else k - 1


class Matcher:
    """Evaluates nullability and derivatives.

    With a minterm table, derivatives are memoized per (state, minterm)
    unless computing them asks whether some lookaround holds at the current
    location (``ctx_derive``); those are recomputed at every location.
    """

    def __init__(self, minterms: MintermTable | None = None):
        self.minterms = minterms
        self._classify = minterms.classifier if minterms is not None else None
        self._cache: dict[tuple[int, int], Node] = {}
        self._skip_sets: dict[tuple[bool, tuple[int, ...]], CharSet | None] = {}

    # -- core relation

    def nullable(self, s: str, i: int, rev: bool, node: Node) -> bool:
        nk = node.null_kind
        if nk is Null.ALWAYS:
            return True
        if nk is Null.NEVER:
            return False
        k = node.kind
        if k is Kind.UNION:
            return any(self.nullable(s, i, rev, c) for c in node.kids)
        if k is Kind.INTER:
            return all(self.nullable(s, i, rev, c) for c in node.kids)
        if k is Kind.CONCAT:
            return self.nullable(s, i, rev, node.head) and self.nullable(s, i, rev, node.tail)
        if k is Kind.LOOP:
            return node.lo == 0 or self.nullable(s, i, rev, node.body)
        if k is Kind.NOT:
            return not self.nullable(s, i, rev, node.body)
        if k is Kind.LOOK:
            if node.ahead:
                hit = self.is_match(s, i, rev, node.body)
            else:
                hit = self.is_match(s, len(s) - i, not rev, reverse(node.body))
            return hit != node.negative
        raise AssertionError(node)

    def derive(self, s: str, i: int, rev: bool, node: Node) -> Node:
        if self._classify is not None and not node.ctx_derive:
            c = ord(s[len(s) - 1 - i] if rev else s[i])
            key = (node.id, self._classify[c])
            r = self._cache.get(key)
            if r is None:
                r = self._derive(s, i, rev, node)
                self._cache[key] = r
            return r
        return self._derive(s, i, rev, node)

    def _derive(self, s: str, i: int, rev: bool, node: Node) -> Node:
        k = node.kind
        if k is Kind.PRED:
            c = ord(s[len(s) - 1 - i] if rev else s[i])
            return EPS if c in node.pred else BOT
        if k is Kind.EPS or k is Kind.LOOK:
            return BOT
        if k is Kind.UNION:
            return mk_union(*[self.derive(s, i, rev, c) for c in node.kids])
        if k is Kind.INTER:
            parts = []
            for c in node.kids:
                d = self.derive(s, i, rev, c)
                if d is BOT:
                    return BOT
                parts.append(d)
            return mk_inter(*parts)
        if k is Kind.NOT:
            return mk_complement(self.derive(s, i, rev, node.body))
        if k is Kind.CONCAT:
            head, tail = node.head, node.tail
            if head.kind is Kind.LOOK:
                return self.derive(s, i, rev, tail) if self.nullable(s, i, rev, head) else BOT
            d = mk_concat(self.derive(s, i, rev, head), tail)
            if self.nullable(s, i, rev, head):
                return mk_union(d, self.derive(s, i, rev, tail))
            return d
        if k is Kind.LOOP:
            body = node.body
            rest = mk_loop(body, _decr(node.lo), _decr(node.hi))
            if node.lo == 0 or body.null_kind is Null.ALWAYS or not self.nullable(s, i, rev, body):
                return mk_concat(self.derive(s, i, rev, body), rest)
            return self.derive(s, i, rev, mk_concat(body, rest))
        raise AssertionError(node)

    def is_match(self, s: str, i: int, rev: bool, node: Node) -> bool:
        n = len(s)
        while True:
            if self.nullable(s, i, rev, node):
                return True
            if i == n:
                return False
            node = self.derive(s, i, rev, node)
            if node is BOT:
                return False
            i += 1

    def match_end(self, s: str, i: int, rev: bool, node: Node) -> int:
        """Latest match end from ``i``, or -1."""
        n = len(s)
        last = -1
        while True:
            if self.nullable(s, i, rev, node):
                last = i
            if i == n:
                return last
            node = self.derive(s, i, rev, node)
            if node is BOT:
                return last
            i += 1

    def match_ends(self, s: str, i: int, rev: bool, node: Node) -> list[int]:
        n = len(s)
        out = []
        while True:
            if self.nullable(s, i, rev, node):
                out.append(i)
            if i == n:
                return out
            node = self.derive(s, i, rev, node)
            if node is BOT:
                return out
            i += 1

    # -- top-level matching

    def ll_match(self, s: str, node: Node) -> MatchSpan | None:
        """Leftmost-longest match by a backward pass for the start and a
        forward pass for the end."""
        x = self.match_end(s, 0, True, mk_concat(TOP_STAR, reverse(node)))
        if x < 0:
            return None
        start = len(s) - x
        return MatchSpan(start, self.match_end(s, start, False, node))

    def search(self, s: str, node: Node, start: int = 0, skip: bool = True) -> MatchSpan | None:
        """Leftmost-longest match starting at or after ``start``.

        One branch is kept per candidate start position.  Only the newest
        branch can hold a recorded match end: once a branch becomes nullable,
        later starts can no longer win and are dropped.
        """
        if node is BOT:
            return None
        n = len(s)
        branches: list[TopLevelBranch] = []
        spawning = True
        root_first = first_chars(node)
        root_never = node.null_kind is Null.NEVER
        p = start
        while True:
            if spawning and not any(b.state is node for b in branches):
                branches.append(TopLevelBranch(node, p))
            for idx, b in enumerate(branches):
                if b.state is not BOT and self.nullable(s, p, False, b.state):
                    b.last = p
                    del branches[idx + 1:]
                    spawning = False
                    break
            if p == n:
                break
            survivors: list[TopLevelBranch] = []
            seen: set[int] = set()
            for b in branches:
                if b.state is BOT:
                    survivors.append(b)
                    continue
                st = self.derive(s, p, False, b.state)
                if st is BOT:
                    if b.last is not None:
                        b.state = BOT
                        survivors.append(b)
                    continue
                if st.id in seen and b.last is None:
                    continue
                seen.add(st.id)
                b.state = st
                survivors.append(b)
            branches = survivors
            if branches and branches[0].state is BOT:
                b = branches[0]
                return MatchSpan(b.start, b.last)
            if not branches and not spawning:
                return None
            p += 1
            if skip and p < n:
                p = self._skip(s, p, branches, node, spawning, root_first, root_never)
        for b in branches:
            if b.last is not None:
                return MatchSpan(b.start, b.last)
        return None

    def _skip(self, s, p, branches, node, spawning, root_first, root_never) -> int:
        key = (spawning, tuple(b.state.id for b in branches))
        pred = self._skip_sets.get(key, _UNSET)
        if pred is _UNSET:
            pred = self._skip_set(branches, node, spawning, root_first, root_never)
            self._skip_sets[key] = pred
        return p if pred is None else skip_to(s, p, pred)

    @staticmethod
    def _skip_set(branches, node, spawning, root_first, root_never) -> CharSet | None:
        """Characters that may change some live branch, or ``None`` when
        stepping one character at a time is required."""
        pred = None
        root_live = False
        for b in branches:
            st = b.state
            if st is BOT:
                continue
            info = skip_info(st)
            if not info.skippable or st.null_kind is Null.CONTEXTUAL:
                return None
            pred = info.startset if pred is None else pred | info.startset
            if st is node:
                root_live = True
        if spawning and not root_live:
            # a fresh branch dies on the spot unless its first character fits
            if not root_never:
                return None
            pred = root_first if pred is None else pred | root_first
        return pred

    def find_all(self, s: str, node: Node, skip: bool = True) -> list[MatchSpan]:
        out = []
        cursor = 0
        n = len(s)
        while cursor <= n:
            m = self.search(s, node, cursor, skip)
            if m is None:
                break
            out.append(m)
            cursor = max(m.end, m.start + 1)
        return out


_plain = Matcher()


# -- Location-level API -------------------------------------------------------------

def _check(x: Location) -> None:
    if not x.valid:
        raise ValueError(f"invalid location {x}")


def nullable(x: Location, node: Node) -> bool:
    _check(x)
    return _plain.nullable(x.subject, x.pos, x.reversed, node)


def derive(x: Location, node: Node) -> Node:
    _check(x)
    if x.is_final:
        raise ValueError("cannot derive at the final location")
    return _plain.derive(x.subject, x.pos, x.reversed, node)


def is_match(x: Location, node: Node) -> bool:
    _check(x)
    return _plain.is_match(x.subject, x.pos, x.reversed, node)


def find_match_end(x: Location, node: Node) -> Location:
    _check(x)
    j = _plain.match_end(x.subject, x.pos, x.reversed, node)
    return FAIL if j < 0 else Location(x.subject, j, x.reversed)


def find_all_match_ends(x: Location, node: Node) -> list[Location]:
    _check(x)
    return [Location(x.subject, j, x.reversed)
            for j in _plain.match_ends(x.subject, x.pos, x.reversed, node)]


def ll_match(s: str, node: Node) -> MatchSpan | None:
    return _plain.ll_match(s, node)


def find_all_spans(s: str, node: Node, skip: bool = True) -> list[MatchSpan]:
    return Matcher(compute_minterms(predicates(node))).find_all(s, node, skip)


def all_spans(s: str, node: Node) -> set[MatchSpan]:
    """Every ``(i, j)`` with a match of ``node`` from ``i`` to ``j``."""
    return {MatchSpan(i, j) for i in range(len(s) + 1) for j in _plain.match_ends(s, i, False, node)}
