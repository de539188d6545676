"""Character predicates over the Basic Multilingual Plane.

A :class:`CharSet` is a canonical, interned set of code points in
``[0, 0xFFFF]`` stored as a sorted tuple of disjoint, non-adjacent inclusive
intervals.  Because construction always goes through the intern table, two
sets with the same members are the same object, so ``is`` doubles as
semantic equality and ``id`` is a stable small integer.
"""
from __future__ import annotations

import threading
from array import array
from bisect import bisect_right
from functools import lru_cache
from typing import Iterable, Sequence

from . import _unicode_tables

MAX_CHAR = 0xFFFF

Interval = tuple[int, int]


class CharSet:
    __slots__ = ("intervals", "id", "_starts", "__weakref__")

    _table: dict[tuple[Interval, ...], "CharSet"] = {}
    _lock = threading.Lock()

    intervals: tuple[Interval, ...]
    id: int
    _starts: list[int]

    def __new__(cls, intervals: Iterable[Interval] = ()) -> "CharSet":
        key = _normalize(intervals)
        found = cls._table.get(key)
        if found is not None:
            return found
        with cls._lock:
            found = cls._table.get(key)
            if found is None:
                found = object.__new__(cls)
                found.intervals = key
                found.id = len(cls._table)
                found._starts = [lo for lo, _ in key]
                cls._table[key] = found
        return found

    # Instances are interned; copying must preserve identity.
    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (CharSet, (self.intervals,))

    @classmethod
    def of(cls, chars: str | Iterable[int]) -> "CharSet":
        if isinstance(chars, str):
            chars = map(ord, chars)
        return cls((c, c) for c in chars)

    @classmethod
    def range(cls, lo: int, hi: int) -> "CharSet":
        return cls([(lo, hi)]) if lo <= hi else BOT

    def __contains__(self, c: int | str) -> bool:
        if isinstance(c, str):
            c = ord(c)
        k = bisect_right(self._starts, c) - 1
        return k >= 0 and c <= self.intervals[k][1]

    def __or__(self, other: "CharSet") -> "CharSet":
        if self is other or other is BOT:
            return self
        if self is BOT:
            return other
        if other.id < self.id:
            self, other = other, self
        return _join(self, other)

    def _join(self, other: "CharSet") -> "CharSet":
        return CharSet(self.intervals + other.intervals)

    def __and__(self, other: "CharSet") -> "CharSet":
        if self is other:
            return self
        if self is BOT or other is BOT:
            return BOT
        if other.id < self.id:
            self, other = other, self
        return _intersect(self, other)

    def _intersect(self, other: "CharSet") -> "CharSet":
        out = []
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return CharSet(out)

    def __invert__(self) -> "CharSet":
        return _complement(self)

    def _complement(self) -> "CharSet":
        out = []
        nxt = 0
        for lo, hi in self.intervals:
            if lo > nxt:
                out.append((nxt, lo - 1))
            nxt = hi + 1
        if nxt <= MAX_CHAR:
            out.append((nxt, MAX_CHAR))
        return CharSet(out)

    def __sub__(self, other: "CharSet") -> "CharSet":
        return self & ~other

    def __le__(self, other: "CharSet") -> bool:
        return (self & other) is self

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __len__(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.intervals)

    def __iter__(self):
        for lo, hi in self.intervals:
            yield from range(lo, hi + 1)

    def __hash__(self) -> int:
        return self.id

    def __eq__(self, other: object) -> bool:
        return self is other

    def __repr__(self) -> str:
        if self is TOP:
            return "CharSet(TOP)"
        if self is BOT:
            return "CharSet(BOT)"
        parts = [f"{lo:#x}" if lo == hi else f"{lo:#x}-{hi:#x}" for lo, hi in self.intervals[:6]]
        more = ", ..." if len(self.intervals) > 6 else ""
        return f"CharSet({', '.join(parts)}{more})"

    def is_sat(self) -> bool:
        return bool(self.intervals)

    def single(self) -> int | None:
        """The only member, if the set is a singleton."""
        if len(self.intervals) == 1 and self.intervals[0][0] == self.intervals[0][1]:
            return self.intervals[0][0]
        return None


def _normalize(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    ivs = sorted(intervals)
    out: list[list[int]] = []
    for lo, hi in ivs:
        if lo > hi:
            continue
        if lo < 0 or hi > MAX_CHAR:
            raise ValueError(f"code point range {lo:#x}-{hi:#x} outside the BMP")
        if out and lo <= out[-1][1] + 1:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


# Sets are interned for the life of the process, so results can be memoized
# on identity.  Large Unicode classes make the interval walks costly.
_intersect = lru_cache(maxsize=1 << 14)(CharSet._intersect)
_complement = lru_cache(maxsize=1 << 12)(CharSet._complement)
_join = lru_cache(maxsize=1 << 14)(CharSet._join)

BOT = CharSet()
TOP = CharSet([(0, MAX_CHAR)])

DIGIT = CharSet(_unicode_tables.DIGIT)
WORD = CharSet(_unicode_tables.WORD)
SPACE = CharSet(_unicode_tables.SPACE)
NEWLINE = CharSet.of("\n")
DOT = ~NEWLINE


def is_sat(p: CharSet) -> bool:
    return p.is_sat()


def denotes(p: CharSet, c: int | str) -> bool:
    if isinstance(c, str):
        c = ord(c)
    if not 0 <= c <= MAX_CHAR:
        raise ValueError(f"code point {c:#x} outside the BMP")
    return c in p


class MintermTable:
    """Partition of the alphabet into the coarsest classes that no input
    predicate can tell apart.

    ``classify`` is a flat 64K lookup table, so mapping a character to its
    class index is a single array read.
    """

    __slots__ = ("minterms", "classifier")

    def __init__(self, minterms: Sequence[CharSet]):
        self.minterms = tuple(minterms)
        table = array("H", bytes(2 * (MAX_CHAR + 1)))
        for k, m in enumerate(self.minterms):
            if k == 0:
                continue
            for lo, hi in m.intervals:
                table[lo : hi + 1] = array("H", [k]) * (hi - lo + 1)
        self.classifier = table

    def classify(self, c: int | str) -> int:
        if isinstance(c, str):
            c = ord(c)
        return self.classifier[c]

    def __len__(self) -> int:
        return len(self.minterms)

    def __iter__(self):
        return iter(self.minterms)

    def __repr__(self) -> str:
        return f"MintermTable({list(self.minterms)!r})"


def compute_minterms(preds: Iterable[CharSet]) -> MintermTable:
    blocks = [TOP]
    for p in set(preds):
        if p is BOT or p is TOP:
            continue
        refined = []
        for b in blocks:
            inside = b & p
            if inside is BOT or inside is b:
                refined.append(b)
            else:
                refined.append(inside)
                refined.append(b - p)
        blocks = refined
    # Stable order: by smallest member.
    blocks.sort(key=lambda m: m.intervals[0][0])
    return MintermTable(blocks)
