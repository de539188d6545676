"""Startsets and skippable states.

A state is *skippable* when it is headed by a ``ψ*`` loop, by a skippable
state, or is a Boolean combination of skippable states.  Its derivative is the state itself for every
character outside its *startset*, so the matcher can jump straight to the
next character that can change anything.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .charset import BOT as CS_BOT, TOP as CS_TOP, CharSet
from .nodes import Kind, Node, Null, is_pred_star


@dataclass(frozen=True)
class SkipInfo:
    skippable: bool
    startset: CharSet


def first_chars(node: Node) -> CharSet:
    """Characters whose derivative of ``node`` can be anything but ``⊥``.

    An overapproximation; sound at every location, lookarounds included.
    """
    try:
        return node._first
    except AttributeError:
        pass
    k = node.kind
    if k is Kind.PRED:
        r = node.pred
    elif k in (Kind.EPS, Kind.LOOK):
        r = CS_BOT
    elif k is Kind.UNION:
        r = CS_BOT
        for c in node.kids:
            r = r | first_chars(c)
    elif k is Kind.INTER:
        r = CS_TOP
        for c in node.kids:
            r = r & first_chars(c)
    elif k is Kind.CONCAT:
        r = first_chars(node.head)
        if node.head.null_kind is not Null.NEVER:
            r = r | first_chars(node.tail)
    elif k is Kind.LOOP:
        r = first_chars(node.body)
    else:
        r = CS_TOP
    node._first = r
    return r


def is_skippable(node: Node) -> bool:
    return skip_info(node).skippable


def startset(node: Node) -> CharSet:
    return skip_info(node).startset


def skip_info(node: Node) -> SkipInfo:
    try:
        return node._skip
    except AttributeError:
        pass
    k = node.kind
    if k is Kind.PRED:
        info = SkipInfo(False, node.pred)
    elif k is Kind.LOOP and is_pred_star(node):
        info = SkipInfo(True, ~node.body.pred)
    elif k is Kind.CONCAT:
        head = node.head
        if head.kind is Kind.PRED:
            info = SkipInfo(False, head.pred)
        else:
            # outside startset(head) the head reproduces itself and the tail dies
            h = skip_info(head)
            info = SkipInfo(h.skippable, h.startset | first_chars(node.tail)) if h.skippable \
                else SkipInfo(False, CS_TOP)
    elif k in (Kind.UNION, Kind.INTER, Kind.NOT):
        kids = node.kids if k is not Kind.NOT else (node.body,)
        infos = [skip_info(c) for c in kids]
        ss = CS_BOT
        for i in infos:
            ss = ss | i.startset
        info = SkipInfo(all(i.skippable for i in infos), ss)
    else:
        # epsilon, lookarounds (lookbacks in particular) and bounded or
        # complex-bodied loops are stepped one character at a time
        info = SkipInfo(False, CS_TOP)
    node._skip = info
    return info


# -- scanning -------------------------------------------------------------------

_FIND_LIMIT = 4
_CLASS_LIMIT = 512


@lru_cache(maxsize=1024)
def _plan(p: CharSet) -> tuple[str, ...] | re.Pattern[str] | None:
    """How to scan for ``p``: a few literal characters, a compiled class, or
    ``None`` for a plain loop."""
    if len(p) <= _FIND_LIMIT:
        return tuple(map(chr, p))
    if len(p.intervals) <= _CLASS_LIMIT:
        body = "".join(
            f"\\u{lo:04x}" if lo == hi else f"\\u{lo:04x}-\\u{hi:04x}" for lo, hi in p.intervals
        )
        return re.compile(f"[{body}]")
    return None


def skip_to(subject: str, pos: int, p: CharSet) -> int:
    """Smallest ``q >= pos`` with ``subject[q]`` in ``p``, else ``len(subject)``."""
    n = len(subject)
    if pos >= n or p is CS_TOP:
        return min(pos, n)
    if p is CS_BOT:
        return n
    plan = _plan(p)
    if isinstance(plan, tuple):
        best = n
        for c in plan:
            k = subject.find(c, pos, best)
            if k != -1:
                best = k
        return best
    if plan is not None:
        m = plan.search(subject, pos)
        return m.start() if m else n
    for q in range(pos, n):
        if ord(subject[q]) in p:
            return q
    return n
