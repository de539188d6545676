"""Hash-consed regex terms.

Every node is built through the ``mk_*`` smart constructors, which flatten
and sort unions and intersections, apply the mandatory simplifications and
intern the result.  Structurally equal canonical nodes are therefore the
same Python object and ``node.id`` is a canonical identifier.

Concatenation is a right-nested list: ``Concat(head, tail)`` where ``head``
is never itself a concatenation.  The empty word is the empty list
(:data:`EPS`).  ``T*`` and ``T+`` are ordinary loops over :data:`TOP`.
"""
from __future__ import annotations

import enum
import math
import threading
from typing import Iterable

from .charset import BOT as CS_BOT, TOP as CS_TOP, CharSet, DIGIT, DOT, NEWLINE, SPACE, WORD

INF = math.inf


class Kind(enum.IntEnum):
    PRED = 0
    EPS = 1
    UNION = 2
    INTER = 3
    CONCAT = 4
    LOOP = 5
    NOT = 6
    LOOK = 7


class Null(enum.Enum):
    ALWAYS = "always"
    NEVER = "never"
    CONTEXTUAL = "contextual"


class RegexError(ValueError):
    pass


class Node:
    __slots__ = (
        "kind", "id", "pred", "kids", "head", "tail", "body", "lo", "hi",
        "ahead", "negative", "size", "null_kind", "has_look", "ctx_derive",
        "_rev", "_bound", "_skip", "_first",
    )

    def __repr__(self) -> str:
        return f"<{self.kind.name} #{self.id} {to_pattern(self)}>"

    def __str__(self) -> str:
        return to_pattern(self)

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __lt__(self, other: "Node") -> bool:
        return self.id < other.id

    @property
    def is_look(self) -> bool:
        return self.kind is Kind.LOOK

    def concat_items(self) -> list["Node"]:
        """Elements of a concatenation list (``[self]`` for other kinds)."""
        if self.kind is Kind.EPS:
            return []
        out = []
        node = self
        while node.kind is Kind.CONCAT:
            out.append(node.head)
            node = node.tail
        out.append(node)
        return out

    @property
    def bound(self) -> CharSet | None:
        """Union of the predicates this node can consume, or ``None`` when a
        complement makes that unbounded.  Lookaround bodies do not count
        since lookarounds consume nothing."""
        try:
            return self._bound
        except AttributeError:
            pass
        k = self.kind
        if k is Kind.PRED:
            b = self.pred
        elif k in (Kind.EPS, Kind.LOOK):
            b = CS_BOT
        elif k is Kind.NOT:
            b = None
        else:
            b = CS_BOT
            for c in _children(self):
                cb = c.bound
                if cb is None:
                    b = None
                    break
                b = b | cb
        self._bound = b
        return b


def _children(node: Node) -> tuple[Node, ...]:
    k = node.kind
    if k in (Kind.UNION, Kind.INTER):
        return node.kids
    if k is Kind.CONCAT:
        return (node.head, node.tail)
    if k in (Kind.LOOP, Kind.NOT, Kind.LOOK):
        return (node.body,)
    return ()


children = _children

_table: dict[tuple, Node] = {}
_lock = threading.Lock()


def _intern(key: tuple, init) -> Node:
    node = _table.get(key)
    if node is not None:
        return node
    with _lock:
        node = _table.get(key)
        if node is None:
            node = Node()
            node.kind = key[0]
            node.id = len(_table)
            node.pred = node.kids = node.head = node.tail = node.body = None
            node.lo = node.hi = None
            node.ahead = node.negative = None
            init(node)
            _table[key] = node
    return node


def _and_kind(kinds: Iterable[Null]) -> Null:
    kinds = list(kinds)
    if any(k is Null.NEVER for k in kinds):
        return Null.NEVER
    if all(k is Null.ALWAYS for k in kinds):
        return Null.ALWAYS
    return Null.CONTEXTUAL


def _or_kind(kinds: Iterable[Null]) -> Null:
    kinds = list(kinds)
    if any(k is Null.ALWAYS for k in kinds):
        return Null.ALWAYS
    if all(k is Null.NEVER for k in kinds):
        return Null.NEVER
    return Null.CONTEXTUAL


def _dual(k: Null) -> Null:
    if k is Null.ALWAYS:
        return Null.NEVER
    if k is Null.NEVER:
        return Null.ALWAYS
    return k


# -- constructors -------------------------------------------------------------

def mk_pred(p: CharSet) -> Node:
    def init(n):
        n.pred = p
        n.size = 1
        n.null_kind = Null.NEVER
        n.has_look = False
        n.ctx_derive = False

    return _intern((Kind.PRED, p.id), init)


def mk_epsilon() -> Node:
    return EPS


def _init_eps(n):
    n.size = 1
    n.null_kind = Null.ALWAYS
    n.has_look = False
    n.ctx_derive = False


BOT = mk_pred(CS_BOT)
TOP = mk_pred(CS_TOP)
EPS = _intern((Kind.EPS,), _init_eps)


def _mk_loop_raw(body: Node, lo: int, hi: float) -> Node:
    def init(n):
        n.body = body
        n.lo = lo
        n.hi = hi
        n.size = 1 + body.size
        n.null_kind = Null.ALWAYS if lo == 0 else body.null_kind
        n.has_look = body.has_look
        n.ctx_derive = body.ctx_derive or (lo > 0 and body.null_kind is Null.CONTEXTUAL)

    return _intern((Kind.LOOP, body.id, lo, hi), init)


TOP_STAR = _mk_loop_raw(TOP, 0, INF)
TOP_PLUS = _mk_loop_raw(TOP, 1, INF)


def mk_loop(body: Node, lo: int, hi: float = INF) -> Node:
    if lo < 0 or hi < lo or (hi == 0 and lo != 0):
        raise RegexError(f"invalid loop bounds {{{lo},{hi}}}")
    if hi == 0:
        return EPS
    if lo == 1 and hi == 1:
        return body
    if body is BOT:
        return EPS if lo == 0 else BOT
    if body is EPS:
        return EPS
    return _mk_loop_raw(body, lo, hi)


def is_pred_star(node: Node) -> bool:
    return node.kind is Kind.LOOP and node.lo == 0 and node.hi == INF and node.body.kind is Kind.PRED


def mk_complement(body: Node) -> Node:
    if body.kind is Kind.NOT:
        return body.body
    if body is TOP_STAR:
        return BOT
    if body is BOT:
        return TOP_STAR
    if body is EPS:
        return TOP_PLUS
    if body is TOP_PLUS:
        return EPS

    def init(n):
        n.body = body
        n.size = 1 + body.size
        n.null_kind = _dual(body.null_kind)
        n.has_look = body.has_look
        n.ctx_derive = body.ctx_derive

    return _intern((Kind.NOT, body.id), init)


def mk_look(ahead: bool, negative: bool, body: Node) -> Node:
    # A lookaround whose body matches nowhere or matches the empty word
    # everywhere has a location-independent verdict.
    if body is BOT:
        return EPS if negative else BOT
    if body.null_kind is Null.ALWAYS:
        return BOT if negative else EPS

    def init(n):
        n.body = body
        n.ahead = ahead
        n.negative = negative
        n.size = 1 + body.size
        n.null_kind = Null.CONTEXTUAL
        n.has_look = True
        n.ctx_derive = False

    return _intern((Kind.LOOK, ahead, negative, body.id), init)


def _cat2(head: Node, tail: Node) -> Node:
    def init(n):
        n.head = head
        n.tail = tail
        n.size = 1 + head.size + tail.size
        n.null_kind = _and_kind((head.null_kind, tail.null_kind))
        n.has_look = head.has_look or tail.has_look
        n.ctx_derive = head.ctx_derive or head.null_kind is Null.CONTEXTUAL or (
            head.null_kind is Null.ALWAYS and tail.ctx_derive)

    return _intern((Kind.CONCAT, head.id, tail.id), init)


def mk_concat(*nodes: Node) -> Node:
    if any(node is BOT for node in nodes):
        return BOT
    # built from the right, so an existing right-nested tail is reused as is
    result = EPS
    for node in reversed(nodes):
        if node is EPS:
            continue
        if result is EPS:
            result = node
        elif node.kind is Kind.CONCAT:
            for item in reversed(node.concat_items()):
                result = _cat2(item, result)
        else:
            result = _cat2(node, result)
    return result


def _merge_loops(kids: set[Node]) -> set[Node]:
    groups: dict[Node, list[tuple[int, float, Node]]] = {}
    for c in kids:
        if c.kind is Kind.LOOP:
            groups.setdefault(c.body, []).append((c.lo, c.hi, c))
        else:
            groups.setdefault(c, []).append((1, 1, c))
    out = set()
    for body, entries in groups.items():
        if len(entries) == 1:
            out.add(entries[0][2])
            continue
        entries.sort(key=lambda e: (e[0], -e[1]))
        lo, hi, node = entries[0]
        merged = False
        for l2, h2, n2 in entries[1:]:
            if l2 <= hi:
                if h2 > hi:
                    hi = h2
                merged = True
            else:
                out.add(mk_loop(body, lo, hi) if merged else node)
                lo, hi, node, merged = l2, h2, n2, False
        out.add(mk_loop(body, lo, hi) if merged else node)
    return out


def mk_union(*nodes: Node) -> Node:
    kids: set[Node] = set()
    for node in nodes:
        if node.kind is Kind.UNION:
            kids.update(node.kids)
        else:
            kids.add(node)
    kids.discard(BOT)
    if TOP_STAR in kids:
        return TOP_STAR
    if len(kids) > 1:
        kids = _merge_loops(kids)
        if TOP_STAR in kids:
            return TOP_STAR
    if EPS in kids and any(c.null_kind is Null.ALWAYS for c in kids if c is not EPS):
        kids.discard(EPS)
    if len(kids) > 1:
        for star in kids:
            if is_pred_star(star):
                p = star.body.pred
                if all(c is star or (c.bound is not None and c.bound <= p) for c in kids):
                    return star
    if not kids:
        return BOT
    if len(kids) == 1:
        return next(iter(kids))
    ordered = tuple(sorted(kids))

    def init(n):
        n.kids = ordered
        n.size = 1 + sum(c.size for c in ordered)
        n.null_kind = _or_kind(c.null_kind for c in ordered)
        n.has_look = any(c.has_look for c in ordered)
        n.ctx_derive = any(c.ctx_derive for c in ordered)

    return _intern((Kind.UNION,) + tuple(c.id for c in ordered), init)


def mk_inter(*nodes: Node) -> Node:
    kids: set[Node] = set()
    for node in nodes:
        if node.kind is Kind.INTER:
            kids.update(node.kids)
        else:
            kids.add(node)
    if BOT in kids:
        return BOT
    kids.discard(TOP_STAR)
    if not kids:
        return TOP_STAR
    if EPS in kids and len(kids) > 1:
        rest = _and_kind(c.null_kind for c in kids if c is not EPS)
        if rest is Null.ALWAYS:
            return EPS
        if rest is Null.NEVER:
            return BOT
    if len(kids) == 1:
        return next(iter(kids))
    ordered = tuple(sorted(kids))

    def init(n):
        n.kids = ordered
        n.size = 1 + sum(c.size for c in ordered)
        n.null_kind = _and_kind(c.null_kind for c in ordered)
        n.has_look = any(c.has_look for c in ordered)
        n.ctx_derive = any(c.ctx_derive for c in ordered)

    return _intern((Kind.INTER,) + tuple(c.id for c in ordered), init)


def null_kind(node: Node) -> Null:
    return node.null_kind


# -- reversal -------------------------------------------------------------------

def reverse(node: Node) -> Node:
    try:
        return node._rev
    except AttributeError:
        pass
    k = node.kind
    if k in (Kind.PRED, Kind.EPS):
        r = node
    elif k is Kind.UNION:
        r = mk_union(*(reverse(c) for c in node.kids))
    elif k is Kind.INTER:
        r = mk_inter(*(reverse(c) for c in node.kids))
    elif k is Kind.CONCAT:
        r = mk_concat(*(reverse(c) for c in reversed(node.concat_items())))
    elif k is Kind.LOOP:
        r = mk_loop(reverse(node.body), node.lo, node.hi)
    elif k is Kind.NOT:
        r = mk_complement(reverse(node.body))
    else:
        r = mk_look(not node.ahead, node.negative, reverse(node.body))
    node._rev = r
    return r


def predicates(node: Node) -> set[CharSet]:
    """Every character predicate occurring in ``node``, lookaround bodies included."""
    out: set[CharSet] = set()
    seen: set[int] = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if n.id in seen:
            continue
        seen.add(n.id)
        if n.kind is Kind.PRED:
            out.add(n.pred)
        stack.extend(_children(n))
    return out


# -- printing -------------------------------------------------------------------

_NAMED_SETS = [
    (DIGIT, r"\d"), (~DIGIT, r"\D"),
    (WORD, r"\w"), (~WORD, r"\W"),
    (SPACE, r"\s"), (~SPACE, r"\S"),
]
_NAMED = {cs.id: name for cs, name in _NAMED_SETS}
_ESCAPES = {0x0A: r"\n", 0x0D: r"\r", 0x09: r"\t", 0x0C: r"\f", 0x0B: r"\v", 0x00: r"\0"}
_META = set("\\.^$|&~?*+()[]{}")
_CLASS_META = set("\\]-[^")


def _char(c: int, meta: set[str]) -> str:
    if c in _ESCAPES:
        return _ESCAPES[c]
    ch = chr(c)
    if ch in meta:
        return "\\" + ch
    if c < 0x20 or 0x7F <= c < 0xA0 or 0xD800 <= c <= 0xDFFF or not ch.isprintable():
        return f"\\u{c:04x}"
    return ch


def _class_body(p: CharSet) -> str:
    parts = []
    for lo, hi in p.intervals:
        if lo == hi:
            parts.append(_char(lo, _CLASS_META))
        elif hi == lo + 1:
            parts.append(_char(lo, _CLASS_META) + _char(hi, _CLASS_META))
        else:
            parts.append(_char(lo, _CLASS_META) + "-" + _char(hi, _CLASS_META))
    return "".join(parts)


def _covered(q: CharSet) -> str:
    """Class body for ``q`` using named classes it contains, then ranges."""
    names, used = [], CS_BOT
    for n, name in sorted(_NAMED_SETS, key=lambda e: -len(e[0])):
        if n <= q and not n <= used:
            names.append(name)
            used = used | n
    return "".join(names) + _class_body(q - used)


def pred_to_pattern(p: CharSet) -> str:
    if p is CS_TOP:
        return r"[\s\S]"
    if p is CS_BOT:
        return r"[^\s\S]"
    if p is DOT:
        return "."
    if p.id in _NAMED:
        return _NAMED[p.id]
    c = p.single()
    if c is not None:
        return _char(c, _META)
    neg = ~p
    if neg.id in _NAMED:
        return "[^" + _NAMED[neg.id] + "]"
    # Unicode-sized sets read far better relative to named classes
    options = ["[" + _covered(p) + "]", "[^" + _covered(neg) + "]"]
    for n, _ in _NAMED_SETS:
        missing = n - p
        if missing and missing != n:
            options.append("[" + _covered(p | n) + "-[" + _class_body(missing) + "]]")
    return min(options, key=len)


def _loop_suffix(lo: int, hi: float) -> str:
    if hi == INF:
        return {0: "*", 1: "+"}.get(lo, f"{{{lo},}}")
    if lo == 0 and hi == 1:
        return "?"
    if lo == hi:
        return f"{{{lo}}}"
    return f"{{{lo},{int(hi)}}}"


def to_pattern(node: Node) -> str:
    """Concrete syntax that parses back to the same canonical node."""
    return _pp(node, 0)


# precedence levels: 0 union, 1 intersection, 2 concatenation, 3 atom
def _pp(node: Node, ctx: int) -> str:
    k = node.kind
    if k is Kind.PRED:
        return pred_to_pattern(node.pred)
    if k is Kind.EPS:
        return "()"
    if k is Kind.UNION:
        s = "|".join(_pp(c, 1) for c in node.kids)
        return f"({s})" if ctx > 0 else s
    if k is Kind.INTER:
        s = "&".join(_pp(c, 2) for c in node.kids)
        return f"({s})" if ctx > 1 else s
    if k is Kind.CONCAT:
        s = "".join(_pp(c, 3) for c in node.concat_items())
        return f"({s})" if ctx > 2 else s
    if k is Kind.LOOP:
        body = node.body
        inner = _pp(body, 3)
        if body.kind in (Kind.LOOP, Kind.NOT):
            inner = f"({inner})"
        return inner + _loop_suffix(node.lo, node.hi)
    if k is Kind.NOT:
        return "~(" + _pp(node.body, 0) + ")"
    op = ("(?" if node.ahead else "(?<") + ("!" if node.negative else "=")
    return op + _pp(node.body, 0) + ")"
