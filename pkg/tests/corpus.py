"""Seeded random regexes and subjects shared by the property tests."""
from __future__ import annotations

import itertools
import random

from derivre import charset as cs
from derivre.nodes import (
    EPS, INF, Node, mk_complement, mk_concat, mk_inter, mk_look, mk_loop, mk_pred, mk_union,
)

ALPHABET = "ab\n"
LEAVES = [mk_pred(cs.CharSet.of("a")), mk_pred(cs.CharSet.of("b")), mk_pred(cs.NEWLINE), mk_pred(cs.TOP)]


def random_regex(rng: random.Random, depth: int = 3) -> Node:
    if depth == 0 or rng.random() < 0.2:
        return rng.choice(LEAVES + [EPS]) if rng.random() < 0.9 else EPS
    d = depth - 1
    op = rng.choice(["union", "inter", "concat", "concat", "loop", "not", "look"])
    if op == "union":
        return mk_union(random_regex(rng, d), random_regex(rng, d))
    if op == "inter":
        return mk_inter(random_regex(rng, d), random_regex(rng, d))
    if op == "concat":
        return mk_concat(random_regex(rng, d), random_regex(rng, d))
    if op == "not":
        return mk_complement(random_regex(rng, d))
    if op == "look":
        return mk_look(rng.random() < 0.5, rng.random() < 0.5, random_regex(rng, d))
    lo = rng.randint(0, 3)
    hi = rng.choice([lo, min(lo + 1, 3), 3, INF])
    if hi == 0:
        hi = 1
    return mk_loop(random_regex(rng, d), lo, max(lo, hi))


def all_strings(max_len: int, alphabet: str = ALPHABET):
    for n in range(max_len + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield "".join(t)


def random_string(rng: random.Random, max_len: int = 5, alphabet: str = ALPHABET) -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def corpus(n: int = 2000, seed: int = 20240917) -> list[tuple[Node, str]]:
    rng = random.Random(seed)
    return [(random_regex(rng), random_string(rng)) for _ in range(n)]


def ends(s: str, i: int, node: Node) -> set[int]:
    from derivre.engine import Location, find_all_match_ends

    return {y.pos for y in find_all_match_ends(Location(s, i), node)}


def relation(s: str, node: Node) -> set[tuple[int, int]]:
    return {(i, j) for i in range(len(s) + 1) for j in ends(s, i, node)}


def instances(n: int = 2000, seed: int = 20240917):
    """Triples (R, S, s) of two random regexes and a subject."""
    rng = random.Random(seed)
    return [(random_regex(rng), random_regex(rng), random_string(rng)) for _ in range(n)]


def _word(s: str, k: int) -> bool:
    return 0 <= k < len(s) and ord(s[k]) in cs.WORD


# the "effective meaning" of each anchor, evaluated directly on the subject
EFFECTIVE = {
    r"\A": lambda s, i: i == 0,
    r"\z": lambda s, i: i == len(s),
    r"\Z": lambda s, i: i == len(s) or (i == len(s) - 1 and s[i] == "\n"),
    "^": lambda s, i: i == 0 or s[i - 1] == "\n",
    "$": lambda s, i: i == len(s) or s[i] == "\n",
    r"\b": lambda s, i: _word(s, i - 1) != _word(s, i),
    r"\B": lambda s, i: _word(s, i - 1) == _word(s, i),
}
