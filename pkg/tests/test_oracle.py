import random

import pytest

from corpus import corpus, random_regex, random_string
from derivre.engine import MatchSpan
from derivre.nodes import BOT, EPS, INF, TOP_STAR, mk_complement, mk_concat, mk_loop, mk_union
from derivre.oracle import OracleConfig, oracle_all_matches, oracle_matches, oracle_posix
from derivre.parser import parse


class TestMatches:
    def test_unit(self):
        assert oracle_matches("ab", 1, EPS, 1)
        assert not oracle_matches("ab", 0, EPS, 1)

    def test_complement(self):
        assert not oracle_matches("ab", 0, mk_complement(parse("ab")), 2)
        assert oracle_matches("ab", 0, mk_complement(parse("ab")), 1)

    def test_posix_loop(self):
        assert oracle_matches("abab", 0, parse("(a|ab)*"), 4)

    def test_lookarounds(self):
        assert oracle_matches("ac", 1, parse("(?=c)"), 1)
        assert not oracle_matches("ab", 1, parse("(?=c)"), 1)
        assert oracle_matches("ab", 1, parse("(?<=a)"), 1)
        assert oracle_matches("ab", 2, parse(r"(?<=a\w)"), 2)

    def test_rejects_bad_locations(self):
        with pytest.raises(ValueError):
            oracle_matches("ab", 0, EPS, 3)


class TestAllMatches:
    def test_examples(self):
        assert oracle_all_matches("", EPS) == {MatchSpan(0, 0)}
        assert oracle_all_matches("#", parse(r"\B")) == {MatchSpan(0, 0), MatchSpan(1, 1)}
        assert len(oracle_all_matches("ab", TOP_STAR)) == 6

    def test_guard(self):
        with pytest.raises(ValueError):
            oracle_all_matches("aaaaaa", EPS)
        assert oracle_all_matches("aaaaaa", EPS, OracleConfig(max_len=6))
        with pytest.raises(ValueError):
            OracleConfig(max_len=9)


class TestPosix:
    def test_examples(self):
        assert oracle_posix("abab", parse("(a|ab)*")) == MatchSpan(0, 4)
        assert oracle_posix("ab", BOT) is None
        assert oracle_posix("aa", parse("a")) == MatchSpan(0, 1)


class TestSelfConsistency:
    # the unrolling laws must hold for the oracle on its own
    def test_loop_laws(self):
        rng = random.Random(31)
        for r, s in corpus(800, seed=32):
            m = rng.randint(1, 3)
            n = max(m, rng.choice([m, 3, INF]))
            dec = INF if n == INF else n - 1
            lhs = oracle_all_matches(s, mk_loop(r, m, n))
            assert lhs == oracle_all_matches(s, mk_concat(r, mk_loop(r, m - 1, dec)))
            assert lhs == oracle_all_matches(s, mk_concat(mk_loop(r, m - 1, dec), r))
            assert oracle_all_matches(s, mk_loop(r, 0, n)) == oracle_all_matches(
                s, mk_union(mk_loop(r, 1, n), EPS))

    def test_nullable_body_star(self):
        # a star over a body that also matches empty must not loop forever
        r = mk_loop(mk_union(parse("a"), EPS), 0, INF)
        assert oracle_all_matches("aa", r) == {(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)}

    def test_deep_random(self):
        rng = random.Random(33)
        for _ in range(100):
            oracle_all_matches(random_string(rng, 6), random_regex(rng, 4), OracleConfig(max_len=6))
