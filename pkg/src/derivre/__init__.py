"""Nonbacktracking regex matching with intersection, complement and
lookarounds, based on location derivatives."""
from .api import Regex, compile
from .charset import CharSet, MintermTable, compute_minterms, denotes, is_sat
from .engine import (
    FAIL, Location, Matcher, MatchSpan, TopLevelBranch, all_spans, derive, find_all_match_ends,
    find_all_spans, find_match_end, is_match, ll_match, nullable,
)
from .nodes import (
    BOT, EPS, INF, TOP, TOP_PLUS, TOP_STAR, Kind, Node, Null, RegexError, mk_complement,
    mk_concat, mk_epsilon, mk_inter, mk_look, mk_loop, mk_pred, mk_union, null_kind, reverse,
    to_pattern,
)
from .parser import ParseDiagnostics, ParseError, desugar_anchor, parse
from .startset import SkipInfo, is_skippable, skip_info, skip_to, startset

__all__ = [
    "BOT", "EPS", "FAIL", "INF", "TOP", "TOP_PLUS", "TOP_STAR", "CharSet", "Kind", "Location",
    "MatchSpan", "Matcher", "MintermTable", "Node", "Null", "ParseDiagnostics", "ParseError",
    "Regex", "RegexError", "SkipInfo", "TopLevelBranch", "all_spans", "compile",
    "compute_minterms", "denotes", "derive", "desugar_anchor", "find_all_match_ends",
    "find_all_spans", "find_match_end", "is_match", "is_sat", "is_skippable", "ll_match",
    "mk_complement", "mk_concat", "mk_epsilon", "mk_inter", "mk_look", "mk_loop", "mk_pred",
    "mk_union", "null_kind", "nullable", "parse", "reverse", "skip_info", "skip_to", "startset",
    "to_pattern",
]
