"""FP78, FPA78 and semi-greedy LZ77."""

from __future__ import annotations

import random

from conftest import FLEXIBLE_EXAMPLE, RUNNING, random_corpus
from lzk import Engine, TextIndex, factorize, naive_factorize
from lzk.flexible import fpa78_reference_spans, semi_greedy_lz77
from lzk.oracles import fp78_optimum, naive_greedy_lz77


def test_worked_example():
    fp = factorize("fp78", FLEXIBLE_EXAMPLE)
    assert fp.strings() == [b"a", b"ab", b"a", b"abb", b"abb", b"a"]
    assert [x.ref for x in fp] == [0, 1, 0, 2, 2, 0]
    fpa = factorize("fpa78", FLEXIBLE_EXAMPLE)
    assert fpa.strings() == [b"a", b"ab", b"a", b"abb", b"abba"]
    assert [x.ref for x in fpa] == [0, 1, 0, 2, 4]
    assert len(factorize("lz78", FLEXIBLE_EXAMPLE)) == 7


def test_distinct_symbols_are_literals():
    text = bytes(range(1, 60))
    for algo in ("lz78", "fp78", "fpa78", "sg_lz77"):
        assert [x.len for x in factorize(algo, text)] == [1] * 59


def test_unary_text_coincides():
    for n in range(1, 30):
        text = b"a" * n
        lengths = [x.len for x in factorize("lz78", text)]
        assert [x.len for x in factorize("fp78", text)] == lengths
        assert [x.len for x in factorize("fpa78", text)] == lengths


def test_fp78_is_optimal_and_never_worse_than_lz78():
    for text in random_corpus(61, 300, 200):
        engine = Engine(text)
        z_fp = len(engine.factorize("fp78"))
        assert z_fp <= len(engine.factorize("lz78"))
        assert z_fp == fp78_optimum(text)


def test_flexible_parsers_equal_oracles():
    for text in random_corpus(62, 200, 256):
        engine = Engine(text)
        for algo in ("fp78", "fpa78", "sg_lz77"):
            assert engine.factorize(algo).factors == naive_factorize(algo, text).factors, (algo, text.hex())


def test_fpa78_references_are_admissible():
    for text in random_corpus(63, 200, 256) + [FLEXIBLE_EXAMPLE]:
        f = factorize("fpa78", text)
        spans = fpa78_reference_spans(f)
        for factor in f:
            if factor.kind == "ref":
                start, length = spans[factor.ref - 1]
                assert start + length - 1 < factor.pos
                assert factor.trim <= length
                assert text[start - 1 : start - 1 + factor.trim] == text[factor.pos - 1 : factor.pos - 1 + factor.trim]


def adversarial_text(s: bytes) -> bytes:
    """a·aS[1]·aS[1..2]···aS[1..n]·aS[1..n]·a·S"""
    return b"".join(b"a" + s[:i] for i in range(len(s) + 1)) + b"a" + s + b"a" + s


def test_adversarial_family():
    rng = random.Random(64)
    s = bytes(rng.choice(b"bc") for _ in range(256))
    engine = Engine(adversarial_text(s))
    z_lz = len(engine.factorize("lz78"))
    assert z_lz > len(s) + 2 + 20
    for algo in ("fp78", "fpa78"):
        z = len(engine.factorize(algo))
        assert z == len(s) + 3
        assert z < z_lz


def test_semi_greedy_lz77_running_example():
    idx = TextIndex(RUNNING)
    greedy = naive_greedy_lz77(RUNNING)
    assert greedy == [b"a", b"b", b"ab", b"bab", b"abbab", b"b"]
    f = semi_greedy_lz77(idx, 13)
    f.check_tiling()
    assert len(f) <= len(greedy)
    for x in f:
        if x.kind == "copy":
            assert x.src < x.pos
            assert RUNNING[x.src - 1 : x.src - 1 + x.len] == RUNNING[x.pos - 1 : x.pos - 1 + x.len]


def test_semi_greedy_prefix_matches_standalone():
    for text in random_corpus(65, 50, 200):
        idx = TextIndex(text)
        for end in (1, len(text) // 2 or 1, len(text)):
            assert semi_greedy_lz77(idx, end).factors == naive_factorize("sg_lz77", text[:end]).factors


def test_lookahead_calls_within_memo_bound():
    for text in random_corpus(66, 100, 512):
        engine = Engine(text)
        for algo in ("fp78", "fpa78"):
            f = engine.factorize(algo)
            assert f.counters["lma_calls"] <= len(text) + len(f)
