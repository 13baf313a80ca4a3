"""LZ78 on the suffix tree against the trie baseline."""

from __future__ import annotations

import random

from conftest import RUNNING, random_corpus, random_intervals
from lzk import Engine, QueryHandle, TextIndex
from lzk.lz78 import lz78_factorize, lz78_trie_factorize


def test_running_example():
    f = lz78_factorize(QueryHandle(TextIndex(RUNNING)))
    assert f.strings() == [b"a", b"b", b"ab", b"ba", b"bab", b"babb"]
    assert [x.ref for x in f] == [0, 0, 1, 2, 4, 5]
    assert f.factors == lz78_trie_factorize(RUNNING).factors


def test_single_symbol_interval():
    handle = QueryHandle(TextIndex(RUNNING))
    f = lz78_factorize(handle, (4, 4))
    assert [(x.kind, x.len, x.ch) for x in f] == [("lit", 1, ord("b"))]
    assert lz78_trie_factorize(b"q").factors[0].kind == "lit"


def test_unary_text_has_triangular_factor_count():
    for n in (1, 2, 3, 10, 55, 56, 200):
        z = len(lz78_trie_factorize(b"a" * n))
        full = 0
        while (full + 1) * (full + 2) // 2 <= n:
            full += 1
        assert z == full + (full * (full + 1) // 2 < n)
        assert len(Engine(b"a" * n).factorize("lz78")) == z


def test_backends_agree_on_texts_and_intervals():
    rng = random.Random(51)
    for text in random_corpus(51, 100, 512):
        engine = Engine(text)
        assert engine.factorize("lz78").factors == lz78_trie_factorize(text).factors
        for b, e in random_intervals(rng, len(text), 40):
            assert engine.factorize("lz78", (b, e)).factors == lz78_trie_factorize(text[b - 1 : e]).factors


def test_dictionary_is_prefix_closed():
    for text in random_corpus(52, 50, 512):
        f = Engine(text).factorize("lz78")
        strings = f.strings()
        seen = {b""}
        for s, x in zip(strings, f.factors):
            assert s[:-1] in seen if x.ch is not None else s in seen
            seen.add(s)


def test_queries_are_isolated():
    text = random_corpus(53, 1, 300)[0] + b"\x01\x02" * 50
    handle = QueryHandle(TextIndex(text))
    first = lz78_factorize(handle, (5, 200)).factors
    lz78_factorize(handle, (1, len(text)))
    assert lz78_factorize(handle, (5, 200)).factors == first
