"""Suffix array, LCP, LCE, range successor, LPF and substring suffix order."""

from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import RUNNING, random_corpus, random_text
from lzk import TextIndex
from lzk.errors import BadPosition, BadRange, BadRank, EmptyText, SentinelCollision
from lzk.text_index import WaveletMatrix, substring_suffix_rank, substring_suffix_select

texts = st.binary(min_size=1, max_size=64).map(lambda b: bytes(1 + x % 4 for x in b))


def naive_sa(text):
    return sorted(range(1, len(text) + 1), key=lambda i: text[i - 1 :])


def naive_lce(text, i, j):
    k = 0
    while i + k <= len(text) and j + k <= len(text) and text[i - 1 + k] == text[j - 1 + k]:
        k += 1
    return k


def naive_truncated_order(text, b, e):
    """Start positions of T[p..e], p in [b..e], in truncated-suffix order."""
    return sorted(range(b, e + 1), key=lambda p: text[p - 1 : e])


def test_running_example_arrays():
    idx = TextIndex(RUNNING)
    assert idx.sa[1:] == [1, 6, 11, 3, 8, 13, 5, 10, 2, 7, 12, 4, 9]
    assert idx.lcp[1:] == [0, 7, 2, 3, 5, 0, 1, 3, 4, 6, 1, 2, 4]
    assert idx.plcp[1:] == [0, 4, 3, 2, 1, 7, 6, 5, 4, 3, 2, 1, 0]
    assert idx.isa[2] == 9
    assert idx.phi[2] == 10


def test_single_symbol():
    idx = TextIndex(b"a")
    assert (idx.sa[1:], idx.lcp[1:], idx.plcp[1:]) == ([1], [0], [0])


def test_invalid_texts():
    with pytest.raises(EmptyText):
        TextIndex(b"")
    with pytest.raises(SentinelCollision):
        TextIndex(b"ab\0c")


@given(texts)
@settings(max_examples=200, deadline=None)
def test_suffix_array_and_lcp_properties(text):
    idx = TextIndex(text)
    n = len(text)
    assert idx.sa[1:] == naive_sa(text)
    for r in range(1, n + 1):
        assert idx.isa[idx.sa[r]] == r
        assert idx.plcp[idx.sa[r]] == idx.lcp[r]
    for i in range(1, n + 1):
        if idx.isa[i] > 1:
            assert idx.lce(i, idx.phi[i]) == idx.plcp[i]


def test_lce_examples():
    idx = TextIndex(RUNNING)
    assert idx.lce(2, 7) == 6 == idx.plcp[7]
    assert idx.lce(1, 2) == 0
    for i in range(1, 14):
        assert idx.lce(i, i) == 13 - i + 1
    with pytest.raises(BadPosition):
        idx.lce(0, 3)
    with pytest.raises(BadPosition):
        idx.lce(3, 14)


def test_lce_equals_scan():
    for text in random_corpus(11, 20, 256):
        idx = TextIndex(text)
        rng = random.Random(len(text))
        for _ in range(200):
            i, j = rng.randint(1, len(text)), rng.randint(1, len(text))
            assert idx.lce(i, j) == naive_lce(text, i, j)


def test_range_next_value_examples():
    idx = TextIndex(RUNNING)
    assert idx.sa[7:11] == [5, 10, 2, 7]
    assert idx.range_next_value(3, 7, 10) == 5
    assert idx.range_next_value(13, 1, 13) is None
    with pytest.raises(BadRange):
        idx.range_next_value(1, 5, 4)
    with pytest.raises(BadRange):
        idx.range_next_value(1, 0, 4)


def test_wavelet_matrix_equals_linear_scan():
    rng = random.Random(12)
    for _ in range(1000):
        seq = [rng.randint(0, rng.choice((1, 7, 300))) for _ in range(rng.randint(1, 40))]
        wm = WaveletMatrix(seq)
        lo = rng.randint(0, len(seq) - 1)
        hi = rng.randint(lo + 1, len(seq))
        x = rng.randint(-1, 310)
        assert wm.next_value(lo, hi, x) == min((v for v in seq[lo:hi] if v > x), default=None)


def test_range_next_value_equals_scan_on_both_paths():
    rng = random.Random(16)
    for text in random_corpus(16, 20, 512):
        idx = TextIndex(text)
        n = len(text)
        for _ in range(100):
            lo = rng.randint(1, n)
            hi = rng.randint(lo, min(n, lo + rng.choice((3, TextIndex.SCAN_RANGE + 40, n))))
            x = rng.randint(0, n)
            assert idx.range_next_value(x, lo, hi) == min((v for v in idx.sa[lo : hi + 1] if v > x), default=None)


def test_next_char_occurrence():
    idx = TextIndex(b"ababbababbabba")
    assert idx.next_char_occurrence(ord("a"), 1) == 3
    assert idx.next_char_occurrence(ord("a"), 14) is None
    assert idx.next_char_occurrence(ord("z"), 1) is None
    rng = random.Random(13)
    text = random_text(rng, 200, 3)
    idx = TextIndex(text)
    for p in range(1, 201):
        for c in (1, 2, 3):
            want = next((q for q in range(p + 1, 201) if text[q - 1] == c), None)
            assert idx.next_char_occurrence(c, p) == want


def naive_lpf(text):
    n = len(text)
    out = []
    for j in range(1, n + 1):
        out.append(max([naive_lce(text, i, j) for i in range(1, j)], default=0))
    return out


def test_lpf_examples():
    lpf = TextIndex(RUNNING).lpf()
    assert (lpf[1], lpf[3], lpf[6]) == (0, 2, 7)
    assert TextIndex(b"abcd").lpf()[1:] == [0, 0, 0, 0]
    assert TextIndex(b"aaaa").lpf()[1:] == [0, 3, 2, 1]


def test_lpf_equals_brute_force():
    for text in random_corpus(14, 30, 256):
        idx = TextIndex(text)
        assert idx.lpf()[1:] == naive_lpf(text)
        src = idx.lpf_sources()
        for j in range(1, len(text) + 1):
            if idx.lpf()[j]:
                assert src[j] < j and naive_lce(text, src[j], j) >= idx.lpf()[j]


def test_substring_suffix_rank_select_examples():
    idx = TextIndex(RUNNING)
    assert substring_suffix_rank(idx, (1, 13), 1) == 1
    assert substring_suffix_rank(idx, (5, 5), 5) == 1
    assert substring_suffix_select(idx, (5, 5), 1) == 5
    order = idx.interval_order((3, 8))
    with pytest.raises(BadPosition):
        order.rank(2)
    with pytest.raises(BadRank):
        order.select(7)


def test_substring_order_equals_naive_sort():
    for text in random_corpus(15, 60, 128):
        idx = TextIndex(text)
        n = len(text)
        rng = random.Random(n)
        for _ in range(30):
            b = rng.randint(1, n)
            e = rng.randint(b, n)
            order = idx.interval_order((b, e))
            expected = naive_truncated_order(text, b, e)
            assert [order.select(k) for k in range(1, len(order) + 1)] == expected
            assert all(order.rank(order.select(k)) == k for k in range(1, e - b + 2))


def test_substring_order_block_path():
    """Many short suffixes take the stack path instead of the linear scan."""
    text = b"ab" * 60 + b"a" * 70
    idx = TextIndex(text)
    order = idx.interval_order((1, len(text)))
    assert [order.select(k) for k in range(1, len(text) + 1)] == naive_truncated_order(text, 1, len(text))


def test_dump_matches_golden_table():
    expected = (Path(__file__).parent / "golden" / "running_example_index.tsv").read_text()
    assert TextIndex(RUNNING).dump() == expected
