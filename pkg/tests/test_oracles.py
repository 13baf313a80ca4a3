"""The brute-force references on hand-checked inputs."""

from __future__ import annotations

import pytest

from conftest import FLEXIBLE_EXAMPLE, RUNNING
from lzk import ALGOS, UnsupportedAlgo, naive_factorize
from lzk.oracles import fp78_optimum, naive_greedy_lz77, naive_lpf, occurrences


def test_running_example_strings():
    want = {
        "lz78": [b"a", b"b", b"ab", b"ba", b"bab", b"babb"],
        "lzd": [b"ab", b"abb", b"ababb", b"abb"],
        "lzmw": [b"a", b"b", b"ab", b"bab", b"abbab", b"b"],
        "lexparse": [b"a", b"babb", b"ababbab", b"b"],
        "closed_longest": [b"ababbababbab", b"b"],
    }
    for algo, strings in want.items():
        assert naive_factorize(algo, RUNNING).strings() == strings


def test_flexible_example():
    assert naive_factorize("fp78", FLEXIBLE_EXAMPLE).strings() == [b"a", b"ab", b"a", b"abb", b"abb", b"a"]
    assert naive_factorize("fpa78", FLEXIBLE_EXAMPLE).strings() == [b"a", b"ab", b"a", b"abb", b"abba"]
    assert fp78_optimum(FLEXIBLE_EXAMPLE) == 6


def test_lpf_and_greedy():
    assert naive_lpf(b"aaaa")[1:] == [0, 3, 2, 1]
    assert naive_greedy_lz77(b"abab") == [b"a", b"b", b"ab"]


def test_occurrences_overlap():
    assert occurrences(b"aaaa", b"aa") == 3
    assert occurrences(b"abc", b"d") == 0


def test_every_oracle_tiles():
    text = b"abracadabra" * 3 + b"a"
    for algo in ALGOS:
        if algo == "closed_shortest":
            continue
        f = naive_factorize(algo, text)
        assert b"".join(f.strings()) == text


def test_unknown_algorithm():
    with pytest.raises(UnsupportedAlgo):
        naive_factorize("lz99", b"ab")
