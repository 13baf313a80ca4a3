"""Longest and shortest closed factorizations."""

from __future__ import annotations

import random

import pytest

from conftest import RUNNING, SHORTEST_CLOSED_EXAMPLE, random_corpus, random_intervals
from lzk import Engine, NoFactorization, QueryHandle, TextIndex, naive_factorize
from lzk.closed import longest_closed_substring, shortest_closed_substring
from lzk.oracles import is_closed, naive_closed_longest


def test_running_example():
    f = Engine(RUNNING).factorize("closed_longest")
    assert f.strings() == [b"ababbababbab", b"b"]
    assert f.factors[0].trim == 7
    g = Engine(SHORTEST_CLOSED_EXAMPLE).factorize("closed_shortest")
    assert g.strings() == [b"aba", b"bb", b"aba", b"bb", b"abba"]


def test_is_closed():
    assert is_closed(b"a") and is_closed(b"aa") and is_closed(b"aba")
    assert not is_closed(b"ab")
    assert not is_closed(b"aaba")


@pytest.mark.parametrize("mode", ["p_array", "search"])
def test_longest_equals_oracle_on_intervals(mode):
    rng = random.Random(101)
    for text in random_corpus(101, 100, 256):
        handle = QueryHandle(TextIndex(text))
        for b, e in [(1, len(text))] + random_intervals(rng, len(text), 20):
            got = longest_closed_substring(handle, (b, e), mode=mode)
            assert got.factors == naive_closed_longest(text[b - 1 : e]).factors, (text.hex(), b, e)
            assert all(is_closed(w) for w in got.strings())


def test_scan_oracle_equals_exhaustive_oracle():
    for text in random_corpus(102, 200, 40):
        assert naive_closed_longest(text).factors == naive_closed_longest(text, exhaustive=True).factors


def test_single_step_shortening_differs_from_exact():
    handle = QueryHandle(TextIndex(b"aaaaabaa"))
    strings = {s: longest_closed_substring(handle, (4, 5), shortening=s).strings() for s in ("exact", "single-step-u", "single-step-u-prime")}
    assert strings == {"exact": [b"aa"], "single-step-u": [b"a", b"a"], "single-step-u-prime": [b"a", b"a"]}
    # on [4..7] the single-step-u variant returns a factor that is not closed
    assert longest_closed_substring(handle, (4, 7), shortening="single-step-u").strings() == [b"aaba"]
    assert longest_closed_substring(handle, (4, 7)).strings() == [b"aa", b"b", b"a"]
    with pytest.raises(ValueError):
        longest_closed_substring(handle, (4, 7), shortening="other")


def test_single_step_u_prime_tiles_with_closed_factors():
    rng = random.Random(103)
    for text in random_corpus(103, 100, 128):
        handle = QueryHandle(TextIndex(text))
        for b, e in random_intervals(rng, len(text), 20):
            f = longest_closed_substring(handle, (b, e), shortening="single-step-u-prime")
            assert b"".join(f.strings()) == text[b - 1 : e]
            assert all(is_closed(w) for w in f.strings())


def test_shortest_equals_oracle_and_partial():
    rng = random.Random(104)
    for text in random_corpus(104, 100, 256, sigmas=(2, 3)):
        idx = TextIndex(text)
        for b, e in [(1, len(text))] + random_intervals(rng, len(text), 20):
            s = text[b - 1 : e]
            try:
                want = naive_factorize("closed_shortest", s)
            except NoFactorization as missing:
                with pytest.raises(NoFactorization) as got:
                    shortest_closed_substring(idx, (b, e))
                assert got.value.position == missing.position
                assert got.value.partial.factors == missing.partial.factors
                continue
            assert shortest_closed_substring(idx, (b, e)).factors == want.factors


def test_shortest_missing_closure():
    with pytest.raises(NoFactorization) as err:
        Engine(b"abab").factorize("closed_shortest")
    assert err.value.position == 4
    assert err.value.partial.strings() == [b"aba"]
