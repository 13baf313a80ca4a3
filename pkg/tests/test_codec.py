"""Stream round trips, golden streams and corrupt input."""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

import pytest

from conftest import FLEXIBLE_EXAMPLE, RUNNING, SHORTEST_CLOSED_EXAMPLE, random_corpus
from lzk import ALGOS, CorruptStream, Engine, UnsupportedAlgo, decode, decode_factorization, encode
from lzk.codec import MAGIC, read_stream, write_stream, write_varint

GOLDEN = Path(__file__).parent / "golden"


def _varint(value):
    out = bytearray()
    write_varint(out, value)
    return bytes(out)


def test_varints():
    assert _varint(0) == b"\x00"
    assert _varint(127) == b"\x7f"
    assert _varint(128) == b"\x80\x01"
    with pytest.raises(ValueError):
        _varint(-1)


@pytest.mark.parametrize("algo", ALGOS)
def test_golden_streams(algo):
    text = SHORTEST_CLOSED_EXAMPLE if algo == "closed_shortest" else RUNNING
    f = Engine(text).factorize(algo)
    data = (GOLDEN / f"running_{algo}.lzk").read_bytes()
    assert encode(f) == data
    assert decode(data) == text
    assert decode_factorization(data).factors == f.factors


@pytest.mark.parametrize("algo", ["fp78", "fpa78"])
def test_flexible_golden_streams(algo):
    data = (GOLDEN / f"flexible_{algo}.lzk").read_bytes()
    assert encode(Engine(FLEXIBLE_EXAMPLE).factorize(algo)) == data
    assert decode(data) == FLEXIBLE_EXAMPLE


def test_round_trip_random_texts_and_files(tmp_path):
    for text in random_corpus(111, 60, 300):
        engine = Engine(text)
        for algo in ALGOS:
            if algo == "closed_shortest":
                continue
            f = engine.factorize(algo)
            assert decode_factorization(encode(f)).factors == f.factors
    path = tmp_path / "x.lzk"
    f = Engine(RUNNING).factorize("lz78")
    write_stream(f, path)
    assert read_stream(path).factors == f.factors


def test_interval_factorization_encodes_its_substring():
    f = Engine(RUNNING).factorize("lzd", (3, 11))
    assert decode(encode(f)) == RUNNING[2:11]


def test_unsupported_algorithm():
    f = Engine(RUNNING).factorize("lz78")
    with pytest.raises(UnsupportedAlgo):
        encode(replace(f, algo="lz99"))


@pytest.mark.parametrize("algo", ALGOS)
def test_every_truncation_is_rejected(algo):
    text = SHORTEST_CLOSED_EXAMPLE if algo == "closed_shortest" else RUNNING
    data = encode(Engine(text).factorize(algo))
    for cut in range(len(data)):
        with pytest.raises(CorruptStream):
            decode(data[:cut])
    with pytest.raises(CorruptStream):
        decode(data + b"\x00")


def test_corrupt_headers():
    data = encode(Engine(RUNNING).factorize("lz78"))
    with pytest.raises(CorruptStream):
        decode(b"LZK2" + data[4:])
    with pytest.raises(CorruptStream):
        decode(MAGIC + b"\x63" + data[5:])
    with pytest.raises(CorruptStream):
        decode(data[:5] + _varint(14) + data[6:])


def test_dangling_references():
    # lz78 record naming factor 5 before it exists
    with pytest.raises(CorruptStream, match="undefined factor 5"):
        decode(MAGIC + b"\x01" + _varint(2) + _varint(1) + _varint(5 << 1) + b"a")
    # copy with a source at or after its own position
    with pytest.raises(CorruptStream, match="copy at 2 from 2"):
        decode(MAGIC + b"\x07" + _varint(2) + _varint(2) + b"\x00a" + b"\x01" + _varint(2) + _varint(1))


def test_fpa78_reference_must_end_before_use():
    good = encode(Engine(FLEXIBLE_EXAMPLE).factorize("fpa78"))
    assert decode(good) == FLEXIBLE_EXAMPLE
    # literal a, then a reference to R'_1 (starting at 1) used at 2 with
    # trim 2: the copy would read position 2 before it is decoded
    bad = MAGIC + b"\x03" + _varint(4) + _varint(2) + _varint(0) + _varint(0) + b"a"
    bad += _varint(1) + _varint(2 << 1) + b"b"
    with pytest.raises(CorruptStream, match="reference 1 used at 2"):
        decode(bad)
    ok = MAGIC + b"\x03" + _varint(3) + _varint(2) + _varint(0) + _varint(0) + b"a"
    ok += _varint(1) + _varint(1 << 1) + b"b"
    assert decode(ok) == b"aab"


def _fpa78_stream(records):
    body = b"".join(_varint(ref) + _varint(trim << 1) + bytes([c]) for ref, trim, c in records)
    n = sum(trim + 1 for _, trim, _ in records)
    return MAGIC + b"\x03" + _varint(n) + _varint(len(records)) + body


def test_fpa78_admissibility_checked_once_reference_is_known():
    # a|a|R'_2+a: R'_2 = T[2..3] is only known after the third factor and ends at its use
    with pytest.raises(CorruptStream, match="reference 2 ends at 3, not before its use at 3"):
        decode(_fpa78_stream([(0, 0, ord("a")), (0, 0, ord("a")), (2, 0, ord("a"))]))
    # R'_1 = "a" is shorter than the two symbols the third factor takes from it
    with pytest.raises(CorruptStream, match="takes 2 symbols of reference 1 of length 1"):
        decode(_fpa78_stream([(0, 0, ord("a")), (0, 0, ord("a")), (1, 2, ord("a"))]))
