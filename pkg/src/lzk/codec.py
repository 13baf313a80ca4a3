"""Byte-exact serialization of factorizations and decompression.

Stream layout: the magic ``LZK1``, one algorithm byte, the varint text
length n and the varint factor count z, then z records.  Every integer is
an unsigned LEB128 varint.  Records by algorithm:

* lz78, fp78: ``varint(ref << 1 | no_symbol)`` then the symbol byte unless
  ``no_symbol`` is set (only a trimmed final LZ78 factor has no symbol).
* fpa78: ``varint ref``, ``varint(trim << 1 | no_symbol)``, symbol byte.
* lzd: two components, lzmw: one component.  A component ``v`` is 0 for a
  literal (the byte follows), ``2k`` for the whole word k and ``2k + 1``
  for a word k cut to the varint length that follows.  The second LZD
  component is the reserved value 1 when absent.
* lexparse, sg_lz77: flag 0 and the byte, or flag 1, ``varint src`` and
  ``varint len``.
* closed_longest, closed_shortest: flag 0 and the byte, or flag 1,
  ``varint src``, ``varint len``, ``varint border`` followed by the
  ``len - border`` leading bytes of the factor; its border is copied from
  ``src`` to the factor's end.

Decoding rebuilds the factor records as well as the text.  FP78 streams
name LZ78 factor ids, so the decoder reruns LZ78 on its own output as that
output grows.  FPA78 streams name references R'_w that start where factor
w starts; the copy itself only needs that start, while the reference's
length (needed to check that it ends before its use) only becomes known
once the decoder's output covers it, so those checks wait in a queue.
"""

from __future__ import annotations

from collections import deque

from .errors import CorruptStream, LZKError, UnsupportedAlgo
from .factors import Factorization, as_text, make_factor

MAGIC = b"LZK1"

ALGO_CODES = {
    "lz78": 1,
    "fp78": 2,
    "fpa78": 3,
    "sg_lz77": 4,
    "lzd": 5,
    "lzmw": 6,
    "lexparse": 7,
    "closed_longest": 8,
    "closed_shortest": 9,
}
ALGO_NAMES = {code: name for name, code in ALGO_CODES.items()}

_ABSENT = 1  # reserved component value: no second LZD component


# -- varints -------------------------------------------------------------


def write_varint(out: bytearray, value: int) -> None:
    """Append ``value`` as an unsigned LEB128 varint."""
    if value < 0:
        raise ValueError(f"varints are unsigned, got {value}")
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return


class _Reader:
    """Cursor over a stream; every read past the end raises CorruptStream."""

    def __init__(self, data: bytes):
        self.data = data
        self.at = 0

    def byte(self) -> int:
        if self.at >= len(self.data):
            raise CorruptStream(f"stream truncated at byte {self.at}")
        b = self.data[self.at]
        self.at += 1
        return b

    def raw(self, count: int) -> bytes:
        if self.at + count > len(self.data):
            raise CorruptStream(f"stream truncated at byte {len(self.data)}")
        chunk = self.data[self.at : self.at + count]
        self.at += count
        return chunk

    def varint(self) -> int:
        value, shift = 0, 0
        while True:
            b = self.byte()
            value |= (b & 0x7F) << shift
            if not b & 0x80:
                return value
            shift += 7


# -- encoding ------------------------------------------------------------


def encode(f: Factorization) -> bytes:
    """Serialize ``f`` to the ``.lzk`` stream format."""
    try:
        code = ALGO_CODES[f.algo]
    except KeyError:
        raise UnsupportedAlgo(f"no stream format for algorithm {f.algo!r}") from None
    out = bytearray(MAGIC)
    out.append(code)
    write_varint(out, len(f.text))
    write_varint(out, len(f.factors))
    _ENCODERS[f.algo](out, f)
    return bytes(out)


def _encode_lz78(out: bytearray, f: Factorization) -> None:
    for factor in f.factors:
        if factor.ch is None:
            write_varint(out, factor.ref << 1 | 1)
        else:
            write_varint(out, factor.ref << 1)
            out.append(factor.ch)


def _encode_fpa78(out: bytearray, f: Factorization) -> None:
    for factor in f.factors:
        write_varint(out, factor.ref)
        if factor.ch is None:
            write_varint(out, factor.trim << 1 | 1)
        else:
            write_varint(out, factor.trim << 1)
            out.append(factor.ch)


def _write_component(out: bytearray, ref: int, used: int, word_len: int, text: bytes, at: int) -> None:
    """One LZD/LZMW component covering ``used`` symbols from text index ``at``."""
    if ref == 0:
        write_varint(out, 0)
        out.append(text[at])
    elif used == word_len:
        write_varint(out, 2 * ref)
    else:
        write_varint(out, 2 * ref + 1)
        write_varint(out, used)


def _encode_lzd(out: bytearray, f: Factorization) -> None:
    word_len = [0]
    for factor in f.factors:
        at = factor.pos - 1
        full1 = 1 if factor.ref == 0 else word_len[factor.ref]
        len1 = min(full1, factor.len)
        _write_component(out, factor.ref, len1, full1, f.text, at)
        if factor.ref2 is None:
            write_varint(out, _ABSENT)
        else:
            full2 = 1 if factor.ref2 == 0 else word_len[factor.ref2]
            _write_component(out, factor.ref2, factor.len - len1, full2, f.text, at + len1)
        word_len.append(factor.len)


def _encode_lzmw(out: bytearray, f: Factorization) -> None:
    word_len = [0, 0]  # word y (y >= 2) is F_{y-1}F_y
    lengths = [0]
    for factor in f.factors:
        full = 1 if factor.ref == 0 else word_len[factor.ref]
        _write_component(out, factor.ref, factor.len, full, f.text, factor.pos - 1)
        lengths.append(factor.len)
        if len(lengths) > 2:
            word_len.append(lengths[-2] + lengths[-1])


def _encode_copy(out: bytearray, f: Factorization) -> None:
    for factor in f.factors:
        if factor.kind == "lit":
            out.append(0)
            out.append(factor.ch)
        else:
            out.append(1)
            write_varint(out, factor.src)
            write_varint(out, factor.len)


def _encode_closed(out: bytearray, f: Factorization) -> None:
    for factor in f.factors:
        if factor.kind == "lit":
            out.append(0)
            out.append(factor.ch)
        else:
            out.append(1)
            write_varint(out, factor.src)
            write_varint(out, factor.len)
            write_varint(out, factor.trim)
            out += f.text[factor.pos - 1 : factor.pos - 1 + factor.len - factor.trim]


_ENCODERS = {
    "lz78": _encode_lz78,
    "fp78": _encode_lz78,
    "fpa78": _encode_fpa78,
    "lzd": _encode_lzd,
    "lzmw": _encode_lzmw,
    "lexparse": _encode_copy,
    "sg_lz77": _encode_copy,
    "closed_longest": _encode_closed,
    "closed_shortest": _encode_closed,
}


# -- decoding ------------------------------------------------------------


def decode(data: bytes) -> bytes:
    """Reconstruct the text of a ``.lzk`` stream."""
    return decode_factorization(data).text


def decode_factorization(data: bytes) -> Factorization:
    """Reconstruct the factorization (records and text) of a ``.lzk`` stream."""
    reader = _Reader(bytes(data))
    if reader.raw(len(MAGIC)) != MAGIC:
        raise CorruptStream("bad magic, not an lzk stream")
    code = reader.byte()
    algo = ALGO_NAMES.get(code)
    if algo is None:
        raise CorruptStream(f"unknown algorithm byte {code}")
    n = reader.varint()
    z = reader.varint()
    if n == 0 or z == 0 or z > n:
        raise CorruptStream(f"impossible header: n={n}, z={z}")
    out = bytearray()
    factors = _DECODERS[algo](reader, n, z, out)
    if reader.at != len(reader.data):
        raise CorruptStream(f"{len(reader.data) - reader.at} trailing bytes")
    if len(out) != n:
        raise CorruptStream(f"decoded {len(out)} symbols, header says {n}")
    text = bytes(out)
    try:
        as_text(text)
    except LZKError as exc:
        raise CorruptStream(f"decoded text is invalid: {exc}") from None
    return Factorization(algo, text, factors)


def _copy(out: bytearray, src: int, length: int, n: int) -> None:
    """Append ``length`` symbols copied from 0-based ``src`` (overlap allowed)."""
    if len(out) + length > n:
        raise CorruptStream("factor runs past the declared text length")
    if length and not 0 <= src < len(out):
        raise CorruptStream(f"copy source {src + 1} is not decoded yet")
    for k in range(length):
        out.append(out[src + k])


def _symbol(reader: _Reader, out: bytearray, n: int) -> int:
    c = reader.byte()
    if len(out) >= n:
        raise CorruptStream("factor runs past the declared text length")
    out.append(c)
    return c


def _decode_lz78(reader: _Reader, n: int, z: int, out: bytearray) -> list:
    starts, lengths = [0], [0]  # per factor id: 0-based start and length
    factors = []
    for x in range(1, z + 1):
        head = reader.varint()
        ref, no_symbol = head >> 1, head & 1
        if ref >= x:
            raise CorruptStream(f"factor {x} names undefined factor {ref}")
        pos = len(out) + 1
        _copy(out, starts[ref], lengths[ref], n)
        if no_symbol:
            if x != z or ref == 0:
                raise CorruptStream(f"factor {x} lacks its symbol")
            factors.append(make_factor(("ref", pos, lengths[ref], ref, None, None, None, None)))
        else:
            c = _symbol(reader, out, n)
            kind = "lit" if ref == 0 else "ref"
            factors.append(make_factor((kind, pos, lengths[ref] + 1, ref, None, None, c, None)))
        starts.append(pos - 1)
        lengths.append(len(out) - pos + 1)
    return factors


class _IncrementalLZ78:
    """Greedy LZ78 over a growing buffer; a factor is final once its symbol is known."""

    def __init__(self, buf: bytearray):
        self.buf = buf
        self.children: list[dict[int, int]] = [{}]
        self.cursor = 0
        self.starts = [0]
        self.lengths = [0]
        self.ends = [0]  # 1-based end position

    def advance(self) -> None:
        buf, children = self.buf, self.children
        while True:
            node, at = 0, self.cursor
            while at < len(buf) and buf[at] in children[node]:
                node = children[node][buf[at]]
                at += 1
            if at >= len(buf):
                return  # the match may still grow
            children[node][buf[at]] = len(children)
            children.append({})
            self.starts.append(self.cursor)
            self.lengths.append(at + 1 - self.cursor)
            self.ends.append(at + 1)
            self.cursor = at + 1


def _decode_fp78(reader: _Reader, n: int, z: int, out: bytearray) -> list:
    lz = _IncrementalLZ78(out)
    factors = []
    for x in range(1, z + 1):
        head = reader.varint()
        ref, no_symbol = head >> 1, head & 1
        if no_symbol:
            raise CorruptStream(f"fp78 factor {x} lacks its symbol")
        pos = len(out) + 1
        lz.advance()
        if ref >= len(lz.starts):
            raise CorruptStream(f"factor {x} names LZ78 factor {ref}, not decoded yet")
        if ref and lz.ends[ref] >= pos:
            raise CorruptStream(f"factor {x} at {pos} uses LZ78 factor {ref} ending at {lz.ends[ref]}")
        _copy(out, lz.starts[ref], lz.lengths[ref], n)
        c = _symbol(reader, out, n)
        kind = "lit" if ref == 0 else "ref"
        factors.append(make_factor((kind, pos, lz.lengths[ref] + 1, ref, None, None, c, None)))
    return factors


class _PendingReferences:
    """FPA78 references R'_x = T[dst_x..dst_x+l0_x-1], resolved in creation order.

    l0_x = min(M(dst_x) + 1, n - dst_x + 1) with M(q) the longest earlier
    reference ending before q that prefixes T[q..].  Every reference extends
    the reference of its own M by one symbol, so the references form a trie
    in which an admissible node has admissible ancestors; M(q) follows the
    trie along T[q..] while the child ends before q.  R'_x is resolved once
    the decoded prefix determines that walk and covers the reference.
    """

    def __init__(self, buf: bytearray, n: int):
        self.buf, self.n = buf, n
        self.children: list[dict[int, int]] = [{}]
        self.node_end = [0]  # smallest end of a reference spelling the node
        self.starts = [0]  # per reference id: 1-based start
        self.spans: dict[int, tuple[int, int]] = {}  # resolved id -> (start, end)
        self.queue: deque[int] = deque()
        self.checks: deque[tuple[int, int, int]] = deque()  # (ref id, use position, symbols used)

    def create(self, dst: int) -> None:
        self.starts.append(dst)
        self.queue.append(len(self.starts) - 1)

    def resolve(self) -> None:
        buf, children, node_end = self.buf, self.children, self.node_end
        while self.queue:
            x = self.queue[0]
            dst = self.starts[x]
            node, at = 0, dst - 1  # 0-based cursor into buf
            while True:
                if at >= len(buf):
                    if len(buf) < self.n:
                        return  # the walk is not determined yet
                    break
                child = children[node].get(buf[at])
                if child is None or node_end[child] >= dst:
                    break
                node, at = child, at + 1
            m = at - (dst - 1)
            l0 = min(m + 1, self.n - dst + 1)
            end = dst + l0 - 1
            if end > len(buf):
                return
            if l0 == m + 1:  # a new trie node (a reference reaching n is never admissible)
                c = buf[at]
                child = children[node].get(c)
                if child is None:
                    children[node][c] = len(children)
                    children.append({})
                    node_end.append(end)
                else:
                    node_end[child] = min(node_end[child], end)
            self.spans[x] = (dst, end)
            self.queue.popleft()

    def use(self, ref: int, pos: int, used: int) -> int:
        """Record a use of R'_ref at ``pos``; returns its 0-based start."""
        if not 1 <= ref < len(self.starts) or self.starts[ref] + used > pos:
            raise CorruptStream(f"reference {ref} used at {pos} is not decoded yet")
        self.checks.append((ref, pos, used))
        return self.starts[ref] - 1

    def verify(self, final: bool) -> None:
        while self.checks and self.checks[0][0] in self.spans:
            ref, pos, used = self.checks.popleft()
            start, end = self.spans[ref]
            if end >= pos:
                raise CorruptStream(f"reference {ref} ends at {end}, not before its use at {pos}")
            if used > end - start + 1:
                raise CorruptStream(f"factor at {pos} takes {used} symbols of reference {ref} of length {end - start + 1}")
        if final and (self.checks or self.queue):
            raise CorruptStream("unresolved references at end of stream")


def _decode_fpa78(reader: _Reader, n: int, z: int, out: bytearray) -> list:
    refs = _PendingReferences(out, n)
    factors = []
    for x in range(1, z + 1):
        ref = reader.varint()
        tail = reader.varint()
        trim, no_symbol = tail >> 1, tail & 1
        pos = len(out) + 1
        refs.create(pos)
        if ref == 0:
            if trim:
                raise CorruptStream(f"literal factor {x} copies {trim} symbols")
            src = 0
        else:
            if ref >= x:
                raise CorruptStream(f"factor {x} names reference {ref}")
            src = refs.use(ref, pos, trim)
        _copy(out, src, trim, n)
        c = None if no_symbol else _symbol(reader, out, n)
        if c is None and trim == 0:
            raise CorruptStream(f"factor {x} is empty")
        kind = "lit" if ref == 0 else "ref"
        factors.append(make_factor((kind, pos, trim + (c is not None), ref, None, trim, c, None)))
        refs.resolve()
        refs.verify(final=False)
    refs.resolve()
    refs.verify(final=True)
    return factors


def _read_component(reader: _Reader, starts: list, lengths: list, out: bytearray, n: int) -> tuple[int, int]:
    """Decode one LZD/LZMW component; returns (ref, symbols appended)."""
    v = reader.varint()
    if v == 0:
        _symbol(reader, out, n)
        return 0, 1
    if v == _ABSENT:
        raise CorruptStream("absent component in a mandatory slot")
    ref = v >> 1
    if ref >= len(starts) or lengths[ref] == 0:
        raise CorruptStream(f"component names undefined word {ref}")
    used = lengths[ref]
    if v & 1:
        used = reader.varint()
        if not 1 <= used < lengths[ref]:
            raise CorruptStream(f"word {ref} cut to {used} of {lengths[ref]} symbols")
    _copy(out, starts[ref], used, n)
    return ref, used


def _decode_lzd(reader: _Reader, n: int, z: int, out: bytearray) -> list:
    starts, lengths = [0], [0]
    factors = []
    for x in range(1, z + 1):
        pos = len(out) + 1
        ref1, _ = _read_component(reader, starts, lengths, out, n)
        at = reader.at
        if reader.varint() == _ABSENT:
            ref2 = None
        else:
            reader.at = at
            ref2, _ = _read_component(reader, starts, lengths, out, n)
        length = len(out) - pos + 1
        factors.append(make_factor(("pair", pos, length, ref1, ref2, None, None, None)))
        starts.append(pos - 1)
        lengths.append(length)
    return factors


def _decode_lzmw(reader: _Reader, n: int, z: int, out: bytearray) -> list:
    starts, lengths = [0, 0], [0, 0]  # word y (y >= 2) is F_{y-1}F_y
    prev_pos = None
    factors = []
    for x in range(1, z + 1):
        pos = len(out) + 1
        ref, used = _read_component(reader, starts, lengths, out, n)
        if ref == 0:
            factors.append(make_factor(("lit", pos, 1, 0, None, None, out[pos - 1], None)))
        else:
            factors.append(make_factor(("ref", pos, used, ref, None, None, None, None)))
        if prev_pos is not None:
            starts.append(prev_pos - 1)
            lengths.append(len(out) - prev_pos + 1)
        prev_pos = pos
    return factors


def _decode_copy(reader: _Reader, n: int, z: int, out: bytearray) -> list:
    """Literal/copy records whose sources may point forward (lexparse)."""
    link: list = []  # per position: literal symbol (bytes) or 0-based source position
    factors = []
    for _ in range(z):
        pos = len(link) + 1
        flag = reader.byte()
        if flag == 0:
            c = reader.byte()
            link.append(bytes([c]))
            factors.append(make_factor(("lit", pos, 1, None, None, None, c, None)))
        elif flag == 1:
            src = reader.varint()
            length = reader.varint()
            if not 1 <= src <= n or length == 0 or src == pos:
                raise CorruptStream(f"copy at {pos} from {src} of length {length}")
            link.extend(src - 1 + k for k in range(length))
            factors.append(make_factor(("copy", pos, length, None, None, None, None, src)))
        else:
            raise CorruptStream(f"bad record flag {flag}")
        if len(link) > n:
            raise CorruptStream("factor runs past the declared text length")
    if len(link) != n:
        raise CorruptStream(f"decoded {len(link)} symbols, header says {n}")
    out += _resolve_links(link)
    return factors


def _resolve_links(link: list) -> bytes:
    """Follow copy links to literals; a cycle means the stream is corrupt."""
    value: list = [None] * len(link)
    for i in range(len(link)):
        path = []
        j = i
        while value[j] is None and not isinstance(link[j], bytes):
            path.append(j)
            j = link[j]
            if j >= len(link) or len(path) > len(link):
                raise CorruptStream(f"copy chain from position {i + 1} does not reach a literal")
        c = value[j] if value[j] is not None else link[j][0]
        value[j] = c
        for k in path:
            value[k] = c
    return bytes(value)


def _decode_closed(reader: _Reader, n: int, z: int, out: bytearray) -> list:
    factors = []
    for _ in range(z):
        pos = len(out) + 1
        flag = reader.byte()
        if flag == 0:
            c = _symbol(reader, out, n)
            factors.append(make_factor(("lit", pos, 1, None, None, None, c, None)))
        elif flag == 1:
            src = reader.varint()
            length = reader.varint()
            border = reader.varint()
            if not 1 <= border < length or src > pos:
                raise CorruptStream(f"closed factor at {pos}: src {src}, length {length}, border {border}")
            head = reader.raw(length - border)
            if len(out) + len(head) > n:
                raise CorruptStream("factor runs past the declared text length")
            out += head
            _copy(out, src - 1, border, n)
            factors.append(make_factor(("copy", pos, length, None, None, border, None, src)))
        else:
            raise CorruptStream(f"bad record flag {flag}")
    return factors


_DECODERS = {
    "lz78": _decode_lz78,
    "fp78": _decode_fp78,
    "fpa78": _decode_fpa78,
    "lzd": _decode_lzd,
    "lzmw": _decode_lzmw,
    "lexparse": _decode_copy,
    "sg_lz77": _decode_copy,
    "closed_longest": _decode_closed,
    "closed_shortest": _decode_closed,
}


def write_stream(f: Factorization, path) -> None:
    with open(path, "wb") as fh:
        fh.write(encode(f))


def read_stream(path) -> Factorization:
    with open(path, "rb") as fh:
        return decode_factorization(fh.read())


__all__ = [
    "ALGO_CODES",
    "MAGIC",
    "decode",
    "decode_factorization",
    "encode",
    "read_stream",
    "write_stream",
    "write_varint",
]
