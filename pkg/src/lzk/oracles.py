"""Brute-force reference factorizations, sharing no code with the index-based modules.

Every function transcribes a definition directly on a byte string: longest
prefix matches by scanning, flexible parsings by trying every admissible
first length with a one-step greedy lookahead, lexparse by sorting the
suffixes of the string itself, and closedness by checking borders.
"""

from __future__ import annotations

from .errors import NoFactorization, UnsupportedAlgo
from .factors import Factorization, as_text, make_factor

ALGOS = (
    "lz78",
    "fp78",
    "fpa78",
    "sg_lz77",
    "lzd",
    "lzmw",
    "lexparse",
    "closed_longest",
    "closed_shortest",
)


def naive_factorize(algo: str, text) -> Factorization:
    """Factorize ``text`` with the brute-force oracle for ``algo``."""
    try:
        func = _ORACLES[algo]
    except KeyError:
        raise UnsupportedAlgo(f"unknown algorithm {algo!r}") from None
    return func(as_text(text))


# A dictionary of words is a plain trie: a node maps a symbol to its child,
# and key ``None`` holds the id of the word ending there (the first id of a
# repeated word wins).


def _trie_longest(root: dict, s: bytes, pos: int) -> tuple[int, int]:
    """End (exclusive) and id of the longest word prefixing ``s[pos:]``; ``(pos, 0)`` if none."""
    node, end, best, ref = root, pos, pos, 0
    n = len(s)
    while end < n:
        node = node.get(s[end])
        if node is None:
            break
        end += 1
        r = node.get(None)
        if r is not None:
            best, ref = end, r
    return best, ref


def _trie_add(root: dict, s: bytes, start: int, end: int, ref: int) -> None:
    """Insert the word ``s[start:end]`` with id ``ref`` unless it is present."""
    node = root
    for c in s[start:end]:
        child = node.get(c)
        if child is None:
            child = node[c] = {}
        node = child
    if None not in node:
        node[None] = ref


# -- LZ78 family ---------------------------------------------------------


def naive_lz78(s: bytes) -> Factorization:
    words: dict = {None: 0}
    factors = []
    pos, n = 0, len(s)
    while pos < n:
        # the dictionary is prefix-closed, so the walk stops at the first miss
        end, ref = _trie_longest(words, s, pos)
        if end == n:
            factors.append(make_factor(("ref", pos + 1, end - pos, ref, None, None, None, None)))
            break
        _trie_add(words, s, pos, end + 1, len(factors) + 1)
        kind = "ref" if end > pos else "lit"
        factors.append(make_factor((kind, pos + 1, end - pos + 1, ref, None, None, s[end], None)))
        pos = end + 1
    return Factorization("lz78", s, factors)


def _flexible(s: bytes, refs_for) -> list[tuple[int, int, int]]:
    """Flexible choice rule; ``refs_for(x, dst)`` lists (id, start, length) refs.

    Positions are 1-based.  Returns (dst, length, ref id of M(dst)) per factor.
    """
    n = len(s)

    def advance(refs, q):
        best, best_id = 0, 0
        for rid, start, length in refs:
            if start + length - 1 < q and length > best and s.startswith(s[start - 1 : start - 1 + length], q - 1):
                best, best_id = length, rid
        return best, best_id

    out = []
    dst, x = 1, 0
    while dst <= n:
        x += 1
        m0, w = advance(refs_for(x, dst, None), dst)
        l0 = min(m0 + 1, n - dst + 1)
        refs = refs_for(x, dst, l0)
        if dst + l0 == n + 1:
            choice = l0
        else:
            best, choice = -1, 1
            for l1 in range(1, l0 + 1):
                value = dst + l1 + advance(refs, dst + l1)[0]
                if value >= best:
                    best, choice = value, l1
        out.append((dst, choice, w))
        dst += choice
    return out


def naive_fp78(s: bytes) -> Factorization:
    lz = naive_lz78(s)
    refs = [(y, f.pos, f.len) for y, f in enumerate(lz.factors, 1) if f.ch is not None]
    ids = {s[start - 1 : start - 1 + length]: y for y, start, length in refs}
    factors = []
    for dst, p, _ in _flexible(s, lambda x, dst, l0: refs):
        c = s[dst + p - 2]
        if p == 1:
            factors.append(make_factor(("lit", dst, 1, 0, None, None, c, None)))
        else:
            factors.append(make_factor(("ref", dst, p, ids[s[dst - 1 : dst + p - 2]], None, None, c, None)))
    return Factorization("fp78", s, factors)


def naive_fpa78(s: bytes) -> Factorization:
    refs: list[tuple[int, int, int]] = []

    def refs_for(x, dst, l0):
        if l0 is None:
            return list(refs)
        refs.append((x, dst, l0))
        return list(refs)

    factors = []
    for dst, p, w in _flexible(s, refs_for):
        c = s[dst + p - 2]
        if p == 1:
            factors.append(make_factor(("lit", dst, 1, 0, None, 0, c, None)))
        else:
            factors.append(make_factor(("ref", dst, p, w, None, p - 1, c, None)))
    return Factorization("fpa78", s, factors)


def fp78_optimum(s: bytes) -> int:
    """Fewest factors over all parsings whose factors are an admissible LZ78 reference plus one symbol.

    Exhaustive dynamic programming over every split position.
    """
    n = len(s)
    lz = naive_lz78(s)
    refs = [s[f.pos - 1 : f.pos - 1 + f.len] for f in lz.factors if f.ch is not None]
    ends = [f.pos + f.len - 1 for f in lz.factors if f.ch is not None]
    inf = n + 1
    best = [inf] * (n + 2)
    best[n + 1] = 0
    for q in range(n, 0, -1):
        m = max((len(w) for w, end in zip(refs, ends) if end < q and s.startswith(w, q - 1)), default=0)
        for length in range(1, min(m + 1, n - q + 1) + 1):
            best[q] = min(best[q], 1 + best[q + length])
    return best[1]


# -- LZ77 family ---------------------------------------------------------


def naive_lpf(s: bytes) -> list[int]:
    """LPF padded at index 0, by scanning all earlier starting positions."""
    n = len(s)
    lpf = [0] * (n + 1)
    for j in range(1, n + 1):
        best = 0
        for i in range(1, j):
            length = 0
            while j + length <= n and s[i - 1 + length] == s[j - 1 + length]:
                length += 1
            best = max(best, length)
        lpf[j] = best
    return lpf


def naive_sg_lz77(s: bytes) -> Factorization:
    """Semi-greedy LZ77 applied step by step; sources are the leftmost occurrences."""
    n = len(s)
    lpf = naive_lpf(s)
    factors = []
    dst = 1
    while dst <= n:
        if lpf[dst] == 0:
            factors.append(make_factor(("lit", dst, 1, None, None, None, s[dst - 1], None)))
            dst += 1
            continue
        if dst + lpf[dst] == n + 1:
            length = lpf[dst]
        else:
            best, length = -1, 1
            for k in range(dst + 1, dst + lpf[dst] + 1):
                value = min(k + max(lpf[k], 1), n + 1)
                if value >= best:
                    best, length = value, k - dst
        piece = s[dst - 1 : dst - 1 + length]
        src = s.find(piece, 0, dst - 2 + length) + 1
        factors.append(make_factor(("copy", dst, length, None, None, None, None, src)))
        dst += length
    return Factorization("sg_lz77", s, factors)


def naive_greedy_lz77(s: bytes) -> list[bytes]:
    """Greedy LZ77 factor strings (self-overlapping sources allowed)."""
    out = []
    pos = 0
    while pos < len(s):
        length = 0
        while pos + length < len(s) and s.find(s[pos : pos + length + 1], 0, pos + length) != -1:
            length += 1
        length = max(length, 1)
        out.append(s[pos : pos + length])
        pos += length
    return out


def naive_lexparse(s: bytes) -> Factorization:
    n = len(s)
    order = sorted(range(n), key=lambda i: s[i:])
    prev = {order[k]: order[k - 1] for k in range(1, n)}
    factors = []
    pos = 0
    while pos < n:
        length = 0
        if pos in prev:
            j = prev[pos]
            while pos + length < n and j + length < n and s[pos + length] == s[j + length]:
                length += 1
        if length:
            factors.append(make_factor(("copy", pos + 1, length, None, None, None, None, prev[pos] + 1)))
            pos += length
        else:
            factors.append(make_factor(("lit", pos + 1, 1, None, None, None, s[pos], None)))
            pos += 1
    return Factorization("lexparse", s, factors)


# -- LZD and LZMW --------------------------------------------------------


def naive_lzd(s: bytes) -> Factorization:
    words: dict = {}
    factors = []
    pos, n = 0, len(s)
    while pos < n:
        mid, ref1 = _trie_longest(words, s, pos)
        if mid == pos:
            mid = pos + 1
        if mid == n:
            factors.append(make_factor(("pair", pos + 1, mid - pos, ref1, None, None, None, None)))
            break
        end, ref2 = _trie_longest(words, s, mid)
        if end == mid:
            end = mid + 1
        _trie_add(words, s, pos, end, len(factors) + 1)
        factors.append(make_factor(("pair", pos + 1, end - pos, ref1, ref2, None, None, None)))
        pos = end
    return Factorization("lzd", s, factors)


def naive_lzmw(s: bytes) -> Factorization:
    words: dict = {}
    factors = []
    pos, n = 0, len(s)
    prev = -1  # start of the previous factor
    while pos < n:
        end, ref = _trie_longest(words, s, pos)
        if ref:
            factors.append(make_factor(("ref", pos + 1, end - pos, ref, None, None, None, None)))
        else:
            end = pos + 1
            factors.append(make_factor(("lit", pos + 1, 1, 0, None, None, s[pos], None)))
        if prev >= 0:
            _trie_add(words, s, prev, end, len(factors))
        prev, pos = pos, end
    return Factorization("lzmw", s, factors)


# -- closed factorizations ----------------------------------------------


def occurrences(s: bytes, w: bytes) -> int:
    """Number of (possibly overlapping) occurrences of ``w`` in ``s``."""
    count, at = 0, s.find(w)
    while at != -1:
        count += 1
        at = s.find(w, at + 1)
    return count


def is_closed(w: bytes) -> bool:
    """Closed: length <= 1, or some border occurs in ``w`` exactly twice."""
    if len(w) <= 1:
        return True
    return any(w[:k] == w[-k:] and occurrences(w, w[:k]) == 2 for k in range(1, len(w)))


def naive_closed_longest(s: bytes, exhaustive: bool = False) -> Factorization:
    """Longest closed factorization.

    The default scan uses that a closed prefix with border length L ends
    exactly where the next occurrence of its length-L prefix ends; with
    ``exhaustive`` every prefix is tested with :func:`is_closed` instead.
    """
    factors = []
    pos = 0
    while pos < len(s):
        rest = s[pos:]
        best, border = 1, 0
        if exhaustive:
            for m in range(len(rest), 1, -1):
                if is_closed(rest[:m]):
                    best = m
                    border = max(k for k in range(1, m) if rest[:k] == rest[m - k : m] and occurrences(rest[:m], rest[:k]) == 2)
                    break
        else:
            for k in range(1, len(rest)):
                j = rest.find(rest[:k], 1)
                if j == -1 or j + k > len(rest):
                    break
                best, border = j + k, k
        if best == 1:
            factors.append(make_factor(("lit", pos + 1, 1, None, None, None, s[pos], None)))
        else:
            factors.append(make_factor(("copy", pos + 1, best, None, None, border, None, pos + 1)))
        pos += best
    return Factorization("closed_longest", s, factors)


def naive_closed_shortest(s: bytes) -> Factorization:
    factors = []
    pos = 0
    while pos < len(s):
        q = s.find(s[pos : pos + 1], pos + 1)
        if q == -1:
            raise NoFactorization(pos + 1, Factorization("closed_shortest", s[:pos], factors))
        factors.append(make_factor(("copy", pos + 1, q - pos + 1, None, None, 1, None, pos + 1)))
        pos = q + 1
    return Factorization("closed_shortest", s, factors)


_ORACLES = {
    "lz78": naive_lz78,
    "fp78": naive_fp78,
    "fpa78": naive_fpa78,
    "sg_lz77": naive_sg_lz77,
    "lzd": naive_lzd,
    "lzmw": naive_lzmw,
    "lexparse": naive_lexparse,
    "closed_longest": naive_closed_longest,
    "closed_shortest": naive_closed_shortest,
}
