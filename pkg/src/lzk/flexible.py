"""Flexible (semi-greedy) parsings: FP78, FPA78 and semi-greedy LZ77.

For a factor starting at ``dst`` let M(q) be the length of the longest
admissible reference prefixing ``T[q..]`` (admissible: it ends before q).
The factor may take any length l1 in [1..l0] with l0 = min(M(dst)+1,
n-dst+1); it takes the one maximizing the advance dst + l1 + M(dst+l1),
preferring the larger l1 on ties.  A factor that can reach the end of the
text takes l0 directly.

FP78 draws references from the classic LZ78 factors of T.  FPA78 creates
one reference per factor: R'_x = T[dst_x..dst_x+l0-1], the greedy match at
the factor start extended by one symbol.  R'_x is visible to the lookahead
of factor x itself at every position after its end.
"""

from __future__ import annotations

import heapq
from collections.abc import Callable, Iterator
from typing import Optional

import numpy as np

from .factors import Factor, Factorization, make_factor, resolve_interval
from .lz78 import lz78_factorize
from .suffix_tree import QueryHandle
from .text_index import SparseTable, TextIndex

Lookup = Callable[[int], Optional[tuple[int, int]]]


def semi_greedy_steps(n: int, lookup: Lookup, on_start=None) -> Iterator[tuple[int, int, int, int, int]]:
    """Drive the flexible choice rule; yields (x, dst, length, M(dst), ref at dst).

    ``lookup(q)`` returns (M(q), ref id) or ``None`` for a position known to
    be dominated by another candidate.  Positions are requested in
    non-decreasing order of first request.  ``on_start(x, dst, l0)`` runs
    before the lookahead of factor x.
    """
    dst, x = 1, 0
    while dst <= n:
        x += 1
        m0, w = lookup(dst)
        l0 = min(m0 + 1, n - dst + 1)
        if on_start is not None:
            on_start(x, dst, l0)
        if dst + l0 == n + 1:
            best_len = l0
        else:
            best, best_len = -1, 1
            for l1 in range(1, l0 + 1):
                got = lookup(dst + l1)
                if got is not None and dst + l1 + got[0] >= best:
                    best, best_len = dst + l1 + got[0], l1
        yield x, dst, best_len, m0, w
        dst += best_len


class LookaheadMemo:
    """Memoized longest-admissible-reference lookups on a query handle.

    Fresh lookups happen in strictly increasing position order; before each,
    the pending references ending before that position are inserted at
    their loci.  A reference created later is patched into memo entries
    after its end that it prefixes, so every entry equals a fresh lookup
    against all references created so far.
    """

    def __init__(self, handle: QueryHandle):
        self.handle = handle
        self.idx = handle.index
        self.tree = handle.tree
        self.memo: dict[int, tuple[int, int]] = {}
        self.frontier = 0
        self.pending: list[tuple[int, int, int, int]] = []
        self.max_memo = 0

    def add_reference(self, ref_id: int, start: int, length: int) -> None:
        end = start + length - 1
        heapq.heappush(self.pending, (end, ref_id, start, length))
        lce = self.idx._lce
        for q, (best, _) in self.memo.items():
            if q > end and length > best and lce(q, start) >= length:
                self.memo[q] = (length, ref_id)

    def __call__(self, q: int) -> tuple[int, int]:
        got = self.memo.get(q)
        if got is not None:
            return got
        assert q > self.frontier, (q, self.frontier)
        pending, tree, handle = self.pending, self.tree, self.handle
        while pending and pending[0][0] < q:
            _, ref_id, start, length = heapq.heappop(pending)
            handle.mark(tree.weighted_ancestor(tree.leaf_of_suffix[start], length), ref_id, length)
        _, ref_id, length = handle.lowest_marked_ancestor(tree.leaf_of_suffix[q])
        self.memo[q] = got = (length, ref_id)
        self.frontier = q
        self.max_memo = max(self.max_memo, len(self.memo))
        return got

    def evict_before(self, q: int) -> None:
        for p in [p for p in self.memo if p < q]:
            del self.memo[p]


def lz78_prefix_table(lz: Factorization) -> tuple[list[int], list[int]]:
    """Per LZ78 factor id: its length and the id of its length-minus-one prefix."""
    lengths, parents = [0], [0]
    for f in lz.factors:
        lengths.append(f.len)
        parents.append(f.ref)
    return lengths, parents


def lz78_prefix_id(lengths: list[int], parents: list[int], ref: int, length: int) -> int:
    """Id of the LZ78 factor equal to the first ``length`` symbols of factor ``ref``."""
    while lengths[ref] > length:
        ref = parents[ref]
    assert lengths[ref] == length
    return ref


def fp78_encode(t: bytes, steps, lengths, parents) -> list[Factor]:
    """Factor records for FP78 steps: (prefix id, trailing symbol)."""
    factors = []
    for _, dst, p, _, w in steps:
        c = t[dst + p - 1]
        if p == 1:
            factors.append(make_factor(("lit", dst, 1, 0, None, None, c, None)))
        else:
            factors.append(make_factor(("ref", dst, p, lz78_prefix_id(lengths, parents, w, p - 1), None, None, c, None)))
    return factors


def lz78_references(lz: Factorization) -> list[tuple[int, int, int]]:
    """(id, start, length) of every LZ78 factor usable as a reference.

    A trimmed final factor repeats an earlier factor and ends the text, so
    it is never admissible and is left out.
    """
    out = []
    for y, f in enumerate(lz.factors, 1):
        if f.ch is not None:
            out.append((y, f.pos, f.len))
    return out


def fp78_factorize(handle: QueryHandle) -> Factorization:
    """FP78 of the whole text, with the fixed LZ78 dictionary on the suffix tree."""
    idx = handle.index
    n, t = idx.n, idx.t
    lz = lz78_factorize(handle)
    lz_calls = handle.lma_calls
    handle.begin()
    look = LookaheadMemo(handle)
    for y, start, length in lz78_references(lz):
        look.add_reference(y, start, length)
    lengths, parents = lz78_prefix_table(lz)
    steps = []
    for step in semi_greedy_steps(n, look):
        steps.append(step)
        look.evict_before(step[1] + step[2])
    factors = fp78_encode(t, steps, lengths, parents)
    counters = handle.counters()
    counters.update(lz78_lma_calls=lz_calls, max_memo=look.max_memo, lz78_factors=len(lz))
    return Factorization("fp78", idx.text, factors, resolve_interval(None, n), counters)


def fpa78_factorize(handle: QueryHandle) -> Factorization:
    """FPA78 of the whole text: references are greedy matches at factor starts."""
    idx = handle.index
    n, t = idx.n, idx.t
    handle.begin()
    look = LookaheadMemo(handle)
    references: list[tuple[int, int]] = [(0, 0)]

    def create(x: int, dst: int, l0: int) -> None:
        references.append((dst, l0))
        look.add_reference(x, dst, l0)

    factors = []
    for x, dst, p, _, w in semi_greedy_steps(n, look, create):
        look.evict_before(dst + p)
        c = t[dst + p - 1]
        if p == 1:
            factors.append(make_factor(("lit", dst, 1, 0, None, 0, c, None)))
        else:
            assert references[w][0] + references[w][1] - 1 < dst  # admissible
            factors.append(make_factor(("ref", dst, p, w, None, p - 1, c, None)))
    counters = handle.counters()
    counters.update(max_memo=look.max_memo, references=len(references) - 1)
    return Factorization("fpa78", idx.text, factors, resolve_interval(None, n), counters)


def fpa78_reference_spans(fact: Factorization) -> list[tuple[int, int]]:
    """(start, length) of every FPA78 reference R'_x, recomputed from the text.

    Used to check admissibility of a finished factorization.
    """
    text = fact.text
    n = len(text)
    spans: list[tuple[int, int]] = []
    for f in fact.factors:
        dst = f.pos
        best = 0
        for start, length in spans:
            if start + length - 1 < dst and length > best and text.startswith(text[start - 1 : start - 1 + length], dst - 1):
                best = length
        spans.append((dst, min(best + 1, n - dst + 1)))
    return spans


def semi_greedy_lz77(idx: TextIndex, prefix_end: Optional[int] = None) -> Factorization:
    """Semi-greedy LZ77 of ``T[1..prefix_end]`` from LPF and a range-maximum table.

    With g(k) = k + max(LPF[k], 1), the factor at ``dst`` takes the length
    k - dst for the rightmost k in [dst+1..dst+LPF[dst]] maximizing
    min(g(k), N+1); a factor reaching N is taken whole.  Each copy names the
    leftmost occurrence of its string as source.
    """
    n = idx.n if prefix_end is None else prefix_end
    resolve_interval((1, n), idx.n)
    lpf = idx.lpf()
    rmq = _reach_table(idx)
    t = idx.t
    factors = []
    dst = 1
    while dst <= n:
        length = min(lpf[dst], n - dst + 1)
        if length == 0:
            factors.append(make_factor(("lit", dst, 1, None, None, None, t[dst], None)))
            dst += 1
            continue
        if dst + length < n + 1:
            lo, hi = dst + 1, dst + length
            target = min(rmq.query(lo, hi), n + 1)
            # rightmost k in [lo..hi] with g(k) >= target
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if rmq.query(mid, hi) >= target:
                    lo = mid
                else:
                    hi = mid - 1
            length = lo - dst
        factors.append(make_factor(("copy", dst, length, None, None, None, None, idx.leftmost_occurrence(dst, length))))
        dst += length
    return Factorization("sg_lz77", t[1 : n + 1], factors, resolve_interval((1, n), idx.n))


def _reach_table(idx: TextIndex) -> SparseTable:
    table = getattr(idx, "_reach_rmq", None)
    if table is None:
        lpf = idx.lpf()
        reach = [0] + [k + max(lpf[k], 1) for k in range(1, idx.n + 1)]
        table = SparseTable(reach, func=np.maximum)
        idx._reach_rmq = table
    return table
