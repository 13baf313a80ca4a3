"""lexparse: every factor copies from the lexicographic predecessor of its suffix."""

from __future__ import annotations

from .factors import Factorization, make_factor, resolve_interval
from .suffix_tree import QueryHandle
from .text_index import TextIndex


def lexparse_full(idx: TextIndex) -> Factorization:
    """lexparse of the whole text read off PLCP and Phi."""
    factors = []
    dst = 1
    while dst <= idx.n:
        length = idx.plcp[dst]
        if length:
            factors.append(make_factor(("copy", dst, length, None, None, None, None, idx.phi[dst])))
            dst += length
        else:
            factors.append(make_factor(("lit", dst, 1, None, None, None, idx.t[dst], None)))
            dst += 1
    return Factorization("lexparse", idx.text, factors, resolve_interval(None, idx.n))


def lexparse_substring(handle: QueryHandle | TextIndex, interval=None) -> Factorization:
    """Standalone lexparse of ``T[I]`` from substring-suffix rank/select and LCE.

    The source of a factor at ``b`` is the truncated suffix ranked right
    before ``T[b..e]`` among all truncated suffixes of the fixed interval;
    the copy length is capped so that the source stays inside the interval.
    """
    idx = handle.index if isinstance(handle, QueryHandle) else handle
    iv = resolve_interval(interval, idx.n)
    b, e = iv.begin, iv.end
    order = idx.interval_order(iv)
    rank_of, select = order._rank, order._select
    isa, rows, t = idx.isa, idx.lcp_rmq._lists, idx.t
    factors = []
    cur = b
    while cur <= e:
        k = rank_of[cur]
        rel = cur - b + 1
        length = 0
        if k > 1:
            j = select[k - 1]
            # LCE of T[cur..] and T[j..] by a range minimum over LCP
            lo, hi = isa[cur], isa[j]
            if lo > hi:
                lo, hi = hi, lo
            lo += 1
            level = (hi - lo + 1).bit_length() - 1
            row = rows[level]
            x, y = row[lo], row[hi - (1 << level) + 1]
            length = x if x < y else y
            room = e - (j if j > cur else cur) + 1
            if room < length:
                length = room
        if length:
            factors.append(make_factor(("copy", rel, length, None, None, None, None, j - b + 1)))
            cur += length
        else:
            factors.append(make_factor(("lit", rel, 1, None, None, None, t[cur], None)))
            cur += 1
    return Factorization("lexparse", idx.t[b : e + 1], factors, iv)
