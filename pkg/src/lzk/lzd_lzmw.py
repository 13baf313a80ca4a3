"""LZD and LZMW as substring-compression queries over a shared suffix tree.

Both dictionaries are not prefix-closed, so a marked node does not imply
marked ancestors.  The lowest-marked-ancestor query still returns the
longest dictionary word prefixing a suffix: every word is marked at its own
locus with its own length, and the deepest marked node on the leaf's path
carries the longest such word.  Near the interval end the query is capped
at the remaining length, so a word running past the end is skipped.
"""

from __future__ import annotations

from .factors import Factorization, make_factor, resolve_interval
from .suffix_tree import QueryHandle


def lzd_factorize(handle: QueryHandle, interval=None) -> Factorization:
    """Standalone LZD of ``T[I]``: each factor is R1·R2, both earlier factors or symbols."""
    idx, tree = handle.index, handle.tree
    iv = resolve_interval(interval, idx.n)
    b, e = iv.begin, iv.end
    handle.begin()
    leaf_of, sd, parent = tree.leaf_of_suffix, tree.sd, tree.parent
    # the lowest-marked-ancestor walks and first marks are inlined; the
    # capped slow path, repeated marks and the counters stay with the handle
    stamp, best, epoch, fit = handle._stamp, handle._best, handle.epoch, handle._fit_below_cap
    count, refs = handle._count, handle._refs
    calls = capped = fresh = 0
    factors = []
    dst, x = b, 0
    while dst <= e:
        x += 1
        leaf = v = leaf_of[dst]
        while v and stamp[v] != epoch:
            v = parent[v]
        ref1, len1 = best[v] if v else (0, 0)
        if len1 > e - dst + 1:
            capped += 1
            _, ref1, len1 = fit(v, e - dst + 1)
        calls += 1
        if len1 == 0:
            ref1, len1 = 0, 1
        mid = dst + len1
        if mid > e:
            factors.append(make_factor(("pair", dst - b + 1, len1, ref1, None, None, None, None)))
            break
        v = leaf_of[mid]
        while v and stamp[v] != epoch:
            v = parent[v]
        ref2, len2 = best[v] if v else (0, 0)
        if len2 > e - mid + 1:
            capped += 1
            _, ref2, len2 = fit(v, e - mid + 1)
        calls += 1
        if len2 == 0:
            ref2, len2 = 0, 1
        total = len1 + len2
        factors.append(make_factor(("pair", dst - b + 1, total, ref1, ref2, None, None, None)))
        # the locus lies below the marked node found for the first component,
        # so climbing from the leaf costs no more than that walk did
        v = leaf
        while sd[parent[v]] >= total:
            v = parent[v]
        if stamp[v] != epoch:  # first reference at this node
            stamp[v], count[v], best[v], refs[v] = epoch, 1, (x, total), None
            fresh += 1
        else:
            handle.mark(v, x, total)
        dst += total
    handle.lma_calls += calls
    handle.capped += capped
    handle.marks += fresh
    return Factorization("lzd", idx.t[b : e + 1], factors, iv, handle.counters())


def lzmw_factorize(handle: QueryHandle, interval=None) -> Factorization:
    """Standalone LZMW of ``T[I]``; reference ``y`` denotes F_{y-1}F_y."""
    idx, tree = handle.index, handle.tree
    iv = resolve_interval(interval, idx.n)
    b, e = iv.begin, iv.end
    handle.begin()
    t, leaf_of = idx.t, tree.leaf_of_suffix
    sd, parent = tree.sd, tree.parent
    stamp, best, epoch, fit = handle._stamp, handle._best, handle.epoch, handle._fit_below_cap
    count, refs = handle._count, handle._refs
    calls = capped = fresh = 0
    factors = []
    dst, x = b, 0
    prev_dst = prev_len = 0
    while dst <= e:
        x += 1
        v = leaf_of[dst]
        while v and stamp[v] != epoch:
            v = parent[v]
        ref, length = best[v] if v else (0, 0)
        if length > e - dst + 1:
            capped += 1
            _, ref, length = fit(v, e - dst + 1)
        calls += 1
        rel = dst - b + 1
        if length == 0:
            length = 1
            factors.append(make_factor(("lit", rel, 1, 0, None, None, t[dst], None)))
        else:
            factors.append(make_factor(("ref", rel, length, ref, None, None, None, None)))
        if x >= 2:
            # the locus of F_{x-1}F_x lies below the node that supplied
            # F_{x-1}, on the path already walked from its leaf
            total = prev_len + length
            v = leaf_of[prev_dst]
            while sd[parent[v]] >= total:
                v = parent[v]
            if stamp[v] != epoch:  # first reference at this node
                stamp[v], count[v], best[v], refs[v] = epoch, 1, (x, total), None
                fresh += 1
            else:
                handle.mark(v, x, total)
        prev_dst, prev_len = dst, length
        dst += length
    handle.lma_calls += calls
    handle.capped += capped
    handle.marks += fresh
    return Factorization("lzmw", t[b : e + 1], factors, iv, handle.counters())
