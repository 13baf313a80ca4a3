"""LZ78 factorization: suffix-tree superimposition backend and trie baseline."""

from __future__ import annotations

from .factors import Factorization, as_text, make_factor, resolve_interval
from .suffix_tree import QueryHandle


def lz78_factorize(handle: QueryHandle, interval=None) -> Factorization:
    """Greedy LZ78 of ``T[I]`` as a standalone string, answered from the suffix tree.

    Each new factor of length L+1 ends on the path of its starting leaf and
    is marked at its locus with the factor id, so later lowest-marked-ancestor
    queries return the longest earlier factor that prefixes a suffix.  As the
    dictionary is prefix-closed, the reference of length L found at node v
    is the deepest one on the path, and the new locus is v itself or the
    child of v toward the leaf.
    """
    idx, tree = handle.index, handle.tree
    iv = resolve_interval(interval, idx.n)
    b, e = iv.begin, iv.end
    handle.begin()
    t, leaf_of, sd, parent = idx.t, tree.leaf_of_suffix, tree.sd, tree.parent
    stamp, best, epoch = handle._stamp, handle._best, handle.epoch
    count, refs = handle._count, handle._refs
    calls = fresh = 0
    factors = []
    dst, x = b, 0
    while dst <= e:
        x += 1
        cap = e - dst + 1
        # inlined lowest-marked-ancestor walk remembering the child below
        node, below = leaf_of[dst], -1
        while node and stamp[node] != epoch:
            node, below = parent[node], node
        ref, length = best[node] if node else (0, 0)
        calls += 1
        rel = dst - b + 1
        if length >= cap:
            # prefix-closed: the prefix of length cap is itself a factor
            if length > cap:
                handle.lma_calls += calls
                node, ref, length = handle.lowest_marked_ancestor(leaf_of[dst], cap)
                calls = 0
            factors.append(make_factor(("ref", rel, length, ref, None, None, None, None)))
            break
        c = t[dst + length]
        if length == 0:
            factors.append(make_factor(("lit", rel, 1, 0, None, None, c, None)))
        else:
            factors.append(make_factor(("ref", rel, length + 1, ref, None, None, c, None)))
        if length + 1 > sd[node]:
            node = below
        if stamp[node] != epoch:  # first reference at this node
            stamp[node], count[node], best[node], refs[node] = epoch, 1, (x, length + 1), None
            fresh += 1
        else:
            handle.mark(node, x, length + 1)
        dst += length + 1
    handle.lma_calls += calls
    handle.marks += fresh
    return Factorization("lz78", t[b : e + 1], factors, iv, handle.counters())


def lz78_trie_factorize(text) -> Factorization:
    """Greedy LZ78 of ``text`` with an explicit dictionary trie (no suffix tree)."""
    text = as_text(text)
    n = len(text)
    children: list[dict[int, int]] = [{}]
    factors = []
    dst = 0
    while dst < n:
        node, length = 0, 0
        while dst + length < n:
            nxt = children[node].get(text[dst + length])
            if nxt is None:
                break
            node, length = nxt, length + 1
        if dst + length == n:
            factors.append(make_factor(("ref", dst + 1, length, node, None, None, None, None)))
            break
        c = text[dst + length]
        children[node][c] = len(children)
        children.append({})
        if length == 0:
            factors.append(make_factor(("lit", dst + 1, 1, 0, None, None, c, None)))
        else:
            factors.append(make_factor(("ref", dst + 1, length + 1, node, None, None, c, None)))
        dst += length + 1
    return Factorization("lz78", text, factors)
