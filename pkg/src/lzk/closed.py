"""Longest and shortest closed factorizations as substring queries.

A string is closed if it has a border (a proper prefix that is also a
suffix) occurring nowhere else inside it; single symbols are closed.  The
longest closed prefix of ``T[b..e]`` of length >= 2 ends an occurrence of a
border that starts at the next occurrence ``j > b`` of that border.
"""

from __future__ import annotations

import logging

from .errors import NoFactorization
from .factors import Factor, Factorization, make_factor, resolve_interval
from .suffix_tree import ROOT, QueryHandle
from .text_index import TextIndex

log = logging.getLogger(__name__)

SHORTENINGS = ("exact", "single-step-u", "single-step-u-prime")


def _factor(rel: int, length: int, border: int, ch: int) -> Factor:
    if length == 1:
        return make_factor(("lit", rel, 1, None, None, None, ch, None))
    return make_factor(("copy", rel, length, None, None, border, None, rel))


def longest_closed_substring(
    handle: QueryHandle, interval=None, mode: str = "p_array", shortening: str = "exact"
) -> Factorization:
    """Longest closed factorization of ``T[I]``.

    ``mode`` selects how the node u = parent(P[b]) is found: ``"p_array"``
    reads the stored P array, ``"search"`` binary-searches the leaf's
    ancestors by subtree maximum.  ``shortening`` selects how the case of a
    border running past ``e`` is handled: ``"exact"`` searches the ancestor
    path for the longest border that still fits, while ``"single-step-u"`` and
    ``"single-step-u-prime"`` cut the border once to the remaining length
    and locate j' in the subtree of u, respectively of its weighted
    ancestor u'; they are kept for differential diagnostics only.
    """
    if shortening not in SHORTENINGS:
        raise ValueError(f"unknown shortening {shortening!r}")
    idx, tree = handle.index, handle.tree
    iv = resolve_interval(interval, idx.n)
    b0, e = iv.begin, iv.end
    t = idx.t
    parent, sd = tree.parent, tree.sd
    P = tree.p_array() if mode == "p_array" else None
    factors = []
    b = b0
    while b <= e:
        rel = b - b0 + 1
        node = P[b] if P is not None else tree.p_by_search(b)
        u = parent[node]
        if u == ROOT or b == e:
            factors.append(_factor(rel, 1, 0, t[b]))
            b += 1
            continue
        border = sd[u]
        j = idx.range_next_value(b, tree.range_l[u], tree.range_r[u])
        if j + border - 1 > e:
            if shortening == "exact":
                j, border = _fit_border(idx, tree, b, u, e)
            else:
                j, border = _single_step_shortening(idx, tree, b, u, j, e, shortening)
        if border == 0:
            factors.append(_factor(rel, 1, 0, t[b]))
            b += 1
            continue
        length = j + border - b
        factors.append(_factor(rel, length, border, t[b]))
        b += length
    return Factorization("closed_longest", t[b0 : e + 1], factors, iv)


def _fit_border(idx: TextIndex, tree, b: int, u: int, e: int) -> tuple[int, int]:
    """Longest border fitting in ``[b..e]``, as (next occurrence j, length).

    For the ancestor v of u at tree depth d, let j_v be the next occurrence
    after b inside v's subtree.  Both j_v and sd(parent(v)) grow with d, so
    the depths with j_v + sd(parent(v)) <= e form a prefix of the path; the
    deepest such v gives the border length min(sd(v), e - j_v + 1).
    """
    lo, hi = 0, tree.depth[u]  # answer depth in [lo..hi]; depth 0 means none
    best = None
    while lo < hi:
        mid = (lo + hi + 1) // 2
        v = tree.level_anc(u, mid)
        j = idx.range_next_value(b, tree.range_l[v], tree.range_r[v])
        if j + tree.sd[tree.parent[v]] <= e:
            lo, best = mid, (v, j)
        else:
            hi = mid - 1
    if best is None:
        return 0, 0
    v, j = best
    return j, min(tree.sd[v], e - j + 1)


def _single_step_shortening(idx, tree, b, u, j, e, shortening) -> tuple[int, int]:
    """Cut the border once to ``e - j + 1`` and take the next occurrence below u or u'."""
    need = e - j + 1
    u_prime = tree.weighted_ancestor(u, need) if need > 0 else ROOT
    if u_prime == ROOT:
        return 0, 0
    border = min(tree.sd[u_prime], need)
    node = u if shortening == "single-step-u" else u_prime
    j2 = idx.range_next_value(b, tree.range_l[node], tree.range_r[node])
    if j2 is None or j2 + border - 1 > e:
        return 0, 0
    return j2, border


def shortest_closed_substring(idx: QueryHandle | TextIndex, interval=None) -> Factorization:
    """Shortest closed factorization of ``T[I]``: each factor closes at the next copy of its first symbol.

    Raises :class:`NoFactorization` when some cursor symbol does not recur
    inside the interval; the exception carries the factorized prefix.
    """
    if isinstance(idx, QueryHandle):
        idx = idx.index
    iv = resolve_interval(interval, idx.n)
    b0, e = iv.begin, iv.end
    t = idx.t
    factors = []
    p = b0
    while p <= e:
        rel = p - b0 + 1
        q = idx.next_char_occurrence(t[p], p)
        if q is None or q > e:
            partial = Factorization("closed_shortest", t[b0:p], factors, iv)
            raise NoFactorization(rel, partial)
        factors.append(make_factor(("copy", rel, q - p + 1, None, None, 1, None, rel)))
        p = q + 1
    return Factorization("closed_shortest", t[b0 : e + 1], factors, iv)
