"""Compacted suffix tree over text+sentinel, plus per-query mark state.

Nodes are numbered in preorder (root = 0), children visited in symbol order
with the sentinel (symbol 0) first.  Leaf ranks run from 0 to n: rank 0 is
the sentinel leaf (suffix n+1) and ranks 1..n coincide with SA ranks.  The
string depth of a leaf counts the sentinel, so the leaf of suffix i has
string depth n - i + 2.
"""

from __future__ import annotations

from typing import Optional

from .errors import BadDepth, BadPosition
from .text_index import TextIndex

ROOT = 0


class SuffixTree:
    """Explicit suffix tree built from SA and LCP by the LCP-interval stack method."""

    def __init__(self, idx: TextIndex):
        self.index = idx
        n = self.n = idx.n
        sa, lcp = idx.sa, idx.lcp

        # Pass 1: bottom-up construction with temporary ids.
        tmp_sd: list[int] = []
        tmp_suffix: list[int] = []
        tmp_children: list[list[int]] = []

        def new_node(sd: int, suffix: int) -> int:
            tmp_sd.append(sd)
            tmp_suffix.append(suffix)
            tmp_children.append([])
            return len(tmp_sd) - 1

        root = new_node(0, 0)
        stack = [root]
        for rank in range(n + 1):
            suffix = n + 1 if rank == 0 else sa[rank]
            h = lcp[rank] if rank >= 2 else 0
            while tmp_sd[stack[-1]] > h:
                last = stack.pop()
                if tmp_sd[stack[-1]] >= h:
                    tmp_children[stack[-1]].append(last)
                else:
                    node = new_node(h, 0)
                    tmp_children[node].append(last)
                    stack.append(node)
            stack.append(new_node(n - suffix + 2, suffix))
        while len(stack) > 1:
            last = stack.pop()
            tmp_children[stack[-1]].append(last)

        # Pass 2: renumber in preorder and fill the navigation tables.
        size = self.size = len(tmp_sd)
        new_id = [0] * size
        order = []
        todo = [root]
        while todo:
            v = todo.pop()
            new_id[v] = len(order)
            order.append(v)
            todo.extend(reversed(tmp_children[v]))

        self.parent = parent = [ROOT] * size
        self.depth = depth = [0] * size
        self.sd = [tmp_sd[v] for v in order]
        self.suffix = [tmp_suffix[v] for v in order]
        self.kids = kids = [[new_id[c] for c in tmp_children[v]] for v in order]
        for v in range(size):
            for c in kids[v]:
                parent[c] = v
                depth[c] = depth[v] + 1

        self.range_l = [0] * size
        self.range_r = [0] * size
        self.maxsuf = [0] * size
        self.leaf_of_suffix = [0] * (n + 2)
        self.leaf_rank = {}
        rank = 0
        for v in range(size):  # preorder visits leaves left to right
            if not kids[v]:
                self.leaf_of_suffix[self.suffix[v]] = v
                self.leaf_rank[v] = rank
                self.range_l[v] = self.range_r[v] = rank
                self.maxsuf[v] = self.suffix[v]
                rank += 1
        for v in range(size - 1, -1, -1):  # children have larger preorder ids
            if kids[v]:
                self.range_l[v] = self.range_l[kids[v][0]]
                self.range_r[v] = self.range_r[kids[v][-1]]
                self.maxsuf[v] = max(self.maxsuf[c] for c in kids[v])

        t = idx.t
        self.children = []
        for v in range(size):
            sd = self.sd[v]
            self.children.append(
                {t[self._any_suffix(c) + sd]: c for c in kids[v]}
            )

        # Binary lifting: up[k][v] is the 2^k-th ancestor (root is its own parent).
        self.up = [parent]
        while (1 << len(self.up)) <= max(depth):
            prev = self.up[-1]
            self.up.append([prev[prev[v]] for v in range(size)])
        self._up_desc = self.up[::-1]

        self._p_array: Optional[list[int]] = None

    def _any_suffix(self, v: int) -> int:
        """Some suffix number in the subtree of v (the leftmost leaf's)."""
        rank = self.range_l[v]
        return self.n + 1 if rank == 0 else self.index.sa[rank]

    # -- navigation -------------------------------------------------------

    def is_leaf(self, v: int) -> bool:
        return not self.kids[v]

    def select_leaf(self, i: int) -> int:
        """The leaf of suffix ``i`` (``i = n + 1`` selects the sentinel leaf)."""
        if not 1 <= i <= self.n + 1:
            raise BadPosition(f"suffix {i} not within [1..{self.n + 1}]")
        return self.leaf_of_suffix[i]

    def child(self, v: int, c: int) -> Optional[int]:
        return self.children[v].get(c)

    def level_anc(self, v: int, d: int) -> int:
        """Ancestor of ``v`` at tree depth ``d``."""
        if not 0 <= d <= self.depth[v]:
            raise BadDepth(f"depth {d} not within [0..{self.depth[v]}]")
        steps, k = self.depth[v] - d, 0
        while steps:
            if steps & 1:
                v = self.up[k][v]
            steps >>= 1
            k += 1
        return v

    def weighted_ancestor(self, v: int, d: int) -> int:
        """Shallowest ancestor-or-self ``u`` of ``v`` with string depth >= ``d``."""
        sd = self.sd
        if not 0 <= d <= sd[v]:
            raise BadDepth(f"string depth {d} not within [0..{sd[v]}]")
        for row in self._up_desc:
            a = row[v]
            if sd[a] >= d:
                v = a
        return v

    def path_string(self, v: int) -> bytes:
        """String label of ``v`` (a leaf label ends with the sentinel byte 0)."""
        start = self._any_suffix(v)
        return self.index.t[start : start + self.sd[v]]

    # -- P array ----------------------------------------------------------

    def p_array(self) -> list[int]:
        """``P[i]``: shallowest ancestor of leaf(i) whose subtree maximum is ``i``.

        Padded at index 0; defined for suffixes 1..n.
        """
        if self._p_array is None:
            P = [ROOT] * (self.n + 2)
            maxsuf, parent = self.maxsuf, self.parent
            P[maxsuf[ROOT]] = ROOT
            for v in range(1, self.size):  # preorder
                if maxsuf[v] != maxsuf[parent[v]]:
                    P[maxsuf[v]] = v
            self._p_array = P
        return self._p_array

    def p_by_search(self, i: int) -> int:
        """``P[i]`` without the stored array, by binary search over tree depths.

        Subtree maxima along the root-to-leaf path are non-increasing, so the
        depths whose ancestor has maximum ``i`` form a suffix of the path.
        """
        leaf = self.leaf_of_suffix[i]
        lo, hi = 0, self.depth[leaf]
        while lo < hi:
            mid = (lo + hi) // 2
            if self.maxsuf[self.level_anc(leaf, mid)] == i:
                hi = mid
            else:
                lo = mid + 1
        return self.level_anc(leaf, lo)

    def u_by_argmax(self, i: int) -> int:
        """Deepest ancestor of leaf(i) whose subtree maximum differs from ``i``."""
        leaf = self.leaf_of_suffix[i]
        lo, hi = 0, self.depth[leaf]  # invariant: answer depth in [lo..hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.maxsuf[self.level_anc(leaf, mid)] != i:
                lo = mid
            else:
                hi = mid
        return self.level_anc(leaf, lo)

    # -- debug ------------------------------------------------------------

    def dump(self) -> str:
        """Indented preorder listing: string depth, leaf-rank range, suffix number."""
        lines = []
        for v in range(self.size):
            label = f"sd={self.sd[v]} [{self.range_l[v]}..{self.range_r[v]}]"
            if self.is_leaf(v):
                label += f" suffix={self.suffix[v]}"
            lines.append("  " * self.depth[v] + label)
        return "\n".join(lines) + "\n"


class QueryHandle:
    """Per-query scratch over a shared index: marks, counters, reference ids.

    All per-node state is stamped with the epoch that wrote it, so
    :meth:`begin` invalidates everything in O(1).  A node carries the
    references (``ref_id``, ``length``) whose locus it is; the root is
    implicitly marked with reference 0 of length 0.
    """

    def __init__(self, idx: TextIndex, tree: Optional[SuffixTree] = None):
        self.index = idx
        self.tree = tree if tree is not None else SuffixTree(idx)
        size = self.tree.size
        self._sd, self._parent = self.tree.sd, self.tree.parent
        self.epoch = 0
        self._stamp = [0] * size
        self._count = [0] * size
        self._refs: list = [None] * size
        self._best: list = [None] * size
        self.begin()

    def begin(self) -> None:
        """Start a new query: forget all marks and reset the counters."""
        self.epoch += 1
        self.lma_calls = 0
        self.capped = 0  # queries whose answer the cap shortened
        self.marks = 0

    def counters(self) -> dict:
        return {
            "lma_calls": self.lma_calls,
            "capped": self.capped,
            "marks": self.marks,
        }

    def is_marked(self, v: int) -> bool:
        return v == ROOT or self._stamp[v] == self.epoch

    def exploration_counter(self, v: int) -> int:
        return self._count[v] if self._stamp[v] == self.epoch else 0

    def _lengths(self, v: int) -> dict[int, int]:
        """``{length: ref_id}`` of a node marked in this epoch."""
        refs = self._refs[v]
        if refs is None:
            ref_id, length = self._best[v]
            return {length: ref_id}
        return refs

    def references(self, v: int) -> list[tuple[int, int]]:
        """``(ref_id, length)`` pairs whose locus is ``v``, by increasing length."""
        if v == ROOT:
            return [(0, 0)]
        if self._stamp[v] != self.epoch:
            return []
        return [(r, length) for length, r in sorted(self._lengths(v).items())]

    def mark(self, v: int, ref_id: int, length: int) -> None:
        """Record reference ``ref_id`` of ``length`` symbols whose locus is ``v``.

        A second reference of an already recorded length names the same
        string; the earlier id is kept and no implicit trie node is added.
        Most nodes carry a single reference, so the length map is only
        materialized for the second one.
        """
        sd = self._sd
        if v == ROOT or not sd[self._parent[v]] < length <= sd[v]:
            raise BadDepth(f"length {length} does not end on the edge into node {v}")
        if self._stamp[v] != self.epoch:
            self._stamp[v] = self.epoch
            self._count[v] = 1
            self._best[v] = (ref_id, length)
            self._refs[v] = None
            self.marks += 1
            return
        refs = self._refs[v]
        if refs is None:
            refs = self._refs[v] = self._lengths(v)
        if length in refs:
            return
        refs[length] = ref_id
        self._count[v] += 1
        self.marks += 1
        if length > self._best[v][1]:
            self._best[v] = (ref_id, length)

    def lowest_marked_ancestor(self, leaf: int, cap: Optional[int] = None) -> tuple[int, int, int]:
        """Deepest marked ancestor-or-self of ``leaf`` and its longest reference.

        With ``cap`` the query only considers references of at most ``cap``
        symbols, which is how a substring query stops at the interval end.
        The capped form is still a single upward walk and counts as one call.
        """
        self.lma_calls += 1
        stamp, parent, epoch = self._stamp, self.tree.parent, self.epoch
        v = leaf
        while v and stamp[v] != epoch:
            v = parent[v]
        if not v:
            return ROOT, 0, 0
        ref_id, length = self._best[v]
        if cap is not None and length > cap:
            self.capped += 1
            v, ref_id, length = self._fit_below_cap(v, cap)
        return v, ref_id, length

    def _fit_below_cap(self, v: int, cap: int) -> tuple[int, int, int]:
        """Continue a capped walk at the marked node ``v`` whose longest reference exceeds ``cap``."""
        stamp, parent, epoch = self._stamp, self.tree.parent, self.epoch
        while v:
            if stamp[v] == epoch:
                refs = self._lengths(v)
                fitting = [k for k in refs if k <= cap]
                if fitting:
                    length = max(fitting)
                    return v, refs[length], length
            v = parent[v]
        return ROOT, 0, 0

    def marked_ancestor_and_child(self, leaf: int) -> tuple[int, int, int, int]:
        """Like :meth:`lowest_marked_ancestor`, also returning the child on the leaf's path.

        The child is ``-1`` when ``leaf`` itself is marked.  Counts as one
        lowest-marked-ancestor call.
        """
        self.lma_calls += 1
        stamp, parent, epoch = self._stamp, self.tree.parent, self.epoch
        v, below = leaf, -1
        while v and stamp[v] != epoch:
            v, below = parent[v], v
        if not v:
            return ROOT, below, 0, 0
        ref_id, length = self._best[v]
        return v, below, ref_id, length

    def longest_ref_within(self, leaf: int, cap: int) -> tuple[int, int, int]:
        """Deepest reference of length <= ``cap`` on the path from ``leaf`` upwards."""
        return self.lowest_marked_ancestor(leaf, cap)


def build_suffix_tree(idx: TextIndex) -> SuffixTree:
    return SuffixTree(idx)


def compute_p_array(tree: SuffixTree) -> list[int]:
    return tree.p_array()
