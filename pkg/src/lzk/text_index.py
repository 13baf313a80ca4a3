"""Array-based text indexes: SA, ISA, LCP, PLCP, Phi, RMQ, LCE and friends.

All public positions and ranks are 1-based.  Internal arrays are padded with
an unused slot 0 so that ``idx.sa[r]`` is the suffix of rank ``r``; callers
comparing against printed arrays use ``idx.sa[1:]``.  The padded text
``idx.t`` is ``b"\\0" + text + b"\\0"``: ``idx.t[i]`` is the i-th symbol and
``idx.t[n + 1]`` is the sentinel.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Optional

import numpy as np

from .errors import BadPosition, BadRange, BadRank
from .factors import Interval, as_text, resolve_interval


def suffix_array(text: bytes) -> np.ndarray:
    """0-based suffix array of ``text`` by prefix doubling.

    Shorter suffixes sort before their extensions, as if a sentinel smaller
    than every symbol were appended.
    """
    n = len(text)
    rank = np.frombuffer(text, dtype=np.uint8).astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        first_sorted, second_sorted = rank[sa], second[sa]
        step = (first_sorted[1:] != first_sorted[:-1]) | (second_sorted[1:] != second_sorted[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.concatenate(([0], np.cumsum(step)))
        rank = new_rank
        if n == 0 or rank[sa[-1]] == n - 1:
            return sa
        k *= 2


class SparseTable:
    """Range-minimum (or maximum) queries in O(1) after O(n log n) preprocessing."""

    def __init__(self, values, func=np.minimum):
        base = np.asarray(values, dtype=np.int64)
        levels = [base]
        width = 1
        while 2 * width <= len(base):
            prev = levels[-1]
            levels.append(func(prev[: len(prev) - width], prev[width:]))
            width *= 2
        self._pick = min if func is np.minimum else max
        self.levels = levels
        self._lists = [level.tolist() for level in levels]

    def query(self, lo: int, hi: int) -> int:
        """Extremum of ``values[lo..hi]`` (inclusive, 0-based array indices)."""
        k = (hi - lo + 1).bit_length() - 1
        row = self._lists[k]
        return self._pick(row[lo], row[hi - (1 << k) + 1])

    def query_many(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """Vectorised ``query`` over equally long index arrays."""
        k = np.floor(np.log2(hi - lo + 1)).astype(np.int64)
        out = np.empty(len(lo), dtype=np.int64)
        for level in np.unique(k):
            sel = k == level
            row = self.levels[level]
            a = row[lo[sel]]
            b = row[hi[sel] - (1 << int(level)) + 1]
            out[sel] = np.minimum(a, b) if self._pick is min else np.maximum(a, b)
        return out


class WaveletMatrix:
    """Wavelet matrix over a sequence of non-negative integers.

    Supports ``next_value(lo, hi, x)``: the smallest value greater than ``x``
    among ``seq[lo:hi]`` (0-based, half-open).
    """

    def __init__(self, seq):
        values = np.asarray(seq, dtype=np.int64)
        self.size = len(values)
        self.height = max(1, int(values.max(initial=0)).bit_length())
        self._zeros_before = []  # per level: prefix counts of 0-bits
        self._zero_total = []
        cur = values
        for level in range(self.height):
            shift = self.height - 1 - level
            bits = (cur >> shift) & 1
            prefix = np.concatenate(([0], np.cumsum(bits == 0)))
            self._zeros_before.append(prefix.tolist())
            self._zero_total.append(int(prefix[-1]))
            cur = np.concatenate((cur[bits == 0], cur[bits == 1]))

    def next_value(self, lo: int, hi: int, x: int) -> Optional[int]:
        height = self.height
        y = x + 1
        if y >= 1 << height:
            return None
        zeros_before, zero_total = self._zeros_before, self._zero_total
        # Follow the bits of y; the deepest level where y has a 0 and the
        # 1-branch is non-empty is where a larger value branches off.
        prefix, branch = 0, None
        for level in range(height):
            if lo >= hi:
                break
            zeros = zeros_before[level]
            z_lo, z_hi = zeros[lo], zeros[hi]
            bit = 1 << (height - 1 - level)
            if y & bit:
                total = zero_total[level]
                lo, hi, prefix = total + lo - z_lo, total + hi - z_hi, prefix | bit
            else:
                total = zero_total[level]
                if hi - z_hi > lo - z_lo:
                    branch = (level + 1, total + lo - z_lo, total + hi - z_hi, prefix | bit)
                lo, hi = z_lo, z_hi
        else:
            if lo < hi:
                return prefix  # y itself occurs
        if branch is None:
            return None
        start, lo, hi, prefix = branch
        # smallest value below the branch: prefer 0-bits
        for level in range(start, height):
            zeros = zeros_before[level]
            z_lo, z_hi = zeros[lo], zeros[hi]
            if z_hi > z_lo:
                lo, hi = z_lo, z_hi
            else:
                total = zero_total[level]
                lo, hi, prefix = total + lo - z_lo, total + hi - z_hi, prefix | (1 << (height - 1 - level))
        return prefix


class TextIndex:
    """Immutable bundle of a text and its array-based indexes.

    After construction ``sa``, ``isa``, ``lcp``, ``plcp`` and ``phi`` are
    Python lists padded at index 0.  ``phi[i] == n + 1`` marks the
    lexicographically smallest suffix.
    """

    def __init__(self, text):
        self.text = as_text(text)
        n = self.n = len(self.text)
        self.t = b"\0" + self.text + b"\0"

        sa0 = suffix_array(self.text)
        sa = (sa0 + 1).tolist()
        self.sa = [0] + sa
        isa = [0] * (n + 2)
        for r, p in enumerate(sa, 1):
            isa[p] = r
        self.isa = isa

        phi = [0] * (n + 1)
        phi[sa[0]] = n + 1
        for r in range(1, n):
            phi[sa[r]] = sa[r - 1]
        self.phi = phi

        # Irreducible-LCP scan: plcp[i] >= plcp[i-1] - 1.
        t = self.t
        plcp = [0] * (n + 1)
        h = 0
        for i in range(1, n + 1):
            j = phi[i]
            if j == n + 1:
                h = 0
                continue
            while t[i + h] == t[j + h]:
                h += 1
            plcp[i] = h
            if h:
                h -= 1
        self.plcp = plcp
        self.lcp = [0] + [plcp[p] for p in sa]

        # Slot 0 of lcp is padding; LCE queries only touch ranks 2..n.
        self.lcp_rmq = SparseTable(self.lcp)
        self.max_lcp = max(self.lcp)
        self._sa_np = np.asarray(self.sa, dtype=np.int64)
        self._isa_np = np.asarray(isa, dtype=np.int64)
        self.sa_rsucc = WaveletMatrix(self.sa[1:])
        self.occ = {}
        for pos, c in enumerate(self.text, 1):
            self.occ.setdefault(c, []).append(pos)
        self._lpf = None
        self._lpf_src = None

    # -- checks -----------------------------------------------------------

    def _check_pos(self, *positions: int) -> None:
        for p in positions:
            if not 1 <= p <= self.n:
                raise BadPosition(f"position {p} not within [1..{self.n}]")

    # -- LCE --------------------------------------------------------------

    def lce(self, i: int, j: int) -> int:
        """Length of the longest common prefix of ``T[i..]`` and ``T[j..]``."""
        self._check_pos(i, j)
        return self._lce(i, j)

    def _lce(self, i: int, j: int) -> int:
        if i == j:
            return self.n - i + 1
        a, b = self.isa[i], self.isa[j]
        if a > b:
            a, b = b, a
        return self.lcp_rmq.query(a + 1, b)

    def prefix_range(self, p: int, length: int) -> tuple[int, int]:
        """SA rank range of the suffixes that start with ``T[p..p+length-1]``."""
        rmq, r = self.lcp_rmq, self.isa[p]
        lo, hi = 1, r  # smallest rank whose lcp run down to r stays >= length
        while lo < hi:
            mid = (lo + hi) // 2
            if rmq.query(mid + 1, r) >= length:
                hi = mid
            else:
                lo = mid + 1
        first = lo
        lo, hi = r, self.n
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if rmq.query(r + 1, mid) >= length:
                lo = mid
            else:
                hi = mid - 1
        return first, lo

    def leftmost_occurrence(self, p: int, length: int) -> int:
        """Smallest position where ``T[p..p+length-1]`` occurs."""
        lo, hi = self.prefix_range(p, length)
        return self.sa_rsucc.next_value(lo - 1, hi, 0)

    # -- range successor and occurrences ---------------------------------

    def range_next_value(self, x: int, lo: int, hi: int) -> Optional[int]:
        """Smallest ``sa[k] > x`` with ``lo <= k <= hi``, or ``None``."""
        if not 1 <= lo <= hi <= self.n:
            raise BadRange(f"rank range [{lo}..{hi}] not within [1..{self.n}]")
        if hi - lo < self.SCAN_RANGE:
            best = None
            for v in self.sa[lo : hi + 1]:
                if v > x and (best is None or v < best):
                    best = v
            return best
        return self.sa_rsucc.next_value(lo - 1, hi, x)

    SCAN_RANGE = 64  # shorter rank ranges are scanned directly; the wavelet walk costs more

    def next_char_occurrence(self, c: int, p: int) -> Optional[int]:
        """Smallest ``q > p`` with ``T[q] == c``, or ``None``."""
        self._check_pos(p)
        occ = self.occ.get(c)
        if not occ:
            return None
        k = bisect_right(occ, p)
        return occ[k] if k < len(occ) else None

    # -- longest previous factor -----------------------------------------

    def lpf(self) -> list[int]:
        """LPF array padded at index 0: ``LPF[j]`` for ``j`` in [1..n]."""
        if self._lpf is None:
            self._compute_lpf()
        return self._lpf

    def lpf_sources(self) -> list[int]:
        """For each ``j`` with ``LPF[j] > 0``, an earlier position sharing ``LPF[j]`` symbols."""
        if self._lpf_src is None:
            self._compute_lpf()
        return self._lpf_src

    def _compute_lpf(self) -> None:
        # The best earlier source is the SA neighbour with smaller position
        # closest in rank on either side (previous/next smaller value).
        n, sa = self.n, self.sa
        prev_smaller = [0] * (n + 1)
        next_smaller = [0] * (n + 1)
        stack: list[int] = []
        for r in range(1, n + 1):
            while stack and sa[stack[-1]] > sa[r]:
                next_smaller[stack.pop()] = r
            prev_smaller[r] = stack[-1] if stack else 0
            stack.append(r)
        lpf = [0] * (n + 1)
        src = [0] * (n + 1)
        for r in range(1, n + 1):
            j = sa[r]
            best, where = 0, 0
            for other in (prev_smaller[r], next_smaller[r]):
                if other:
                    length = self._lce(j, sa[other])
                    if length > best:
                        best, where = length, sa[other]
            lpf[j], src[j] = best, where
        self._lpf, self._lpf_src = lpf, src

    # -- substring suffixes ----------------------------------------------

    def interval_order(self, interval) -> "IntervalSuffixOrder":
        """Lexicographic order of the truncated suffixes of ``T[I]``."""
        return IntervalSuffixOrder(self, resolve_interval(interval, self.n))

    def dump(self) -> str:
        """Tab-separated debug dump: one named array per line, 1-based values.

        Phi of the lexicographically smallest suffix is undefined and shown as ``-``.
        """
        phi = ["-" if v == self.n + 1 else v for v in self.phi[1:]]
        rows = [
            ("T", list(self.text.decode("latin-1"))),
            ("SA", self.sa[1:]),
            ("ISA", self.isa[1 : self.n + 1]),
            ("LCP", self.lcp[1:]),
            ("PLCP", self.plcp[1:]),
            ("PHI", phi),
        ]
        return "".join(name + "\t" + "\t".join(map(str, row)) + "\n" for name, row in rows)


class IntervalSuffixOrder:
    """Ranks and selects over the truncated suffixes ``T[p..e]`` for ``p`` in I.

    Order is lexicographic with a proper prefix sorting before its
    extensions.  In SA order restricted to I, a truncated suffix of length
    ``m`` moves in front of the block of preceding entries that share ``m``
    symbols with it, so sorting by (start of that block, length) yields the
    truncated order.  Only suffixes no longer than the largest LCP value of
    the text can share all their symbols with a neighbour, so the others
    keep their SA place without any LCE work.
    """

    def __init__(self, idx: TextIndex, interval: Interval):
        self.interval = interval
        b, e = interval.begin, interval.end
        ranks = np.sort(idx._isa_np[b : e + 1])
        positions = idx._sa_np[ranks]
        m = len(positions)
        scale = e + 2
        lengths = e + 1 - positions
        keys = np.arange(m, dtype=np.int64) * scale + lengths
        short = np.flatnonzero(lengths <= idx.max_lcp).tolist()
        if short:
            # adjacent[i]: LCP of the suffixes ranked ranks[i-1] and ranks[i];
            # the LCP segments between consecutive ranks tile one range.
            adjacent = [-1]
            if m > 1:
                lcp = idx.lcp_rmq.levels[0]
                adjacent += np.minimum.reduceat(lcp[: ranks[-1] + 1], ranks[:-1] + 1).tolist()
            lens = lengths.tolist()
            if len(short) <= self.SCAN_LIMIT:
                for i in short:
                    length, j = lens[i], i
                    while adjacent[j] >= length:
                        j -= 1
                    keys[i] = j * scale + length
            else:
                for i, j in self._block_starts(adjacent, lens):
                    keys[i] = j * scale + lens[i]
        self._select = [0] + positions[np.argsort(keys, kind="stable")].tolist()
        self._rank = {p: k for k, p in enumerate(self._select)}

    SCAN_LIMIT = 48  # up to this many short suffixes, walk back linearly

    @staticmethod
    def _block_starts(adjacent: list[int], lens: list[int]):
        """(i, block start) for every i, by a stack of increasing adjacent LCPs.

        The block start for length m is the topmost entry whose LCP with its
        left neighbour is below m.
        """
        stack_lcp, stack_idx = [-1], [0]
        for i in range(len(lens)):
            if i:
                a = adjacent[i]
                while stack_lcp[-1] >= a:
                    stack_lcp.pop()
                    stack_idx.pop()
                stack_lcp.append(a)
                stack_idx.append(i)
            yield i, stack_idx[bisect_left(stack_lcp, lens[i]) - 1]

    def __len__(self) -> int:
        return len(self._select) - 1

    def rank(self, j: int) -> int:
        if not self.interval.begin <= j <= self.interval.end:
            raise BadPosition(f"position {j} not in [{self.interval.begin}..{self.interval.end}]")
        return self._rank[j]

    def select(self, k: int) -> int:
        if not 1 <= k <= len(self):
            raise BadRank(f"rank {k} not within [1..{len(self)}]")
        return self._select[k]


def build_text_index(text) -> TextIndex:
    """Build every array-based index over ``text``."""
    return TextIndex(text)


def substring_suffix_rank(idx: TextIndex, interval, j: int) -> int:
    return idx.interval_order(interval).rank(j)


def substring_suffix_select(idx: TextIndex, interval, k: int) -> int:
    return idx.interval_order(interval).select(k)
