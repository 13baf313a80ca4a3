"""Static Aho-Corasick automaton over the LZ78 dictionary, computing FP78.

A state is an LZ78 factor (state 0 is the empty factor); it carries the
factor's end position.  At a scan position p only factors ending before p
are admissible.  The scanner keeps a window T[p..r] equal to an admissible
state, grows it along goto edges while the child stays admissible, and on
a mismatch follows suffix links, skipping states that are not admissible
for their own start position.

Positions skipped this way are strictly dominated in the flexible choice
rule: a skipped k inside the window T[p..r] has k + M(k) <= r, while the
next scan position p' satisfies p' + M(p') >= r + 1 and lies no further
than r + 1.  The scanner therefore reports M only at the positions it
visits, which is all the flexible parser needs.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Optional

from .errors import InconsistentAutomaton
from .factors import Factorization, as_text, resolve_interval
from .flexible import fp78_encode, lz78_prefix_table, semi_greedy_steps
from .lz78 import lz78_trie_factorize

log = logging.getLogger(__name__)


class ACAutomaton:
    """Goto/fail automaton over the LZ78 factors of one text."""

    def __init__(self, lz78: Factorization, text):
        text = as_text(text)
        if lz78.text != text:
            raise InconsistentAutomaton("factorization was computed on a different text")
        self.text = text
        self.lz78 = lz78
        self.goto: list[dict[int, int]] = [{}]
        self.depth = [0]
        self.end = [0]
        self.factor_id = [0]
        self.parent = [0]
        state_of = [0]  # LZ78 factor id -> state
        for y, f in enumerate(lz78.factors, 1):
            node = state_of[f.ref]
            if f.ch is None:  # trimmed final factor duplicates factor f.ref
                state_of.append(node)
                continue
            if f.ch in self.goto[node] or text[f.pos + f.len - 2] != f.ch:
                raise InconsistentAutomaton(f"factor {y} does not extend factor {f.ref}")
            new = len(self.goto)
            self.goto[node][f.ch] = new
            self.goto.append({})
            self.depth.append(f.len)
            self.end.append(f.pos + f.len - 1)
            self.factor_id.append(y)
            self.parent.append(node)
            state_of.append(new)
        self.fail = [0] * len(self.goto)
        queue = deque(self.goto[0].values())
        while queue:
            v = queue.popleft()
            for c, w in self.goto[v].items():
                f = self.fail[v]
                while f and c not in self.goto[f]:
                    f = self.fail[f]
                g = self.goto[f].get(c, 0)
                self.fail[w] = g if g != w else 0
                queue.append(w)

    def __len__(self) -> int:
        return len(self.goto)

    def state_of_string(self, s: bytes) -> Optional[int]:
        v = 0
        for c in s:
            v = self.goto[v].get(c)
            if v is None:
                return None
        return v


class _Scanner:
    """Longest admissible matches at the scan positions, in increasing order."""

    def __init__(self, ac: ACAutomaton):
        self.ac = ac
        self.t = b"\0" + ac.text
        self.n = len(ac.text)
        self.p = 1  # current scan position; window is T[p..r]
        self.r = 0
        self.state = 0
        self.values: dict[int, tuple[int, int]] = {}
        self.transitions = 0
        self.pruned = 0

    def lookup(self, q: int) -> Optional[tuple[int, int]]:
        while self.p <= q:
            self._step()
        return self.values.get(q)

    def _step(self) -> None:
        ac, t, n, p = self.ac, self.t, self.n, self.p
        goto, end, depth = ac.goto, ac.end, ac.depth
        s, r = self.state, self.r
        while r < n:
            nxt = goto[s].get(t[r + 1])
            if nxt is None:
                break
            if end[nxt] >= p:
                self.pruned += 1
                assert end[nxt] >= p
                break
            s, r = nxt, r + 1
            self.transitions += 1
        self.values[p] = (depth[s], ac.factor_id[s])
        if s == 0:
            self.p, self.r, self.state = p + 1, p, 0
            return
        v = ac.fail[s]
        self.transitions += 1
        while v and end[v] >= r - depth[v] + 1:
            self.pruned += 1
            v = ac.fail[v]
            self.transitions += 1
        if v == 0:
            self.p, self.r, self.state = r + 1, r, 0
        else:
            self.p, self.r, self.state = r - depth[v] + 1, r, v

    def evict_before(self, q: int) -> None:
        for k in [k for k in self.values if k < q]:
            del self.values[k]


def build_ac(lz78: Factorization, text) -> ACAutomaton:
    return ACAutomaton(lz78, text)


def fp78_factorize_ac(ac: ACAutomaton, text=None) -> Factorization:
    """FP78 of the automaton's text by AC scanning; equals the suffix-tree result."""
    if text is not None and as_text(text) != ac.text:
        raise InconsistentAutomaton("text differs from the automaton's text")
    scan = _Scanner(ac)
    n = scan.n
    steps = []
    for step in semi_greedy_steps(n, scan.lookup):
        steps.append(step)
        scan.evict_before(step[1] + step[2])
    lengths, parents = lz78_prefix_table(ac.lz78)
    factors = fp78_encode(scan.t, steps, lengths, parents)
    if scan.transitions > 4 * n:
        raise AssertionError(f"{scan.transitions} transitions exceed 4n = {4 * n}")
    log.debug("fp78 ac scan: %d transitions, %d pruned states", scan.transitions, scan.pruned)
    counters = {"transitions": scan.transitions, "pruned": scan.pruned}
    return Factorization("fp78", ac.text, factors, resolve_interval(None, n), counters)


def fp78_ac(text) -> Factorization:
    """LZ78 by trie, then the automaton, then FP78 by scanning."""
    text = as_text(text)
    return fp78_factorize_ac(ACAutomaton(lz78_trie_factorize(text), text))
