"""One entry point per algorithm tag over a lazily built index."""

from __future__ import annotations

from typing import Optional

from .ac_automaton import fp78_ac
from .closed import longest_closed_substring, shortest_closed_substring
from .errors import UnsupportedAlgo
from .factors import Factorization, as_text, resolve_interval
from .flexible import fp78_factorize, fpa78_factorize, semi_greedy_lz77
from .lexparse import lexparse_full, lexparse_substring
from .lz78 import lz78_factorize
from .lzd_lzmw import lzd_factorize, lzmw_factorize
from .oracles import ALGOS
from .suffix_tree import QueryHandle
from .text_index import TextIndex

#: Algorithms answered as substring queries on the index of the whole text.
SUBSTRING_ALGOS = ("lz78", "lzd", "lzmw", "lexparse", "closed_longest", "closed_shortest")
#: Algorithms defined on a whole text; an interval is served by indexing the substring.
WHOLE_TEXT_ALGOS = ("fp78", "fpa78", "sg_lz77")


class Engine:
    """A text with its index and query handle, built on first use."""

    def __init__(self, text):
        self.text = as_text(text)
        self.n = len(self.text)
        self._index: Optional[TextIndex] = None
        self._handle: Optional[QueryHandle] = None

    @property
    def index(self) -> TextIndex:
        if self._index is None:
            self._index = TextIndex(self.text)
        return self._index

    @property
    def handle(self) -> QueryHandle:
        if self._handle is None:
            self._handle = QueryHandle(self.index)
        return self._handle

    def factorize(self, algo: str, interval=None, backend: str = "suffix_tree") -> Factorization:
        """Factorize ``T[interval]`` (the whole text by default) with ``algo``.

        ``backend="ac"`` computes FP78 with the Aho-Corasick automaton.
        """
        if algo not in ALGOS:
            raise UnsupportedAlgo(f"unknown algorithm {algo!r}")
        iv = resolve_interval(interval, self.n)
        whole = iv.begin == 1 and iv.end == self.n
        if backend == "ac":
            if algo != "fp78":
                raise UnsupportedAlgo(f"the ac backend only computes fp78, not {algo}")
            return fp78_ac(self.text[iv.begin - 1 : iv.end])
        if backend != "suffix_tree":
            raise UnsupportedAlgo(f"unknown backend {backend!r}")
        if algo in WHOLE_TEXT_ALGOS:
            if not whole:
                inner = Engine(self.text[iv.begin - 1 : iv.end]).factorize(algo)
                inner.interval = iv
                return inner
            if algo == "fp78":
                return fp78_factorize(self.handle)
            if algo == "fpa78":
                return fpa78_factorize(self.handle)
            return semi_greedy_lz77(self.index)
        if algo == "lexparse" and whole:
            return lexparse_full(self.index)
        return _SUBSTRING[algo](self.handle, iv)


_SUBSTRING = {
    "lz78": lz78_factorize,
    "lzd": lzd_factorize,
    "lzmw": lzmw_factorize,
    "lexparse": lexparse_substring,
    "closed_longest": longest_closed_substring,
    "closed_shortest": shortest_closed_substring,
}


def factorize(algo: str, text, interval=None, backend: str = "suffix_tree") -> Factorization:
    """Factorize ``text`` (or ``text[interval]``, 1-based inclusive) with ``algo``."""
    return Engine(text).factorize(algo, interval, backend)
