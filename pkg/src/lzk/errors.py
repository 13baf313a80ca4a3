"""Exception hierarchy shared by every lzk module."""


class LZKError(Exception):
    """Base class of all library errors."""


class SentinelCollision(LZKError):
    """The input text contains the reserved sentinel byte 0."""


class EmptyText(LZKError):
    """The input text has no symbols."""


class BadPosition(LZKError):
    """A text position lies outside [1..n] (or outside the query interval)."""


class BadRange(LZKError):
    """A rank or position range is empty or out of bounds."""


class BadRank(LZKError):
    """A rank lies outside [1..|I|]."""


class BadDepth(LZKError):
    """A string depth exceeds the string depth of the queried node."""


class UnsupportedAlgo(LZKError):
    """The algorithm tag is unknown or lacks the requested mode."""


class CorruptStream(LZKError):
    """An encoded stream is truncated, malformed or references unknown data."""


class InconsistentAutomaton(LZKError):
    """An Aho-Corasick automaton was paired with a text it was not built for."""


class NoFactorization(LZKError):
    """The shortest closed factorization of the queried string does not exist.

    ``position`` is the 1-based position (relative to the factorized string)
    of the cursor where no closing occurrence was found, and ``partial`` holds
    the factorization of the prefix before it.
    """

    def __init__(self, position: int, partial=None):
        super().__init__(f"no closed factor starts at position {position}")
        self.position = position
        self.partial = partial
