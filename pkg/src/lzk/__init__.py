"""Lempel-Ziv family factorizations as whole-text parsings and substring queries.

Positions are 1-based and intervals inclusive throughout.  The usual entry
point is :func:`factorize` (or :class:`Engine` to reuse one index across
many queries); :mod:`lzk.codec` serializes the results and :mod:`lzk.oracles`
holds the brute-force references.
"""

__version__ = "0.1.0"

from .codec import decode, decode_factorization, encode
from .dispatch import SUBSTRING_ALGOS, WHOLE_TEXT_ALGOS, Engine, factorize
from .errors import (
    BadDepth,
    BadPosition,
    BadRange,
    BadRank,
    CorruptStream,
    EmptyText,
    InconsistentAutomaton,
    LZKError,
    NoFactorization,
    SentinelCollision,
    UnsupportedAlgo,
)
from .factors import Factor, Factorization, Interval
from .oracles import ALGOS, naive_factorize
from .suffix_tree import QueryHandle, SuffixTree
from .text_index import TextIndex

__all__ = [
    "ALGOS",
    "SUBSTRING_ALGOS",
    "WHOLE_TEXT_ALGOS",
    "BadDepth",
    "BadPosition",
    "BadRange",
    "BadRank",
    "CorruptStream",
    "EmptyText",
    "Engine",
    "Factor",
    "Factorization",
    "InconsistentAutomaton",
    "Interval",
    "LZKError",
    "NoFactorization",
    "QueryHandle",
    "SentinelCollision",
    "SuffixTree",
    "TextIndex",
    "UnsupportedAlgo",
    "decode",
    "decode_factorization",
    "encode",
    "factorize",
    "naive_factorize",
]
