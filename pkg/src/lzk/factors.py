"""Factor records, factorizations and intervals: the universal output types."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial
from typing import NamedTuple, Optional

from .errors import BadRange, EmptyText, SentinelCollision

KINDS = ("lit", "ref", "pair", "copy")


def as_text(data) -> bytes:
    """Validate ``data`` as a text: a non-empty byte string without byte 0."""
    if isinstance(data, str):
        data = data.encode("latin-1")
    text = bytes(data)
    if not text:
        raise EmptyText("a text needs at least one symbol")
    if 0 in text:
        raise SentinelCollision(f"byte 0 at position {text.index(0) + 1}")
    return text


@dataclass(frozen=True)
class Interval:
    """A 1-based inclusive interval [begin..end] of text positions."""

    begin: int
    end: int

    def __len__(self) -> int:
        return self.end - self.begin + 1

    def check(self, n: int) -> "Interval":
        if not 1 <= self.begin <= self.end <= n:
            raise BadRange(f"interval [{self.begin}..{self.end}] not within [1..{n}]")
        return self


def resolve_interval(interval, n: int) -> Interval:
    """Accept ``None`` (whole text), an ``Interval`` or a ``(begin, end)`` pair."""
    if interval is None:
        return Interval(1, n)
    if not isinstance(interval, Interval):
        interval = Interval(*interval)
    return interval.check(n)


class Factor(NamedTuple):
    """One factor of a factorization.

    ``pos`` is 1-based relative to the factorized string and ``len`` is the
    number of symbols the factor covers.  The remaining fields depend on
    ``kind``:

    * ``lit``: a single symbol ``ch``;  LZ78-style outputs set ``ref=0``.
    * ``ref``: a dictionary reference ``ref`` followed by ``ch`` (``ch`` is
      ``None`` for a final factor without trailing symbol).  FPA78 factors
      also carry ``trim``, the number of symbols taken from the reference.
      LZMW uses ``ref=y`` for the dictionary word F_{y-1}F_y.
    * ``pair``: LZD components ``ref`` and ``ref2``.  A component is a factor
      id, or 0 for a literal symbol read from the text; ``ref2`` is ``None``
      when the second component is absent.
    * ``copy``: the symbols are copied from relative position ``src``.  Closed
      factors copy their border of length ``trim`` from their own start
      (``src == pos``) to their end.
    """

    kind: str
    pos: int
    len: int
    ref: Optional[int] = None
    ref2: Optional[int] = None
    trim: Optional[int] = None
    ch: Optional[int] = None
    src: Optional[int] = None

    def as_record(self, ordinal: int) -> dict:
        """The JSONL record of this factor with 1-based ordinal ``ordinal``."""
        return {
            "i": ordinal,
            "pos": self.pos,
            "len": self.len,
            "kind": self.kind,
            "ref": self.ref,
            "ref2": self.ref2,
            "trim": self.trim,
            "ch": self.ch,
            "src": self.src,
        }


#: Build a Factor from its complete field tuple
#: ``(kind, pos, len, ref, ref2, trim, ch, src)`` without argument parsing;
#: the parsers call it once per factor.
make_factor = partial(tuple.__new__, Factor)


@dataclass
class Factorization:
    """An ordered list of factors tiling ``text``.

    ``text`` is the factorized string itself (the substring for interval
    queries); ``interval`` locates it in the indexed text.  ``counters``
    carries instrumentation such as marked-ancestor calls.
    """

    algo: str
    text: bytes
    factors: list[Factor]
    interval: Optional[Interval] = None
    counters: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def strings(self) -> list[bytes]:
        """The factor strings in order."""
        return [self.text[f.pos - 1 : f.pos - 1 + f.len] for f in self.factors]

    def check_tiling(self) -> None:
        """Raise ``AssertionError`` unless the factors tile ``text`` exactly."""
        cursor = 1
        for f in self.factors:
            assert f.kind in KINDS, f
            assert f.pos == cursor and f.len >= 1, (f, cursor)
            cursor += f.len
        assert cursor == len(self.text) + 1, (cursor, len(self.text))
