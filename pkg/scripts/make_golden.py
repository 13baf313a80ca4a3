"""Regenerate the golden .lzk streams under tests/golden.

Run only after a deliberate change of the stream format; the test suite
compares the committed bytes verbatim.
"""

from pathlib import Path

from lzk import encode, factorize

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

RUNNING = b"ababbababbabb"
CASES = {
    "lz78": RUNNING,
    "fp78": RUNNING,
    "fpa78": RUNNING,
    "sg_lz77": RUNNING,
    "lzd": RUNNING,
    "lzmw": RUNNING,
    "lexparse": RUNNING,
    "closed_longest": RUNNING,
    "closed_shortest": b"ababbababbabba",  # the running example has no shortest closed factorization
}
FLEXIBLE_EXAMPLE = b"aabaabbabba"


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for algo, text in CASES.items():
        (GOLDEN / f"running_{algo}.lzk").write_bytes(encode(factorize(algo, text)))
    for algo in ("fp78", "fpa78"):
        (GOLDEN / f"flexible_{algo}.lzk").write_bytes(encode(factorize(algo, FLEXIBLE_EXAMPLE)))


if __name__ == "__main__":
    main()
