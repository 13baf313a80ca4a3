"""Command-line front end: ``lzk factorize|decode|stats|bench|verify``.

Exit codes: 0 success, 1 usage or invalid input text, 2 I/O error,
3 verification mismatch, 4 no shortest closed factorization, 5 corrupt
stream.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

from . import __version__
from .codec import decode, encode
from .dispatch import SUBSTRING_ALGOS, Engine
from .errors import CorruptStream, LZKError, NoFactorization
from .oracles import ALGOS, naive_factorize

log = logging.getLogger("lzk")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_MISMATCH, EXIT_NO_FACTORIZATION, EXIT_CORRUPT = range(6)


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _algo(value: str) -> str:
    if value not in ALGOS:
        raise argparse.ArgumentTypeError(f"unknown algorithm {value!r} (choose from {', '.join(ALGOS)})")
    return value


def _algo_list(value: str) -> list[str]:
    return [_algo(a.strip()) for a in value.split(",") if a.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lzk", description="Lempel-Ziv family factorizations and substring compression queries.")
    parser.add_argument("--version", action="version", version=f"lzk {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log progress (repeat for debug output)")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("factorize", help="factorize a file or an interval of it")
    p.add_argument("--algo", type=_algo, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--begin", type=int, help="first position of the interval (1-based)")
    p.add_argument("--end", type=int, help="last position of the interval (inclusive)")
    p.add_argument("--format", choices=("jsonl", "binary"), default="jsonl")
    p.add_argument("--backend", choices=("suffix_tree", "ac"), default="suffix_tree", help="ac computes fp78 only")
    p.add_argument("--output", help="output file (default: standard output)")

    p = sub.add_parser("decode", help="decompress an .lzk stream")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)

    p = sub.add_parser("stats", help="factor counts and flexible-parsing ratios (TSV)")
    p.add_argument("--algos", type=_algo_list, default=["lz78", "fp78", "fpa78"])
    p.add_argument("--input", required=True, nargs="+")

    p = sub.add_parser("bench", help="mean latency per factor over random intervals (TSV)")
    p.add_argument("--algo", type=_algo, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--queries", type=int, default=100)
    p.add_argument("--min-len", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="compare against the brute-force oracle on random intervals")
    p.add_argument("--algo", type=_algo, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"lzk: {exc}", file=sys.stderr)
        return EXIT_IO
    except NoFactorization as exc:
        print(f"lzk: {exc}", file=sys.stderr)
        return EXIT_NO_FACTORIZATION
    except CorruptStream as exc:
        print(f"lzk: corrupt stream: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except LZKError as exc:
        print(f"lzk: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: Optional[str], data: bytes) -> None:
    if path is None:
        sys.stdout.flush()
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _interval(args, n: int):
    if args.begin is None and args.end is None:
        return None
    return (1 if args.begin is None else args.begin, n if args.end is None else args.end)


# -- commands ------------------------------------------------------------


def cmd_factorize(args) -> int:
    engine = Engine(_read(args.input))
    fact = engine.factorize(args.algo, _interval(args, engine.n), args.backend)
    log.info("%s: %d factors over %d symbols", args.algo, len(fact), len(fact.text))
    if args.format == "binary":
        _write(args.output, encode(fact))
    else:
        lines = "".join(json.dumps(f.as_record(i)) + "\n" for i, f in enumerate(fact.factors, 1))
        _write(args.output, lines.encode())
    return EXIT_OK


def cmd_decode(args) -> int:
    _write(args.output, decode(_read(args.input)))
    return EXIT_OK


def percent(numerator: int, denominator: int) -> str:
    """``numerator / denominator`` as a percentage rounded half-up to two decimals."""
    hundredths = Fraction(10000 * numerator, denominator) + Fraction(1, 2)
    r = hundredths.numerator // hundredths.denominator
    return f"{r // 100}.{r % 100:02d}%"


def stats_rows(paths: list[str], algos: list[str]) -> list[list[str]]:
    """Header plus one row per file: n, z per algorithm, ratios against LZ78."""
    ratios = [a for a in ("fp78", "fpa78") if a in algos and "lz78" in algos]
    rows = [["file", "n"] + [f"z_{a}" for a in algos] + [f"z_{a}/z_lz78" for a in ratios]]
    for path in paths:
        engine = Engine(_read(path))
        z = {}
        for algo in algos:
            z[algo] = len(engine.factorize(algo))
            log.info("%s: z_%s = %d", path, algo, z[algo])
        row = [os.path.basename(path), str(engine.n)] + [str(z[a]) for a in algos]
        row += [percent(z[a], z["lz78"]) for a in ratios]
        rows.append(row)
    return rows


def cmd_stats(args) -> int:
    for row in stats_rows(args.input, args.algos):
        print("\t".join(row))
    return EXIT_OK


def random_intervals(n: int, count: int, seed: int, min_len: int = 1) -> list[tuple[int, int]]:
    """``count`` random 1-based inclusive intervals of length >= ``min_len``."""
    rng = random.Random(seed)
    min_len = max(1, min(min_len, n))
    out = []
    for _ in range(count):
        b = rng.randint(1, n - min_len + 1)
        e = rng.randint(b + min_len - 1, n)
        out.append((b, e))
    return out


def cmd_bench(args) -> int:
    if args.queries < 0:
        raise LZKError("--queries must be non-negative")
    engine = Engine(_read(args.input))
    _ = engine.handle  # build the index outside the timed region
    if args.algo in SUBSTRING_ALGOS:
        intervals = random_intervals(engine.n, args.queries, args.seed, args.min_len)
    else:
        log.info("%s is a whole-text parsing; timing %d full-text runs", args.algo, args.queries)
        intervals = [None] * args.queries
    factors, elapsed = 0, 0
    for iv in intervals:
        start = time.perf_counter_ns()
        try:
            factors += len(engine.factorize(args.algo, iv))
        except NoFactorization as exc:
            factors += len(exc.partial)
        elapsed += time.perf_counter_ns() - start
    mean = elapsed / 1000 / factors if factors else 0.0
    print("\t".join(["file", "n", "algo", "queries", "factors", "us_per_factor"]))
    print("\t".join([os.path.basename(args.input), str(engine.n), args.algo, str(args.queries), str(factors), f"{mean:.2f}"]))
    return EXIT_OK


def _outcome(run):
    try:
        f = run()
        return ("ok", f.text, f.factors)
    except NoFactorization as exc:
        return ("none", exc.position, exc.partial.factors)


_worker_engine: Optional[Engine] = None


def _init_worker(text: bytes) -> None:
    global _worker_engine
    _worker_engine = Engine(text)


def _verify_chunk(job) -> Optional[int]:
    """Index of the first failing trial in the chunk, or ``None``."""
    algo, text, offset, intervals = job
    engine = _worker_engine if _worker_engine is not None else Engine(text)
    for k, (b, e) in enumerate(intervals):
        got = _outcome(lambda: engine.factorize(algo, (b, e)))
        want = _outcome(lambda: naive_factorize(algo, text[b - 1 : e]))
        if got != want:
            return offset + k
    return None


def workers() -> int:
    """Worker count from ``LZK_THREADS`` (default 1), capped by the CPU count."""
    try:
        requested = int(os.environ.get("LZK_THREADS", "1"))
    except ValueError:
        requested = 1
    return max(1, min(requested, os.cpu_count() or 1))


def cmd_verify(args) -> int:
    if args.trials < 0:
        raise LZKError("--trials must be non-negative")
    if args.trials == 0:
        return EXIT_OK
    text = _read(args.input)
    engine = Engine(text)
    intervals = random_intervals(engine.n, args.trials, args.seed)
    count = workers()
    size = max(1, -(-len(intervals) // (4 * count)))
    jobs = [(args.algo, engine.text, i, intervals[i : i + size]) for i in range(0, len(intervals), size)]
    if count == 1:
        failures = [_verify_chunk(job) for job in jobs]
    else:
        with ProcessPoolExecutor(count, initializer=_init_worker, initargs=(engine.text,)) as pool:
            failures = list(pool.map(_verify_chunk, jobs))
    failed = [k for k in failures if k is not None]
    if failed:
        b, e = intervals[min(failed)]
        print(f"MISMATCH\talgo={args.algo}\tinterval={b}..{e}\ttext={engine.text.hex()}")
        return EXIT_MISMATCH
    print(f"ok\t{args.algo}\t{args.trials} trials")
    return EXIT_OK


_COMMANDS = {
    "factorize": cmd_factorize,
    "decode": cmd_decode,
    "stats": cmd_stats,
    "bench": cmd_bench,
    "verify": cmd_verify,
}


if __name__ == "__main__":
    sys.exit(main())
