"""Shared corpora and the acceptance report printed at the end of the run."""

from __future__ import annotations

import random

import pytest

RUNNING = b"ababbababbabb"
FLEXIBLE_EXAMPLE = b"aabaabbabba"
SHORTEST_CLOSED_EXAMPLE = b"ababbababbabba"
SIGMAS = (2, 3, 4, 16)


def random_text(rng: random.Random, n: int, sigma: int) -> bytes:
    """``n`` symbols drawn uniformly from the byte values 1..sigma."""
    return bytes(rng.choices(range(1, sigma + 1), k=n))


def random_corpus(seed: int, count: int, max_n: int, sigmas=SIGMAS):
    """``count`` texts with random length in [1..max_n] and alphabet size from ``sigmas``."""
    rng = random.Random(seed)
    return [random_text(rng, rng.randint(1, max_n), rng.choice(sigmas)) for _ in range(count)]


def random_intervals(rng: random.Random, n: int, count: int) -> list[tuple[int, int]]:
    out = []
    for _ in range(count):
        b = rng.randint(1, n)
        out.append((b, rng.randint(b, n)))
    return out


@pytest.fixture
def rng():
    return random.Random(20240)


# -- acceptance report ---------------------------------------------------

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def record_acceptance(number: int, status: str, detail: str) -> None:
    ACCEPTANCE[number] = (status, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status} ({detail})")
