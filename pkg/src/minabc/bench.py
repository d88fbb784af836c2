"""Timing harness for degree-sequence enumeration."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .degseq import enumerate_sequences

#: Published sequence counts S(n) for tree degree sequences of order n.
PUBLISHED_COUNTS = {
    21: 490,
    22: 627,
    23: 792,
    24: 1002,
    25: 1255,
    26: 1575,
    27: 1958,
    28: 2436,
    29: 3010,
    30: 3718,
    31: 4565,
    32: 5604,
    33: 6842,
    34: 8349,
    35: 10143,
    40: 26015,
    50: 147273,
    60: 715220,
    70: 3087735,
    80: 12132164,
    90: 44108109,
    100: 150198136,
    110: 483502844,
    120: 1482074143,
    130: 4351078600,
    140: 12292341831,
}


@dataclass(frozen=True)
class BenchRow:
    n: int
    count: int
    elapsed_s: float

    @property
    def per_sequence_ms(self) -> float:
        return 1e3 * self.elapsed_s / self.count

    @property
    def published(self) -> int | None:
        return PUBLISHED_COUNTS.get(self.n)

    @property
    def matches(self) -> bool | None:
        return None if self.published is None else self.published == self.count


def _discard(_seq) -> None:
    pass


def time_enumeration(n: int, repeats: int = 1) -> BenchRow:
    """Best-of-``repeats`` time to generate (materialize) every sequence of order n."""
    best = float("inf")
    count = 0
    for _ in range(repeats):
        t0 = time.perf_counter()
        count = enumerate_sequences(n, _discard)
        best = min(best, time.perf_counter() - t0)
    return BenchRow(n, count, best)


def bench(n_lo: int, n_hi: int, repeats: int = 1) -> list[BenchRow]:
    return [time_enumeration(n, repeats) for n in range(n_lo, n_hi + 1)]
