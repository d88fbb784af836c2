"""Brute-force ground truth for small orders.

Two generators that share nothing with the reverse search or the greedy
construction:

* fixed-length integer partitions of ``2n - 2`` (every such partition is
  a tree degree sequence and vice versa);
* all ``n**(n-2)`` labeled trees via Prüfer words, decoded in numpy
  batches so that ``n = 9`` (4.8M trees) takes seconds.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

DEFAULT_MAX_N = 9
HARD_MAX_N = 10
BATCH = 1 << 18


@dataclass(frozen=True)
class LabeledTree:
    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def degree(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @property
    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degree, reverse=True))

    def abc(self) -> float:
        deg = self.degree
        return float(sum(np.sqrt((deg[u] + deg[v] - 2) / (deg[u] * deg[v])) for u, v in self.edges))


def _check_n(n: int, max_n: int = DEFAULT_MAX_N) -> None:
    if not 2 <= n <= min(max_n, HARD_MAX_N):
        raise ValueError(f"order {n} outside oracle bounds [2, {min(max_n, HARD_MAX_N)}]")


def partition_sequences(n: int) -> set[tuple[int, ...]]:
    """All non-increasing positive n-tuples summing to 2n - 2."""
    if n < 2:
        raise ValueError("order must be >= 2")
    out: set[tuple[int, ...]] = set()

    def rec(prefix: list[int], total: int, parts: int, cap: int) -> None:
        if parts == 0:
            if total == 0:
                out.add(tuple(prefix))
            return
        # each remaining part needs at least 1
        for d in range(min(cap, total - parts + 1), 0, -1):
            if d * parts < total:
                break
            prefix.append(d)
            rec(prefix, total - d, parts - 1, d)
            prefix.pop()

    rec([], 2 * n - 2, n, 2 * n - 2)
    return out


def decode_prufer(word: tuple[int, ...], n: int) -> LabeledTree:
    deg = [1] * n
    for v in word:
        deg[v] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in word:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        deg[v] -= 1
        if deg[v] == 1:
            heapq.heappush(leaves, v)
    u, w = sorted(leaves)
    edges.append((u, w))
    return LabeledTree(n, tuple(edges))


def all_labeled_trees(
    n: int, visitor: Callable[[LabeledTree], object], max_n: int = DEFAULT_MAX_N
) -> int:
    """Visit every labeled tree on ``n`` vertices in Prüfer-lexicographic order."""
    _check_n(n, max_n)
    count = 0
    for word in itertools.product(range(n), repeat=n - 2):
        visitor(decode_prufer(word, n))
        count += 1
    return count


def _words(n: int, start: int, stop: int) -> np.ndarray:
    length = n - 2
    ranks = np.arange(start, stop, dtype=np.int64)
    cols = [(ranks // n ** (length - 1 - k)) % n for k in range(length)]
    if not cols:
        return np.zeros((stop - start, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def _decode_batch(words: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised Prüfer decoding -> (degrees, edge tails, edge heads)."""
    rows_n, length = words.shape
    rows = np.arange(rows_n)
    deg = np.ones((rows_n, n), dtype=np.int64)
    for k in range(length):
        deg[rows, words[:, k]] += 1
    tree_deg = deg.copy()
    tails = np.empty((rows_n, n - 1), dtype=np.int64)
    heads = np.empty((rows_n, n - 1), dtype=np.int64)
    for k in range(length):
        leaf = np.argmax(deg == 1, axis=1)
        v = words[:, k]
        tails[:, k] = leaf
        heads[:, k] = v
        deg[rows, leaf] -= 1
        deg[rows, v] -= 1
    last = np.nonzero(deg == 1)[1].reshape(rows_n, 2)
    tails[:, -1] = last[:, 0]
    heads[:, -1] = last[:, 1]
    return tree_deg, tails, heads


def _weights(n: int) -> np.ndarray:
    a = np.arange(n, dtype=np.float64)[:, None]
    b = np.arange(n, dtype=np.float64)[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.sqrt((a + b - 2) / (a * b))
    return np.nan_to_num(w)


def iter_abc_batches(n: int, max_n: int = DEFAULT_MAX_N) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(first_rank, sorted_degree_rows, abc_values)`` over all labeled trees."""
    _check_n(n, max_n)
    total = n ** (n - 2)
    w = _weights(n)
    for start in range(0, total, BATCH):
        stop = min(total, start + BATCH)
        deg, tails, heads = _decode_batch(_words(n, start, stop), n)
        rows = np.arange(stop - start)[:, None]
        abc = w[deg[rows, tails], deg[rows, heads]].sum(axis=1)
        yield start, -np.sort(-deg, axis=1), abc


def _seq_keys(sorted_deg: np.ndarray, n: int) -> np.ndarray:
    base = n ** np.arange(sorted_deg.shape[1], dtype=np.int64)
    return sorted_deg @ base


@lru_cache(maxsize=None)
def _extremes(n: int, max_n: int = DEFAULT_MAX_N) -> dict:
    best = (np.inf, -1)
    worst = (-np.inf, -1)
    per_seq: dict[int, float] = {}
    key_to_seq: dict[int, tuple[int, ...]] = {}
    for start, sdeg, abc in iter_abc_batches(n, max_n):
        i = int(np.argmin(abc))
        if abc[i] < best[0]:
            best = (float(abc[i]), start + i)
        j = int(np.argmax(abc))
        if abc[j] > worst[0]:
            worst = (float(abc[j]), start + j)
        keys = _seq_keys(sdeg, n)
        uniq, first, inv = np.unique(keys, return_index=True, return_inverse=True)
        mins = np.full(len(uniq), np.inf)
        np.minimum.at(mins, inv, abc)
        for k, m, f in zip(uniq.tolist(), mins.tolist(), first.tolist()):
            if k not in key_to_seq:
                key_to_seq[k] = tuple(int(x) for x in sdeg[f])
            per_seq[k] = min(per_seq.get(k, np.inf), m)
    return {
        "min": best,
        "max": worst,
        "per_sequence": {key_to_seq[k]: v for k, v in per_seq.items()},
    }


def _word_of_rank(n: int, rank: int) -> tuple[int, ...]:
    return tuple(int(x) for x in _words(n, rank, rank + 1)[0])


def min_abc_all_trees(n: int, max_n: int = DEFAULT_MAX_N) -> tuple[float, LabeledTree]:
    """Minimum ABC over all labeled trees of order ``n``, with the first
    witness in Prüfer-lexicographic order."""
    value, rank = _extremes(n, max_n)["min"]
    return value, decode_prufer(_word_of_rank(n, rank), n)


def max_abc_all_trees(n: int, max_n: int = DEFAULT_MAX_N) -> tuple[float, LabeledTree]:
    value, rank = _extremes(n, max_n)["max"]
    return value, decode_prufer(_word_of_rank(n, rank), n)


def min_abc_by_sequence(n: int, max_n: int = DEFAULT_MAX_N) -> dict[tuple[int, ...], float]:
    """Minimum ABC over labeled realizations, for every degree sequence of order n."""
    return dict(_extremes(n, max_n)["per_sequence"])


def min_abc_for_sequence(seq: tuple[int, ...], max_n: int = DEFAULT_MAX_N) -> float:
    seq = tuple(sorted(seq, reverse=True))
    n = len(seq)
    _check_n(n, max_n)
    if sum(seq) != 2 * n - 2 or min(seq) < 1:
        raise ValueError(f"not a tree degree sequence: {seq}")
    return _extremes(n, max_n)["per_sequence"][seq]
