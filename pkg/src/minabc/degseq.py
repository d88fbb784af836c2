"""Reverse-search enumeration of tree degree sequences.

A degree sequence is a plain tuple of positive ints in non-increasing
order.  The parent of a sequence is obtained by turning its smallest
degree ``d > 1`` into a leaf and dropping ``d - 1`` trailing ones
(:func:`truncate`); children are produced by the inverse (:func:`extend`).
Every tree degree sequence of order ``n >= 3`` has exactly one parent, so
walking the children depth-first from the one-edge tree ``(1, 1)`` visits
each sequence once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

DegreeSequence = tuple[int, ...]

#: ``prune(max_degree, ones, twos, remaining) -> True`` skips the subtree
#: rooted at a node.  ``remaining`` is ``target_n - len(node)``.
Pruner = Callable[[int, int, int, int], bool]

Shard = tuple[int, int]

ROOT: DegreeSequence = (1, 1)


def is_tree_degree_sequence(seq: Sequence[int]) -> bool:
    """True iff ``seq`` lists the vertex degrees of some tree on >= 2 vertices.

    Ordering is not checked here; use :func:`validate` for that.
    """
    n = len(seq)
    if n < 2:
        return False
    return all(d >= 1 for d in seq) and sum(seq) == 2 * n - 2


def validate(seq: Sequence[int]) -> DegreeSequence:
    """Return ``seq`` as a tuple, raising ``ValueError`` unless it is a
    non-increasing tree degree sequence."""
    seq = tuple(int(d) for d in seq)
    if not is_tree_degree_sequence(seq):
        raise ValueError(f"not a tree degree sequence: {seq}")
    if any(a < b for a, b in zip(seq, seq[1:])):
        raise ValueError(f"degree sequence must be non-increasing: {seq}")
    return seq


def leaf_count(seq: Sequence[int]) -> int:
    return sum(1 for d in seq if d == 1)


def two_count(seq: Sequence[int]) -> int:
    return sum(1 for d in seq if d == 2)


def _last_branch_index(seq: DegreeSequence) -> Optional[int]:
    """Index of the smallest degree > 1, or None for ``(1, 1)``."""
    h = None
    for i, d in enumerate(seq):
        if d == 1:
            break
        h = i
    return h


def extend(parent: Sequence[int], z: int) -> DegreeSequence:
    """Insert degree ``z`` right after the non-leaf degrees of ``parent``.

    ``2 <= z <= c_h`` where ``c_h`` is the smallest degree of ``parent``
    exceeding one; from the root ``(1, 1)`` any ``z >= 2`` is allowed and
    yields the star on ``z + 1`` vertices.

    >>> extend((6, 5, 1, 1, 1, 1, 1, 1, 1, 1, 1), 3)
    (6, 5, 3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1)
    """
    parent = validate(parent)
    h = _last_branch_index(parent)
    bound = None if h is None else parent[h]
    if z < 2 or (bound is not None and z > bound):
        raise ValueError(f"extension degree {z} outside [2, {bound}] for {parent}")
    p = 0 if h is None else h + 1
    n = len(parent) + z - 1
    return parent[:p] + (z,) + (1,) * (n - p - 1)


def truncate(seq: Sequence[int]) -> tuple[DegreeSequence, int]:
    """Parent of ``seq`` in the reverse-search tree, plus the removed degree.

    >>> truncate((4, 1, 1, 1, 1))
    ((1, 1), 4)
    """
    seq = validate(seq)
    h = _last_branch_index(seq)
    if h is None:
        raise ValueError("(1, 1) is the root and has no parent")
    d = seq[h]
    m = len(seq) - d + 1
    return seq[:h] + (1,) * (m - h), d


@dataclass
class EnumCursor:
    """Position in the reverse-search tree for a fixed target order.

    ``branch_path`` lists the extension degrees taken from the root.
    ``current`` always has length ``target_n``: positions past the node's
    own length are padding ones, so the node is ``current[:length]``.
    """

    target_n: int
    branch_path: list[int] = field(default_factory=list)
    current: list[int] = field(init=False)
    length: int = field(init=False, default=2)
    ones: int = field(init=False, default=2)

    def __post_init__(self) -> None:
        if self.target_n < 2:
            raise ValueError("target order must be >= 2")
        path, self.branch_path = list(self.branch_path), []
        self.current = [1] * self.target_n
        for z in path:
            self.push(z)

    @property
    def h(self) -> Optional[int]:
        """Index of the smallest degree > 1 (None at the root)."""
        return len(self.branch_path) - 1 if self.branch_path else None

    @property
    def bound(self) -> int:
        if not self.branch_path:
            return self.target_n - 1
        return self.branch_path[-1]

    @property
    def sequence(self) -> DegreeSequence:
        return tuple(self.current[: self.length])

    def push(self, z: int) -> None:
        if not 2 <= z <= self.bound or self.length + z - 1 > self.target_n:
            raise ValueError(f"cannot extend by {z} at {self.sequence}")
        self.current[len(self.branch_path)] = z
        self.branch_path.append(z)
        self.length += z - 1
        self.ones += z - 2

    def pop(self) -> int:
        z = self.branch_path.pop()
        self.current[len(self.branch_path)] = 1
        self.length -= z - 1
        self.ones -= z - 2
        return z

    def children(self) -> range:
        """Admissible extension degrees, largest first."""
        top = min(self.bound, self.target_n - self.length + 1)
        return range(top, 1, -1)


class _Walker:
    def __init__(
        self,
        n: int,
        visitor: Optional[Callable[[DegreeSequence], object]],
        prune: Optional[Pruner],
    ) -> None:
        self.n = n
        self.visitor = visitor
        self.prune = prune
        self.count = 0

    def emit(self, cur: list[int]) -> None:
        self.count += 1
        if self.visitor is not None:
            self.visitor(tuple(cur))

    def walk(self, cur: list[int], p: int, length: int, ones: int, bound: int) -> None:
        n = self.n
        r = n - length
        if r == 0:
            self.emit(cur)
            return
        if bound <= 2:
            # only z = 2 remains admissible: the subtree is a chain with one leaf
            twos = r + (1 if p and cur[p - 1] == 2 else 0)
            if self.prune is not None and self.prune(cur[0] if p else 2, ones, twos, 0):
                return
            cur[p : p + r] = [2] * r
            self.emit(cur)
            cur[p : p + r] = [1] * r
            return
        prune = self.prune
        for z in range(min(bound, r + 1), 1, -1):
            cur[p] = z
            nl = length + z - 1
            no = ones + z - 2
            if z == 2 or prune is None or not prune(cur[0], no, 0, n - nl):
                self.walk(cur, p + 1, nl, no, z)
        cur[p] = 1

    def walk_from(self, cursor: EnumCursor) -> None:
        self.walk(
            cursor.current,
            len(cursor.branch_path),
            cursor.length,
            cursor.ones,
            cursor.bound,
        )


def shard_units(target_n: int, shard_count: int) -> list[tuple[int, ...]]:
    """Branch prefixes that partition the reverse-search tree.

    Depth-1 branches are used unless there are fewer of them than shards,
    in which case every depth-1 branch is split into its depth-2 children
    (a depth-1 node that is already a leaf stays a unit of its own).
    """
    top = EnumCursor(target_n)
    units: list[tuple[int, ...]] = [(z,) for z in top.children()]
    if len(units) >= shard_count:
        return units
    split: list[tuple[int, ...]] = []
    for (z,) in units:
        cur = EnumCursor(target_n, [z])
        kids = list(cur.children())
        if not kids:
            split.append((z,))
        split.extend((z, w) for w in kids)
    return split


def _check_shard(shard: Optional[Shard]) -> None:
    if shard is None:
        return
    k, i = shard
    if k < 1 or not 0 <= i < k:
        raise ValueError(f"invalid shard {i} of {k}")


def enumerate_sequences(
    target_n: int,
    visitor: Optional[Callable[[DegreeSequence], object]] = None,
    shard: Optional[Shard] = None,
    prune: Optional[Pruner] = None,
) -> int:
    """Visit every tree degree sequence of order ``target_n``; return the count.

    Children are taken with ``z`` descending.  ``shard=(k, i)`` restricts the
    walk to the branch prefixes ``shard_units(target_n, k)[i::k]``.  ``prune``
    may only skip subtrees that contain no wanted sequence.
    """
    if target_n < 2:
        raise ValueError("target order must be >= 2")
    _check_shard(shard)
    walker = _Walker(target_n, visitor, prune)
    if shard is None:
        walker.walk_from(EnumCursor(target_n))
        return walker.count

    k, i = shard
    if target_n == 2:
        # the root is the only sequence and has no branches
        if i == 0:
            walker.walk_from(EnumCursor(2))
        return walker.count
    for prefix in shard_units(target_n, k)[i::k]:
        cursor = EnumCursor(target_n, list(prefix))
        if prune is not None and prefix[-1] > 2:
            rem = target_n - cursor.length
            if prune(cursor.current[0], cursor.ones, 0, rem):
                continue
        walker.walk_from(cursor)
    return walker.count


def iter_sequences(
    target_n: int,
    shard: Optional[Shard] = None,
    prune: Optional[Pruner] = None,
) -> Iterator[DegreeSequence]:
    """Generator form of :func:`enumerate_sequences`."""
    out: list[DegreeSequence] = []
    enumerate_sequences(target_n, out.append, shard=shard, prune=prune)
    yield from out


def count(target_n: int, shard: Optional[Shard] = None) -> int:
    """Number of tree degree sequences of order ``target_n``."""
    return enumerate_sequences(target_n, None, shard=shard)
