"""Greedy trees and the atom-bond connectivity (ABC) index.

The greedy tree of a degree sequence is built breadth-first: the root
takes the largest degree and each vertex, in creation order, receives the
next largest unassigned degrees as children.  Vertices are numbered in
creation order, so vertex ``i`` has degree ``seq[i]``.

Standard-precision sums go through :func:`math.fsum`, which is correctly
rounded and therefore independent of term order; that is what makes
:func:`abc_of_sequence` bit-identical to ``abc_index(build_greedy_tree(s))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Context, Decimal
from functools import lru_cache
from typing import Literal, Sequence

from .degseq import DegreeSequence, validate

Precision = Literal["standard", "extended"]

#: Significant digits used for extended-precision arithmetic.
EXTENDED_DIGITS = 40

_CTX = Context(prec=EXTENDED_DIGITS)


@dataclass(frozen=True)
class GreedyTree:
    degree: tuple[int, ...]
    parent: tuple[int, ...]  # parent[0] == -1

    @property
    def n(self) -> int:
        return len(self.degree)

    root = 0

    def edges(self) -> list[tuple[int, int]]:
        """(parent, child) pairs in child-creation order."""
        return [(self.parent[j], j) for j in range(1, self.n)]

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for j in range(1, self.n):
            kids[self.parent[j]].append(j)
        return kids

    def check(self) -> None:
        """Raise ``ValueError`` if a structural invariant is broken."""
        n = self.n
        if n < 2 or len(self.parent) != n or self.parent[0] != -1:
            raise ValueError("malformed tree arrays")
        realized = [0] * n
        for j in range(1, n):
            p = self.parent[j]
            if not 0 <= p < j:
                raise ValueError(f"vertex {j} has parent {p}; need 0 <= parent < child")
            realized[p] += 1
            realized[j] += 1
        if tuple(realized) != self.degree:
            raise ValueError("stored degrees do not match the parent array")
        if any(a < b for a, b in zip(self.degree, self.degree[1:])):
            raise ValueError("degrees are not non-increasing in creation order")


@dataclass(frozen=True)
class AbcValue:
    value: float
    precision_tag: Precision = "standard"
    exact: Decimal | None = None  # set in extended mode

    def __float__(self) -> float:
        return self.value


@lru_cache(maxsize=None)
def _weight_row(d: int) -> tuple[float, ...]:
    """Edge weights sqrt((d + c - 2) / (d * c)) for c = 0..d (index 0 unused)."""
    return (0.0,) + tuple(math.sqrt((d + c - 2) / (d * c)) for c in range(1, d + 1))


def edge_weight(a: int, b: int) -> float:
    if a < b:
        a, b = b, a
    return _weight_row(a)[b]


def edge_weight_extended(a: int, b: int) -> Decimal:
    num = Decimal(a + b - 2)
    return _CTX.sqrt(_CTX.divide(num, Decimal(a * b)))


def build_greedy_tree(seq: Sequence[int]) -> GreedyTree:
    """Greedy tree realizing ``seq``.

    >>> build_greedy_tree((3, 2, 2, 1, 1, 1)).parent
    (-1, 0, 0, 0, 1, 2)
    """
    seq = validate(seq)
    n = len(seq)
    if n == 2:
        return GreedyTree(seq, (-1, 0))
    parent = [-1] * n
    nxt = 1
    for i, d in enumerate(seq):
        k = d if i == 0 else d - 1
        if k == 0:
            break
        parent[nxt : nxt + k] = [i] * k
        nxt += k
    if nxt != n:  # unreachable for valid sequences
        raise AssertionError("degrees not consumed exactly")
    return GreedyTree(seq, tuple(parent))


def abc_index(tree: GreedyTree) -> AbcValue:
    """ABC index summed over parent-child edges."""
    deg = tree.degree
    par = tree.parent
    terms = [edge_weight(deg[par[j]], deg[j]) for j in range(1, tree.n)]
    return AbcValue(math.fsum(terms))


def _edge_types(seq: DegreeSequence) -> list[tuple[int, int]]:
    # (parent degree, child degree) in child-creation order
    out: list[tuple[int, int]] = []
    nxt = 1
    for i, d in enumerate(seq):
        k = d if i == 0 else d - 1
        if k == 0:
            break
        out.extend((d, c) for c in seq[nxt : nxt + k])
        nxt += k
    return out


def abc_value(seq: DegreeSequence) -> float:
    """Fast standard-precision ABC of the greedy tree of a *validated* sequence.

    This is the inner loop of the search and skips input validation.
    """
    if len(seq) == 2:
        return 0.0
    terms: list[float] = []
    nxt = 1
    for i, d in enumerate(seq):
        k = d if i == 0 else d - 1
        if k == 0:
            break
        row = _weight_row(d)
        terms.extend(map(row.__getitem__, seq[nxt : nxt + k]))
        nxt += k
    return math.fsum(terms)


def abc_extended(seq: DegreeSequence) -> Decimal:
    """ABC of the greedy tree of ``seq`` to EXTENDED_DIGITS significant digits."""
    total = Decimal(0)
    for a, b in _edge_types(seq):
        total = _CTX.add(total, edge_weight_extended(a, b))
    return total


def abc_of_sequence(seq: Sequence[int], precision: Precision = "standard") -> AbcValue:
    """ABC of the greedy tree of ``seq`` without building the tree."""
    seq = validate(seq)
    if precision == "standard":
        return AbcValue(abc_value(seq))
    if precision == "extended":
        exact = abc_extended(seq)
        return AbcValue(float(exact), "extended", exact)
    raise ValueError(f"unknown precision {precision!r}")
