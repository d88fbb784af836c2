"""Sequence-level pruning from structural properties of minimal-ABC trees.

For ``n >= 10`` a minimal-ABC tree has no pendant path of length >= 4, at
most one of length 3, and every leaf ends a pendant path of length 2 or 3.
Each such path spends one degree-2 vertex per leaf (two for the single
length-3 path), which gives the sequence test used in ``strict`` mode:
``twos in {leaves, leaves + 1}``.  ``relaxed`` only asks ``twos >= leaves``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

from .degseq import Pruner, leaf_count, two_count
from .greedy import GreedyTree

FilterMode = Literal["strict", "relaxed", "off"]

APPLICABILITY_FLOOR = 10

@dataclass(frozen=True)
class DeltaWindow:
    center: int
    radius: int = 1

    def __post_init__(self) -> None:
        if self.radius < 1:
            raise ValueError("delta window radius must be >= 1")

    def __contains__(self, max_degree: int) -> bool:
        return abs(max_degree - self.center) <= self.radius


@dataclass(frozen=True)
class FilterConfig:
    mode: FilterMode = "off"
    delta_window: Optional[DeltaWindow] = None
    applicability_floor: int = APPLICABILITY_FLOOR

    def __post_init__(self) -> None:
        if self.mode not in ("strict", "relaxed", "off"):
            raise ValueError(f"unknown filter mode {self.mode!r}")
        if self.applicability_floor != APPLICABILITY_FLOOR:
            raise ValueError("applicability floor is fixed at 10")

    def active(self, n: int) -> bool:
        return n >= self.applicability_floor and (
            self.mode != "off" or self.delta_window is not None
        )

    def pruner(self, n: int) -> Optional[Pruner]:
        """Subtree pruner for the enumeration of order ``n`` (None if inactive).

        Below a node with ``ones`` leaves, ``twos`` twos and ``remaining``
        vertices still to add, extending by 2 raises ``twos - ones`` by one
        per vertex while any ``z >= 3`` lowers it, so ``twos + remaining -
        ones`` bounds the surplus of every descendant.
        """
        if not self.active(n):
            return None
        need_surplus = self.mode != "off"
        window = self.delta_window

        def prune(max_degree: int, ones: int, twos: int, remaining: int) -> bool:
            if window is not None and max_degree not in window:
                return True
            return need_surplus and twos + remaining < ones

        return prune


def passes(seq: Sequence[int], cfg: FilterConfig) -> bool:
    n = len(seq)
    if not cfg.active(n):
        return True
    if cfg.delta_window is not None and seq[0] not in cfg.delta_window:
        return False
    if cfg.mode == "off":
        return True
    ones = leaf_count(seq)
    twos = two_count(seq)
    if cfg.mode == "strict":
        return twos == ones or twos == ones + 1
    return twos >= ones


def pendant_path_profile(tree: GreedyTree) -> Optional[tuple[int, ...]]:
    """Sorted lengths of all pendant paths, or None when the tree is a path.

    A pendant path runs from a vertex of degree > 2 through degree-2
    vertices to a leaf.  In a greedy tree the root has maximum degree, so
    climbing parent links from a leaf always meets such a vertex.
    """
    deg = tree.degree
    if deg[0] <= 2:
        return None
    par = tree.parent
    lengths = []
    for v in range(tree.n):
        if deg[v] != 1:
            continue
        k = 1
        u = par[v]
        while deg[u] == 2:
            u = par[u]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths))


@dataclass(frozen=True)
class PropertyReport:
    no_path_ge_4: bool
    at_most_one_path_3: bool
    all_leaves_on_paths_2_or_3: bool
    no_path_3: bool
    profile: tuple[int, ...]

    @property
    def propositions_hold(self) -> bool:
        return self.no_path_ge_4 and self.at_most_one_path_3 and self.all_leaves_on_paths_2_or_3


def report_from_profile(profile: tuple[int, ...]) -> PropertyReport:
    c = Counter(profile)
    return PropertyReport(
        no_path_ge_4=all(k < 4 for k in profile),
        at_most_one_path_3=c[3] <= 1,
        all_leaves_on_paths_2_or_3=all(k in (2, 3) for k in profile),
        no_path_3=c[3] == 0,
        profile=profile,
    )


def verify_properties(tree: GreedyTree) -> PropertyReport:
    if tree.n < APPLICABILITY_FLOOR:
        raise ValueError("pendant-path properties are stated for n >= 10")
    profile = pendant_path_profile(tree)
    if profile is None:
        # no vertex of degree > 2, so no leaf lies on a pendant path
        return PropertyReport(True, True, False, True, ())
    return report_from_profile(profile)
