from __future__ import annotations

import pytest
from hypothesis import given

from minabc.degseq import iter_sequences, leaf_count
from minabc.filters import (
    DeltaWindow,
    FilterConfig,
    passes,
    pendant_path_profile,
    verify_properties,
)
from minabc.greedy import GreedyTree, build_greedy_tree

from .conftest import tree_degree_sequences

STRICT = FilterConfig("strict")
RELAXED = FilterConfig("relaxed")
OFF = FilterConfig("off")


def seq(*runs):
    """seq((4, 3), (2, 8), (1, 8)) -> three 4s, eight 2s, eight 1s."""
    return tuple(d for d, k in runs for _ in range(k))


@pytest.mark.parametrize(
    "s, expected",
    [
        (seq((4, 3), (2, 8), (1, 8)), True),
        (seq((3, 2), (2, 6), (1, 4)), False),
        (seq((9, 1), (2, 9), (1, 9)), True),
        (seq((8, 1), (2, 9), (1, 8)), True),
        (seq((5, 1), (1, 5)), True),  # n=6: below the floor
    ],
)
def test_strict_examples(s, expected):
    assert passes(s, STRICT) is expected


def test_filters_bypassed_below_floor():
    for s in iter_sequences(7):
        assert passes(s, STRICT)
        assert passes(s, FilterConfig("strict", DeltaWindow(20)))
    assert FilterConfig("strict").pruner(9) is None


def test_off_passes_everything():
    assert all(passes(s, OFF) for s in iter_sequences(15))
    assert OFF.pruner(15) is None


@given(tree_degree_sequences(min_n=10, max_n=60))
def test_strict_implies_relaxed(s):
    if passes(s, STRICT):
        assert passes(s, RELAXED)


def test_delta_window():
    cfg = FilterConfig("off", DeltaWindow(5))
    s = seq((5, 1), (3, 1), (2, 4), (1, 6))
    assert len(s) == 12 and passes(s, cfg)
    assert not passes(seq((7, 1), (2, 5), (1, 7)), cfg)
    with pytest.raises(ValueError):
        DeltaWindow(5, 0)
    with pytest.raises(ValueError):
        FilterConfig("loose")


@pytest.mark.parametrize(
    "cfg",
    [STRICT, RELAXED, FilterConfig("off", DeltaWindow(5)), FilterConfig("strict", DeltaWindow(4, 2))],
)
@pytest.mark.parametrize("n", [10, 17, 24, 30])
def test_pruner_never_drops_a_passing_sequence(cfg, n):
    full = {s for s in iter_sequences(n) if passes(s, cfg)}
    pruned = {s for s in iter_sequences(n, prune=cfg.pruner(n)) if passes(s, cfg)}
    assert pruned == full


def test_pendant_profile_examples():
    assert pendant_path_profile(build_greedy_tree((4, 1, 1, 1, 1))) == (1, 1, 1, 1)
    assert pendant_path_profile(build_greedy_tree((3, 2, 2, 1, 1, 1))) == (1, 2, 2)
    assert pendant_path_profile(build_greedy_tree((2,) * 5 + (1, 1))) is None


@given(tree_degree_sequences(min_n=4, max_n=60))
def test_profile_consistency(s):
    tree = build_greedy_tree(s)
    profile = pendant_path_profile(tree)
    if s[0] <= 2:
        assert profile is None
        return
    assert len(profile) == leaf_count(s)
    assert sum(profile) <= len(s) - 1


def test_verify_properties_examples():
    r = verify_properties(build_greedy_tree(seq((9, 1), (2, 9), (1, 9))))
    assert r.profile == (2,) * 9
    assert r.no_path_ge_4 and r.at_most_one_path_3 and r.all_leaves_on_paths_2_or_3 and r.no_path_3

    # one spare 2 lands under the first branch: exactly one length-3 path
    r = verify_properties(build_greedy_tree(seq((8, 1), (2, 9), (1, 8))))
    assert r.profile == (2,) * 7 + (3,)
    assert r.at_most_one_path_3 and not r.no_path_3 and r.propositions_hold

    # degree-9 root with a direct leaf child
    r = verify_properties(build_greedy_tree(seq((9, 1), (2, 8), (1, 9))))
    assert not r.all_leaves_on_paths_2_or_3

    r = verify_properties(build_greedy_tree(seq((3, 1), (2, 9), (1, 3))))
    assert not r.no_path_ge_4


def test_verify_properties_rejects_small_trees():
    with pytest.raises(ValueError):
        verify_properties(build_greedy_tree((3, 2, 2, 1, 1, 1)))


def test_verify_properties_on_path():
    r = verify_properties(build_greedy_tree((2,) * 10 + (1, 1)))
    assert r.profile == () and not r.all_leaves_on_paths_2_or_3


def test_profile_works_on_handmade_tree():
    # root(3) - 2 - 2 - 2 - 1, plus two leaves on the root
    t = GreedyTree((3, 2, 1, 1, 2, 2, 1), (-1, 0, 0, 0, 1, 4, 5))
    assert pendant_path_profile(t) == (1, 1, 4)
