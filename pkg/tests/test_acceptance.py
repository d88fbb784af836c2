"""Exit criteria for the search engine, one test per criterion.

Each test records a PASS/FAIL line that is echoed in the pytest summary.
"""

from __future__ import annotations

import json
import time

import pytest

from minabc import oracle
from minabc.bench import PUBLISHED_COUNTS, time_enumeration
from minabc.degseq import count, iter_sequences
from minabc.filters import FilterConfig
from minabc.greedy import abc_value
from minabc.search import EmptySearchError, find_min, merge_records, search_range
from minabc.serialize import serialize_record

from .conftest import ACCEPTANCE_LINES

TOL = 1e-12


def record(criterion: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
    assert passed, detail


def test_1_table_counts():
    orders = list(range(21, 36)) + [40, 50, 60]
    t0 = time.perf_counter()
    got = {n: count(n) for n in orders}
    elapsed = time.perf_counter() - t0
    wrong = {n: (got[n], PUBLISHED_COUNTS[n]) for n in orders if got[n] != PUBLISHED_COUNTS[n]}
    record(
        "1 table counts",
        not wrong and elapsed < 60,
        f"{len(orders)} orders, mismatches={wrong}, {elapsed:.2f}s",
    )


def test_2_enumeration_matches_partition_oracle():
    bad = []
    for n in range(2, 26):
        seqs = list(iter_sequences(n))
        if len(seqs) != len(set(seqs)) or set(seqs) != oracle.partition_sequences(n):
            bad.append(n)
    record("2 enumeration == partitions (2..25)", not bad, f"failing orders {bad}")


def test_3_greedy_tree_minimal_for_every_sequence():
    worst = 0.0
    below = []
    checked = 0
    for n in range(2, 10):
        for seq, best in oracle.min_abc_by_sequence(n).items():
            g = abc_value(seq)
            checked += 1
            worst = max(worst, abs(g - best))
            if g > best + TOL:
                below.append(seq)
    record(
        "3 greedy tree minimal per sequence (n<=9)",
        not below and worst <= TOL,
        f"{checked} sequences, max |greedy - oracle| = {worst:.2e}",
    )


def test_4_global_minimum_matches_labeled_tree_oracle():
    problems = []
    for n in range(2, 10):
        rec = find_min(n, FilterConfig("off"))
        best, witness = oracle.min_abc_all_trees(n)
        at_min = {s for s, v in oracle.min_abc_by_sequence(n).items() if v <= best + TOL}
        if abs(rec.abc_min - best) > TOL:
            problems.append(f"n={n}: {rec.abc_min!r} vs {best!r}")
        if rec.degree_sequence not in at_min or witness.degree_sequence not in set(rec.winners):
            problems.append(f"n={n}: winners {rec.winners} vs oracle {sorted(at_min)}")
        if n <= 6 and rec.degree_sequence != (2,) * (n - 2) + (1, 1):
            problems.append(f"n={n}: winner is not the path")
    record("4 global minimum == oracle (n<=9), paths for n<=6", not problems, "; ".join(problems) or "ok")


def test_5_filter_modes_agree():
    runs = {m: search_range(10, 40, FilterConfig(m)).records for m in ("strict", "relaxed", "off")}
    bad = [
        r.n
        for r, s, x in zip(runs["off"], runs["strict"], runs["relaxed"])
        if abs(r.abc_min - s.abc_min) > TOL or abs(r.abc_min - x.abc_min) > TOL
    ]
    scanned = {m: sum(r.sequences_scanned for r in recs) for m, recs in runs.items()}
    record("5 strict == relaxed == off (10..40)", not bad, f"diverging {bad}; scanned {scanned}")


def test_6_winners_satisfy_pendant_path_properties():
    t0 = time.perf_counter()
    violations = []
    for n in range(10, 101):
        rec = find_min(n, FilterConfig("strict"))
        if not rec.properties().propositions_hold:
            violations.append((n, rec.pendant_profile))
    record(
        "6 winners obey pendant-path properties (10..100, strict)",
        not violations,
        f"violations {violations}; {time.perf_counter() - t0:.1f}s",
    )


@pytest.mark.parametrize("mode", ["off", "strict"])
def test_7_sharding_is_deterministic(mode):
    cfg = FilterConfig(mode)

    def line(rec):
        data = json.loads(serialize_record(rec))
        data.pop("elapsed_ns")
        return json.dumps(data)

    whole = find_min(30, cfg)
    again = find_min(30, cfg)
    parts = []
    for i in range(7):
        try:
            parts.append(find_min(30, cfg, (7, i)))
        except EmptySearchError:
            pass
    merged = merge_records(parts)
    same = line(whole) == line(again) == line(merged) and merged.abc_min.hex() == whole.abc_min.hex()
    record(f"7 unsharded == 7-way sharded at n=30 ({mode})", same, whole.degree_sequence.__repr__())


def test_8_amortized_time_report():
    rows = [time_enumeration(n, repeats=3) for n in (30, 40, 50)]
    per = [r.per_sequence_ms for r in rows]
    ratio = max(per) / min(per)
    detail = ", ".join(f"n={r.n}: {r.per_sequence_ms * 1e3:.3f} us/seq" for r in rows)
    # report-only: timing depends on the host
    ACCEPTANCE_LINES.append(
        f"[{'PASS' if ratio < 3 else 'WARN'}] 8 amortized time (soft): ratio {ratio:.2f}; {detail}"
    )
