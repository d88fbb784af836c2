"""Command-line entry point: ``minabc <command> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional, TextIO

from . import degseq, greedy, oracle
from .bench import bench
from .filters import APPLICABILITY_FLOOR, FilterConfig
from .search import (
    CheckpointError,
    EmptySearchError,
    SearchRecord,
    find_min,
    merge_records,
    search_range,
    summary_json,
)
from .serialize import (
    RecordFormatError,
    deserialize_record,
    records_to_csv,
    sequence_line,
    serialize_record,
)

log = logging.getLogger("minabc")


class UsageError(Exception):
    pass


def _order(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("order must be >= 2")
    return n


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _add_shard_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--shards", type=_positive, help="split the enumeration into K shards")
    p.add_argument("--shard-index", type=int, help="run only this shard (0-based)")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes for all-shard runs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minabc", description="Search for trees with minimal ABC index.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count tree degree sequences of order N")
    p.add_argument("--n", type=_order, required=True)
    _add_shard_args(p)

    p = sub.add_parser("enum", help="write all tree degree sequences of order N")
    p.add_argument("--n", type=_order, required=True)
    p.add_argument("--output", default="-")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    _add_shard_args(p)

    p = sub.add_parser("search", help="find minimal-ABC trees")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=_order)
    g.add_argument("--from", dest="n_from", type=_order)
    p.add_argument("--to", dest="n_to", type=_order)
    p.add_argument("--filter", choices=("strict", "relaxed", "off"), default="strict")
    p.add_argument("--delta-window", type=_positive, metavar="R",
                   help="restrict max degree to within R of the previous order's winner (heuristic)")
    p.add_argument("--checkpoint", type=Path)
    p.add_argument("--output", default="-")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    _add_shard_args(p)

    p = sub.add_parser("verify", help="recheck a JSONL record stream")
    p.add_argument("--input", required=True)

    p = sub.add_parser("oracle-check", help="cross-check against brute-force oracles")
    p.add_argument("--max-n", type=int, default=oracle.DEFAULT_MAX_N)
    p.add_argument("--max-partition-n", type=int, default=25)

    p = sub.add_parser("bench", help="time enumeration per order")
    p.add_argument("--from", dest="n_from", type=_order, required=True)
    p.add_argument("--to", dest="n_to", type=_order, required=True)
    p.add_argument("--repeats", type=_positive, default=1)
    return parser


@contextmanager
def _open_out(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdout
        return
    with open(path, "w") as fh:
        yield fh


def _shard(args) -> Optional[tuple[int, int]]:
    if args.shards is None:
        if args.shard_index is not None:
            raise UsageError("--shard-index requires --shards")
        return None
    if args.shard_index is not None and not 0 <= args.shard_index < args.shards:
        raise UsageError(f"--shard-index must be in [0, {args.shards})")
    return (args.shards, args.shard_index) if args.shard_index is not None else None


def _shard_count(n: int, k: int, i: int) -> int:
    return degseq.count(n, (k, i))


def _shard_min(n: int, cfg: FilterConfig, k: int, i: int) -> Optional[SearchRecord]:
    try:
        return find_min(n, cfg, (k, i))
    except EmptySearchError:
        return None


def _map_shards(fn, n, extra, k: int, jobs: int) -> list:
    args = [(n, *extra, k, i) for i in range(k)]
    if jobs == 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*args)))


def cmd_count(args) -> int:
    shard = _shard(args)
    if args.shards is not None and shard is None:
        total = sum(_map_shards(_shard_count, args.n, (), args.shards, args.jobs))
    else:
        total = degseq.count(args.n, shard)
    print(f"{args.n},{total}")
    return 0


def cmd_enum(args) -> int:
    shard = _shard(args)
    with _open_out(args.output) as out:
        def write(seq):
            out.write(sequence_line(seq, args.format) + "\n")
        degseq.enumerate_sequences(args.n, write, shard=shard)
    return 0


def _write_records(records: list[SearchRecord], path: str, fmt: str) -> None:
    with _open_out(path) as out:
        if fmt == "csv":
            out.write(records_to_csv(records))
        else:
            for r in records:
                out.write(serialize_record(r) + "\n")


def cmd_search(args) -> int:
    cfg = FilterConfig(args.filter)
    if args.n is not None:
        if args.n_to is not None:
            raise UsageError("--to is only valid with --from")
        if args.delta_window is not None:
            raise UsageError("--delta-window needs a range (--from/--to)")
        shard = _shard(args)
        if args.shards is not None and shard is None:
            parts = _map_shards(_shard_min, args.n, (cfg,), args.shards, args.jobs)
            rec = merge_records(r for r in parts if r is not None)
        else:
            rec = find_min(args.n, cfg, shard)
        _write_records([rec], args.output, args.format)
        return 0

    if args.n_to is None or args.n_to < args.n_from:
        raise UsageError("--from A needs --to B with B >= A")
    if args.shards is not None:
        raise UsageError("sharding applies to a single order (--n)")
    records: list[SearchRecord] = []
    if args.format == "jsonl" and args.output != "-":
        # stream as we go so partial runs leave usable output
        with open(args.output, "w") as out:
            def sink(r: SearchRecord) -> None:
                out.write(serialize_record(r) + "\n")
                out.flush()
            summary = search_range(args.n_from, args.n_to, cfg, sink, args.checkpoint, args.delta_window)
    else:
        summary = search_range(args.n_from, args.n_to, cfg, records.append, args.checkpoint, args.delta_window)
        _write_records(records, args.output, args.format)
    print(summary_json(summary), file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    failures = 0
    checked = 0
    with open(args.input) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            checked += 1
            try:
                rec = deserialize_record(line)
            except RecordFormatError as exc:
                print(f"line {lineno}: FAIL {exc}")
                failures += 1
                continue
            if rec.n >= APPLICABILITY_FLOOR and not rec.properties().propositions_hold:
                print(f"line {lineno}: FAIL n={rec.n} winner violates pendant-path properties "
                      f"(profile {rec.pendant_profile})")
                failures += 1
                continue
            print(f"line {lineno}: ok n={rec.n}")
    print(f"{checked - failures}/{checked} records verified")
    return 1 if failures else 0


def cmd_oracle_check(args) -> int:
    ok = True

    def report(name: str, passed: bool, detail: str = "") -> None:
        nonlocal ok
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'} {name}{': ' + detail if detail else ''}")

    for n in range(2, args.max_partition_n + 1):
        got = set(degseq.iter_sequences(n))
        want = oracle.partition_sequences(n)
        report(f"enumeration n={n}", got == want and degseq.count(n) == len(want), f"{len(got)} sequences")
    for n in range(2, args.max_n + 1):
        per_seq = oracle.min_abc_by_sequence(n, args.max_n)
        worst = max(greedy.abc_value(s) - v for s, v in per_seq.items())
        report(f"greedy minimality n={n}", worst <= 1e-12, f"max excess {worst:.3e}")
        best, _ = oracle.min_abc_all_trees(n, args.max_n)
        rec = find_min(n, FilterConfig("off"))
        report(f"global minimum n={n}", abs(rec.abc_min - best) <= 1e-12, f"{rec.abc_min:.15g}")
    return 0 if ok else 1


def cmd_bench(args) -> int:
    if args.n_to < args.n_from:
        raise UsageError("--to must be >= --from")
    ok = True
    print("n,S(n),elapsed_s,ms_per_sequence,published")
    for row in bench(args.n_from, args.n_to, args.repeats):
        pub = "" if row.published is None else str(row.published)
        print(f"{row.n},{row.count},{row.elapsed_s:.6f},{row.per_sequence_ms:.8f},{pub}")
        ok &= row.matches is not False
    return 0 if ok else 1


COMMANDS = {
    "count": cmd_count,
    "enum": cmd_enum,
    "search": cmd_search,
    "verify": cmd_verify,
    "oracle-check": cmd_oracle_check,
    "bench": cmd_bench,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (UsageError, CheckpointError, ValueError) as exc:
        print(f"minabc {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"minabc {args.command}: I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
