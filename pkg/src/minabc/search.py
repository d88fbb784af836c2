"""Minimal-ABC tree search over tree degree sequences.

For each order ``n`` every (filtered) degree sequence is scored by the
ABC index of its greedy tree.  Candidates within ``NEAR_TIE`` of the
running minimum are kept as contenders; if more than one survives, all
are rescored in extended precision and the winners are those equal to
the extended minimum.  Winners are ordered lexicographically, so the
first winner is the canonical representative.
"""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass, field, replace
from decimal import Decimal
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Optional

from . import degseq
from .degseq import DegreeSequence, Shard
from .filters import (
    APPLICABILITY_FLOOR,
    DeltaWindow,
    FilterConfig,
    PropertyReport,
    passes,
    pendant_path_profile,
    verify_properties,
)
from .greedy import GreedyTree, abc_extended, abc_value, build_greedy_tree

log = logging.getLogger(__name__)

NEAR_TIE = 1e-9
EQUAL_TOL = 1e-12
EXTENDED_TIE = Decimal("1e-30")


class EmptySearchError(ValueError):
    """No degree sequence survived the filters (or the shard is empty)."""


class CheckpointError(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchRecord:
    n: int
    abc_min: float
    winners: tuple[DegreeSequence, ...]
    contenders: tuple[DegreeSequence, ...]
    abc_extended: Optional[Decimal] = None
    heuristic: bool = False
    sequences_scanned: int = 0
    elapsed_ns: int = field(default=0, compare=False)

    @property
    def unique(self) -> bool:
        return len(self.winners) == 1

    @property
    def escalated(self) -> bool:
        return self.abc_extended is not None

    @property
    def degree_sequence(self) -> DegreeSequence:
        return self.winners[0]

    @property
    def max_degree(self) -> int:
        return self.winners[0][0]

    @cached_property
    def tree(self) -> GreedyTree:
        return build_greedy_tree(self.winners[0])

    @property
    def winner_trees(self) -> list[tuple[DegreeSequence, GreedyTree]]:
        return [(s, build_greedy_tree(s)) for s in self.winners]

    @property
    def pendant_profile(self) -> Optional[tuple[int, ...]]:
        return pendant_path_profile(self.tree)

    def properties(self) -> PropertyReport:
        return verify_properties(self.tree)


def arbitrate(
    n: int,
    candidates: Iterable[tuple[float, DegreeSequence]],
    *,
    heuristic: bool = False,
    scanned: int = 0,
    elapsed_ns: int = 0,
) -> SearchRecord:
    """Reduce scored candidates to a record, escalating near ties."""
    cands = sorted(set(candidates))
    if not cands:
        raise EmptySearchError(f"no candidate sequences for n={n}")
    best = cands[0][0]
    near = sorted(s for v, s in cands if v <= best + NEAR_TIE)
    if len(near) == 1:
        return SearchRecord(n, best, (near[0],), (near[0],), None, heuristic, scanned, elapsed_ns)
    exact = {s: abc_extended(s) for s in near}
    emin = min(exact.values())
    winners = tuple(s for s in near if exact[s] - emin <= EXTENDED_TIE)
    log.debug("n=%d: %d contenders escalated, %d winners", n, len(near), len(winners))
    return SearchRecord(
        n,
        abc_value(winners[0]),
        winners,
        tuple(near),
        emin,
        heuristic,
        scanned,
        elapsed_ns,
    )


def _scan(n: int, cfg: FilterConfig, shard: Optional[Shard]) -> tuple[list, int]:
    state = {"best": float("inf"), "scanned": 0}
    cands: list[tuple[float, DegreeSequence]] = []
    filtered = cfg.active(n)

    def visit(seq: DegreeSequence) -> None:
        if filtered and not passes(seq, cfg):
            return
        state["scanned"] += 1
        v = abc_value(seq)
        best = state["best"]
        if v < best - NEAR_TIE:
            state["best"] = v
            cands[:] = [(v, seq)]
        elif v <= best + NEAR_TIE:
            cands.append((v, seq))
            if v < best:
                state["best"] = v

    degseq.enumerate_sequences(n, visit, shard=shard, prune=cfg.pruner(n))
    return cands, state["scanned"]


def find_min(n: int, cfg: FilterConfig = FilterConfig(), shard: Optional[Shard] = None) -> SearchRecord:
    """Minimal-ABC record for order ``n`` (shard-local if ``shard`` is given)."""
    if n < 2:
        raise ValueError("order must be >= 2")
    t0 = time.perf_counter_ns()
    cands, scanned = _scan(n, cfg, shard)
    heuristic = cfg.delta_window is not None and n >= APPLICABILITY_FLOOR
    return arbitrate(
        n, cands, heuristic=heuristic, scanned=scanned, elapsed_ns=time.perf_counter_ns() - t0
    )


def merge_records(records: Iterable[SearchRecord]) -> SearchRecord:
    """Deterministic reduce of shard-local records for the same order."""
    records = list(records)
    if not records:
        raise ValueError("nothing to merge")
    ns = {r.n for r in records}
    if len(ns) != 1:
        raise ValueError(f"cannot merge records of different orders {sorted(ns)}")
    cands = [(abc_value(s), s) for r in records for s in r.contenders]
    return arbitrate(
        ns.pop(),
        cands,
        heuristic=any(r.heuristic for r in records),
        scanned=sum(r.sequences_scanned for r in records),
        elapsed_ns=sum(r.elapsed_ns for r in records),
    )


@dataclass
class RangeSummary:
    n_lo: int
    n_hi: int
    records: list[SearchRecord]
    delta_violations: list[int]  # n with |max_degree(n+1) - max_degree(n)| > 1
    non_unique: list[int]
    has_path_3: list[int]  # n >= 10 whose winner has a pendant path of length 3
    resumed_from: Optional[int] = None


def _checkpoint_header(cfg: FilterConfig, delta_radius: Optional[int]) -> str:
    return f"#config mode={cfg.mode} delta_radius={delta_radius}"


def load_checkpoint(
    path: Path, cfg: FilterConfig, delta_radius: Optional[int] = None
) -> list[SearchRecord]:
    """Records of a complete checkpoint file; raises CheckpointError otherwise."""
    from .serialize import RecordFormatError, deserialize_record

    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != _checkpoint_header(cfg, delta_radius):
        raise CheckpointError(f"{path}: missing or mismatched config header")
    if len(lines) < 2 or not lines[-1].startswith("#complete n="):
        raise CheckpointError(f"{path}: no completion marker")
    try:
        last = int(lines[-1].split("=", 1)[1])
        records = [deserialize_record(line) for line in lines[1:-1]]
    except (ValueError, RecordFormatError) as exc:
        raise CheckpointError(f"{path}: corrupt checkpoint: {exc}") from exc
    ns = [r.n for r in records]
    if not records or ns != list(range(ns[0], ns[0] + len(ns))) or ns[-1] != last:
        raise CheckpointError(f"{path}: record orders are not contiguous up to {last}")
    return records


def _write_checkpoint(
    path: Path, cfg: FilterConfig, delta_radius: Optional[int], records: list[SearchRecord]
) -> None:
    from .serialize import serialize_record

    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    body = [_checkpoint_header(cfg, delta_radius)]
    body += [serialize_record(r) for r in records]
    body.append(f"#complete n={records[-1].n}")
    tmp.write_text("\n".join(body) + "\n")
    os.replace(tmp, path)


def search_range(
    n_lo: int,
    n_hi: int,
    cfg: FilterConfig = FilterConfig(),
    sink: Optional[Callable[[SearchRecord], object]] = None,
    checkpoint: Optional[os.PathLike] = None,
    delta_radius: Optional[int] = None,
) -> RangeSummary:
    """Search every order in ``[n_lo, n_hi]``, emitting records in order.

    With ``delta_radius`` set, each order's maximum degree is restricted to
    within the radius of the previous order's winner (results are flagged
    heuristic).  An existing complete checkpoint is resumed; a corrupt one
    raises :class:`CheckpointError`.
    """
    if not 2 <= n_lo <= n_hi:
        raise ValueError(f"invalid range {n_lo}..{n_hi}")
    records: list[SearchRecord] = []
    resumed = None
    if checkpoint is not None and Path(checkpoint).exists():
        records = load_checkpoint(Path(checkpoint), cfg, delta_radius)
        if records[0].n != n_lo:
            raise CheckpointError(f"checkpoint starts at {records[0].n}, expected {n_lo}")
        records = [r for r in records if r.n <= n_hi]
        resumed = records[-1].n
        log.info("resuming after n=%d", resumed)
    if sink is not None:
        for r in records:
            sink(r)

    start = records[-1].n + 1 if records else n_lo
    for n in range(start, n_hi + 1):
        step_cfg = cfg
        if delta_radius is not None and records:
            step_cfg = replace(cfg, delta_window=DeltaWindow(records[-1].max_degree, delta_radius))
        rec = find_min(n, step_cfg)
        records.append(rec)
        log.info("n=%d abc=%.15g seq=%s scanned=%d", n, rec.abc_min, rec.degree_sequence, rec.sequences_scanned)
        if sink is not None:
            sink(rec)
        if checkpoint is not None:
            _write_checkpoint(Path(checkpoint), cfg, delta_radius, records)

    by_n = {r.n: r for r in records}
    return RangeSummary(
        n_lo,
        n_hi,
        records,
        delta_violations=[
            n for n in range(n_lo, n_hi) if abs(by_n[n + 1].max_degree - by_n[n].max_degree) > 1
        ],
        non_unique=[r.n for r in records if not r.unique],
        has_path_3=[
            r.n for r in records if r.n >= APPLICABILITY_FLOOR and not r.properties().no_path_3
        ],
        resumed_from=resumed,
    )


@dataclass(frozen=True)
class Divergence:
    n: int
    reason: str


def compare_runs(a: Iterable[SearchRecord], b: Iterable[SearchRecord]) -> list[Divergence]:
    """Orders where two record streams disagree on the minimum or the winners."""
    ra = {r.n: r for r in a}
    rb = {r.n: r for r in b}
    if ra.keys() != rb.keys():
        raise ValueError("record streams cover different orders")
    out = []
    for n in sorted(ra):
        x, y = ra[n], rb[n]
        if abs(x.abc_min - y.abc_min) > EQUAL_TOL:
            out.append(Divergence(n, f"abc_min {x.abc_min!r} != {y.abc_min!r}"))
        elif x.winners != y.winners:
            out.append(Divergence(n, f"winners {x.winners} != {y.winners}"))
    return out


def summary_json(summary: RangeSummary) -> str:
    return json.dumps(
        {
            "from": summary.n_lo,
            "to": summary.n_hi,
            "delta_violations": summary.delta_violations,
            "non_unique": summary.non_unique,
            "has_path_3": summary.has_path_3,
            "resumed_from": summary.resumed_from,
        }
    )
