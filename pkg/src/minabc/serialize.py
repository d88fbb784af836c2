"""JSON Lines and CSV encodings of search records.

Only the contenders, the heuristic flag, the scan count and the elapsed
time are independent data; everything else in a line is recomputed on
load and must match the text exactly, so a line that was edited or
truncated is rejected.
"""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_EVEN, Context, Decimal
from typing import Iterable, Iterator

from .degseq import validate
from .greedy import abc_value
from .search import SearchRecord, arbitrate

STANDARD_DIGITS = 15
EXTENDED_DIGITS = 30

FIELDS = (
    "n",
    "abc_min",
    "degree_sequence",
    "parent_array",
    "max_degree",
    "pendant_profile",
    "unique",
    "heuristic",
    "sequences_scanned",
    "elapsed_ns",
    "contenders",
)


class RecordFormatError(ValueError):
    pass


def format_significant(x: Decimal | float, digits: int) -> str:
    """Fixed-point text with ``digits`` significant digits (zero included)."""
    x = Decimal(x)
    if x == 0:
        return "0." + "0" * (digits - 1)
    quantum = Decimal(1).scaleb(x.adjusted() - digits + 1)
    return format(x.quantize(quantum, rounding=ROUND_HALF_EVEN, context=Context(prec=80)), "f")


def format_abc(rec: SearchRecord) -> str:
    if rec.abc_extended is not None:
        return format_significant(rec.abc_extended, EXTENDED_DIGITS)
    return format_significant(rec.abc_min, STANDARD_DIGITS)


def record_fields(rec: SearchRecord) -> dict:
    profile = rec.pendant_profile
    return {
        "n": rec.n,
        "abc_min": format_abc(rec),
        "degree_sequence": list(rec.degree_sequence),
        "parent_array": list(rec.tree.parent),
        "max_degree": rec.max_degree,
        "pendant_profile": list(profile) if profile is not None else [],
        "unique": rec.unique,
        "heuristic": rec.heuristic,
        "sequences_scanned": rec.sequences_scanned,
        "elapsed_ns": rec.elapsed_ns,
        # only listed when extended arbitration ran
        "contenders": [list(s) for s in rec.contenders] if rec.escalated else [],
    }


def serialize_record(rec: SearchRecord) -> str:
    return json.dumps(record_fields(rec))


def record_from_fields(data: dict) -> SearchRecord:
    """Rebuild a record and check every derived field against ``data``."""
    missing = [k for k in FIELDS if k not in data]
    if missing:
        raise RecordFormatError(f"missing fields {missing}")
    try:
        n = int(data["n"])
        contenders = [validate(s) for s in data["contenders"]] or [validate(data["degree_sequence"])]
        rec = arbitrate(
            n,
            [(abc_value(s), s) for s in contenders],
            heuristic=bool(data["heuristic"]),
            scanned=int(data["sequences_scanned"]),
            elapsed_ns=int(data["elapsed_ns"]),
        )
    except (TypeError, ValueError) as exc:
        raise RecordFormatError(str(exc)) from exc
    expected = record_fields(rec)
    bad = [k for k in FIELDS if _normalize(data[k]) != _normalize(expected[k])]
    if bad:
        raise RecordFormatError(f"n={n}: fields inconsistent with recomputation: {bad}")
    return rec


def _normalize(v):
    if isinstance(v, (list, tuple)):
        return [_normalize(x) for x in v]
    return v


def deserialize_record(line: str) -> SearchRecord:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordFormatError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise RecordFormatError("record line is not a JSON object")
    return record_from_fields(data)


def iter_jsonl(lines: Iterable[str]) -> Iterator[SearchRecord]:
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield deserialize_record(line)


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        if v and isinstance(v[0], list):
            return ";".join(" ".join(map(str, s)) for s in v)
        return " ".join(map(str, v))
    return str(v)


def records_to_csv(records: Iterable[SearchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for rec in records:
        f = record_fields(rec)
        w.writerow([_cell(f[k]) for k in FIELDS])
    return buf.getvalue()


def _ints(cell: str) -> list[int]:
    return [int(x) for x in cell.split()]


def records_from_csv(text: str) -> list[SearchRecord]:
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        data: dict = {
            "n": int(row["n"]),
            "abc_min": row["abc_min"],
            "degree_sequence": _ints(row["degree_sequence"]),
            "parent_array": _ints(row["parent_array"]),
            "max_degree": int(row["max_degree"]),
            "pendant_profile": _ints(row["pendant_profile"]),
            "unique": row["unique"] == "true",
            "heuristic": row["heuristic"] == "true",
            "sequences_scanned": int(row["sequences_scanned"]),
            "elapsed_ns": int(row["elapsed_ns"]),
            "contenders": [_ints(s) for s in row["contenders"].split(";") if s],
        }
        out.append(record_from_fields(data))
    return out


def sequence_line(seq, fmt: str) -> str:
    if fmt == "jsonl":
        return json.dumps(list(seq))
    return ",".join(map(str, seq))

