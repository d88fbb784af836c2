from __future__ import annotations

import json
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minabc.filters import FilterConfig
from minabc.search import find_min, search_range
from minabc.serialize import (
    FIELDS,
    RecordFormatError,
    deserialize_record,
    format_significant,
    records_from_csv,
    records_to_csv,
    serialize_record,
)


def test_field_order():
    line = serialize_record(find_min(12, FilterConfig("strict")))
    assert tuple(json.loads(line).keys()) == FIELDS


def test_n5_record():
    data = json.loads(serialize_record(find_min(5, FilterConfig("off"))))
    assert data["degree_sequence"] == [2, 2, 2, 1, 1]
    # greedy layout: the root's two children each continue the path
    assert data["parent_array"] == [-1, 0, 0, 1, 2]
    assert data["abc_min"] == "2.82842712474619"
    assert data["pendant_profile"] == []
    assert data["unique"] is True


def test_n2_record():
    data = json.loads(serialize_record(find_min(2)))
    assert data["abc_min"] == "0.00000000000000"
    assert data["parent_array"] == [-1, 0]


def test_escalated_record_prints_30_digits():
    data = json.loads(serialize_record(find_min(7)))
    digits = data["abc_min"].replace(".", "")
    assert len(digits) == 30
    assert data["contenders"] == [[2, 2, 2, 2, 2, 1, 1], [3, 2, 2, 2, 1, 1, 1]]
    assert data["unique"] is False


@pytest.mark.parametrize(
    "x, digits, text",
    [
        (0.0, 15, "0.00000000000000"),
        (2.0 ** 0.5, 15, "1.41421356237310"),
        (26.84737741623904, 15, "26.8473774162390"),
        (0.5, 3, "0.500"),
        (123456.0, 3, "123000"),
    ],
)
def test_format_significant(x, digits, text):
    assert format_significant(x, digits) == text


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 30), st.sampled_from(["strict", "relaxed", "off"]))
def test_roundtrip(n, mode):
    rec = find_min(n, FilterConfig(mode))
    back = deserialize_record(serialize_record(rec))
    assert back == rec
    assert back.elapsed_ns == rec.elapsed_ns


def test_roundtrip_ignores_elapsed_in_equality():
    rec = find_min(10)
    assert replace(rec, elapsed_ns=1) == rec


@pytest.mark.parametrize(
    "field, value",
    [
        ("abc_min", "6.32352091615906"),
        ("parent_array", [-1, 0, 0, 0, 1, 1, 2, 3, 4, 4]),
        ("pendant_profile", [2, 2, 2, 3]),
        ("max_degree", 4),
        ("unique", False),
        ("degree_sequence", [3, 3, 2, 2, 2, 2, 1, 1, 1]),
    ],
)
def test_tampered_line_rejected(field, value):
    data = json.loads(serialize_record(find_min(10)))
    data[field] = value
    with pytest.raises(RecordFormatError):
        deserialize_record(json.dumps(data))


def test_malformed_lines_rejected():
    for bad in ["", "{", "[1, 2]", json.dumps({"n": 5})]:
        with pytest.raises(RecordFormatError):
            deserialize_record(bad)


def test_csv_and_jsonl_carry_the_same_data():
    records = search_range(2, 14, FilterConfig("strict")).records
    from_csv = records_from_csv(records_to_csv(records))
    from_jsonl = [deserialize_record(serialize_record(r)) for r in records]
    assert from_csv == from_jsonl == records
    header = records_to_csv(records).splitlines()[0]
    assert header.split(",") == list(FIELDS)
