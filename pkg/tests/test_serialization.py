import csv
import io
import json

import pytest

from tubulene_gp.graph_core import GraphError
from tubulene_gp.serialization import (
    CSV_COLUMNS,
    csv_header,
    graph_from_json,
    graph_to_edge_list,
    graph_to_json,
    record_to_csv_row,
    record_to_json,
)
from tubulene_gp.tubulene import TubuleneParams
from tubulene_gp.verification import VerificationRecord


def test_graph_json_schema(armchair):
    g, params = armchair(6, 4)
    doc = json.loads(graph_to_json(g, params))
    assert doc["n"] == 6
    assert doc["p"] == 4
    assert doc["vertex_count"] == 60
    assert doc["vertices"][7] == {"id": 7, "layer": 0, "kind": 1, "index": 1}
    assert doc["edges"] == sorted(doc["edges"])
    assert all(a < b for a, b in doc["edges"])
    assert len(doc["edges"]) == 3 * 6 * 4 + 2 * 6


def test_graph_json_is_deterministic(armchair):
    g, params = armchair(4, 2)
    assert graph_to_json(g, params) == graph_to_json(*armchair(4, 2))


def test_graph_json_reads_back(armchair):
    g, params = armchair(8, 3)
    restored, restored_params = graph_from_json(graph_to_json(g, params))
    assert restored_params == params
    assert restored == g


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"n": 4}',
        '{"n": 4, "p": 1, "vertex_count": 17, "edges": []}',
        '{"n": 3, "p": 1, "vertex_count": 12, "edges": []}',
    ],
)
def test_graph_from_json_rejects_malformed_documents(text):
    with pytest.raises(GraphError):
        graph_from_json(text)


def test_graph_from_json_checks_vertex_table(armchair):
    g, params = armchair(4, 1)
    doc = json.loads(graph_to_json(g, params))
    doc["vertices"][0]["index"] = 1
    with pytest.raises(GraphError, match="coordinates"):
        graph_from_json(json.dumps(doc))


@pytest.mark.parametrize(
    "entry",
    [
        {"id": 0, "layer": 0, "kind": 0},
        {"id": 0, "layer": 9, "kind": 0, "index": 0},
        {"id": 0, "layer": 0, "kind": 2, "index": 0},
        "v0[0,0]",
    ],
)
def test_graph_from_json_rejects_malformed_vertex_entries(armchair, entry):
    g, params = armchair(4, 1)
    doc = json.loads(graph_to_json(g, params))
    doc["vertices"][0] = entry
    with pytest.raises(GraphError, match="Malformed"):
        graph_from_json(json.dumps(doc))


def test_graph_to_json_rejects_mismatched_params(armchair):
    g, _ = armchair(4, 1)
    with pytest.raises(GraphError):
        graph_to_json(g, TubuleneParams(4, 2))


def test_edge_list(armchair):
    g, _ = armchair(2, 1)
    lines = graph_to_edge_list(g).splitlines()
    assert len(lines) == 10
    assert lines[0] == "0 1"
    assert [tuple(map(int, line.split())) for line in lines] == g.edges()


@pytest.fixture
def record() -> VerificationRecord:
    return VerificationRecord(
        n=8,
        p=2,
        summation_gp=5376,
        table5_gp="not_covered",
        status="pass",
        oracle_gp=5376,
        aut_order=16,
        structure_ok=True,
        orbits_match=True,
        distance_rows_ok=True,
        details=("polynomial not claimed here (requires n >= 16); extrapolation agrees: True",),
        table5_extrapolated_agrees=True,
    )


def test_csv_row(record):
    assert csv_header() == ",".join(CSV_COLUMNS)
    assert record_to_csv_row(record) == "8,2,5376,5376,not_covered,16,true,true,true,pass"
    parsed = next(csv.DictReader(io.StringIO(csv_header() + "\n" + record_to_csv_row(record))))
    assert parsed["status"] == "pass"


def test_csv_row_of_skipped_record():
    skipped = VerificationRecord(n=40, p=80, summation_gp=1, table5_gp=1, status="skipped")
    assert record_to_csv_row(skipped) == "40,80,,1,1,,,,,skipped"


def test_json_record(record):
    doc = json.loads(record_to_json(record))
    assert list(doc)[: len(CSV_COLUMNS)] == list(CSV_COLUMNS)
    assert doc["table5_gp"] == "not_covered"
    assert doc["table5_extrapolated_agrees"] is True
    assert doc["details"] == list(record.details)
