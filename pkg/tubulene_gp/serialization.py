"""This module converts graphs and verification records to and from their text formats.

Graph JSON has the shape ``{"n", "p", "vertex_count", "vertices": [{"id", "layer", "kind", "index"}],
"edges": [[a, b], ...]}`` with ``a < b`` and edges sorted. The edge list has one ``"a b"`` line per edge
in the same order. Output is deterministic for fixed inputs.
"""

from __future__ import annotations

import csv
import io
import json
from typing import TYPE_CHECKING, Any

from tubulene_gp.graph_core import Graph, GraphError
from tubulene_gp.tubulene import TubuleneParams, VertexId

if TYPE_CHECKING:
    from tubulene_gp.verification import VerificationRecord

CSV_COLUMNS = (
    "n",
    "p",
    "oracle_gp",
    "summation_gp",
    "table5_gp",
    "aut_order",
    "structure_ok",
    "orbits_match",
    "distance_rows_ok",
    "status",
)


def graph_to_json(g: Graph, params: TubuleneParams) -> str:
    """Serializes AT(n, p) to the graph JSON format."""
    if g.vertex_count != params.vertex_count:
        raise GraphError(f"Graph has {g.vertex_count} vertices, AT({params.n},{params.p}) has {params.vertex_count}")

    vertices = []
    for vid in range(g.vertex_count):
        v = VertexId.decode(vid, params)
        vertices.append({"id": vid, "layer": v.layer, "kind": v.kind, "index": v.index})
    doc = {
        "n": params.n,
        "p": params.p,
        "vertex_count": g.vertex_count,
        "vertices": vertices,
        "edges": [[a, b] for a, b in g.edges()],
    }
    return json.dumps(doc, indent=2)


def graph_from_json(text: str) -> tuple[Graph, TubuleneParams]:
    """Reads a graph written by `graph_to_json`.

    Raises:
        GraphError: If the document is malformed or its vertex table disagrees with the canonical ids.
    """
    try:
        doc = json.loads(text)
        params = TubuleneParams(doc["n"], doc["p"])
        vertex_count = doc["vertex_count"]
        edges = [(a, b) for a, b in doc["edges"]]
        coordinates = [
            (entry["id"], VertexId(entry["layer"], entry["kind"], entry["index"]).encode(params))
            for entry in doc.get("vertices", [])
        ]
    except (ValueError, KeyError, TypeError) as e:
        raise GraphError(f"Malformed graph document: {e}") from e

    if vertex_count != params.vertex_count:
        raise GraphError(f"vertex_count {vertex_count} does not match AT({params.n},{params.p})")
    for vid, expected in coordinates:
        if vid != expected:
            raise GraphError(f"Vertex {vid} carries coordinates of vertex {expected}")
    return Graph.from_edges(vertex_count, edges), params


def graph_to_edge_list(g: Graph) -> str:
    return "".join(f"{a} {b}\n" for a, b in g.edges())


def record_fields(record: VerificationRecord) -> dict[str, Any]:
    """Returns the fixed report columns of `record`, in column order."""
    return {
        "n": record.n,
        "p": record.p,
        "oracle_gp": record.oracle_gp,
        "summation_gp": record.summation_gp,
        "table5_gp": record.table5_gp,
        "aut_order": record.aut_order,
        "structure_ok": record.structure_ok,
        "orbits_match": record.orbits_match,
        "distance_rows_ok": record.distance_rows_ok,
        "status": record.status,
    }


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def csv_header() -> str:
    return ",".join(CSV_COLUMNS)


def record_to_csv_row(record: VerificationRecord) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="")
    writer.writerow([_csv_cell(v) for v in record_fields(record).values()])
    return buffer.getvalue()


def record_to_json(record: VerificationRecord) -> str:
    """Serializes `record` as one JSON line, including the mismatch details and the extrapolation flag."""
    doc = record_fields(record)
    doc["details"] = list(record.details)
    doc["table5_extrapolated_agrees"] = record.table5_extrapolated_agrees
    return json.dumps(doc)
