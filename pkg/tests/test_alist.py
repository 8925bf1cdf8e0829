"""alist and JSON graph file formats."""

import json

import numpy as np
import pytest

from protolift import (
    FormatError,
    from_multiplicity_matrix,
    graph_from_json_dict,
    graph_to_json_dict,
    read_alist,
    read_graph_json,
    write_alist,
    write_graph_json,
)

from oracles import random_graph


def test_alist_round_trip_small(tmp_path):
    g = from_multiplicity_matrix([[1, 1, 0], [0, 1, 1]])
    p = tmp_path / "code.alist"
    write_alist(g, p)
    assert read_alist(p) == g


def test_alist_round_trip_is_byte_identical(tmp_path):
    rng = np.random.default_rng(5)
    for i in range(40):
        g = random_graph(rng, 8, 8, max_mult=1, density=0.4)
        p = tmp_path / f"g{i}.alist"
        write_alist(g, p)
        first = p.read_bytes()
        write_alist(read_alist(p), p)
        assert p.read_bytes() == first


def test_alist_file_layout(tmp_path):
    # Fixed layout: sizes, max degrees, per-node degrees, then 1-based
    # neighbor lists padded with zeros.
    g = from_multiplicity_matrix([[1, 1], [0, 1]])
    p = tmp_path / "tiny.alist"
    write_alist(g, p)
    lines = p.read_text().splitlines()
    assert lines[0].split() == ["2", "2"]
    assert lines[1].split() == ["2", "2"]
    assert lines[2].split() == ["1", "2"]
    assert lines[3].split() == ["2", "1"]


def test_alist_rejects_parallel_edges(tmp_path):
    g = from_multiplicity_matrix([[2]])
    with pytest.raises(FormatError):
        write_alist(g, tmp_path / "bad.alist")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "2\n",
        "2 2\n1 1\n1 1\n1 1\n1\n2\n1\n",  # missing final check list
        "2 2\n1 1\n1 1\n1 1\n1\n3\n1\n2\n",  # neighbor out of range
        "2 2\n1 1\n1 1\n1 1\n1\n2\n1\n1\n",  # inconsistent adjacency
        "a b\n",
    ],
)
def test_read_alist_rejects_malformed(tmp_path, text):
    p = tmp_path / "bad.alist"
    p.write_text(text)
    with pytest.raises(FormatError):
        read_alist(p)


def test_graph_json_round_trip(tmp_path):
    rng = np.random.default_rng(11)
    for i in range(25):
        g = random_graph(rng, 6, 6, max_mult=3, density=0.5)
        p = tmp_path / f"g{i}.json"
        write_graph_json(g, p)
        assert read_graph_json(p) == g
        doc = json.loads(p.read_text())
        assert doc["format"] == "tanner-graph"
        assert doc["version"] == 1


def test_graph_json_dict_round_trip_keeps_edge_order():
    g = from_multiplicity_matrix([[0, 2], [1, 1]])
    d = graph_to_json_dict(g)
    assert graph_from_json_dict(d).edges == g.edges


def test_graph_json_rejects_unknown_format():
    with pytest.raises(FormatError):
        graph_from_json_dict({"format": "mystery", "version": 1})


def test_graph_json_preserves_parallel_edges(tmp_path):
    g = from_multiplicity_matrix([[2, 1]])
    p = tmp_path / "par.json"
    write_graph_json(g, p)
    assert read_graph_json(p) == g
