import io

import pytest
from hypothesis import given

from lightspanner.errors import GraphFormatError
from lightspanner.graphio import (
    loads_edge_list,
    read_dimacs,
    read_edge_list,
    read_graph,
    write_dimacs,
    write_edge_list,
    write_graph,
)

from .conftest import connected_graphs


@given(connected_graphs())
def test_edge_list_round_trip(g):
    buf = io.StringIO()
    write_edge_list(g, buf)
    h = read_edge_list(io.StringIO(buf.getvalue()))
    assert h.n == g.n and h.edges == g.edges


@given(connected_graphs())
def test_dimacs_round_trip(g):
    buf = io.StringIO()
    write_dimacs(g, buf)
    h = read_dimacs(io.StringIO(buf.getvalue()))
    assert h.n == g.n and h.edges == g.edges


def test_edge_list_file_round_trip(tmp_path):
    g = loads_edge_list("3\n0 1 0.5\n1 2 2.0\n")
    path = tmp_path / "g.edge_list"
    write_graph(g, path, fmt="edge_list")
    h = read_graph(path, fmt="edge_list")
    assert h.edges == g.edges


def test_edge_list_skips_comments_and_blanks():
    g = loads_edge_list("# a graph\n\n3\n# edges now\n0 1 1.0\n\n1 2 1.0\n")
    assert g.n == 3 and g.m == 2


def test_edge_list_reports_line_numbers():
    with pytest.raises(GraphFormatError) as err:
        loads_edge_list("3\n0 1 1.0\n1 2\n")
    assert err.value.line == 3
    assert "1 2" in str(err.value)


def test_edge_list_bad_header():
    with pytest.raises(GraphFormatError, match="vertex count"):
        loads_edge_list("zero\n")


def test_edge_list_empty_input():
    with pytest.raises(GraphFormatError, match="empty"):
        loads_edge_list("")


def test_edge_list_rejects_unparsable_weight():
    with pytest.raises(GraphFormatError) as err:
        loads_edge_list("2\n0 1 heavy\n")
    assert err.value.line == 2


def test_edge_list_rejects_out_of_range():
    with pytest.raises(GraphFormatError, match="outside"):
        loads_edge_list("2\n0 5 1.0\n")


def test_edge_list_rejects_duplicates_either_orientation():
    with pytest.raises(GraphFormatError, match="duplicate"):
        loads_edge_list("3\n0 1 1.0\n1 0 2.0\n1 2 1.0\n")


def test_weights_survive_exactly():
    # repr round-trip must preserve every float bit
    g = loads_edge_list("2\n0 1 0.1\n")
    buf = io.StringIO()
    write_edge_list(g, buf)
    h = read_edge_list(io.StringIO(buf.getvalue()))
    assert h.edges[0][2] == 0.1


def test_dimacs_sparse_ids_are_relabeled():
    text = "c tiny\np sp 3 2\na 10 20 1.5\na 20 77 2.5\n"
    g = read_dimacs(io.StringIO(text))
    assert g.n == 3
    assert g.labels == (10, 20, 77)
    assert g.edges == ((0, 1, 1.5), (1, 2, 2.5))


def test_dimacs_relabeling_round_trips_labels():
    text = "p sp 3 2\na 10 20 1.5\na 20 77 2.5\n"
    g = read_dimacs(io.StringIO(text))
    buf = io.StringIO()
    write_dimacs(g, buf)
    assert "a 10 20 1.5" in buf.getvalue()
    h = read_dimacs(io.StringIO(buf.getvalue()))
    assert h.edges == g.edges and h.labels == g.labels


def test_dimacs_header_errors():
    with pytest.raises(GraphFormatError, match="missing"):
        read_dimacs(io.StringIO("c nothing here\n"))
    with pytest.raises(GraphFormatError, match="before"):
        read_dimacs(io.StringIO("a 1 2 1.0\n"))
    with pytest.raises(GraphFormatError, match="second"):
        read_dimacs(io.StringIO("p sp 2 1\np sp 2 1\na 1 2 1.0\n"))


def test_dimacs_count_mismatches():
    with pytest.raises(GraphFormatError, match="header says n"):
        read_dimacs(io.StringIO("p sp 2 3\na 1 2 1.0\na 2 3 1.0\na 1 3 1.0\n"))
    with pytest.raises(GraphFormatError, match="header says m"):
        read_dimacs(io.StringIO("p sp 2 5\na 1 2 1.0\n"))


def test_dimacs_rejects_zero_id():
    with pytest.raises(GraphFormatError, match=">= 1"):
        read_dimacs(io.StringIO("p sp 2 1\na 0 1 1.0\n"))


def test_dimacs_rejects_unknown_line():
    with pytest.raises(GraphFormatError) as err:
        read_dimacs(io.StringIO("p sp 2 1\ne 1 2 1.0\n"))
    assert err.value.line == 2


def test_read_graph_unknown_format(tmp_path):
    with pytest.raises(ValueError, match="unknown graph format"):
        read_graph(tmp_path / "x", fmt="gml")
    with pytest.raises(ValueError, match="unknown graph format"):
        write_graph(loads_edge_list("2\n0 1 1.0\n"), tmp_path / "x", fmt="gml")
