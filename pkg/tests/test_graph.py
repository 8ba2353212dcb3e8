import pytest
from hypothesis import given, settings

from flowpoly.errors import ArityError, BoundaryNetflowError, GraphParseError, InvalidEdgeError
from flowpoly.graph import (
    SignedEdge, SignedGraph, dimension, edge, effective_dimension, in_out_edges, loops_at,
    parse_graph, parse_netflow, rank, root_vector,
)
from flowpoly.special import FamilySpec, family_graph

from conftest import LOOP_GRAPH, TWO_EDGE, graph, negative_graphs, signed_graphs


def test_root_vectors():
    assert root_vector(edge(1, 3, "-"), 3) == (1, 0, -1)
    assert root_vector(edge(1, 2, "+"), 3) == (1, 1, 0)
    assert root_vector(edge(2, 2, "+"), 3) == (0, 2, 0)
    assert root_vector(edge(2, 2, "h"), 3) == (0, 1, 0)


@pytest.mark.parametrize("args", [(2, 1, "-"), (1, 1, "-"), (0, 1, "-"), (1, 2, "*")])
def test_bad_edges(args):
    with pytest.raises(InvalidEdgeError):
        SignedEdge(*args)


def test_half_only_on_loops():
    with pytest.raises(InvalidEdgeError):
        SignedEdge(1, 2, "+", half=True)


def test_incidence_matrix_loop_graph():
    cols = LOOP_GRAPH.columns()
    assert cols == [(1, -1, 0), (1, 0, -1), (1, 1, 0), (0, 2, 0), (0, 1, -1)]
    assert LOOP_GRAPH.incidence_matrix()[1] == [-1, 0, 1, 2, 1]


def test_incidence_matrix_small():
    assert SignedGraph(3).incidence_matrix() == [[], [], []]
    k3 = family_graph(FamilySpec("A", 3))
    assert k3.columns() == [(1, -1, 0), (1, 0, -1), (0, 1, -1)]


def test_dimension_examples():
    assert dimension(family_graph(FamilySpec("A", 4)), (1, 0, 0, -1)) == 3
    assert dimension(TWO_EDGE, (1, 0)) == 0
    assert dimension(family_graph(FamilySpec("D", 4)), (2, 0, 0, 0)) == 8


def test_dimension_empty_and_boundary():
    assert dimension(TWO_EDGE, (-1, 0)) is None
    k3 = family_graph(FamilySpec("A", 3))
    with pytest.raises(BoundaryNetflowError):
        dimension(k3, (1, -1, 0))
    d, h = effective_dimension(k3, (1, -1, 0))
    assert d == 0 and len(h.edges) == 1


def test_dimension_arity():
    with pytest.raises(ArityError):
        dimension(TWO_EDGE, (1, 0, 0))


def test_in_out_edges():
    g = graph(4, (1, 2, "-"), (1, 2, "-"), (1, 2, "-"), (1, 2, "+"), (1, 3, "-"), (1, 3, "+"),
              (2, 3, "-"), (2, 4, "-"), (2, 4, "+"), (3, 4, "-"))
    inc, out, out_pos = in_out_edges(g, 2)
    assert (len(inc), len(out)) == (3, 4)
    assert out_pos == [3, 8]
    looped = graph(3, (1, 2, "-"), (2, 2, "+"), (2, 3, "-"))
    assert in_out_edges(looped, 2) == ([0], [2], [])
    assert loops_at(looped, 2) == [1]
    assert in_out_edges(graph(3, (1, 2, "-")), 3) == ([], [], [])


def test_parse_examples():
    assert parse_graph("vertices 2\nedge 1 2 -\nedge 1 2 +") == TWO_EDGE
    assert parse_graph("# comment\nvertices 1\n\nedge 1 1 +\n") == graph(1, (1, 1, "+"))
    assert parse_netflow("1, 3,-2") == (1, 3, -2)


@pytest.mark.parametrize("text,line", [
    ("edge 2 1 -", 1),
    ("vertices 2\nedge 2 1 -", 2),
    ("vertices 2\nedge 1 1 -", 2),
    ("vertices 2\nedge 1 3 -", 2),
    ("vertices 2\nedge 1 2 ?", 2),
    ("vertices 2\nedge 1 2 h", 2),
    ("vertices 2\nvertices 3", 2),
    ("vertices x", 1),
    ("vertices 2\nnode 1", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.line == line


def test_negative_loop_message():
    with pytest.raises(GraphParseError, match="loops are always positive"):
        parse_graph("vertices 1\nedge 1 1 -")


@settings(max_examples=100, deadline=None)
@given(signed_graphs(max_vertices=6, extra_max=6, loops=True))
def test_text_round_trip(g):
    assert parse_graph(g.to_text()) == g


@pytest.mark.parametrize("fam", "ABCD")
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_family_round_trip(fam, n):
    g = family_graph(FamilySpec(fam, n))
    assert parse_graph(g.to_text()) == g


@settings(max_examples=100, deadline=None)
@given(negative_graphs(max_vertices=8, extra_max=6))
def test_rank_negative_connected(g):
    assert rank(g) == g.n_plus_1 - 1


@settings(max_examples=100, deadline=None)
@given(signed_graphs(max_vertices=8, extra_max=6))
def test_rank_signed_connected(g):
    assert rank(g) == g.n_plus_1


@settings(max_examples=100, deadline=None)
@given(signed_graphs(max_vertices=6, extra_max=6, loops=True))
def test_column_sums_and_round_trip(g):
    for e, col in zip(g.edges, g.columns()):
        assert col == root_vector(e, g.n_plus_1)
        if e.is_loop:
            assert sum(col) == (1 if e.half else 2)
        else:
            assert sum(col) == (2 if e.positive else 0)


def test_connectivity_counts_isolated_vertices():
    assert not graph(3, (1, 2, "-")).is_connected()
    assert graph(3, (1, 2, "-"), (2, 3, "+")).is_connected()
