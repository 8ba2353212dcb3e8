import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from flowpoly.errors import (
    ConnectivityError, DegenerateGraphError, NotReducibleError, PreconditionError,
    UnsupportedLoopError, WrongTheoremError,
)
from flowpoly.graph import edge, flow_is_valid, in_out_edges
from flowpoly.kostant import kpf
from flowpoly.special import FamilySpec, family_graph
from flowpoly.subdivision import (
    NoncrossingTree, eliminate_vertex, enumerate_trees, reassign_flow, reduce, subdivide_full, tree_count,
)
from flowpoly.volume import indegree_netflow

from conftest import SIGNED4, graph, negative_graphs, signed_graphs

# H with four edges (1,2,-), #I_3 = 3, #I_4 = 3 and three outgoing edges at vertex 2
ELIM_NEGATIVE = graph(4, *([(1, 2, "-")] * 4), (1, 3, "-"), (1, 4, "-"), (2, 3, "-"), (2, 3, "-"),
              (2, 4, "-"), (3, 4, "-"))
ELIM_SIGNED = graph(4, (1, 2, "-"), (1, 2, "-"), (1, 2, "-"), (1, 2, "+"), (1, 3, "-"), (1, 3, "+"),
              (2, 3, "-"), (2, 4, "-"), (2, 4, "+"), (3, 4, "-"))


def test_tree_counts():
    trees = enumerate_trees(4, 5)
    assert len(trees) == 35 == tree_count(4, 5)
    assert (1, 0, 1, 1, 0) in [t.composition for t in trees]
    assert [t.composition for t in enumerate_trees(1, 4)] == [(0, 0, 0, 0)]


def test_tree_edges_are_noncrossing():
    for t in enumerate_trees(4, 3):
        es = t.edges()
        assert len(es) == t.left + t.right - 1
        assert not any(p1 < p2 and q1 > q2 for p1, q1 in es for p2, q2 in es)


def test_bad_composition():
    with pytest.raises(ValueError):
        NoncrossingTree(3, 2, (1, 0))


def test_reduction_rules():
    g = graph(3, (1, 2, "-"), (2, 3, "-"))
    red = reduce(g, 0, 1)
    assert red.rule == "R1" and red.new_edge == edge(1, 3, "-")
    assert red.g1.edges == (edge(2, 3, "-"), edge(1, 3, "-"))
    assert red.g2.edges == (edge(1, 2, "-"), edge(1, 3, "-"))
    assert red.g3.edges == (edge(1, 3, "-"),)
    assert reduce(graph(2, (1, 2, "-"), (1, 2, "+")), 0, 1).new_edge == edge(1, 1, "+")
    assert reduce(graph(2, (1, 2, "-"), (2, 2, "+")), 0, 1).new_edge == edge(1, 2, "+")
    assert reduce(graph(3, (1, 2, "-"), (2, 3, "+")), 0, 1).rule == "R2"
    with pytest.raises(NotReducibleError):
        reduce(graph(3, (1, 2, "-"), (1, 3, "-")), 0, 1)


def test_negative_vertex_elimination():
    theta_out = [8, 6, 7]
    results = dict((t.composition, h) for t, h in eliminate_vertex(ELIM_NEGATIVE, 2, None, theta_out))
    h = results[(1, 0, 2)]
    assert len(in_out_edges(h, 3)[0]) == 5
    assert len(in_out_edges(h, 4)[0]) == 4


def test_signed_vertex_elimination():
    inc, out, _ = in_out_edges(ELIM_SIGNED, 2)
    assert (len(inc), len(out)) == (3, 4)
    theta_out = [3, 7, 8, 6]  # (1,2,+), (2,4,-), (2,4,+), (2,3,-)
    results = {t.signed_composition(): h for t, h in eliminate_vertex(ELIM_SIGNED, 2, None, theta_out)}
    h = results["(1+,0-,1+,0-)"]
    assert len(in_out_edges(ELIM_SIGNED, 4)[1]) == 1
    assert len(in_out_edges(h, 4)[1]) == 2


def test_outcome_count():
    g = graph(4, (1, 2, "-"), (1, 2, "-"), (2, 3, "-"), (2, 4, "+"), (2, 4, "-"))
    assert len(eliminate_vertex(g, 2)) == 3


def test_theta_must_permute():
    with pytest.raises(ValueError):
        eliminate_vertex(ELIM_NEGATIVE, 2, None, [8, 6, 6])
    with pytest.raises(PreconditionError):
        eliminate_vertex(graph(3, (1, 2, "-"), (2, 2, "+"), (2, 3, "-")), 2)


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 1), (5, 2), (6, 10)])
def test_type_a_leaves(n, expected):
    g = family_graph(FamilySpec("A", n))
    assert subdivide_full(g, (1,) + (0,) * (n - 2) + (-1,)).leaves == expected


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 2), (4, 32)])
def test_signed_leaves(n, expected):
    g = family_graph(FamilySpec("D", n))
    assert subdivide_full(g, (2,) + (0,) * (n - 1)).leaves == expected


def test_signed4_leaves_and_trails():
    res = subdivide_full(SIGNED4, (2, 0, 0, 0), count_only=False)
    assert res.leaves == 5 == len(res.trails)
    assert all([i for i, _ in trail] == [2, 3, 4] for trail in res.trails)


def test_subdivision_preconditions():
    with pytest.raises(PreconditionError):
        subdivide_full(SIGNED4, (1, 0, 0, 0))
    with pytest.raises(WrongTheoremError):
        subdivide_full(SIGNED4, (1, 0, 0, -1))
    with pytest.raises(ConnectivityError):
        subdivide_full(graph(3, (1, 2, "-")), (1, 0, -1))
    with pytest.raises(DegenerateGraphError):
        subdivide_full(graph(3, (1, 3, "-"), (2, 3, "-")), (1, 0, -1))
    with pytest.raises(UnsupportedLoopError):
        subdivide_full(graph(2, (1, 2, "-"), (2, 2, "+")), (2, 0))


@settings(max_examples=30, deadline=None)
@given(negative_graphs(max_vertices=5, extra_max=4), st.integers(0, 2**32))
def test_type_a_leaves_match_kpf_and_orders(g, seed):
    a = (1,) + (0,) * (g.n_plus_1 - 2) + (-1,)
    canonical = subdivide_full(g, a).leaves
    assert canonical == kpf(g, indegree_netflow(g, last_included=False))
    rng = random.Random(seed)
    assert all(subdivide_full(g, a, rng=rng).leaves == canonical for _ in range(10))


@settings(max_examples=20, deadline=None)
@given(signed_graphs(max_vertices=4, extra_max=3), st.integers(0, 2**32))
def test_signed_leaves_orders(g, seed):
    a = (2,) + (0,) * (g.n_plus_1 - 1)
    canonical = subdivide_full(g, a).leaves
    rng = random.Random(seed)
    assert all(subdivide_full(g, a, rng=rng).leaves == canonical for _ in range(10))


def _reducible_pairs(g):
    pairs = []
    for k1 in range(len(g.edges)):
        for k2 in range(k1 + 1, len(g.edges)):
            try:
                reduce(g, k1, k2)
            except NotReducibleError:
                continue
            pairs.append((k1, k2))
    return pairs


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_flow_reassignment(data):
    g = data.draw(signed_graphs(max_vertices=4, extra_max=4, loops=True))
    pairs = _reducible_pairs(g)
    if not pairs:
        return
    k1, k2 = data.draw(st.sampled_from(pairs))
    red = reduce(g, k1, k2)
    flow = [Fraction(data.draw(st.integers(0, 6)), data.draw(st.integers(1, 3))) for _ in g.edges]
    a = [sum(x * c[r] for x, c in zip(flow, g.columns())) for r in range(g.n_plus_1)]
    which, moved = reassign_flow(g, red, flow)
    target = red.g1 if which == 1 else red.g2
    assert flow_is_valid(target, a, moved)
    if flow[red.first] == flow[red.second]:
        # the flow also lies on the common face g3
        trimmed = [x for k, x in enumerate(moved[:-1]) if target.edges[k] in red.g3.edges or x != 0]
        assert moved[:-1].count(0) >= 1 or trimmed
