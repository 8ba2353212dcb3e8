"""Noncrossing trees, reduction rules and recursive subdivision.

Eliminating a vertex i with zero netflow replaces every edge at i by edges
that bypass i. The ways to do this are indexed by noncrossing bipartite trees
between the incoming edges (left side) and outgoing edges (right side) of i.
Eliminating the inner vertices one after another cuts the flow polytope into
unimodular simplices; counting the full-dimensional pieces gives the
normalized volume.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .errors import (
    ConnectivityError,
    DegenerateGraphError,
    NotReducibleError,
    PreconditionError,
    UnsupportedLoopError,
    WrongTheoremError,
)
from .graph import NEG, POS, SignedEdge, SignedGraph, check_netflow, in_out_edges, loops_at, polytope_dimension


@dataclass(frozen=True)
class NoncrossingTree:
    """Weak composition of left-1 into right parts.

    Right vertex q is joined to the block of consecutive left vertices that
    starts where block q-1 ended; block q has composition[q] + 1 vertices.
    ``plus`` holds the (0-based) right positions that are positive edges.
    """

    left: int
    right: int
    composition: tuple[int, ...]
    plus: frozenset = frozenset()

    def __post_init__(self):
        if self.left and self.right:
            if len(self.composition) != self.right or sum(self.composition) != self.left - 1:
                raise ValueError(f"bad composition {self.composition} for sizes {self.left}, {self.right}")
            if min(self.composition) < 0:
                raise ValueError("composition parts must be nonnegative")
        if any(not 0 <= q < self.right for q in self.plus):
            raise ValueError("sign positions out of range")

    def edges(self) -> list[tuple[int, int]]:
        """(left position, right position) pairs, 0-based."""
        out = []
        start = 0
        for q, b in enumerate(self.composition):
            for p in range(start, start + b + 1):
                out.append((p, q))
            start += b
        return out

    def signed_composition(self) -> str:
        if not self.composition:
            return "()"
        parts = [f"{b}{'+' if q in self.plus else '-'}" for q, b in enumerate(self.composition)]
        return "(" + ",".join(parts) + ")"


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_trees(left: int, right: int, plus: Sequence[int] = ()) -> list[NoncrossingTree]:
    """All noncrossing trees on the given sides, in lexicographic order.

    If either side is empty there is exactly one (edgeless) tree.
    """
    plus = frozenset(plus)
    if left == 0 or right == 0:
        return [NoncrossingTree(left, right, (), plus)]
    return [NoncrossingTree(left, right, c, plus) for c in _compositions(left - 1, right)]


def tree_count(left: int, right: int) -> int:
    if left == 0 or right == 0:
        return 1
    return comb(left + right - 2, left - 1)


def combine_edges(e_in: SignedEdge, e_out: SignedEdge, i: int) -> SignedEdge:
    """Edge whose root is the sum of the roots of e_in = (r, i, -) and e_out.

    e_out is either (i, s, +/-) or (t, i, +); the latter may give a loop.
    """
    r = e_in.lo
    if e_out.lo == i and e_out.hi != i:
        return SignedEdge(r, e_out.hi, e_out.sign)
    if e_out.hi == i and e_out.positive and not e_out.is_loop:
        t = e_out.lo
        return SignedEdge(min(r, t), max(r, t), POS)
    if e_out.is_loop and e_out.lo == i and not e_out.half:
        return SignedEdge(r, i, POS)
    raise NotReducibleError(f"cannot combine {e_in} with {e_out} at {i}")


@dataclass(frozen=True)
class Reduction:
    rule: str
    g1: SignedGraph
    g2: SignedGraph
    g3: SignedGraph
    first: int  # edge index dropped in g1
    second: int  # edge index dropped in g2
    new_edge: SignedEdge


def _classify(g: SignedGraph, k1: int, k2: int):
    """Return (rule, first, second, shared vertex); g1 drops first, g2 drops second."""
    for kx, ky in ((k1, k2), (k2, k1)):
        x, y = g.edges[kx], g.edges[ky]
        if x.positive:
            continue
        a, i = x.lo, x.hi  # x = (a, i, -)
        if y.is_loop:
            if y.lo == i and not y.half:
                return "R6", kx, ky, i
        elif y.lo == i:
            return ("R2" if y.positive else "R1"), kx, ky, i
        elif y.hi == i and y.positive:
            if y.lo > a:
                return "R3", kx, ky, i
            # the positive edge is dropped in g1
            return ("R5" if y.lo == a else "R4"), ky, kx, i
    raise NotReducibleError(f"edges {g.edges[k1]} and {g.edges[k2]} match no reduction rule")


def reduce(g: SignedGraph, k1: int, k2: int) -> Reduction:
    """Apply the reduction rule matching edges k1 and k2.

    g1 drops the first edge of the rule's pair, g2 the second, g3 both; each
    gets the new edge appended.
    """
    if k1 == k2:
        raise NotReducibleError("need two distinct edges")
    rule, first, second, i = _classify(g, k1, k2)
    x, y = g.edges[first], g.edges[second]
    e_in, e_out = (x, y) if (not x.positive and x.hi == i and not x.is_loop) else (y, x)
    new = combine_edges(e_in, e_out, i)

    def without(*ks):
        return g.with_edges([e for k, e in enumerate(g.edges) if k not in ks] + [new])

    return Reduction(rule, without(first), without(second), without(first, second), first, second, new)


def reassign_flow(g: SignedGraph, red: Reduction, flow: Sequence) -> tuple[int, list]:
    """Move a flow on g to g1 or g2: the new edge carries min(p, q).

    Returns (1 or 2, flow on that graph) with edges ordered as in the graph.
    """
    p, q = Fraction(flow[red.first]), Fraction(flow[red.second])
    m = min(p, q)
    drop = red.first if p <= q else red.second
    keep = red.second if drop == red.first else red.first
    out = []
    for k in range(len(g.edges)):
        if k == drop:
            continue
        out.append(Fraction(flow[k]) - m if k == keep else Fraction(flow[k]))
    out.append(m)
    return (1 if drop == red.first else 2), out


def eliminate_vertex(g: SignedGraph, i: int, theta_in: Sequence[int] | None = None,
                     theta_out: Sequence[int] | None = None) -> list[tuple[NoncrossingTree, SignedGraph]]:
    """All graphs obtained by bypassing vertex i, one per noncrossing tree.

    theta_in / theta_out order the incoming / outgoing edge indices (default:
    canonical order). Vertex i stays in the vertex range but ends up isolated,
    so labels of the other vertices do not move.
    """
    if loops_at(g, i):
        raise PreconditionError(f"vertex {i} carries a loop")
    inc, out, _ = in_out_edges(g, i)
    inc = list(theta_in) if theta_in is not None else inc
    out = list(theta_out) if theta_out is not None else out
    if sorted(inc) != sorted(in_out_edges(g, i)[0]) or sorted(out) != sorted(in_out_edges(g, i)[1]):
        raise ValueError("theta orders must permute the incident edges")
    rest = [e for k, e in enumerate(g.edges) if e.lo != i and e.hi != i]
    plus = [q for q, k in enumerate(out) if g.edges[k].positive]
    results = []
    for tree in enumerate_trees(len(inc), len(out), plus):
        if not inc or not out:
            results.append((tree, g.with_edges(rest)))
            continue
        new = [combine_edges(g.edges[inc[p]], g.edges[out[q]], i) for p, q in tree.edges()]
        results.append((tree, g.with_edges(rest + new)))
    return results


@dataclass
class SubdivisionResult:
    leaves: int
    dimension: int
    kind: str  # 'type-a' or 'signed'
    lower_dimensional: int = 0
    trails: list | None = None


def _mode(g: SignedGraph, a: tuple[int, ...]) -> str:
    V = g.n_plus_1
    if V >= 2 and a == (1,) + (0,) * (V - 2) + (-1,):
        return "type-a"
    if V >= 1 and a == (2,) + (0,) * (V - 1):
        return "signed"
    raise PreconditionError("subdivision needs netflow e_1 - e_last or 2 e_1")


def _check_pre(g: SignedGraph, mode: str):
    if not g.is_connected():
        raise ConnectivityError("graph must be connected")
    if mode == "type-a":
        if not g.all_negative():
            raise WrongTheoremError("netflow e_1 - e_last needs an all-negative graph")
        for v in range(2, g.n_plus_1):
            if g.indegree(v) < 1:
                raise DegenerateGraphError(f"vertex {v} has no incoming edge")
    elif g.has_loops():
        raise UnsupportedLoopError("signed subdivision needs a loopless graph")


def _leaf_size(g: SignedGraph, mode: str) -> int:
    """Edge count of a fully reduced graph, checked to have the expected shape."""
    V = g.n_plus_1
    for e in g.edges:
        if mode == "type-a":
            assert (e.lo, e.hi, e.sign) == (1, V, NEG), e
        else:
            assert e.is_loop and e.lo == 1 and not e.half, e
    return len(g.edges)


def subdivide_full(g: SignedGraph, a: Sequence[int], count_only: bool = True,
                   rng: random.Random | None = None, memo: bool | None = None) -> SubdivisionResult:
    """Count the full-dimensional simplices of the recursive subdivision.

    Type A (netflow e_1 - e_last) eliminates vertices 2..n, the signed case
    (netflow 2 e_1) eliminates 2..n+1. With ``rng`` the incident-edge orders
    are shuffled at every elimination. Memoization on the residual edge
    multiset is used only when counting with canonical orders.
    """
    a = check_netflow(g, a)
    mode = _mode(g, a)
    _check_pre(g, mode)
    d = polytope_dimension(g, a)
    if d is None:
        return SubdivisionResult(0, -1, mode, 0, None if count_only else [])
    last = g.n_plus_1 - 1 if mode == "type-a" else g.n_plus_1
    if memo is None:
        memo = count_only and rng is None
    cache: dict = {}
    trails: list | None = None if count_only else []
    lower = 0

    def rec(h: SignedGraph, i: int, trail: list) -> int:
        nonlocal lower
        if i > last:
            size = _leaf_size(h, mode)
            if size - 1 == d:
                if trails is not None:
                    trails.append(list(trail))
                return 1
            lower += 1
            return 0
        if memo:
            key = (i, h.sorted_key())
            if key in cache:
                return cache[key]
        inc, out, _ = in_out_edges(h, i)
        if rng is not None:
            rng.shuffle(inc)
            rng.shuffle(out)
        total = 0
        for tree, child in eliminate_vertex(h, i, inc, out):
            trail.append((i, tree))
            total += rec(child, i + 1, trail)
            trail.pop()
        if memo:
            cache[key] = total
        return total

    leaves = rec(g, 2, [])
    return SubdivisionResult(leaves, d, mode, lower, trails)
