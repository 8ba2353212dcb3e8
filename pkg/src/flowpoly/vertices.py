"""Cycles, the vertex criterion and vertex enumeration for flow polytopes.

A flow is a vertex exactly when the columns of its support are linearly
independent, which for signed graphs means the support holds no even cycle.
Cycle parity is also computed combinatorially from turns, so the two views
can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidCycleError, InvalidFlowError, SizeError
from .graph import SignedEdge, SignedGraph, check_netflow, flow_is_valid
from . import linalg

DEFAULT_MAX_EDGES = 20


def incidence_sign(e: SignedEdge, v: int) -> int:
    """+1 or -1: how edge e meets vertex v."""
    if v not in (e.lo, e.hi):
        raise ValueError(f"{e} does not touch {v}")
    if e.positive:
        return 1
    return 1 if v == e.lo else -1


@dataclass(frozen=True)
class CyclePath:
    """Closed walk given as (edge index, start vertex) traversals."""

    steps: tuple[tuple[int, int], ...]

    def ends(self, g: SignedGraph) -> list[tuple[int, int]]:
        out = []
        for k, start in self.steps:
            e = g.edges[k]
            if start not in (e.lo, e.hi):
                raise InvalidCycleError(f"edge {e} does not start at {start}")
            out.append((start, e.hi if start == e.lo else e.lo))
        return out

    def edge_indices(self) -> list[int]:
        return [k for k, _ in self.steps]


def cycle_parity(g: SignedGraph, cycle: CyclePath) -> str:
    """'even' or 'odd' according to the number of turns of the closed walk.

    A turn is a vertex where two consecutive traversals meet with the same
    incidence sign.
    """
    if not cycle.steps:
        raise InvalidCycleError("empty cycle")
    if any(not 0 <= k < len(g.edges) for k, _ in cycle.steps):
        raise InvalidCycleError("edge index out of range")
    ends = cycle.ends(g)
    turns = 0
    n = len(ends)
    for t in range(n):
        here = ends[t][1]
        if ends[(t + 1) % n][0] != here:
            raise InvalidCycleError(f"step {t} ends at {here}, next starts at {ends[(t + 1) % n][0]}")
        e_now = g.edges[cycle.steps[t][0]]
        e_next = g.edges[cycle.steps[(t + 1) % n][0]]
        if incidence_sign(e_now, here) == incidence_sign(e_next, here):
            turns += 1
    return "even" if turns % 2 == 0 else "odd"


def has_even_cycle(g: SignedGraph, edge_subset: Iterable[int]) -> bool:
    """True iff the chosen edge columns are linearly dependent."""
    cols = [g.columns()[k] for k in edge_subset]
    return not linalg.columns_independent(cols)


def support(flow: Sequence) -> list[int]:
    return [k for k, x in enumerate(flow) if x != 0]


def is_vertex(g: SignedGraph, a: Sequence[int], flow: Sequence) -> bool:
    a = check_netflow(g, a)
    if not flow_is_valid(g, a, flow):
        raise InvalidFlowError(f"{tuple(flow)} is not a nonnegative {a}-flow on {g}")
    return not has_even_cycle(g, support(flow))


def enumerate_vertices_general(g: SignedGraph, a: Sequence[int],
                               max_edges: int = DEFAULT_MAX_EDGES) -> list[tuple[Fraction, ...]]:
    """Vertices by exhaustive search over independent edge subsets.

    Each independent subset whose unique solution is strictly positive
    gives one vertex. Results are sorted lexicographically.
    """
    a = check_netflow(g, a)
    N = len(g.edges)
    if N > max_edges:
        raise SizeError(f"{N} edges exceed the search bound {max_edges}")
    cols = g.columns()
    r = linalg.rank(g.incidence_matrix()) if N else 0
    found: set[tuple[Fraction, ...]] = set()
    if all(x == 0 for x in a):
        found.add(tuple(Fraction(0) for _ in range(N)))

    def rec(start: int, chosen: list[int]):
        if chosen:
            x = linalg.solve_unique([cols[k] for k in chosen], a)
            if x is not None and all(v > 0 for v in x):
                flow = [Fraction(0)] * N
                for k, v in zip(chosen, x):
                    flow[k] = v
                found.add(tuple(flow))
        if len(chosen) == r:
            return
        for k in range(start, N):
            cand = chosen + [k]
            if linalg.columns_independent([cols[j] for j in cand]):
                rec(k + 1, cand)

    rec(0, [])
    return sorted(found)


def _increasing_paths(g: SignedGraph, start: int, banned: frozenset) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All increasing negative paths from start (the empty one included).

    Returns (vertices after start, edge indices). Vertices in ``banned`` are
    avoided.
    """
    out_edges: dict[int, list[int]] = {}
    for k, e in enumerate(g.edges):
        if not e.positive and not e.is_loop:
            out_edges.setdefault(e.lo, []).append(k)
    paths = []

    def rec(v: int, verts: tuple, ks: tuple):
        paths.append((verts, ks))
        for k in out_edges.get(v, ()):
            w = g.edges[k].hi
            if w not in banned:
                rec(w, verts + (w,), ks + (k,))

    rec(start, (), ())
    return paths


def enumerate_vertices_2e1(g: SignedGraph) -> list[tuple[int, ...]]:
    """Vertices of the flow polytope with netflow (2, 0, ..., 0), built from support shapes.

    Every vertex is a tail path from vertex 1 to some s carrying flow 2,
    followed by one of:

    * two vertex-disjoint increasing paths from s closed by a positive edge
      between their ends (one path may be empty, then the positive edge
      starts at s), flow 1 everywhere;
    * a loop at s with flow 1, or a half loop at s with flow 2.

    Paths only use negative edges and increase in vertex label.
    """
    N = len(g.edges)
    pos_between: dict[tuple[int, int], list[int]] = {}
    loops: dict[int, list[tuple[int, int]]] = {}
    for k, e in enumerate(g.edges):
        if e.is_loop:
            loops.setdefault(e.lo, []).append((k, 2 if e.half else 1))
        elif e.positive:
            pos_between.setdefault((e.lo, e.hi), []).append(k)
    found: set[tuple[int, ...]] = set()
    if g.n_plus_1 == 0:
        return []
    for tail_verts, tail_ks in _increasing_paths(g, 1, frozenset()):
        s = tail_verts[-1] if tail_verts else 1
        used = frozenset((1,) + tail_verts)
        base = [0] * N
        for k in tail_ks:
            base[k] = 2
        for k, val in loops.get(s, ()):
            flow = base[:]
            flow[k] = val
            found.add(tuple(flow))
        branches = _increasing_paths(g, s, used)
        for i1, (v1, k1) in enumerate(branches):
            end1 = v1[-1] if v1 else s
            for v2, k2 in branches[i1:]:
                if set(v1) & set(v2):
                    continue
                end2 = v2[-1] if v2 else s
                if end1 == end2:
                    continue
                key = (min(end1, end2), max(end1, end2))
                for kp in pos_between.get(key, ()):
                    flow = base[:]
                    for k in k1 + k2:
                        flow[k] = 1
                    flow[kp] = 1
                    found.add(tuple(flow))
    return sorted(found)


def path_vertices(g: SignedGraph) -> list[tuple[int, ...]]:
    """Vertices for netflow e_1 - e_last on an all-negative graph: unit flows on 1 -> last paths."""
    last = g.n_plus_1
    out = []
    for verts, ks in _increasing_paths(g, 1, frozenset()):
        if verts and verts[-1] == last:
            flow = [0] * len(g.edges)
            for k in ks:
                flow[k] = 1
            out.append(tuple(flow))
    return sorted(out)


def d_vertex_count_by_type(n: int) -> tuple[int, int, int]:
    """The three support-type counts for complete type D graphs on n+1 vertices.

    Type I: a first edge (1, i, -) followed by a smaller instance; type II:
    two paths joined by a positive edge; type III: one path closed by a
    positive edge back to 1.
    """
    t1 = sum(3 ** (n + 1 - i) - 2 ** (n + 1 - i) for i in range(2, n + 1))
    t2 = sum(3 ** (i - 2) * 2 ** (j - i - 1) for i in range(2, n + 2) for j in range(i + 1, n + 2))
    t3 = sum(2 ** (i - 2) for i in range(2, n + 2))
    return t1, t2, t3
