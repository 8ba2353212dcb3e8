"""Dynamic integer flows.

A positive edge (i, j, +) is split into a left half at i and a right half at
j. Each unit of flow on the left half creates one more right half at j, so a
left flow of k leaves j with 1 + k right halves. Negative edges behave as in
ordinary flows. At every vertex v:

    inflow(v) + a_v = negative outflow + left halves at v + right halves at v.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import SizeError, UnsupportedLoopError
from .exactnum import prefix_sums, series_coefficient
from .graph import SignedEdge, SignedGraph, check_netflow
from . import kostant

ENUMERATION_CAP = 1_000_000


def _require_loopless(g: SignedGraph):
    if g.has_loops():
        raise UnsupportedLoopError(
            "dynamic flows are defined for loopless graphs; use the Ehrhart oracle instead")


def dyn_kpf_dp(g: SignedGraph, a: Sequence[int]) -> int:
    _require_loopless(g)
    a = check_netflow(g, a)
    V = g.n_plus_1
    if any(s < 0 for s in prefix_sums(a)):
        return 0
    # per vertex: outgoing groups (hi, kind) -> multiplicity; original right halves
    groups: list[dict] = [dict() for _ in range(V)]
    right0 = [0] * V
    for e in g.edges:
        key = (e.hi - 1, 1 if e.positive else 0)
        groups[e.lo - 1][key] = groups[e.lo - 1].get(key, 0) + 1
        if e.positive:
            right0[e.hi - 1] += 1
    glists = [sorted(d.items()) for d in groups]
    # state: (open netflow r at v, rem of later vertices..., extra right halves at v, later...)
    states: dict[tuple, int] = {tuple(a) + (0,) * V: 1}
    for v in range(V):
        width = V - v
        layer = states
        for (hi, kind), mult in glists[v]:
            pos = (hi - v) if kind == 0 else (width + hi - v)
            nxt: dict[tuple, int] = {}
            for st, c in layer.items():
                r = st[0]
                for t in range(r + 1):
                    lst = list(st)
                    lst[0] = r - t
                    lst[pos] += t
                    w = c * comb(t + mult - 1, mult - 1) if mult > 1 else c
                    key = tuple(lst)
                    nxt[key] = nxt.get(key, 0) + w
            layer = nxt
        states = {}
        for st, c in layer.items():
            s = st[0]
            if s < 0:
                continue
            R = right0[v] + st[width]
            if R == 0:
                if s != 0:
                    continue
                w = c
            else:
                w = c * comb(s + R - 1, R - 1)
            key = st[1:width] + st[width + 1:]
            states[key] = states.get(key, 0) + w
    return states.get((), 0)


def dyn_factors(g: SignedGraph):
    """Geometric factors of the dynamic generating series in prefix-sum variables.

    Negative edges give 1/(1 - x_i/x_j); positive edges give
    1/(1 - x_i - x_j), where the x_j term accounts for a right half.
    """
    V = g.n_plus_1
    order = sorted(range(len(g.edges)), key=lambda k: (g.edges[k].lo, k))
    factors = []
    for k in order:
        e = g.edges[k]
        if e.positive:
            mi = tuple(1 if x >= e.lo - 1 else 0 for x in range(V))
            mj = tuple(1 if x >= e.hi - 1 else 0 for x in range(V))
            factors.append(([(mi, 1), (mj, 1)], 1))
        else:
            factors.append(([(kostant.edge_monomial(e, V), 1)], 1))
    return factors


def dyn_kpf_series(g: SignedGraph, a: Sequence[int]) -> int:
    _require_loopless(g)
    a = check_netflow(g, a)
    target = prefix_sums(a)
    if any(s < 0 for s in target):
        return 0
    return int(series_coefficient(dyn_factors(g), target))


def dyn_kpf(g: SignedGraph, a: Sequence[int], engine: str = "dp") -> int:
    """Number of dynamic integer a-flows on a loopless signed graph."""
    if engine == "dp":
        return dyn_kpf_dp(g, a)
    if engine == "series":
        return dyn_kpf_series(g, a)
    raise ValueError(f"unknown engine {engine!r}")


@dataclass(frozen=True)
class DecompositionTerm:
    left_flows: tuple[int, ...]  # per positive edge, in canonical order
    graph: SignedGraph
    netflow: tuple[int, ...]
    count: int


def derived_graph(g: SignedGraph, a: Sequence[int], left: Sequence[int]) -> tuple[SignedGraph, tuple[int, ...]]:
    """Graph and netflow obtained by fixing the left-half flows.

    Negative edges are kept; each positive edge (i, j, +) with left flow k
    becomes 1 + k half loops at j (columns e_j), and k is removed from a_i.
    """
    a = list(a)
    edges: list[SignedEdge] = []
    it = iter(left)
    for e in g.edges:
        if e.positive:
            k = next(it)
            a[e.lo - 1] -= k
            edges += [SignedEdge(e.hi, e.hi, "+", half=True)] * (1 + k)
        else:
            edges.append(e)
    return SignedGraph(g.n_plus_1, tuple(edges)), tuple(a)


def dyn_decompose(g: SignedGraph, a: Sequence[int]) -> list[DecompositionTerm]:
    """Split the dynamic count into ordinary counts, one per left-flow choice.

    The all-zero choice is always listed; other choices only when their count
    is nonzero. Terms come in lexicographic order of the left-flow vector.
    """
    _require_loopless(g)
    a = check_netflow(g, a)
    pos = [e for e in g.edges if e.positive]
    S = prefix_sums(a)
    # left flow leaving vertices 1..k never exceeds the prefix sum at k
    bounds = []
    for e in pos:
        tail = S[e.lo - 1:]
        bounds.append(max(0, min(tail)) if tail else 0)
    terms = []

    def rec(prefix: list[int]):
        if len(prefix) == len(pos):
            h, b = derived_graph(g, a, prefix)
            cnt = kostant.kpf(h, b)
            if cnt or not any(prefix):
                terms.append(DecompositionTerm(tuple(prefix), h, b, cnt))
            return
        for t in range(bounds[len(prefix)] + 1):
            rec(prefix + [t])

    rec([])
    return terms


@dataclass(frozen=True)
class DynamicFlow:
    negative: tuple[int, ...]  # flows on negative edges, canonical order
    left: tuple[int, ...]  # left-half flows on positive edges, canonical order
    right: tuple[tuple[int, ...], ...]  # per positive edge: original right half, then extras

    def sort_key(self):
        return (self.negative, self.left, tuple(x for r in self.right for x in r))


def _compositions(total: int, parts: int):
    """Weak compositions of total into parts, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_dynamic_flows(g: SignedGraph, a: Sequence[int], limit: int | None = None) -> tuple[list[DynamicFlow], bool]:
    """All dynamic a-flows, lexicographic by (negative, left, right) flows.

    Returns (flows, truncated).
    """
    _require_loopless(g)
    a = check_netflow(g, a)
    total = dyn_kpf_dp(g, a)
    if total > ENUMERATION_CAP:
        raise SizeError(f"{total} dynamic flows exceed the enumeration cap {ENUMERATION_CAP}")
    V = g.n_plus_1
    edges = g.edges
    neg_idx = [k for k, e in enumerate(edges) if not e.positive]
    pos_idx = [k for k, e in enumerate(edges) if e.positive]
    flow = [0] * len(edges)  # negative flow or left flow
    found: list[DynamicFlow] = []

    def at_vertex(v: int, rem: list[int], right_flows: dict):
        if v == V:
            right = tuple(right_flows[k] for k in pos_idx)
            found.append(DynamicFlow(tuple(flow[k] for k in neg_idx),
                                     tuple(flow[k] for k in pos_idx), right))
            return
        out = [k for k, e in enumerate(edges) if e.lo == v + 1]
        incoming_pos = [k for k in pos_idx if edges[k].hi == v + 1]

        def choose(idx: int, r: int):
            if idx == len(out):
                slots = [(k, 1 + flow[k]) for k in incoming_pos]
                R = sum(n for _, n in slots)
                if R == 0:
                    if r == 0:
                        at_vertex(v + 1, rem, right_flows)
                    return
                for comp in _compositions(r, R):
                    pos = 0
                    for k, n in slots:
                        right_flows[k] = comp[pos:pos + n]
                        pos += n
                    at_vertex(v + 1, rem, right_flows)
                return
            k = out[idx]
            e = edges[k]
            for t in range(r + 1):
                flow[k] = t
                if not e.positive:
                    rem[e.hi - 1] += t
                choose(idx + 1, r - t)
                if not e.positive:
                    rem[e.hi - 1] -= t
            flow[k] = 0

        if rem[v] >= 0:
            choose(0, rem[v])

    at_vertex(0, list(a), {})
    found.sort(key=DynamicFlow.sort_key)
    truncated = limit is not None and len(found) > limit
    return (found[:limit] if limit is not None else found), truncated


def dynamic_balance_ok(g: SignedGraph, a: Sequence[int], f: DynamicFlow) -> bool:
    """Check the dynamic conservation law at every vertex."""
    V = g.n_plus_1
    inflow = [0] * V
    out = [0] * V
    neg = iter(f.negative)
    pos = iter(zip(f.left, f.right))
    for e in g.edges:
        if e.positive:
            left, right = next(pos)
            if len(right) != 1 + left or min(right + (left,)) < 0:
                return False
            out[e.lo - 1] += left
            out[e.hi - 1] += sum(right)
        else:
            b = next(neg)
            if b < 0:
                return False
            out[e.lo - 1] += b
            inflow[e.hi - 1] += b
    return all(inflow[v] + a[v] == out[v] for v in range(V))
