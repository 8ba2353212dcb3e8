"""Counting integer flows: Kostant partition function and Ehrhart functions.

Two independent engines count nonnegative integer solutions of M_G b = a:

* ``dp``: sweep the vertices in increasing order. Every edge is decided at
  its smaller endpoint; the state is the netflow still to be balanced at the
  vertices not yet reached. Parallel edges are handled together with a
  binomial weight.
* ``series``: extract a coefficient from the product of geometric series
  of the edge monomials. The substitution x_i = y_i y_{i+1} ... y_n turns
  x^v into y^{prefix sums of v}; every edge monomial then has nonnegative
  exponents and the target exponent is the prefix-sum vector of a.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .errors import FitError, QuasiPolynomialWarning
from .exactnum import RationalPolynomial, interpolate, prefix_sums, series_coefficient
from .graph import SignedEdge, SignedGraph, check_netflow, dimension

ENGINES = ("dp", "series")


def _edge_groups(g: SignedGraph):
    """Per vertex v (0-based): sorted list of ((coef_at_v, hi_index, delta), multiplicity).

    ``delta`` is what one unit of flow adds to the open netflow at hi.
    """
    groups: list[dict] = [dict() for _ in range(g.n_plus_1)]
    for e in g.edges:
        v = e.lo - 1
        if e.is_loop:
            key = (1 if e.half else 2, -1, 0)
        elif e.positive:
            key = (1, e.hi - 1, -1)
        else:
            key = (1, e.hi - 1, 1)
        groups[v][key] = groups[v].get(key, 0) + 1
    return [sorted(d.items()) for d in groups]


def _prefixes_nonnegative(values: Sequence[int], start: int = 0) -> bool:
    s = 0
    for i, x in enumerate(values):
        s += x
        if s < 0 and i >= start:
            return False
    return True


def kpf_dp(g: SignedGraph, a: Sequence[int]) -> int:
    a = check_netflow(g, a)
    if not _prefixes_nonnegative(a):
        return 0
    groups = _edge_groups(g)
    states: dict[tuple, int] = {a: 1}
    for v in range(g.n_plus_1):
        layer: dict[tuple, int] = {}
        for st, c in states.items():
            if st[0] >= 0:
                key = (st[0],) + st[1:]
                layer[key] = layer.get(key, 0) + c
        glist = groups[v]
        for gi, ((coef, hi, delta), mult) in enumerate(glist):
            last = gi == len(glist) - 1
            pos = hi - v  # position of hi inside (r, rest...)
            nxt: dict[tuple, int] = {}
            for st, c in layer.items():
                r = st[0]
                if last:
                    if r % coef:
                        continue
                    choices = (r // coef,)
                else:
                    choices = range(r // coef + 1)
                for t in choices:
                    w = c * comb(t + mult - 1, mult - 1) if mult > 1 else c
                    lst = list(st)
                    lst[0] = r - coef * t
                    if delta and t:
                        lst[pos] += delta * t
                        # Edges not decided yet start at v or later, so prefix
                        # sums from v on must stay nonnegative. Larger t only
                        # lowers them further.
                        if delta < 0 and not _prefixes_nonnegative(lst, pos):
                            break
                    key = tuple(lst)
                    nxt[key] = nxt.get(key, 0) + w
            layer = nxt
        states = {}
        for st, c in layer.items():
            if st[0] == 0:
                states[st[1:]] = states.get(st[1:], 0) + c
        if not states:
            return 0
    return states.get((), 0)


def edge_monomial(e: SignedEdge, n_plus_1: int) -> tuple[int, ...]:
    """Exponent of an edge's monomial after the prefix-sum substitution."""
    m = [0] * n_plus_1
    lo, hi = e.lo - 1, e.hi - 1
    if e.is_loop:
        for k in range(lo, n_plus_1):
            m[k] = 1 if e.half else 2
    else:
        for k in range(lo, hi):
            m[k] = 1
        if e.positive:
            for k in range(hi, n_plus_1):
                m[k] = 2
    return tuple(m)


def kpf_series(g: SignedGraph, a: Sequence[int]) -> int:
    a = check_netflow(g, a)
    target = prefix_sums(a)
    if any(s < 0 for s in target):
        return 0
    order = sorted(range(len(g.edges)), key=lambda k: (g.edges[k].lo, k))
    factors = [([(edge_monomial(g.edges[k], g.n_plus_1), 1)], 1) for k in order]
    return int(series_coefficient(factors, target))


def kpf(g: SignedGraph, a: Sequence[int], engine: str = "dp") -> int:
    """Number of nonnegative integer flows b with M_G b = a."""
    if engine == "dp":
        return kpf_dp(g, a)
    if engine == "series":
        return kpf_series(g, a)
    raise ValueError(f"unknown engine {engine!r}")


def flow_upper_bounds(g: SignedGraph, a: Sequence[int]) -> list[int]:
    """A valid upper bound for every edge's flow.

    Prefix sums of every root are nonnegative, so for each edge and each
    coordinate k where its prefix-sum vector is positive, b_e * coef <= S_k(a).
    """
    a = check_netflow(g, a)
    S = prefix_sums(a)
    out = []
    for e in g.edges:
        m = edge_monomial(e, g.n_plus_1)
        out.append(min(S[k] // c for k, c in enumerate(m) if c) if any(m) else 0)
    return out


@dataclass(frozen=True)
class FlowEnumeration:
    flows: tuple[tuple[int, ...], ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.flows)


def enumerate_integer_flows(g: SignedGraph, a: Sequence[int], limit: int | None = None) -> FlowEnumeration:
    """Integer a-flows in lexicographic order of the flow vector.

    Depth-first over the canonical edge order; a branch is entered only if
    the remaining edges can still balance the residual netflow.
    """
    a = check_netflow(g, a)
    cols = g.columns()
    N = len(cols)
    bounds = flow_upper_bounds(g, a) if _prefixes_nonnegative(a) else [0] * N

    @lru_cache(maxsize=None)
    def feasible(k: int, residual: tuple) -> bool:
        return kpf_dp(SignedGraph(g.n_plus_1, g.edges[k:]), residual) > 0

    flows: list[tuple[int, ...]] = []
    truncated = False
    current: list[int] = []

    def rec(k: int, residual: tuple) -> bool:
        nonlocal truncated
        if k == N:
            if all(x == 0 for x in residual):
                if limit is not None and len(flows) >= limit:
                    truncated = True
                    return False
                flows.append(tuple(current))
            return True
        col = cols[k]
        for t in range(bounds[k] + 1):
            res = tuple(r - t * c for r, c in zip(residual, col))
            if not feasible(k + 1, res):
                continue
            current.append(t)
            go_on = rec(k + 1, res)
            current.pop()
            if not go_on:
                return False
        return True

    if feasible(0, a):
        rec(0, a)
    return FlowEnumeration(tuple(flows), truncated)


def ehrhart(g: SignedGraph, a: Sequence[int], t: int, engine: str = "dp") -> int:
    """Lattice points in the t-th dilate of the flow polytope."""
    if t < 0:
        raise ValueError("dilation factor must be nonnegative")
    a = check_netflow(g, a)
    return kpf(g, tuple(t * x for x in a), engine=engine)


@dataclass(frozen=True)
class EhrhartFit:
    polynomial: RationalPolynomial
    dimension: int
    parity: str
    samples: tuple[tuple[int, int], ...]
    consistent: bool

    @property
    def normalized_volume(self) -> Fraction:
        return self.polynomial.leading * factorial(self.dimension) if self.polynomial.degree == self.dimension else Fraction(0)


def ehrhart_polynomial_fit(g: SignedGraph, a: Sequence[int], parity: str = "all",
                           dim: int | None = None) -> EhrhartFit:
    """Interpolate the Ehrhart function by a polynomial of degree = dimension.

    Nodes are t = 1..d+1 (parity 'all') or t = 2, 4, ..., 2(d+1) (parity
    'even'). Two extra dilates (t = 0 and the next node) are evaluated to
    detect quasi-polynomial behaviour; in that case a QuasiPolynomialWarning
    is issued and the result is flagged inconsistent.
    """
    if parity not in ("all", "even"):
        raise ValueError("parity must be 'all' or 'even'")
    a = check_netflow(g, a)
    d = dimension(g, a) if dim is None else dim
    if d is None:
        raise FitError("the flow polytope is empty")
    step = 2 if parity == "even" else 1
    nodes = [step * (k + 1) for k in range(d + 1)]
    checks = [0, step * (d + 2)]
    values = {t: ehrhart(g, a, t) for t in nodes + checks}
    poly = interpolate([(t, values[t]) for t in nodes])
    consistent = all(poly(t) == values[t] for t in checks)
    samples = tuple(sorted(values.items()))
    if not consistent:
        warnings.warn(
            f"Ehrhart samples of {g} at {a} do not fit one polynomial (parity={parity}); "
            "retry with even dilates", QuasiPolynomialWarning, stacklevel=2)
    elif poly.degree != d:
        raise FitError(f"fitted degree {poly.degree} differs from dimension {d}")
    return EhrhartFit(poly, d, parity, samples, consistent)
