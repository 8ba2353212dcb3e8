"""Signed graphs, their root vectors and incidence data.

Vertices are numbered 1..n_plus_1. An edge ``(lo, hi, '-')`` stands for the
vector e_lo - e_hi, ``(lo, hi, '+')`` for e_lo + e_hi, and a loop
``(i, i, '+')`` for 2 e_i. A *half loop* (``half=True``) is a loop whose
vector is e_i; it is only needed for the type B family and for the graphs
produced when dynamic flows are decomposed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ArityError,
    BoundaryNetflowError,
    GraphParseError,
    InvalidEdgeError,
)
from . import linalg

NEG = "-"
POS = "+"


@dataclass(frozen=True)
class SignedEdge:
    lo: int
    hi: int
    sign: str
    half: bool = False

    def __post_init__(self):
        if self.sign not in (NEG, POS):
            raise InvalidEdgeError(f"sign must be '+' or '-', got {self.sign!r}")
        if self.lo < 1 or self.hi < self.lo:
            raise InvalidEdgeError(f"need 1 <= lo <= hi, got ({self.lo}, {self.hi})")
        if self.lo == self.hi and self.sign == NEG:
            raise InvalidEdgeError(f"loop at {self.lo} must be positive")
        if self.half and self.lo != self.hi:
            raise InvalidEdgeError("only loops can be half loops")

    @property
    def is_loop(self) -> bool:
        return self.lo == self.hi

    @property
    def positive(self) -> bool:
        return self.sign == POS

    def endpoints(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def token(self) -> str:
        """Sign token used by the text format ('h' marks a half loop)."""
        return "h" if self.half else self.sign

    def __str__(self) -> str:
        return f"({self.lo},{self.hi},{self.token()})"


def edge(lo: int, hi: int, sign: str) -> SignedEdge:
    """Build an edge from the text-format token ('+', '-' or 'h')."""
    if sign == "h":
        return SignedEdge(lo, hi, POS, half=True)
    return SignedEdge(lo, hi, sign)


def root_vector(e: SignedEdge, n_plus_1: int) -> tuple[int, ...]:
    if e.hi > n_plus_1:
        raise InvalidEdgeError(f"edge {e} out of range for {n_plus_1} vertices")
    v = [0] * n_plus_1
    if e.is_loop:
        v[e.lo - 1] = 1 if e.half else 2
    else:
        v[e.lo - 1] = 1
        v[e.hi - 1] = 1 if e.positive else -1
    return tuple(v)


@dataclass(frozen=True)
class SignedGraph:
    n_plus_1: int
    edges: tuple[SignedEdge, ...] = ()

    def __post_init__(self):
        if self.n_plus_1 < 0:
            raise InvalidEdgeError("vertex count must be nonnegative")
        object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            if e.hi > self.n_plus_1:
                raise InvalidEdgeError(f"edge {e} out of range for {self.n_plus_1} vertices")

    @classmethod
    def from_triples(cls, n_plus_1: int, triples: Iterable[Sequence]) -> "SignedGraph":
        return cls(n_plus_1, tuple(edge(*t) for t in triples))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n_plus_1 + 1)

    def with_edges(self, edges: Iterable[SignedEdge]) -> "SignedGraph":
        return SignedGraph(self.n_plus_1, tuple(edges))

    def subgraph(self, indices: Iterable[int]) -> "SignedGraph":
        return self.with_edges(self.edges[k] for k in indices)

    def has_loops(self) -> bool:
        return any(e.is_loop for e in self.edges)

    def all_negative(self) -> bool:
        return all(not e.positive for e in self.edges)

    def has_positive(self) -> bool:
        return any(e.positive for e in self.edges)

    def columns(self) -> list[tuple[int, ...]]:
        return [root_vector(e, self.n_plus_1) for e in self.edges]

    def incidence_matrix(self) -> list[list[int]]:
        cols = self.columns()
        return [[c[r] for c in cols] for r in range(self.n_plus_1)]

    def indegree(self, v: int) -> int:
        """Number of negative edges entering v from a smaller vertex."""
        return sum(1 for e in self.edges if e.hi == v and not e.positive and not e.is_loop)

    def touched_vertices(self) -> set[int]:
        out = set()
        for e in self.edges:
            out.add(e.lo)
            out.add(e.hi)
        return out

    def is_connected(self) -> bool:
        """Connectivity of the whole vertex set (isolated vertices count)."""
        if self.n_plus_1 <= 1:
            return True
        parent = list(range(self.n_plus_1 + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            parent[find(e.lo)] = find(e.hi)
        return len({find(v) for v in self.vertices}) == 1

    def sorted_key(self) -> tuple:
        """Order-insensitive key of the edge multiset."""
        return (self.n_plus_1, tuple(sorted(Counter(self.edges).items(),
                                            key=lambda kv: (kv[0].lo, kv[0].hi, kv[0].sign, kv[0].half))))

    def to_text(self) -> str:
        lines = [f"vertices {self.n_plus_1}"]
        lines += [f"edge {e.lo} {e.hi} {e.token()}" for e in self.edges]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.edges) + "}"


def incidence_matrix(g: SignedGraph) -> list[list[int]]:
    return g.incidence_matrix()


def check_netflow(g: SignedGraph, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != g.n_plus_1:
        raise ArityError(f"netflow has {len(a)} entries, graph has {g.n_plus_1} vertices")
    return a


def in_out_edges(g: SignedGraph, i: int) -> tuple[list[int], list[int], list[int]]:
    """Incoming and outgoing edge indices at vertex i, in canonical order.

    Incoming: negative edges (x, i) with x < i. Outgoing: edges (i, y, +/-)
    with y > i, and positive edges (x, i, +) with x < i. Loops at i are in
    neither list.
    """
    if not 1 <= i <= g.n_plus_1:
        raise InvalidEdgeError(f"vertex {i} out of range")
    inc, out, out_pos = [], [], []
    for k, e in enumerate(g.edges):
        if e.is_loop:
            continue
        if e.hi == i and not e.positive:
            inc.append(k)
        elif e.lo == i or (e.hi == i and e.positive):
            out.append(k)
            if e.positive:
                out_pos.append(k)
    return inc, out, out_pos


def loops_at(g: SignedGraph, i: int) -> list[int]:
    return [k for k, e in enumerate(g.edges) if e.is_loop and e.lo == i]


def rank(g: SignedGraph) -> int:
    return linalg.rank(g.incidence_matrix()) if g.edges else 0


EMPTY = None


def dimension(g: SignedGraph, a: Sequence[int]) -> int | None:
    """Dimension of the flow polytope, or ``None`` when it is empty.

    Raises BoundaryNetflowError when the polytope is nonempty but no flow is
    strictly positive on every edge, since then the kernel dimension is only
    an upper bound.
    """
    a = check_netflow(g, a)
    status = linalg.cone_position(g.incidence_matrix(), a)
    if status == "outside":
        return EMPTY
    if status == "boundary":
        raise BoundaryNetflowError(
            f"netflow {a} lies on the boundary of the cone spanned by {g}")
    d = len(g.edges) - rank(g)
    if g.is_connected() and g.n_plus_1 > 0:
        shortcut = len(g.edges) - g.n_plus_1 + (1 if g.all_negative() else 0)
        assert d == shortcut, (d, shortcut)
    return d


def flow_is_valid(g: SignedGraph, a: Sequence[int], flow: Sequence) -> bool:
    if len(flow) != len(g.edges) or any(Fraction(x) < 0 for x in flow):
        return False
    acc = [Fraction(0)] * g.n_plus_1
    for x, col in zip(flow, g.columns()):
        for r, c in enumerate(col):
            if c:
                acc[r] += c * Fraction(x)
    return all(acc[r] == a[r] for r in range(g.n_plus_1))


def parse_graph(text: str) -> SignedGraph:
    """Parse the line-based graph format.

    ``vertices N`` must come first; then ``edge i j s`` lines with s one of
    ``-``, ``+`` or ``h`` (half loop, i = j). Blank lines and lines starting
    with ``#`` are ignored.
    """
    n = None
    edges: list[SignedEdge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertices":
            if n is not None:
                raise GraphParseError("duplicate 'vertices' line", lineno)
            if len(parts) != 2 or not _is_int(parts[1]) or int(parts[1]) < 0:
                raise GraphParseError("expected 'vertices <count>'", lineno)
            n = int(parts[1])
        elif parts[0] == "edge":
            if n is None:
                raise GraphParseError("'edge' before 'vertices'", lineno)
            if len(parts) != 4 or not (_is_int(parts[1]) and _is_int(parts[2])):
                raise GraphParseError("expected 'edge <i> <j> <+|->'", lineno)
            i, j, s = int(parts[1]), int(parts[2]), parts[3]
            if s not in ("+", "-", "h"):
                raise GraphParseError(f"unknown sign {s!r}", lineno)
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphParseError(f"endpoint out of range 1..{n}", lineno)
            if i > j:
                raise GraphParseError(f"need i <= j, got {i} > {j}", lineno)
            if i == j and s == "-":
                raise GraphParseError("loops are always positive", lineno)
            if s == "h" and i != j:
                raise GraphParseError("'h' is only allowed on loops", lineno)
            edges.append(edge(i, j, s))
        else:
            raise GraphParseError(f"unknown directive {parts[0]!r}", lineno)
    if n is None:
        raise GraphParseError("missing 'vertices' line")
    return SignedGraph(n, tuple(edges))


def _is_int(s: str) -> bool:
    try:
        int(s)
    except ValueError:
        return False
    return True


def parse_netflow(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise GraphParseError(f"bad netflow {text!r}") from exc


def forced_zero_edges(g: SignedGraph, a: Sequence[int]) -> list[int] | None:
    """Edges that carry zero flow in every a-flow (None if there is no a-flow)."""
    a = check_netflow(g, a)
    M = g.incidence_matrix()
    N = len(g.edges)
    if linalg.cone_position(M, a) == "outside":
        return None
    zero = []
    for k in range(N):
        c = [0] * N
        c[k] = 1
        status, value, _ = linalg.lp_maximize(c, M, a)
        if status == "optimal" and value == 0:
            zero.append(k)
    return zero


def effective_dimension(g: SignedGraph, a: Sequence[int]) -> tuple[int | None, SignedGraph]:
    """Dimension of the flow polytope and the graph with forced-zero edges removed.

    Unlike ``dimension`` this accepts netflows on the cone boundary.
    """
    zero = forced_zero_edges(g, a)
    if zero is None:
        return EMPTY, g
    h = g.subgraph(k for k in range(len(g.edges)) if k not in set(zero))
    return len(h.edges) - rank(h), h


def polytope_dimension(g: SignedGraph, a: Sequence[int]) -> int | None:
    """Dimension of the flow polytope for any netflow, boundary ones included."""
    try:
        return dimension(g, a)
    except BoundaryNetflowError:
        return effective_dimension(g, a)[0]
