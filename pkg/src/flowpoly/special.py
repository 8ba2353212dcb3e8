"""Complete signed graph families, the Morris constant term and the volume report."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod

from .dynamic import dyn_kpf
from .errors import UnsupportedKernelError
from .exactnum import HalfGamma, gamma_half, prefix_sums, series_coefficient
from .graph import SignedGraph, edge, rank
from .kostant import kpf
from .vertices import enumerate_vertices_2e1, path_vertices
from .volume import indegree_netflow, volume_via_ehrhart

FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class FamilySpec:
    """A complete graph family on ``vertices`` vertices.

    A: all (i, j, -). D: all (i, j, -) and (i, j, +). C: D plus a loop at
    every vertex. B: D plus a half loop (vector e_i) at every vertex.
    """

    family: str
    vertices: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.vertices < 2:
            raise ValueError("need at least 2 vertices")


def family_graph(spec: FamilySpec) -> SignedGraph:
    n = spec.vertices
    signs = "-" if spec.family == "A" else "-+"
    triples = [(i, j, s) for i in range(1, n + 1) for j in range(i + 1, n + 1) for s in signs]
    if spec.family == "C":
        triples += [(i, i, "+") for i in range(1, n + 1)]
    elif spec.family == "B":
        triples += [(i, i, "h") for i in range(1, n + 1)]
    return SignedGraph(n, tuple(edge(*t) for t in triples))


def cry_graph(family: str, n: int) -> SignedGraph:
    """Graph of the n-th polytope of a family: K_{n+1} for A, n vertices otherwise."""
    return family_graph(FamilySpec(family, n + 1 if family == "A" else n))


def cry_netflow(family: str, n: int) -> tuple[int, ...]:
    if family == "A":
        return (1,) + (0,) * (n - 1) + (-1,)
    return (2,) + (0,) * (n - 1)


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def catalan_product(lo: int, hi: int) -> int:
    return prod(catalan(k) for k in range(lo, hi + 1))


@dataclass(frozen=True)
class MorrisParams:
    m: int
    a: int
    b: int
    two_c: int
    two_d: int | None = None

    def __post_init__(self):
        for name in ("m", "a", "b", "two_c") + (("two_d",) if self.two_d is not None else ()):
            if not isinstance(getattr(self, name), int):
                raise UnsupportedKernelError(f"{name} must be an integer")
        if self.m < 1 or self.a < 0 or self.b < 0 or self.two_c < 1:
            raise ValueError("need m >= 1, a >= 0, b >= 0, two_c >= 1")
        if self.two_d is not None and self.two_d < 0:
            raise ValueError("two_d must be nonnegative")


def morris_closed(p: MorrisParams) -> Fraction:
    """Gamma-product value of the Morris constant term (no two_d allowed).

    (1/m!) prod_{j=0}^{m-1} G(a+b+(m-1+j)c) G(1+c) / (G(a+jc+1) G(b+jc) G(1+c+jc))
    is evaluated as below with all arguments doubled so that half-integers
    stay exact.
    """
    if p.two_d:
        raise UnsupportedKernelError("no closed form is known with the extra (1 - x_i - x_j) factor")
    m, a2, b2, c2 = p.m, 2 * p.a, 2 * p.b, p.two_c
    acc = HalfGamma(Fraction(1, factorial(m)), 0)
    for j in range(m):
        acc = acc * gamma_half(a2 + b2 + (m - 1 + j) * c2) * gamma_half(c2) / (
            gamma_half(a2 + j * c2 + 2) * gamma_half(b2 + j * c2) * gamma_half(c2 + j * c2))
    if not acc.is_rational():
        raise AssertionError(f"sqrt(pi) powers do not cancel: {acc}")
    return acc.to_fraction()


def morris_ct(p: MorrisParams) -> Fraction:
    """Iterated constant term computed by series extraction.

    Writing (x_j - x_i)^(-2c) = x_j^(-2c) (1 - x_i/x_j)^(-2c) (expanded for
    |x_1| < ... < |x_m|), the constant term equals the coefficient of x^e,
    e_j = a + 2c (j - 1), in prod (1-x_i)^(-b) prod (1-x_i/x_j)^(-2c)
    [(1-x_i-x_j)^(-2d)], which is read off in prefix-sum coordinates.
    """
    m = p.m

    def x(i):  # monomial x_i, 0-based i
        return tuple(1 if k >= i else 0 for k in range(m))

    def ratio(i, j):  # x_i / x_j, i < j
        return tuple(1 if i <= k < j else 0 for k in range(m))

    factors = []
    for i in range(m):
        if p.b:
            factors.append(([(x(i), 1)], p.b))
        for j in range(i + 1, m):
            factors.append(([(ratio(i, j), 1)], p.two_c))
            if p.two_d:
                factors.append(([(x(i), 1), (x(j), 1)], p.two_d))
    target = prefix_sums([p.a + p.two_c * j for j in range(m)])
    return Fraction(series_coefficient(factors, target))


def dyn_volume_cry_d(n: int) -> int:
    g = cry_graph("D", n)
    return dyn_kpf(g, indegree_netflow(g, last_included=True))


def kpf_volume_cry_a(n: int) -> int:
    g = cry_graph("A", n)
    return kpf(g, indegree_netflow(g, last_included=False))


def _fmt(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def _row(family, n, quantity, method, value, conjectured):
    match = None if conjectured is None else (value == conjectured)
    return {"family": family, "n": n, "quantity": quantity, "method": method,
            "value": _fmt(value), "conjectured": _fmt(conjectured), "match": match}


def _ehrhart_volume(family: str, n: int, netflow: tuple[int, ...]):
    r = volume_via_ehrhart(cry_graph(family, n), netflow)
    return r.volume


def _rows_for(n: int) -> list[dict]:
    rows = []
    # type A
    a_vol = kpf_volume_cry_a(n)
    rows.append(_row("A", n, "volume", "kpf", a_vol, catalan_product(0, n - 2)))
    rows.append(_row("A", n, "vertices", "paths", len(path_vertices(cry_graph("A", n))), 2 ** (n - 1)))
    # type D
    d_graph = cry_graph("D", n)
    d_vol = dyn_volume_cry_d(n)
    rows.append(_row("D", n, "volume", "dyn_kpf", d_vol, 2 ** ((n - 2) ** 2) * catalan_product(0, n - 2)))
    rows.append(_row("D", n, "vertices", "support_forms", len(enumerate_vertices_2e1(d_graph)),
                     3 ** (n - 1) - 2 ** (n - 1)))
    rows.append(_row("D", n, "dimension", "kernel", len(d_graph.edges) - rank(d_graph), n * (n - 2)))
    # type C
    c_graph = cry_graph("C", n)
    c_vol = _ehrhart_volume("C", n, cry_netflow("C", n))
    rows.append(_row("C", n, "volume", "ehrhart_fit", c_vol, None))
    rows.append(_row("C", n, "volume_vs_D_times_2^(n-2)", "ehrhart_fit", c_vol, 2 ** (n - 2) * d_vol))
    rows.append(_row("C", n, "volume_vs_D_times_2^(n-1)", "ehrhart_fit", c_vol, 2 ** (n - 1) * d_vol))
    rows.append(_row("C", n, "vertices", "support_forms", len(enumerate_vertices_2e1(c_graph)), 3 ** (n - 1)))
    rows.append(_row("C", n, "dimension", "kernel", len(c_graph.edges) - rank(c_graph), n * (n - 2)))
    # type B
    b_vol = _ehrhart_volume("B", n, cry_netflow("B", n))
    rows.append(_row("B", n, "volume", "ehrhart_fit", b_vol, None))
    rows.append(_row("B", n, "vertices_all_integral", "support_search",
                     _b_vertices_integral(n), None))
    # factor-2 comparison with netflow (1, 1, 0, ..., 0)
    one_one = (1, 1) + (0,) * (n - 2)
    for fam, vol20 in (("B", b_vol), ("C", c_vol), ("D", d_vol)):
        vol11 = _ehrhart_volume(fam, n, one_one)
        rows.append(_row(fam, n, "volume_at_(1,1,0,...)", "ehrhart_fit", vol11, None))
        expected = vol11 if n == 2 else 2 * vol11
        rows.append(_row(fam, n, "volume_vs_2x_volume_at_(1,1,0,...)" if n > 2
                         else "volume_vs_volume_at_(1,1)", "ehrhart_fit", vol20, expected))
    return rows


def _b_vertices_integral(n: int) -> bool:
    """Whether every vertex of the type B polytope at 2e_1 is integral (exhaustive for small n)."""
    from .vertices import enumerate_vertices_general
    g = cry_graph("B", n)
    if len(g.edges) > 20:
        return None
    return all(x.denominator == 1 for v in enumerate_vertices_general(g, cry_netflow("B", n)) for x in v)


def worker_count() -> int:
    env = os.environ.get("FLOWPOLY_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def conjecture_report(n_max: int, n_min: int = 2) -> list[dict]:
    """Computed values against every stated formula, one row per claim.

    Rows are ordered by n, then by the fixed order of claims; mismatches are
    data, not errors.
    """
    ns = list(range(n_min, n_max + 1))
    workers = min(worker_count(), len(ns))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_rows_for, ns))
    else:
        chunks = [_rows_for(n) for n in ns]
    return [row for chunk in chunks for row in chunk]


def report_summary(rows: list[dict]) -> dict:
    """Which type C ratio exponent and which factor-2 claims hold across the rows."""
    def verdict(quantity, family=None):
        sel = [r for r in rows if r["quantity"] == quantity and (family is None or r["family"] == family)]
        return {"checked_n": [r["n"] for r in sel], "all_match": bool(sel) and all(r["match"] for r in sel)}

    c_low = verdict("volume_vs_D_times_2^(n-2)")
    c_high = verdict("volume_vs_D_times_2^(n-1)")
    if c_low["all_match"] and not c_high["all_match"]:
        exponent = "n-2"
    elif c_high["all_match"] and not c_low["all_match"]:
        exponent = "n-1"
    else:
        exponent = "undetermined"
    return {
        "type_C_ratio_exponent": exponent,
        "type_C_ratio_2^(n-2)": c_low,
        "type_C_ratio_2^(n-1)": c_high,
        "factor_2": {f: verdict("volume_vs_2x_volume_at_(1,1,0,...)", f) for f in ("B", "C", "D")},
        "mismatches": [r for r in rows if r["match"] is False],
    }
