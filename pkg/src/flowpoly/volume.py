"""Normalized volumes of flow polytopes by several independent methods.

* ``kpf``: all-negative graph, netflow e_1 - e_last. The volume is the number
  of integer flows for the netflow (0, d_2, ..., d_n, -sum d) with
  d_i = indegree(i) - 1.
* ``dyn_kpf``: loopless signed graph, netflow 2 e_1. The volume is the number
  of dynamic flows for (0, d_2, ..., d_last).
* ``subdivision``: count the simplices of the recursive subdivision.
* ``ehrhart_fit``: interpolate the Ehrhart polynomial and take d! times its
  leading coefficient. Works for any netflow and for graphs with loops.

Normalized volume means d! times the Euclidean volume relative to the
lattice of the affine hull, i.e. the number of unimodular simplices.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dynamic import dyn_kpf
from .errors import (
    BoundaryNetflowError,
    ConnectivityError,
    CrosscheckError,
    DegenerateGraphError,
    EmptyPolytopeWarning,
    FitError,
    PreconditionError,
    UnsupportedLoopError,
    WrongTheoremError,
)
from .graph import SignedGraph, check_netflow, dimension, effective_dimension
from .kostant import ehrhart_polynomial_fit, kpf
from .subdivision import subdivide_full

METHODS = ("kpf", "dyn_kpf", "subdivision", "ehrhart_fit")


@dataclass
class VolumeReport:
    method: str
    volume: int | Fraction
    dimension: int | None
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"method": self.method, "volume": self.volume, "dimension": self.dimension,
                "diagnostics": self.diagnostics}


def indegree_netflow(g: SignedGraph, last_included: bool) -> tuple[int, ...]:
    """(0, d_2, ..., d_n[, d_last]) with d_i = indegree(i) - 1."""
    V = g.n_plus_1
    upto = V if last_included else V - 1
    d = [0] + [g.indegree(v) - 1 for v in range(2, upto + 1)]
    if not last_included:
        d.append(-sum(d))
    return tuple(d)


def type_a_netflow(n_plus_1: int) -> tuple[int, ...]:
    return (1,) + (0,) * (n_plus_1 - 2) + (-1,)


def twice_first(n_plus_1: int) -> tuple[int, ...]:
    return (2,) + (0,) * (n_plus_1 - 1)


def _interior_dimension(g: SignedGraph, a: tuple[int, ...]) -> int | None:
    # The indegree formulas measure volume in dimension #E - rank, which is
    # only the polytope's dimension when every edge can carry flow.
    try:
        return dimension(g, a)
    except BoundaryNetflowError as exc:
        raise DegenerateGraphError(f"some edge of {g} carries no flow at {a}") from exc


def volume_negative(h: SignedGraph) -> VolumeReport:
    if h.has_positive():
        raise WrongTheoremError("graph has positive edges; use volume_signed_2e1")
    if not h.is_connected():
        raise ConnectivityError("graph must be connected")
    for v in range(2, h.n_plus_1):
        if h.indegree(v) < 1:
            raise DegenerateGraphError(f"vertex {v} has no incoming edge")
    d = _interior_dimension(h, type_a_netflow(h.n_plus_1))
    b = indegree_netflow(h, last_included=False)
    vol = kpf(h, b)
    return VolumeReport("kpf", vol, d, {"netflow": list(b)})


def volume_signed_2e1(g: SignedGraph) -> VolumeReport:
    if g.has_loops():
        raise UnsupportedLoopError("graph has loops; use volume_via_ehrhart")
    if not g.is_connected():
        raise ConnectivityError("graph must be connected")
    for v in range(2, g.n_plus_1 + 1):
        if g.indegree(v) < 1:
            raise DegenerateGraphError(f"vertex {v} has no incoming edge")
    if not g.has_positive():
        warnings.warn("no positive edge: netflow 2e_1 has no flow, volume reported as 0",
                      EmptyPolytopeWarning, stacklevel=2)
        return VolumeReport("dyn_kpf", 0, None, {"empty": True})
    d = _interior_dimension(g, twice_first(g.n_plus_1))
    b = indegree_netflow(g, last_included=True)
    vol = dyn_kpf(g, b)
    return VolumeReport("dyn_kpf", vol, d, {"netflow": list(b)})


def volume_by_subdivision(g: SignedGraph, a: Sequence[int]) -> VolumeReport:
    res = subdivide_full(g, a)
    return VolumeReport("subdivision", res.leaves, res.dimension if res.dimension >= 0 else None,
                        {"lower_dimensional_leaves": res.lower_dimensional})


def volume_via_ehrhart(g: SignedGraph, a: Sequence[int], parity: str = "even") -> VolumeReport:
    """d! times the leading coefficient of the fitted Ehrhart polynomial.

    Edges that vanish on every flow are dropped first, so boundary netflows
    are fine. Even dilates are the default because vertices may be
    half-integral.
    """
    a = check_netflow(g, a)
    d, h = effective_dimension(g, a)
    diag: dict = {"parity": parity}
    if d is None:
        return VolumeReport("ehrhart_fit", 0, None, {**diag, "empty": True})
    if len(h.edges) != len(g.edges):
        diag["dropped_edges"] = len(g.edges) - len(h.edges)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fit = ehrhart_polynomial_fit(h, a, parity=parity, dim=d)
    if not fit.consistent:
        raise FitError(f"Ehrhart samples inconsistent under parity={parity}: {caught[0].message if caught else ''}")
    vol = fit.normalized_volume
    diag["polynomial"] = str(fit.polynomial)
    if vol.denominator == 1:
        vol = int(vol)
    return VolumeReport("ehrhart_fit", vol, d, diag)


def applicable_methods(g: SignedGraph, a: Sequence[int]) -> list[str]:
    a = check_netflow(g, a)
    V = g.n_plus_1
    out = []
    connected = g.is_connected()
    try:
        interior = dimension(g, a) is not None
    except BoundaryNetflowError:
        interior = False
    if not interior:
        pass
    elif V >= 2 and a == type_a_netflow(V) and g.all_negative() and connected \
            and all(g.indegree(v) >= 1 for v in range(2, V)):
        out += ["kpf", "subdivision"]
    elif V >= 1 and a == twice_first(V) and not g.has_loops() and g.has_positive() and connected \
            and all(g.indegree(v) >= 1 for v in range(2, V + 1)):
        out += ["dyn_kpf", "subdivision"]
    out.append("ehrhart_fit")
    return out


def volume(g: SignedGraph, a: Sequence[int], method: str) -> VolumeReport:
    if method == "kpf":
        if tuple(a) != type_a_netflow(g.n_plus_1):
            raise PreconditionError("the kpf method needs netflow e_1 - e_last")
        return volume_negative(g)
    if method == "dyn_kpf":
        if tuple(a) != twice_first(g.n_plus_1):
            raise PreconditionError("the dynamic method needs netflow 2 e_1")
        return volume_signed_2e1(g)
    if method == "subdivision":
        return volume_by_subdivision(g, a)
    if method == "ehrhart_fit":
        return volume_via_ehrhart(g, a)
    raise ValueError(f"unknown method {method!r}")


def volume_crosscheck(g: SignedGraph, a: Sequence[int], methods: Sequence[str] | None = None) -> VolumeReport:
    """Run every applicable method and insist they agree."""
    methods = list(methods) if methods is not None else applicable_methods(g, a)
    results: dict[str, VolumeReport] = {}
    timings: dict[str, float] = {}
    for m in methods:
        t0 = time.perf_counter()
        results[m] = volume(g, a, m)
        timings[m] = time.perf_counter() - t0
    values = {m: r.volume for m, r in results.items()}
    if len(set(values.values())) > 1:
        raise CrosscheckError(f"volume methods disagree on {g} at {tuple(a)}: {values}")
    first = results[methods[0]]
    diag = {"methods": {m: r.as_dict() for m, r in results.items()},
            "seconds": {m: round(t, 6) for m, t in timings.items()}}
    return VolumeReport("+".join(methods), first.volume, first.dimension, diag)
