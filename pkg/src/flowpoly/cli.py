"""flowpoly command line: volumes, counts and vertices of flow polytopes."""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from fractions import Fraction

from .dynamic import dyn_decompose, dyn_kpf, enumerate_dynamic_flows
from .errors import FlowPolyError, PoleError
from .graph import SignedGraph, check_netflow, dimension, effective_dimension, parse_graph, parse_netflow
from .kostant import ehrhart, ehrhart_polynomial_fit, enumerate_integer_flows, kpf
from .special import (
    MorrisParams,
    conjecture_report,
    cry_graph,
    cry_netflow,
    dyn_volume_cry_d,
    kpf_volume_cry_a,
    morris_closed,
    morris_ct,
    report_summary,
)
from .subdivision import subdivide_full
from .vertices import enumerate_vertices_2e1, enumerate_vertices_general, path_vertices
from .volume import volume, volume_crosscheck, volume_via_ehrhart

METHOD_NAMES = {"kpf": "kpf", "dyn": "dyn_kpf", "subdivide": "subdivision", "ehrhart": "ehrhart_fit"}


class UsageError(Exception):
    pass


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, SignedGraph):
        return [[e.lo, e.hi, e.token()] for e in x.edges]
    return str(x)


def _load(args) -> tuple[SignedGraph, tuple[int, ...]]:
    try:
        with open(args.graph, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from exc
    g = parse_graph(text)
    return g, check_netflow(g, parse_netflow(args.netflow))


def _graph_input(args) -> dict:
    return {"graph": args.graph, "netflow": args.netflow}


def cmd_kpf(args):
    g, a = _load(args)
    result = {"count": kpf(g, a, engine=args.engine)}
    if args.enumerate is not None:
        en = enumerate_integer_flows(g, a, limit=args.enumerate)
        result["flows"] = en.flows
        result["truncated"] = en.truncated
    lines = [str(result["count"])] + [" ".join(map(str, f)) for f in result.get("flows", ())]
    return _graph_input(args) | {"engine": args.engine}, result, {}, lines


def cmd_dyn_kpf(args):
    g, a = _load(args)
    result = {"count": dyn_kpf(g, a, engine=args.engine)}
    lines = [str(result["count"])]
    if args.decompose:
        terms = dyn_decompose(g, a)
        result["decomposition"] = [
            {"left_flows": t.left_flows, "netflow": t.netflow, "count": t.count} for t in terms]
        lines += [f"left {' '.join(map(str, t.left_flows)) or '-'}: {t.count}" for t in terms]
    if args.enumerate is not None:
        flows, truncated = enumerate_dynamic_flows(g, a, limit=args.enumerate)
        result["flows"] = [{"negative": f.negative, "left": f.left, "right": f.right} for f in flows]
        result["truncated"] = truncated
        lines += [f"neg {f.negative} left {f.left} right {f.right}" for f in flows]
    return _graph_input(args) | {"engine": args.engine}, result, {}, lines


def cmd_ehrhart(args):
    g, a = _load(args)
    inp = _graph_input(args)
    if args.t is not None:
        value = ehrhart(g, a, args.t)
        return inp | {"t": args.t}, {"t": args.t, "count": value}, {}, [str(value)]
    parity = "even" if args.even else "all"
    d, h = effective_dimension(g, a)
    if d is None:
        raise FlowPolyError("the flow polytope is empty")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fit = ehrhart_polynomial_fit(h, a, parity=parity, dim=d)
    diag = {"consistent": fit.consistent, "samples": fit.samples,
            "warnings": [str(w.message) for w in caught]}
    result = {"polynomial": str(fit.polynomial), "coefficients": fit.polynomial.coeffs,
              "dimension": d, "normalized_volume": fit.normalized_volume}
    lines = [str(fit.polynomial), f"dimension {d}", f"volume {jsonable(fit.normalized_volume)}"]
    if not fit.consistent:
        lines.append("warning: samples are not polynomial, try --even")
    return inp | {"parity": parity}, result, diag, lines


def cmd_volume(args):
    g, a = _load(args)
    if args.method == "all":
        rep = volume_crosscheck(g, a)
    else:
        rep = volume(g, a, METHOD_NAMES[args.method])
    result = {"volume": rep.volume, "dimension": rep.dimension, "method": rep.method}
    # wall-clock timings would make the output differ between runs
    diag = {k: v for k, v in rep.diagnostics.items() if k != "seconds"}
    return _graph_input(args) | {"method": args.method}, result, diag, [str(jsonable(rep.volume))]


def cmd_subdivide(args):
    g, a = _load(args)
    res = subdivide_full(g, a, count_only=args.count_only)
    result = {"leaves": res.leaves, "dimension": res.dimension, "kind": res.kind}
    diag: dict = {"lower_dimensional_leaves": res.lower_dimensional}
    lines = [str(res.leaves)]
    if res.trails is not None:
        result["leaf_trails"] = [
            [{"vertex": i, "composition": tree.signed_composition()} for i, tree in trail]
            for trail in res.trails]
    if args.seed_orders:
        counts = [subdivide_full(g, a, rng=random.Random(seed)).leaves for seed in range(args.seed_orders)]
        diag["random_order_leaves"] = counts
        diag["order_invariant"] = all(c == res.leaves for c in counts)
        lines.append(f"random orders: {' '.join(map(str, counts))}")
    return _graph_input(args) | {"count_only": args.count_only, "seed_orders": args.seed_orders}, result, diag, lines


def _vertices(g: SignedGraph, a: tuple[int, ...], method: str):
    V = g.n_plus_1
    if method == "auto":
        if V >= 2 and a == (1,) + (0,) * (V - 2) + (-1,) and g.all_negative():
            method = "paths"
        elif V >= 1 and a == (2,) + (0,) * (V - 1):
            method = "support"
        else:
            method = "general"
    if method == "paths":
        return method, path_vertices(g)
    if method == "support":
        return method, enumerate_vertices_2e1(g)
    return method, enumerate_vertices_general(g, a)


def cmd_vertices(args):
    g, a = _load(args)
    method, verts = _vertices(g, a, args.method)
    result: dict = {"count": len(verts)}
    lines = [str(len(verts))]
    if not args.count_only:
        result["vertices"] = verts
        lines += [" ".join(str(jsonable(x)) for x in v) for v in verts]
    return _graph_input(args) | {"method": args.method}, result, {"method": method}, lines


def cmd_dim(args):
    g, a = _load(args)
    diag = {}
    try:
        d = dimension(g, a)
    except FlowPolyError as exc:
        diag["boundary"] = str(exc)
        d, _ = effective_dimension(g, a)
    result = {"dimension": d, "empty": d is None}
    return _graph_input(args), result, diag, ["empty" if d is None else str(d)]


def cmd_cry(args):
    fam, n = args.family, args.n
    if n < (2 if fam != "A" else 1):
        raise UsageError("--n too small for this family")
    g = cry_graph(fam, n)
    result: dict = {}
    diag: dict = {"vertices_in_graph": g.n_plus_1, "edges": len(g.edges)}
    lines = []
    if args.what in ("volume", "all"):
        if fam == "A":
            vol, method = kpf_volume_cry_a(n), "kpf"
        elif fam == "D":
            vol, method = dyn_volume_cry_d(n), "dyn_kpf"
        else:
            rep = volume_via_ehrhart(g, cry_netflow(fam, n))
            vol, method = rep.volume, "ehrhart_fit"
        result["volume"] = vol
        diag["volume_method"] = method
        lines.append(str(vol) if args.what == "volume" else f"volume {jsonable(vol)}")
    if args.what in ("vertices", "all"):
        count = len(path_vertices(g) if fam == "A" else enumerate_vertices_2e1(g))
        result["vertices"] = count
        lines.append(str(count) if args.what == "vertices" else f"vertices {count}")
    return {"family": fam, "n": n, "what": args.what}, result, diag, lines


def cmd_morris(args):
    p = MorrisParams(args.m, args.a, args.b, args.two_c, args.two_d)
    mode = "ct" if args.ct else "both" if args.both else "closed" if args.closed else "both"
    result = {}
    diag = {}
    if mode == "closed":
        result["closed"] = morris_closed(p)
    elif mode == "both":
        try:
            result["closed"] = morris_closed(p)
        except PoleError as exc:
            result["closed"] = None
            diag["closed_error"] = str(exc)
    if mode in ("ct", "both"):
        result["ct"] = morris_ct(p)
    if mode == "both":
        result["agree"] = result["closed"] == result["ct"]
        closed = jsonable(result["closed"]) if result["closed"] is not None else f"undefined ({diag['closed_error']})"
        lines = [f"closed {closed}", f"ct {jsonable(result['ct'])}"]
    else:
        lines = [str(jsonable(result[mode]))]
    inp = {"m": args.m, "a": args.a, "b": args.b, "two_c": args.two_c, "two_d": args.two_d, "mode": mode}
    return inp, result, diag, lines


def cmd_report(args):
    if args.n_max < 2:
        raise UsageError("--n-max must be at least 2")
    rows = conjecture_report(args.n_max)
    summary = report_summary(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, sort_keys=True, indent=2)
            fh.write("\n")
    lines = [f"{r['family']} n={r['n']} {r['quantity']} ({r['method']}): {r['value']}"
             + ("" if r["conjectured"] is None else f" vs {r['conjectured']} -> {'match' if r['match'] else 'MISMATCH'}")
             for r in rows]
    lines.append(f"type C volume ratio exponent: {summary['type_C_ratio_exponent']}")
    for fam, v in summary["factor_2"].items():
        lines.append(f"factor 2 for {fam} at n={v['checked_n']}: {'holds' if v['all_match'] else 'fails'}")
    return {"n_max": args.n_max, "out": args.out}, {"rows": rows, "summary": summary}, {}, lines


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flowpoly", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="graph file")
        sp.add_argument("--netflow", required=True, help="comma-separated integers")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(fn=fn)
        return sp

    sp = graph_cmd("kpf", cmd_kpf, "count integer flows")
    sp.add_argument("--enumerate", type=int, metavar="N")
    sp.add_argument("--engine", choices=("dp", "series"), default="dp")

    sp = graph_cmd("dyn-kpf", cmd_dyn_kpf, "count dynamic integer flows")
    sp.add_argument("--decompose", action="store_true")
    sp.add_argument("--enumerate", type=int, metavar="N")
    sp.add_argument("--engine", choices=("dp", "series"), default="dp")

    sp = graph_cmd("ehrhart", cmd_ehrhart, "lattice points of a dilate or the fitted Ehrhart polynomial")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--t", type=int)
    grp.add_argument("--fit", action="store_true")
    sp.add_argument("--even", action="store_true", help="fit on even dilates only")

    sp = graph_cmd("volume", cmd_volume, "normalized volume")
    sp.add_argument("--method", choices=tuple(METHOD_NAMES) + ("all",), default="all")

    sp = graph_cmd("subdivide", cmd_subdivide, "recursive subdivision leaf count")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--seed-orders", type=int, default=0, metavar="S",
                    help="also recount with S random elimination orders")

    sp = graph_cmd("vertices", cmd_vertices, "vertices of the flow polytope")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--method", choices=("auto", "general", "support", "paths"), default="auto")

    graph_cmd("dim", cmd_dim, "dimension of the flow polytope")

    sp = sub.add_parser("cry", help="complete-graph family polytopes")
    sp.add_argument("--family", choices=("A", "B", "C", "D"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--what", choices=("volume", "vertices", "all"), default="all")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_cry)

    sp = sub.add_parser("morris", help="Morris constant term")
    for flag in ("--m", "--a", "--b", "--two-c"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--two-d", type=int)
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--ct", action="store_true")
    grp.add_argument("--closed", action="store_true")
    grp.add_argument("--both", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_morris)

    sp = sub.add_parser("report", help="computed values against the stated formulas")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--out", help="write the JSON row array here")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_report)
    return p


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(jsonable(payload), sort_keys=True, indent=2) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            inp, result, diag, lines = args.fn(args)
    except UsageError as exc:
        print(f"flowpoly: {exc}", file=sys.stderr)
        return 2
    except FlowPolyError as exc:
        if args.json:
            _emit({"command": args.command, "input": {}, "result": None,
                   "diagnostics": {"error": exc.code, "message": str(exc)}})
        print(f"flowpoly: error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    msgs = sorted({f"{type(w.message).__name__}: {w.message}" for w in caught})
    if msgs:
        diag = dict(diag, warnings=sorted(set(diag.get("warnings", [])) | set(msgs)))
    if args.json:
        _emit({"command": args.command, "input": inp, "result": result, "diagnostics": diag})
    else:
        for m in msgs:
            print(f"warning: {m}", file=sys.stderr)
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
