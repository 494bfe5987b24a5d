"""Batch command line front end.

Exit codes: 0 when an answer was produced (including "infeasible" or a failed
validation), 1 on usage or format errors, 2 when a resource budget or size
limit was exceeded.
"""

import argparse
import inspect
import json
import sys
from pathlib import Path

from . import io as fmt
from .brambles import bramble_from_parity_handle, verify_bramble
from .decomposition import exact_ocptw, from_tree_decomposition, is_tame, validate, width
from .errors import BudgetExceeded, FormatError, InstanceTooLarge, OcpkitError
from .dp import dp_solve
from .intprog import ilp_bruteforce, ip_matrix, max_abs_subdeterminant, solve_ip, subdet_bound
from .mwis import WeightedGraph, mwis_bounded_ocp
from .ocp import ocp_exact
from .paritygrids import gen_cylindrical, gen_parity_handle, gen_parity_vortex, gen_universal
from .treewidth import optimal_tree_decomposition
from .selftest import ALL_CHECKS


def _read(path):
    return Path(path).read_text()


def _write(path, text):
    Path(path).write_text(text)


def cmd_gen(args):
    kind = args.kind
    if kind == "cylindrical":
        if args.l is None:
            raise FormatError("cylindrical needs both k and l")
        pg = gen_cylindrical(args.k, args.l)
    elif kind == "handle":
        pg = gen_parity_handle(args.k)
    elif kind == "vortex":
        pg = gen_parity_vortex(args.k)
    elif kind == "universal":
        pg = gen_universal(args.k)
    else:
        raise FormatError(f"unknown generator {kind!r}")
    out = args.out or f"{kind}_{args.k}" + (f"_{args.l}" if args.l else "")
    _write(out + ".graph", fmt.emit_graph(pg.graph))
    _write(out + ".ann.json", fmt.emit_annotation(pg))
    if args.dot:
        _write(out + ".dot", fmt.emit_dot(pg.graph, name=kind))
    print(f"wrote {out}.graph ({pg.graph.num_vertices()} vertices, "
          f"{pg.graph.num_edges()} edges) and {out}.ann.json")
    return 0


def cmd_ocp(args):
    g = fmt.parse_graph(_read(args.graph))
    value = ocp_exact(g, node_budget=args.budget)
    print(f"ocp {value}")
    return 0


def cmd_ocptw(args):
    g = fmt.parse_graph(_read(args.graph))
    if args.mode == "exact":
        value = exact_ocptw(g)
        print(f"ocptw exact {value}")
    elif args.mode == "upper":
        td = optimal_tree_decomposition(g)
        d = from_tree_decomposition(g, td)
        wd = width(g, d)
        print(f"ocptw upper {wd}")
        if args.out:
            _write(args.out, fmt.emit_decomposition(d))
            print(f"decomposition written to {args.out}")
    elif args.mode == "lower":
        if not args.bramble:
            raise FormatError("lower mode needs --bramble FILE")
        bramble = fmt.parse_bramble(_read(args.bramble))
        rep = verify_bramble(g, bramble)
        if rep:
            print(f"ocptw lower {bramble.order} (bramble of order {bramble.order} accepted)")
        else:
            print(f"bramble rejected: {rep.violation}")
    return 0


def cmd_validate(args):
    g = fmt.parse_graph(_read(args.graph))
    d = fmt.parse_decomposition(_read(args.decomposition))
    rep = validate(g, d)
    if not rep:
        print(f"invalid: {rep.violation}")
        return 0
    wd = width(g, d)
    tame = "tame" if is_tame(d) else "not tame"
    print(f"valid, width {wd}, {tame}")
    return 0


def cmd_mwis(args):
    g = fmt.parse_graph(_read(args.graph))
    weights = fmt.parse_weights(_read(args.weights), g)
    wg = WeightedGraph(g, weights)
    if args.decomposition:
        d = fmt.parse_decomposition(_read(args.decomposition))
        res = dp_solve(wg, d)
    else:
        res = mwis_bounded_ocp(wg, node_budget=args.budget)
    print(f"value {res.value}")
    print("witness " + " ".join(str(v) for v in res.witness))
    wset = set(res.witness)
    independent = all(not (u in wset and v in wset) for u, v in g.edges)
    recomputed = sum(weights[v] for v in res.witness)
    print(f"verified independent={independent} weight={recomputed}")
    return 0


def cmd_ip(args):
    ip = fmt.parse_ip(_read(args.ip))
    ans = solve_ip(ip)
    print(f"status {ans.status}")
    if ans.status == "optimal":
        print(f"value {ans.value}")
        for j, v in enumerate(ans.x):
            print(f"x {j}={v}")
        feas = all(
            (sum(c * ans.x[j] for j, c in row.items()) <= bb) if rel == "le"
            else (sum(c * ans.x[j] for j, c in row.items()) == bb)
            for row, rel, bb in zip(ip.rows, ip.rels, ip.b))
        bounds = all((ip.lower[j] is None or ans.x[j] >= ip.lower[j])
                     and (ip.upper[j] is None or ans.x[j] <= ip.upper[j])
                     for j in range(ip.num_vars))
        print(f"verified feasible={feas and bounds} "
              f"objective={sum(ip.w[j] * ans.x[j] for j in range(ip.num_vars))}")
    if args.trace:
        _write(args.trace, json.dumps(ans.trace.to_json(), indent=2, sort_keys=True) + "\n")
        print(f"trace written to {args.trace}")
    return 0


def cmd_subdet(args):
    ip = fmt.parse_ip(_read(args.ip))
    bound = subdet_bound(ip)
    print(f"bound {bound}")
    try:
        exact = max_abs_subdeterminant(ip_matrix(ip))
        print(f"exact {exact}")
    except InstanceTooLarge as ex:
        print(f"exact skipped: {ex}")
    return 0


def cmd_bramble_make(args):
    host, bramble = bramble_from_parity_handle(args.k)
    prefix = args.out or f"bramble_handle_{args.k}"
    _write(prefix + ".graph", fmt.emit_graph(host))
    _write(prefix + ".bramble.json", fmt.emit_bramble(bramble))
    rep = verify_bramble(host, bramble)
    print(f"wrote {prefix}.graph and {prefix}.bramble.json "
          f"(order {bramble.order}, verified={bool(rep)})")
    return 0


def cmd_bramble_verify(args):
    g = fmt.parse_graph(_read(args.graph))
    bramble = fmt.parse_bramble(_read(args.bramble))
    rep = verify_bramble(g, bramble)
    if rep:
        print(f"accepted: bramble of order {bramble.order}")
    else:
        print(f"rejected: {rep.violation}")
    return 0


def cmd_selftest(args):
    results = []
    failed = 0
    for i, fn in enumerate(ALL_CHECKS):
        kwargs = {}
        if args.seed is not None and "seed" in inspect.signature(fn).parameters:
            kwargs["seed"] = args.seed + i
        rec = fn(**kwargs)
        results.append(rec)
        status = "PASS" if rec["ok"] else "FAIL"
        if not rec["ok"]:
            failed += 1
        print(f"[{status}] {rec['name']} ({rec['seconds']}s)")
        print(f"       {rec['detail']}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="ocpkit",
                                description="odd-cycle-packing decompositions, "
                                            "MWIS solvers, and the IP reduction pipeline")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate parity grids")
    g.add_argument("kind", choices=["cylindrical", "handle", "vortex", "universal"])
    g.add_argument("k", type=int)
    g.add_argument("l", type=int, nargs="?", default=None)
    g.add_argument("--out", help="output path prefix")
    g.add_argument("--dot", action="store_true", help="also write a DOT dump")
    g.set_defaults(fn=cmd_gen)

    o = sub.add_parser("ocp", help="exact odd cycle packing number")
    o.add_argument("graph")
    o.add_argument("--budget", type=int, default=10_000_000)
    o.set_defaults(fn=cmd_ocp)

    t = sub.add_parser("ocptw", help="OCP-treewidth oracles")
    t.add_argument("mode", choices=["exact", "upper", "lower"])
    t.add_argument("graph")
    t.add_argument("--bramble", help="bramble certificate file for lower mode")
    t.add_argument("--out", help="write the upper-mode decomposition here")
    t.set_defaults(fn=cmd_ocptw)

    v = sub.add_parser("validate", help="validate a decomposition file")
    v.add_argument("graph")
    v.add_argument("decomposition")
    v.set_defaults(fn=cmd_validate)

    m = sub.add_parser("mwis", help="maximum weight independent set")
    m.add_argument("graph")
    m.add_argument("weights")
    m.add_argument("--decomposition")
    m.add_argument("--budget", type=int, default=10_000_000)
    m.set_defaults(fn=cmd_mwis)

    i = sub.add_parser("ip", help="solve a two-nonzero integer program")
    i.add_argument("ip")
    i.add_argument("--trace", help="dump the reduction trace as JSON")
    i.set_defaults(fn=cmd_ip)

    s = sub.add_parser("subdet", help="subdeterminant bound and exact maximum")
    s.add_argument("ip")
    s.set_defaults(fn=cmd_subdet)

    bm = sub.add_parser("bramble-make", help="bramble certificate for the parity handle")
    bm.add_argument("k", type=int)
    bm.add_argument("--out", help="output path prefix")
    bm.set_defaults(fn=cmd_bramble_make)

    bv = sub.add_parser("bramble-verify", help="check a bramble certificate")
    bv.add_argument("graph")
    bv.add_argument("bramble")
    bv.set_defaults(fn=cmd_bramble_verify)

    st = sub.add_parser("selftest", help="run the acceptance suite")
    st.add_argument("--seed", type=int, default=None,
                    help="override the default seeds of the randomised checks")
    st.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return 1 if ex.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (BudgetExceeded, InstanceTooLarge) as ex:
        print(f"budget exceeded: {ex}", file=sys.stderr)
        return 2
    except (FormatError, FileNotFoundError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    except OcpkitError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
