"""Dynamic program for maximum weight independent set over tame
OCP-tree-decompositions.

Per node t the boundary P_t is the adhesion towards the parent united with
the apex set (the root tracks only its apex set).  For every X inside P_t the
table stores the best weight of an independent set of the subtree graph whose
trace on P_t is exactly X; infeasible X carry an explicit minus-infinity
sentinel.  Child tables are merged through a gadget graph with one fresh
vertex per child, solved by the exact bounded-OCP backend.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .errors import DecompositionError
from .graphs import Graph
from .mwis import MwisResult, WeightedGraph, mwis_bounded_ocp

NEG_INF = None  # table sentinel: X is not independent


@dataclass
class DpTable:
    boundary: tuple  # sorted P_t
    values: dict  # frozenset X -> int, or NEG_INF
    choices: dict = field(default_factory=dict)
    # choices[X] = (gadget witness, {child: (v_d or None, X' if v_d chosen,
    #                                        X' if v_d not chosen)})


def _orient(d, root):
    order = [root]
    parent = {root: None}
    adj = {t: d.neighbours(t) for t in d.nodes}
    i = 0
    while i < len(order):
        t = order[i]
        i += 1
        for s in adj[t]:
            if s not in parent:
                parent[s] = t
                order.append(s)
    if len(order) != len(d.nodes):
        raise DecompositionError("decomposition tree is not connected")
    children = {t: [] for t in d.nodes}
    for t in order[1:]:
        children[parent[t]].append(t)
    return order, parent, children


def _root_of(d):
    return d.root if d.root is not None else min(d.nodes)


def _boundary(d, t, parent):
    if parent is None:
        return tuple(sorted(d.alpha[t]))
    adh = set(d.beta[t]) & set(d.beta[parent])
    return tuple(sorted(adh | set(d.alpha[t])))


def _subsets(items):
    items = sorted(items)
    for r in range(len(items) + 1):
        for comb in combinations(items, r):
            yield frozenset(comb)


def _independent(g, x_set):
    xs = sorted(x_set)
    for i, u in enumerate(xs):
        for v in xs[i + 1:]:
            if g.has_edge(u, v):
                return False
    return True


def _best_entry(table, adh, trace):
    """Maximal finite child entry whose trace on the adhesion equals `trace`,
    with its lexicographically smallest argmax."""
    best = NEG_INF
    best_x = None
    for xp in sorted(table.values, key=lambda s: tuple(sorted(s))):
        val = table.values[xp]
        if val is NEG_INF:
            continue
        if xp & adh == trace:
            if best is NEG_INF or val > best:
                best, best_x = val, xp
    return best, best_x


def build_gadget(g, weight, d, t, x_set, tables, _orientation=None):
    """Auxiliary weighted graph merging the child tables below node t for the
    boundary trace x_set (which must be independent).

    Starts from G[beta(t)] minus the boundary minus the closed neighbourhood
    of x_set; adds one fresh vertex per child, tied to the child's unique
    shared non-apex vertex when that vertex survives, with weights drawn from
    the child tables.  Returns (weighted graph, choice record per child).
    """
    order, parent, children = _orientation or _orient(d, _root_of(d))
    x_set = frozenset(x_set)
    beta_t = set(d.beta[t])
    p_t = set(_boundary(d, t, parent[t]))
    closed = set(x_set)
    for v in x_set:
        closed |= {u for u in g.neighbors(v) if u in beta_t}
    base = beta_t - p_t - closed
    gg = Graph(sorted(base))
    for u in sorted(base):
        for v in g.neighbors(u):
            if v in base and u < v:
                gg.add_edge(u, v)
    w_plus = {v: weight[v] for v in base}

    child_rec = {}
    nxt = (max(g.vertices) + 1 if g.num_vertices() else 0)
    for child in children[t]:
        adh = frozenset(beta_t & set(d.beta[child]))
        outside_apex = adh - set(d.alpha[t])
        v_d = next(iter(outside_apex)) if len(outside_apex) == 1 else None
        x_i = nxt
        nxt += 1
        gg.add_vertex(x_i)
        shared = sum(weight[v] for v in (x_set & adh))
        table = tables[child]

        trace_absent = x_set & adh
        val_absent, arg_absent = _best_entry(table, adh, trace_absent)
        if val_absent is NEG_INF:
            raise DecompositionError(
                f"child {child} has no feasible entry for trace {sorted(trace_absent)}")
        w_plus[x_i] = val_absent - shared
        entry = {"fresh": x_i, "v_d": None, "arg_absent": arg_absent,
                 "arg_present": None}
        if v_d is not None and v_d in base:
            trace_present = (x_set | {v_d}) & adh
            val_present, arg_present = _best_entry(table, adh, trace_present)
            if val_present is not NEG_INF:
                gg.add_edge(x_i, v_d)
                w_plus[v_d] = val_present - shared
                entry["v_d"] = v_d
                entry["arg_present"] = arg_present
        child_rec[child] = entry
    return WeightedGraph(gg, w_plus), child_rec


def dp_solve(wg, d, root=None, validate_input=True):
    """Exact maximum weight independent set of wg computed bottom-up along the
    tame decomposition d; the witness is rebuilt from the stored choices and
    re-verified."""
    from .decomposition import is_tame, validate

    g = wg.graph
    weight = wg.weight
    if validate_input:
        rep = validate(g, d)
        if not rep:
            raise DecompositionError(f"invalid decomposition: {rep.violation}")
        if not is_tame(d):
            raise DecompositionError("decomposition is not tame")
    if root is None:
        root = _root_of(d)
    elif root not in d.nodes:
        raise DecompositionError(f"root {root} is not a tree node")
    orientation = _orient(d, root)
    order, parent, children = orientation

    tables = {}
    for t in reversed(order):
        p_t = _boundary(d, t, parent[t])
        table = DpTable(p_t, {})
        for x_set in _subsets(p_t):
            if not _independent(g, x_set):
                table.values[x_set] = NEG_INF
                continue
            gadget, child_rec = build_gadget(
                g, weight, d, t, x_set, tables, _orientation=orientation)
            inner = mwis_bounded_ocp(gadget)
            table.values[x_set] = sum(weight[v] for v in x_set) + inner.value
            table.choices[x_set] = (inner.witness, child_rec)
        tables[t] = table

    root_table = tables[root]
    best_val, best_x = NEG_INF, None
    for x_set in sorted(root_table.values, key=lambda s: tuple(sorted(s))):
        val = root_table.values[x_set]
        if val is NEG_INF:
            continue
        if best_val is NEG_INF or val > best_val:
            best_val, best_x = val, x_set

    solution = sorted(_reconstruct(d, tables, children, root, best_x))
    got = sum(weight[v] for v in solution)
    if got != best_val:
        raise AssertionError("reconstructed witness weight differs from table optimum")
    wset = set(solution)
    for u, v in g.edges:
        if u in wset and v in wset:
            raise AssertionError(f"reconstructed witness not independent: ({u},{v})")
    return MwisResult(best_val, tuple(solution))


def _reconstruct(d, tables, children, t, x_set):
    gadget_witness, child_rec = tables[t].choices[x_set]
    beta_t = set(d.beta[t])
    solution = set(x_set)
    solution |= {v for v in gadget_witness if v in beta_t}
    for child in children[t]:
        entry = child_rec[child]
        if entry["v_d"] is not None and entry["v_d"] in gadget_witness:
            child_x = entry["arg_present"]
        else:
            child_x = entry["arg_absent"]
        solution |= _reconstruct(d, tables, children, child, child_x)
    return solution
