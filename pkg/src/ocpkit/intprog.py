"""Reduction pipeline from two-nonzero {-1,0,1} integer programs to maximum
weight independent set, with exact rational bounding, positive-coefficient
rewriting, equality elimination through objective penalties, half-integral
rounding, trivial-constraint cleanup, and solution lifting.

All stages are exact over integers/rationals and deterministic; every
transform appends a JSON-serialisable record to the reduction trace so that
answers can be lifted back and audited.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InstanceTooLarge, PipelineError
from .graphs import Graph, SignedGraph
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, lp_solve
from .mwis import WeightedGraph
from .ocp import ocp_exact_signed

SUBDET_DIM_LIMIT = 7
ILP_ENUM_LIMIT = 10_000_000


@dataclass
class IntegerProgram:
    """max w^T x subject to row constraints (<= or =) and integer bounds;
    None stands for an infinite bound."""

    num_vars: int
    rows: list  # list of {col: coef}
    rels: list  # "le" | "eq" per row
    b: list
    w: list
    lower: list
    upper: list

    def copy(self):
        return IntegerProgram(self.num_vars, [dict(r) for r in self.rows],
                              list(self.rels), list(self.b), list(self.w),
                              list(self.lower), list(self.upper))

    def check_shape(self):
        m = len(self.rows)
        if not (len(self.rels) == len(self.b) == m):
            raise PipelineError("input", "row data lengths disagree")
        if not (len(self.w) == len(self.lower) == len(self.upper) == self.num_vars):
            raise PipelineError("input", "column data lengths disagree")
        for r in self.rows:
            for j in r:
                if not (0 <= j < self.num_vars):
                    raise PipelineError("input", f"coefficient on unknown column {j}")


@dataclass
class SignedIncidence:
    graph: SignedGraph
    edge_rows: list  # (row index, edge id, col u, col v, coef u, coef v)
    bound_rows: list  # (row index, col, coef)
    constant_rows: list  # (row index,)


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)

    def add(self, stage, **data):
        self.steps.append({"stage": stage, **data})

    def to_json(self):
        def enc(v):
            if isinstance(v, Fraction):
                return f"{v.numerator}/{v.denominator}"
            if isinstance(v, frozenset):
                return sorted(v)
            if isinstance(v, dict):
                return {str(k): enc(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v

        return [enc(s) for s in self.steps]


def recognize(ip):
    """Classify the rows of a {-1,0,1} matrix with at most two nonzeros per
    row into signed-graph edges (same signs odd, opposite signs even), bound
    rows, and constant rows."""
    ip.check_shape()
    sg = SignedGraph(range(ip.num_vars))
    edge_rows = []
    bound_rows = []
    constant_rows = []
    for i, row in enumerate(ip.rows):
        nz = sorted((j, c) for j, c in row.items() if c != 0)
        for j, c in nz:
            if c not in (-1, 1):
                raise PipelineError(
                    "recognize",
                    f"entry {c} at row {i}, column {j} is outside {{-1,0,1}}; "
                    "fold loops and scaled rows into the bounds first")
        if len(nz) > 2:
            raise PipelineError("recognize", f"row {i} has more than two nonzeros")
        if len(nz) == 2:
            (u, cu), (v, cv) = nz
            label = 1 if cu == cv else 0
            eid = sg.add_edge(u, v, label)
            edge_rows.append((i, eid, u, v, cu, cv))
        elif len(nz) == 1:
            bound_rows.append((i, nz[0][0], nz[0][1]))
        else:
            constant_rows.append((i,))
    return SignedIncidence(sg, edge_rows, bound_rows, constant_rows)


def _support_signed_graph(rows, num_vars):
    """Signed graph of the 2-nonzero rows of the signed support; large
    entries only matter through their signs here."""
    sg = SignedGraph(range(num_vars))
    for row in rows:
        nz = sorted((j, c) for j, c in row.items() if c != 0)
        if len(nz) == 2:
            (u, cu), (v, cv) = nz
            sg.add_edge(u, v, 1 if (cu > 0) == (cv > 0) else 0)
    return sg


def subdet_bound(ip, node_budget=None):
    """Upper bound 2^OCP * ||A||_inf^k on every subdeterminant magnitude,
    where OCP is taken over the signed support of the two-nonzero rows and k
    counts columns holding entries outside {-1,0,1}."""
    for row in ip.rows:
        if sum(1 for c in row.values() if c) > 2:
            raise PipelineError("subdet_bound", "a row has more than two nonzeros")
    norm = max((abs(c) for row in ip.rows for c in row.values()), default=0)
    big_cols = {j for row in ip.rows for j, c in row.items() if abs(c) > 1}
    sg = _support_signed_graph(ip.rows, ip.num_vars)
    kwargs = {} if node_budget is None else {"node_budget": node_budget}
    ocp = ocp_exact_signed(sg, **kwargs)
    return (2 ** ocp) * (norm ** len(big_cols) if norm else 1)


def _bareiss_det(mat):
    """Exact integer determinant by fraction-free elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def max_abs_subdeterminant(matrix):
    """Exact maximum |det| over all square submatrices (min dimension <= 7)."""
    from itertools import combinations

    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if min(m, n) > SUBDET_DIM_LIMIT:
        raise InstanceTooLarge("max_abs_subdeterminant", SUBDET_DIM_LIMIT, min(m, n))
    best = 0
    for k in range(1, min(m, n) + 1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                sub = [[matrix[i][j] for j in cols] for i in rows]
                best = max(best, abs(_bareiss_det(sub)))
    return best


def ip_matrix(ip):
    return [[ip.rows[i].get(j, 0) for j in range(ip.num_vars)]
            for i in range(len(ip.rows))]


# ---------------------------------------------------------------------------
# pipeline stages
# ---------------------------------------------------------------------------


def normalize(ip, trace):
    """Gate keeping: entries in {-1,0,1}; equalities split into opposite
    inequalities; bound and constant rows folded away; every surviving row
    has exactly two nonzeros."""
    ip = ip.copy()
    ip.check_shape()
    for j in range(ip.num_vars):
        lo, hi = ip.lower[j], ip.upper[j]
        if lo is not None and hi is not None and lo > hi:
            trace.add("normalize", infeasible=f"empty bound interval on column {j}")
            return None
    rows = []
    rels = []
    rhs = []
    for i, row in enumerate(ip.rows):
        nz = {j: c for j, c in row.items() if c != 0}
        for j, c in nz.items():
            if c not in (-1, 1):
                raise PipelineError(
                    "normalize",
                    f"entry {c} at row {i}, column {j} outside {{-1,0,1}}; "
                    "odd loops must be folded into the bounds by the caller")
        if len(nz) > 2:
            raise PipelineError("normalize", f"row {i} has more than two nonzeros")
        variants = [(nz, ip.b[i])]
        if ip.rels[i] == "eq":
            variants.append(({j: -c for j, c in nz.items()}, -ip.b[i]))
        for coeffs, bb in variants:
            if len(coeffs) == 0:
                if 0 > bb:
                    trace.add("normalize", infeasible=f"constant row {i} is violated")
                    return None
                continue
            if len(coeffs) == 1:
                ((j, c),) = coeffs.items()
                if c == 1:
                    ip.upper[j] = bb if ip.upper[j] is None else min(ip.upper[j], bb)
                else:
                    ip.lower[j] = -bb if ip.lower[j] is None else max(ip.lower[j], -bb)
                continue
            rows.append(coeffs)
            rels.append("le")
            rhs.append(bb)
    for j in range(ip.num_vars):
        lo, hi = ip.lower[j], ip.upper[j]
        if lo is not None and hi is not None and lo > hi:
            trace.add("normalize", infeasible=f"bounds cross on column {j} after folding")
            return None
    out = IntegerProgram(ip.num_vars, rows, rels, rhs, list(ip.w),
                         list(ip.lower), list(ip.upper))
    trace.add("normalize", original_rows=len(ip.rows), kept_rows=len(rows))
    return out


def _lp_data(ip, objective):
    rows = [[row.get(j, 0) for j in range(ip.num_vars)] for row in ip.rows]
    return rows, list(ip.b), list(ip.lower), list(ip.upper), objective


def bound_variables(ip, trace, objective=None):
    """Clamp every variable into a finite window around an LP optimum using
    the subdeterminant bound; the window provably contains an optimal integer
    point whenever one exists.

    Returns (status, ip).  status "optimal" means bounded and ready;
    "infeasible"/"unbounded" end the pipeline.
    """
    w = objective if objective is not None else ip.w
    res = lp_solve(*_lp_data(ip, w))
    if res.status == INFEASIBLE:
        trace.add("bound_variables", status=INFEASIBLE)
        return INFEASIBLE, None
    if res.status == UNBOUNDED:
        trace.add("bound_variables", status=UNBOUNDED)
        return UNBOUNDED, None
    n = ip.num_vars
    delta_ocp = subdet_bound(ip)
    hadamard = max(1, math.isqrt(n ** n) + 1)
    delta = max(1, min(delta_ocp, hadamard))
    radius = n * delta
    lower = list(ip.lower)
    upper = list(ip.upper)
    for j in range(n):
        xf = res.x[j]
        wlo = math.floor(xf - radius)
        whi = math.ceil(xf + radius)
        lower[j] = wlo if lower[j] is None else max(lower[j], wlo)
        upper[j] = whi if upper[j] is None else min(upper[j], whi)
        if lower[j] > upper[j]:
            # the LP point respects the original bounds, so the crossing can
            # only come from an empty original interval caught earlier
            trace.add("bound_variables", status=INFEASIBLE)
            return INFEASIBLE, None
    out = IntegerProgram(n, [dict(r) for r in ip.rows], list(ip.rels), list(ip.b),
                         list(ip.w), lower, upper)
    trace.add("bound_variables", status=OPTIMAL, delta=delta, radius=radius,
              lp_point=[str(v) for v in res.x])
    return OPTIMAL, out


def to_positive_coefficients(ip, trace):
    """Rewrite mixed-sign and all-negative rows with fresh variables so that
    every row is x_i + x_j <= b or x_i + x_j = 0 with {0,1} coefficients;
    parallel inequality rows keep the strictest right-hand side."""
    for j in range(ip.num_vars):
        if ip.lower[j] is None or ip.upper[j] is None:
            raise PipelineError("to_positive_coefficients", f"column {j} is unbounded")
    num = ip.num_vars
    w = list(ip.w)
    lower = list(ip.lower)
    upper = list(ip.upper)
    fresh = []  # (fresh var, negated original)
    le_rows = {}
    eq_rows = []

    def add_le(u, v, bb):
        key = (min(u, v), max(u, v))
        if key in le_rows:
            le_rows[key] = min(le_rows[key], bb)
        else:
            le_rows[key] = bb

    def new_var(negated_of):
        nonlocal num
        j = num
        num += 1
        w.append(0)
        lower.append(-upper[negated_of])
        upper.append(-lower[negated_of])
        fresh.append((j, negated_of))
        return j

    for row, bb in zip(ip.rows, ip.b):
        nz = sorted((j, c) for j, c in row.items() if c != 0)
        (u, cu), (v, cv) = nz
        if cu == 1 and cv == 1:
            add_le(u, v, bb)
        elif cu == -1 and cv == -1:
            z = new_var(u)
            zp = new_var(v)
            add_le(z, zp, bb)
            eq_rows.append((u, z))
            eq_rows.append((v, zp))
        else:
            pos, neg = (u, v) if cu == 1 else (v, u)
            y = new_var(neg)
            add_le(pos, y, bb)
            eq_rows.append((neg, y))

    rows = []
    rels = []
    rhs = []
    for (u, v), bb in sorted(le_rows.items()):
        rows.append({u: 1, v: 1})
        rels.append("le")
        rhs.append(bb)
    eq_start = len(rows)
    for (u, v) in eq_rows:
        rows.append({u: 1, v: 1})
        rels.append("eq")
        rhs.append(0)
    out = IntegerProgram(num, rows, rels, rhs, w, lower, upper)
    trace.add("to_positive_coefficients", fresh=[list(f) for f in fresh],
              le_rows=eq_start, eq_rows=len(eq_rows))
    return out, fresh


def eliminate_equalities(ip, trace):
    """Replace equality rows by inequalities after adding the penalty
    mu = sum |w_j|(u_j - l_j) + 1 to the objective along the equality rows;
    any optimum of the penalised program is feasible for the equalities
    whenever any integer point of the original region is."""
    mu = sum(abs(ip.w[j]) * (ip.upper[j] - ip.lower[j]) for j in range(ip.num_vars)) + 1
    col_count = [0] * ip.num_vars
    eq_rows = []
    rows = []
    rels = []
    rhs = []
    for row, rel, bb in zip(ip.rows, ip.rels, ip.b):
        rows.append(dict(row))
        rels.append("le")
        rhs.append(bb)
        if rel == "eq":
            eq_rows.append((dict(row), bb))
            for j, c in row.items():
                col_count[j] += c
    w_bar = [ip.w[j] + mu * col_count[j] for j in range(ip.num_vars)]
    out = IntegerProgram(ip.num_vars, rows, rels, rhs, w_bar,
                         list(ip.lower), list(ip.upper))
    trace.add("eliminate_equalities", mu=mu, eq_rows=len(eq_rows))
    return out, mu, w_bar, eq_rows


@dataclass
class MwisHandoff:
    """Cleaned instance: a simple graph whose rows all read x_u + x_v <= 1,
    plus everything needed to lift a solution back."""

    graph: Graph
    weights: dict  # non-negative, for the MWIS backend
    assignments: dict  # var -> 0/1 fixed during cleanup
    translation: list  # floor of the extremal LP point
    x_star: list  # the extremal LP point itself (Fractions)
    stage_ip: object  # the bounded all-<= program the rounding argument is about


def round_and_clean(ip, trace):
    """Solve the relaxation to an extremal, half-integral point; translate by
    its floor; restrict to {0,1}; remove trivial constraints, fixing or
    killing variables; hand the remaining rhs-1 rows over as a graph.

    Returns ("infeasible", None) or ("ok", MwisHandoff)."""
    res = lp_solve(*_lp_data(ip, ip.w))
    if res.status == INFEASIBLE:
        trace.add("round_and_clean", status=INFEASIBLE)
        return INFEASIBLE, None
    if res.status == UNBOUNDED:
        raise PipelineError("round_and_clean", "bounded program reported unbounded")
    x_star = res.x
    for v in x_star:
        if (2 * v).denominator != 1:
            raise PipelineError("round_and_clean",
                                f"extremal point is not half-integral: {v}")
    translation = [math.floor(v) for v in x_star]
    n = ip.num_vars

    lower = [max(ip.lower[j] - translation[j], 0) for j in range(n)]
    upper = [min(ip.upper[j] - translation[j], 1) for j in range(n)]
    pair_rows = {}
    for row, bb in zip(ip.rows, ip.b):
        items = sorted(row.items())
        (u, _), (v, _) = items
        shifted = bb - translation[u] - translation[v]
        key = (u, v)
        pair_rows[key] = min(pair_rows.get(key, shifted), shifted)

    assignments = {}

    def assign(j, val):
        if j in assignments:
            return assignments[j] == val
        if val < lower[j] or val > upper[j]:
            return False
        assignments[j] = val
        return True

    for j in range(n):
        if lower[j] > upper[j]:
            trace.add("round_and_clean", status=INFEASIBLE,
                      reason=f"bounds cross on column {j}")
            return INFEASIBLE, None
        if lower[j] == upper[j]:
            if not assign(j, lower[j]):
                trace.add("round_and_clean", status=INFEASIBLE)
                return INFEASIBLE, None

    edges = {k: v for k, v in pair_rows.items()}
    changed = True
    while changed:
        changed = False
        for (u, v), bb in sorted(edges.items()):
            known = (u in assignments) + (v in assignments)
            if known == 2:
                if assignments[u] + assignments[v] > bb:
                    trace.add("round_and_clean", status=INFEASIBLE,
                              reason=f"row on ({u},{v}) violated by fixings")
                    return INFEASIBLE, None
                del edges[(u, v)]
                changed = True
                break
            if known == 1:
                fixed, free = (u, v) if u in assignments else (v, u)
                rem = bb - assignments[fixed]
                if rem < 0:
                    trace.add("round_and_clean", status=INFEASIBLE,
                              reason=f"row on ({u},{v}) violated")
                    return INFEASIBLE, None
                if rem == 0:
                    if not assign(free, 0):
                        trace.add("round_and_clean", status=INFEASIBLE)
                        return INFEASIBLE, None
                del edges[(u, v)]
                changed = True
                break
            if bb < 0:
                trace.add("round_and_clean", status=INFEASIBLE,
                          reason=f"row on ({u},{v}) has negative slack")
                return INFEASIBLE, None
            if bb == 0:
                if not (assign(u, 0) and assign(v, 0)):
                    trace.add("round_and_clean", status=INFEASIBLE)
                    return INFEASIBLE, None
                del edges[(u, v)]
                changed = True
                break
            if bb >= 2:
                del edges[(u, v)]
                changed = True
                break

    # fixing a variable to 1 kills its neighbours: handled implicitly above
    # through the rem == 0 branch once the assignment lands

    # a negative-weight {0,1} variable is never worth raising: zeroing it
    # keeps every row feasible, so fix it and keep the backend weights
    # non-negative
    for j in range(n):
        if j not in assignments and ip.w[j] < 0:
            assignments[j] = 0
    free = [j for j in range(n) if j not in assignments]
    g = Graph(free)
    for (u, v), bb in sorted(edges.items()):
        if u in assignments or v in assignments:
            rem = bb - assignments.get(u, 0) - assignments.get(v, 0)
            if rem < 0:
                trace.add("round_and_clean", status=INFEASIBLE)
                return INFEASIBLE, None
            continue
        g.add_edge(u, v)
    weights = {j: ip.w[j] for j in free}
    trace.add("round_and_clean", translation=translation,
              x_star=[str(v) for v in x_star],
              fixed={str(j): v for j, v in sorted(assignments.items())},
              graph_vertices=len(free), graph_edges=g.num_edges())
    handoff = MwisHandoff(g, weights, assignments, translation, x_star, ip)
    return "ok", handoff


def lift_solution(handoff, chosen):
    """Values of the stage variables given the chosen MWIS vertex set."""
    n = handoff.stage_ip.num_vars
    x = [None] * n
    chosen = set(chosen)
    for j in range(n):
        if j in handoff.assignments:
            x[j] = handoff.assignments[j] + handoff.translation[j]
        else:
            x[j] = (1 if j in chosen else 0) + handoff.translation[j]
    return x


@dataclass
class IpAnswer:
    status: str  # optimal | infeasible | unbounded
    x: list = None
    value: int = None
    trace: ReductionTrace = None
    mwis_size: tuple = None  # (vertices, edges) of the final handoff graph


def ilp_bruteforce(ip):
    """Exhaustive enumeration over the bound box (product of ranges capped at
    1e7 points); the first optimum in lexicographic order wins."""
    from itertools import product

    ip.check_shape()
    size = 1
    ranges = []
    for j in range(ip.num_vars):
        lo, hi = ip.lower[j], ip.upper[j]
        if lo is None or hi is None:
            raise PipelineError("ilp_bruteforce", f"column {j} is unbounded")
        if lo > hi:
            return IpAnswer("infeasible")
        size *= hi - lo + 1
        if size > ILP_ENUM_LIMIT:
            raise InstanceTooLarge("ilp_bruteforce", ILP_ENUM_LIMIT, size)
        ranges.append(range(lo, hi + 1))
    best = None
    best_x = None
    for pt in product(*ranges):
        ok = True
        for row, rel, bb in zip(ip.rows, ip.rels, ip.b):
            lhs = sum(c * pt[j] for j, c in row.items())
            if rel == "le":
                if lhs > bb:
                    ok = False
                    break
            else:
                if lhs != bb:
                    ok = False
                    break
        if not ok:
            continue
        val = sum(ip.w[j] * pt[j] for j in range(ip.num_vars))
        if best is None or val > best:
            best = val
            best_x = list(pt)
    if best is None:
        return IpAnswer("infeasible")
    return IpAnswer("optimal", best_x, best)


def _solve_mwis_handoff(handoff, decomposition=None, dp_limit=6):
    """Solve the cleaned instance; a decomposition route is used when one is
    supplied or derivable at toy scale, otherwise the bounded-OCP solver."""
    from .decomposition import from_tree_decomposition
    from .dp import dp_solve
    from .mwis import mwis_bounded_ocp
    from .treewidth import optimal_tree_decomposition

    wg = WeightedGraph(handoff.graph, dict(handoff.weights))
    if decomposition is not None:
        return dp_solve(wg, decomposition), "dp(supplied)"
    n = handoff.graph.num_vertices()
    if 0 < n <= dp_limit and handoff.graph.num_edges() > 0:
        td = optimal_tree_decomposition(handoff.graph)
        d = from_tree_decomposition(handoff.graph, td)
        return dp_solve(wg, d), "dp(derived)"
    return mwis_bounded_ocp(wg), "bounded-ocp"


def solve_ip(ip, decomposition=None, dp_limit=6):
    """Full chain: normalize, bound, rewrite positive, eliminate equalities,
    round and clean, solve the independent-set core, lift, and re-check the
    equalities; the answer is stated in the original variables."""
    trace = ReductionTrace()
    ip.check_shape()
    ip0 = ip
    norm = normalize(ip, trace)
    if norm is None:
        return IpAnswer("infeasible", trace=trace)

    status, bounded = bound_variables(norm, trace)
    if status == INFEASIBLE:
        return IpAnswer("infeasible", trace=trace)
    if status == UNBOUNDED:
        # decide integer feasibility with the zero objective
        zero = [0] * norm.num_vars
        st2, bounded0 = bound_variables(norm, trace, objective=zero)
        if st2 != OPTIMAL:
            return IpAnswer("infeasible", trace=trace)
        probe = bounded0.copy()
        probe.w = zero
        feas = _run_bounded_pipeline(probe, trace, decomposition, dp_limit)
        if feas.status == "optimal":
            return IpAnswer("unbounded", trace=trace)
        return IpAnswer("infeasible", trace=trace)

    answer = _run_bounded_pipeline(bounded, trace, decomposition, dp_limit)
    if answer.status != "optimal":
        return answer
    # state the answer against the original program
    x = answer.x[: ip0.num_vars]
    for i, (row, rel, bb) in enumerate(zip(ip0.rows, ip0.rels, ip0.b)):
        lhs = sum(c * x[j] for j, c in row.items())
        if rel == "le" and lhs > bb:
            raise PipelineError("lift", f"lifted point violates row {i}")
        if rel == "eq" and lhs != bb:
            raise PipelineError("lift", f"lifted point violates equality row {i}")
    value = sum(ip0.w[j] * x[j] for j in range(ip0.num_vars))
    trace.add("answer", status="optimal", value=value, x=x)
    return IpAnswer("optimal", x, value, trace, answer.mwis_size)


def _run_bounded_pipeline(ip, trace, decomposition, dp_limit):
    """Stages after bounding; `ip` has finite bounds and only <= rows of two
    nonzeros.  Output x is in the stage-variable space (original columns
    first)."""
    positive, fresh = to_positive_coefficients(ip, trace)
    penalised, mu, w_bar, eq_rows = eliminate_equalities(positive, trace)
    status, handoff = round_and_clean(penalised, trace)
    if status == INFEASIBLE:
        return IpAnswer("infeasible", trace=trace)
    res, backend = _solve_mwis_handoff(handoff, decomposition, dp_limit)
    x_stage = lift_solution(handoff, res.witness)
    trace.add("mwis", backend=backend, value=res.value,
              witness=list(res.witness))
    # the penalty construction makes any optimum satisfy the equalities
    # whenever some integer point does, so a violation proves infeasibility
    for row, bb in eq_rows:
        lhs = sum(c * x_stage[j] for j, c in row.items())
        if lhs != bb:
            trace.add("equality_guard", status=INFEASIBLE,
                      row={str(j): c for j, c in row.items()}, rhs=bb)
            return IpAnswer("infeasible", trace=trace)
    for row, bb in zip(penalised.rows, penalised.b):
        lhs = sum(c * x_stage[j] for j, c in row.items())
        if lhs > bb:
            raise PipelineError("lift", "stage point violates a <= row")
    return IpAnswer("optimal", x_stage, None, trace,
                    (handoff.graph.num_vertices(), handoff.graph.num_edges()))
