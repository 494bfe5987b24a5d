"""Exact maximum weight independent set solvers.

Three backends: a subset brute force (the oracle), a Koenig/max-flow solver
for bipartite graphs, and an odd-cycle include/exclude branch and bound whose
base case is the bipartite solver.  All weights are non-negative integers.
"""

from dataclasses import dataclass

from .errors import BudgetExceeded, GraphStructureError, InstanceTooLarge
from .flow import Dinic
from .graphs import shortest_odd_cycle, two_colouring

BRUTEFORCE_LIMIT = 24
DEFAULT_NODE_BUDGET = 10_000_000
WEIGHT_MAGNITUDE_LIMIT = 1 << 62


@dataclass
class WeightedGraph:
    graph: object
    weight: dict

    def __post_init__(self):
        for v in self.graph.vertices:
            if v not in self.weight:
                raise GraphStructureError(f"vertex {v} has no weight")
            if self.weight[v] < 0:
                raise GraphStructureError(f"vertex {v} has negative weight")
        total = sum(self.weight[v] for v in self.graph.vertices)
        if total >= WEIGHT_MAGNITUDE_LIMIT:
            raise GraphStructureError("total weight too large for 64-bit arithmetic")

    def total(self):
        return sum(self.weight[v] for v in self.graph.vertices)


@dataclass
class MwisResult:
    value: int
    witness: tuple  # sorted vertex ids

    def __iter__(self):
        return iter((self.value, self.witness))


def _check_witness(wg, res):
    wset = set(res.witness)
    for u, v in wg.graph.edges:
        if u in wset and v in wset:
            raise AssertionError(f"witness not independent: edge ({u},{v})")
    if sum(wg.weight[v] for v in wset) != res.value:
        raise AssertionError("witness weight differs from reported value")
    return res


def mwis_bruteforce(wg):
    """Exact optimum over all subsets; lexicographically smallest witness on
    value ties.  Limited to 24 vertices."""
    g = wg.graph
    n = g.num_vertices()
    if n > BRUTEFORCE_LIMIT:
        raise InstanceTooLarge("mwis_bruteforce", BRUTEFORCE_LIMIT, n)
    verts = g.vertices
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [0] * n
    for u, v in g.edges:
        nbr[idx[u]] |= 1 << idx[v]
        nbr[idx[v]] |= 1 << idx[u]
    weights = [wg.weight[v] for v in verts]

    best_value = -1
    best_witness = None

    def rec(i, avail, value, taken):
        nonlocal best_value, best_witness
        if value + sum(weights[j] for j in range(i, n) if (avail >> j) & 1) < best_value:
            return
        if i == n:
            witness = tuple(verts[j] for j in range(n) if (taken >> j) & 1)
            cand = (-value, witness)
            if best_witness is None or cand < (-best_value, best_witness):
                best_value, best_witness = value, witness
            return
        if not (avail >> i) & 1:
            rec(i + 1, avail, value, taken)
            return
        # include first so good incumbents arrive early
        rec(i + 1, avail & ~nbr[i] & ~(1 << i), value + weights[i], taken | (1 << i))
        rec(i + 1, avail & ~(1 << i), value, taken)

    rec(0, (1 << n) - 1, 0, 0)
    return _check_witness(wg, MwisResult(best_value, best_witness))


def mwis_bipartite(wg):
    """Exact optimum on bipartite graphs: total weight minus a minimum-weight
    vertex cover, via max flow; the witness comes from the minimum cut."""
    g = wg.graph
    col = two_colouring(g)
    if col is None:
        raise GraphStructureError("graph is not bipartite")
    side_a = [v for v in g.vertices if col[v] == 0]
    side_b = [v for v in g.vertices if col[v] == 1]
    net = Dinic()
    src, snk = "S", "T"
    for a in side_a:
        net.add_edge(src, ("v", a), wg.weight[a])
    for b in side_b:
        net.add_edge(("v", b), snk, wg.weight[b])
    for u, v in g.edges:
        a, b = (u, v) if col[u] == 0 else (v, u)
        net.add_edge(("v", a), ("v", b), float("inf"))
    cut = net.max_flow(src, snk)
    reach = net.min_cut_source_side(src)
    witness = sorted([a for a in side_a if ("v", a) in reach]
                     + [b for b in side_b if ("v", b) not in reach])
    value = wg.total() - cut
    return _check_witness(wg, MwisResult(value, tuple(witness)))


def _bipartite_relaxation_value(wg):
    """Admissible upper bound: drop the edges a greedy 2-colouring leaves
    monochromatic, then solve the bipartite remainder exactly."""
    from .graphs import Graph

    g = wg.graph
    colour = {}
    for s in g.vertices:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    stack.append(y)
    h = Graph(g.vertices)
    for u, v in g.edges:
        if colour[u] != colour[v]:
            h.add_edge(u, v)
    return mwis_bipartite(WeightedGraph(h, dict(wg.weight))).value


def mwis_bounded_ocp(wg, node_budget=DEFAULT_NODE_BUDGET):
    """Exact optimum on any graph: branch include/exclude on a vertex of a
    shortest odd cycle; bipartite leaves are solved by max flow.  Exactness is
    unconditional, runtime degrades with the odd cycle structure."""
    budget = [node_budget]
    best = {"value": -1, "witness": None}

    def rec(g, gained, taken):
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded("mwis_bounded_ocp", node_budget)
        cyc = shortest_odd_cycle(g)
        sub = WeightedGraph(g, {v: wg.weight[v] for v in g.vertices})
        if cyc is None:
            res = mwis_bipartite(sub)
            value = gained + res.value
            witness = tuple(sorted(taken + list(res.witness)))
            cand = (-value, witness)
            if best["witness"] is None or cand < (-best["value"], best["witness"]):
                best["value"], best["witness"] = value, witness
            return
        if gained + _bipartite_relaxation_value(sub) < best["value"]:
            return
        v = min(cyc)
        closed = [v] + g.neighbors(v)
        rec(g.without_vertices(closed), gained + wg.weight[v], taken + [v])
        rec(g.without_vertices([v]), gained, taken)

    rec(wg.graph, 0, [])
    return _check_witness(wg, MwisResult(best["value"], best["witness"]))
