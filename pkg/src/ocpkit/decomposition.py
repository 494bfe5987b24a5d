"""Odd-cycle-packing tree-decompositions: validation, width, tameness,
constructions, and exact tiny-instance oracles.

A decomposition is a tree with a bag and an apex set per node.  Besides the
tree-decomposition axioms, every node must satisfy path closure: any path of
the host graph that avoids the node's apex set and has both endpoints in the
bag stays inside the bag.  The width mixes adhesion, apex size, and the odd
cycle packing number of the apex-free part of each bag.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .errors import DecompositionError, GraphStructureError, InstanceTooLarge
from .flow import Dinic
from .graphs import Graph, blocks, two_colouring
from .ocp import ocp_exact
from .treewidth import TreeDecomposition, is_valid_tree_decomposition

EXACT_OCPTW_LIMIT = 6
DECIDE_SMALL_K_LIMIT = 12


@dataclass
class OcpTreeDecomposition:
    nodes: list
    edges: list  # pairs of node ids
    beta: dict  # node -> frozenset of vertices
    alpha: dict  # node -> frozenset of vertices
    root: object = None

    def neighbours(self, t):
        out = []
        for a, b in self.edges:
            if a == t:
                out.append(b)
            elif b == t:
                out.append(a)
        return sorted(out)


@dataclass
class ValidationReport:
    ok: bool
    violation: str = ""

    def __bool__(self):
        return self.ok


def _is_tree(nodes, edges):
    if not nodes:
        return False
    if len(edges) != len(nodes) - 1:
        return False
    adj = {t: [] for t in nodes}
    for a, b in edges:
        if a not in adj or b not in adj or a == b:
            return False
        adj[a].append(b)
        adj[b].append(a)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def _on_bag_to_bag_path(g, comp, bag_in_comp, x):
    """True iff x (in component comp, outside the bag) lies on some path
    between two distinct bag vertices of comp: equivalently there are two
    vertex-disjoint paths from x to distinct bag vertices."""
    net = Dinic()
    src, snk = "S", "T"
    cset = set(comp)
    net.add_edge(src, ("in", x), 2)
    for v in comp:
        net.add_edge(("in", v), ("out", v), 2 if v == x else 1)
    for v in comp:
        for u in g.neighbors(v):
            if u in cset and v not in bag_in_comp:
                net.add_edge(("out", v), ("in", u), 1)
    for s in sorted(bag_in_comp):
        net.add_edge(("out", s), snk, 1)
    return net.max_flow(src, snk) >= 2


def path_closed(g, bag, apex):
    """Path-closure check for one (bag, apex) pair against the whole graph."""
    bag = set(bag)
    apex = set(apex)
    rest = g.without_vertices(apex)
    for comp in rest.components():
        s = [v for v in comp if v in bag]
        if len(s) < 2:
            continue
        sset = set(s)
        for x in comp:
            if x in bag:
                continue
            if _on_bag_to_bag_path(rest, comp, sset, x):
                return False, x, comp
    return True, None, None


def validate(g, d):
    """Exact check of the three decomposition axioms; reports the first
    violation found."""
    if not _is_tree(d.nodes, d.edges):
        return ValidationReport(False, "nodes/edges do not form a tree")
    vset = set(g.vertices)
    for t in d.nodes:
        if t not in d.beta or t not in d.alpha:
            return ValidationReport(False, f"node {t} missing a bag or apex set")
        if not set(d.beta[t]) <= vset:
            return ValidationReport(False, f"bag of node {t} uses unknown vertices")
    covered = set()
    for t in d.nodes:
        covered |= set(d.beta[t])
    if covered != vset:
        missing = sorted(vset - covered)
        return ValidationReport(False, f"vertices not covered by any bag: {missing}")
    for u, v in g.edges:
        if not any(u in d.beta[t] and v in d.beta[t] for t in d.nodes):
            return ValidationReport(False, f"edge ({u},{v}) lies in no bag")
    adj = {t: d.neighbours(t) for t in d.nodes}
    for v in sorted(vset):
        holding = [t for t in d.nodes if v in d.beta[t]]
        hold = set(holding)
        seen = {holding[0]}
        stack = [holding[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in hold and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(holding):
            return ValidationReport(False, f"bags containing vertex {v} are not connected in the tree")
    for t in d.nodes:
        if not set(d.alpha[t]) <= set(d.beta[t]):
            return ValidationReport(False, f"apex set of node {t} is not inside its bag")
    for t in sorted(d.nodes):
        ok, x, comp = path_closed(g, d.beta[t], d.alpha[t])
        if not ok:
            return ValidationReport(
                False,
                f"path closure fails at node {t}: vertex {x} lies on a bag-to-bag "
                f"path outside the bag (component {comp})")
    return ValidationReport(True)


def adhesion(d):
    return max((len(set(d.beta[a]) & set(d.beta[b])) for a, b in d.edges), default=0)


def width(g, d, node_budget=None):
    """Exact width: max of adhesion and per-node apex size plus the odd cycle
    packing number of the apex-free bag part."""
    rep = validate(g, d)
    if not rep:
        raise DecompositionError(f"invalid decomposition: {rep.violation}")
    kwargs = {} if node_budget is None else {"node_budget": node_budget}
    per_node = 0
    for t in d.nodes:
        inner = g.subgraph(set(d.beta[t]) - set(d.alpha[t]))
        per_node = max(per_node, len(d.alpha[t]) + ocp_exact(inner, **kwargs))
    return max(adhesion(d), per_node)


def is_tame(d):
    """Tameness in both orientations of every tree edge: at most one
    adhesion vertex outside the apex set."""
    for a, b in d.edges:
        inter = set(d.beta[a]) & set(d.beta[b])
        if len(inter - set(d.alpha[a])) > 1:
            return False
        if len(inter - set(d.alpha[b])) > 1:
            return False
    return True


def from_tree_decomposition(g, td):
    """Lift a tree-decomposition to a tame OCP-tree-decomposition by keeping a
    single vertex per bag outside the apex set (the smallest one).

    Requires no bag to be a subset of an adjacent bag, which keeps the
    adhesion below the bag sizes; the result validates, is tame, and has
    width at most the input width (with width(td) = max bag size - 1).
    """
    if not is_valid_tree_decomposition(g, td):
        raise DecompositionError("input is not a valid tree-decomposition")
    for a, b in td.edges:
        if td.bags[a] <= td.bags[b] or td.bags[b] <= td.bags[a]:
            raise DecompositionError(
                f"bags of adjacent nodes {a},{b} are comparable; merge them first")
    beta = {}
    alpha = {}
    for t in td.nodes:
        bag = frozenset(td.bags[t])
        beta[t] = bag
        alpha[t] = bag - {min(bag)} if bag else frozenset()
    return OcpTreeDecomposition(list(td.nodes), list(td.edges), beta, alpha)


def g_delta(g):
    """One fresh triangle apex per edge; defined for bipartite inputs."""
    if two_colouring(g) is None:
        raise GraphStructureError("input graph is not bipartite")
    out = Graph(g.vertices)
    nxt = max(g.vertices) + 1 if g.num_vertices() else 0
    for u, v in g.edges:
        out.add_edge(u, v)
        out.add_vertex(nxt)
        out.add_edge(u, nxt)
        out.add_edge(v, nxt)
        nxt += 1
    return out


def _feasible_bags(g, k):
    """All nonempty bags B admitting an apex set A with (B, A) path closed
    and |A| + OCP(G[B - A]) <= k."""
    verts = g.vertices
    out = []
    for r in range(1, len(verts) + 1):
        for comb in combinations(verts, r):
            bag = frozenset(comb)
            if _bag_ok(g, bag, k):
                out.append(bag)
    return out


def _bag_ok(g, bag, k):
    bl = sorted(bag)
    for asz in range(0, min(k, len(bl)) + 1):
        for acomb in combinations(bl, asz):
            apex = frozenset(acomb)
            inner = g.subgraph(bag - apex)
            if asz + ocp_exact(inner, cap=k - asz + 1) > k:
                continue
            if path_closed(g, bag, apex)[0]:
                return True
    return False


def _decide_by_enumeration(g, k):
    """Exhaustive search over decompositions in normal form: trees with at
    most n nodes, adjacent bags incomparable, bags drawn from the feasible
    set, adhesion at most k."""
    verts = g.vertices
    n = len(verts)
    if n == 0:
        return True
    bags = _feasible_bags(g, k)
    if not bags:
        return False
    edge_list = g.edges
    vmin = verts[0]
    start_bags = [b for b in bags if vmin in b]

    def complete(chosen):
        seen = set()
        for b in chosen:
            seen |= b
        if seen != set(verts):
            return False
        for u, v in edge_list:
            if not any(u in b and v in b for b in chosen):
                return False
        return True

    def extend(chosen, parents, seen):
        if complete(chosen):
            return True
        if len(chosen) == n:
            return False
        for parent in range(len(chosen)):
            for b in bags:
                if len(b & chosen[parent]) > k:
                    continue
                if b <= chosen[parent] or chosen[parent] <= b:
                    continue
                if not (b & seen) <= chosen[parent]:
                    continue
                if any(b <= c or c <= b for c in chosen):
                    continue
                new_seen = seen | b
                chosen.append(b)
                parents.append(parent)
                if extend(chosen, parents, new_seen):
                    return True
                chosen.pop()
                parents.pop()
        return False

    for b0 in start_bags:
        if extend([b0], [None], set(b0)):
            return True
    return False


def _blocks_cost_at_most(g, k):
    """OCP-treewidth <= k <= 1 decided through the block structure: with
    adhesion at most 1 every block must fit in a single bag, so the block
    decomposition is optimal and each block needs apex size a and
    OCP(block - apex) with a + OCP <= k."""
    for comp in blocks(g).blocks:
        sub = g.subgraph(comp)
        if k == 0:
            if ocp_exact(sub, cap=1) > 0:
                return False
            continue
        if ocp_exact(sub, cap=2) <= 1:
            continue
        if not any(two_colouring(sub.without_vertices([a])) is not None for a in comp):
            return False
    return True


def decide_ocptw_le(g, k):
    """True iff the OCP-treewidth of g is at most k.

    For k <= 1 the block characterisation decides exactly (practical to
    n = 12); larger k falls back to the exhaustive search (n <= 6).
    """
    if k < 0:
        return g.num_vertices() == 0
    if k <= 1:
        if g.num_vertices() > DECIDE_SMALL_K_LIMIT:
            raise InstanceTooLarge("decide_ocptw_le", DECIDE_SMALL_K_LIMIT, g.num_vertices())
        return _blocks_cost_at_most(g, k)
    if g.num_vertices() > EXACT_OCPTW_LIMIT:
        raise InstanceTooLarge("decide_ocptw_le", EXACT_OCPTW_LIMIT, g.num_vertices())
    return _decide_by_enumeration(g, k)


def exact_ocptw(g):
    """Exact OCP-treewidth by iterative deepening over the width, searching
    canonical decompositions exhaustively at each level (n <= 6)."""
    n = g.num_vertices()
    if n == 0:
        return 0
    if n > EXACT_OCPTW_LIMIT:
        raise InstanceTooLarge("exact_ocptw", EXACT_OCPTW_LIMIT, n)
    # single-bag upper bound: min over apex sets of |A| + OCP(G - A)
    upper = min(len(acomb) + ocp_exact(g.without_vertices(acomb))
                for r in range(0, n + 1)
                for acomb in combinations(g.vertices, r))
    for k in range(0, upper):
        if k <= 1:
            if _blocks_cost_at_most(g, k):
                return k
        elif _decide_by_enumeration(g, k):
            return k
    return upper


def single_bag_decomposition(g, apex=()):
    bag = frozenset(g.vertices)
    return OcpTreeDecomposition([0], [], {0: bag}, {0: frozenset(apex)}, root=0)
