"""Exact treewidth (subset dynamic program) and tree-decompositions from
elimination orders.

The exact oracle serves the upper-bound regression checks and the CLI's
`ocptw upper` mode; the min-fill heuristic produces valid (not necessarily
optimal) decompositions for the larger dynamic-programming test instances.
"""

from dataclasses import dataclass

from .errors import DecompositionError, InstanceTooLarge

EXACT_TW_LIMIT = 14


@dataclass
class TreeDecomposition:
    nodes: list
    edges: list  # pairs of node ids
    bags: dict  # node id -> frozenset of vertices


def is_valid_tree_decomposition(g, td):
    """Checks the three tree-decomposition axioms plus tree shape."""
    nodes = list(td.nodes)
    if not nodes:
        return g.num_vertices() == 0
    if sorted(td.bags) != sorted(nodes):
        return False
    # tree shape
    if len(td.edges) != len(nodes) - 1:
        return False
    adj = {t: [] for t in nodes}
    for a, b in td.edges:
        if a not in adj or b not in adj:
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
    if len(seen) != len(nodes):
        return False
    # coverage and connectivity
    vset = set(g.vertices)
    covered = set()
    for t in nodes:
        if not set(td.bags[t]) <= vset:
            return False
        covered |= set(td.bags[t])
    if covered != vset:
        return False
    for u, v in g.edges:
        if not any(u in td.bags[t] and v in td.bags[t] for t in nodes):
            return False
    for v in g.vertices:
        holding = [t for t in nodes if v in td.bags[t]]
        seen = {holding[0]}
        stack = [holding[0]]
        hold = set(holding)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in hold and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(holding):
            return False
    return True


def width_of(td):
    return max((len(b) for b in td.bags.values()), default=1) - 1


def _neighbour_masks(g):
    verts = g.vertices
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [0] * len(verts)
    for u, v in g.edges:
        nbr[idx[u]] |= 1 << idx[v]
        nbr[idx[v]] |= 1 << idx[u]
    return verts, idx, nbr


def _q_value(nbr, n, smask, v):
    """Number of vertices outside smask|{v} reachable from v through smask."""
    reach = nbr[v] & smask
    seen = reach
    while reach:
        nxt = 0
        r = reach
        while r:
            b = r & (-r)
            i = b.bit_length() - 1
            nxt |= nbr[i]
            r ^= b
        nxt &= smask
        reach = nxt & ~seen
        seen |= nxt
    out = nbr[v]
    r = seen
    while r:
        b = r & (-r)
        i = b.bit_length() - 1
        out |= nbr[i]
        r ^= b
    out &= ~smask & ~(1 << v)
    return bin(out).count("1")


def _tw_table(g):
    n = g.num_vertices()
    if n > EXACT_TW_LIMIT:
        raise InstanceTooLarge("exact_treewidth", EXACT_TW_LIMIT, n)
    verts, _, nbr = _neighbour_masks(g)
    full = (1 << n) - 1
    tw = [0] * (1 << n)
    for smask in range(1, full + 1):
        best = n
        m = smask
        while m:
            b = m & (-m)
            v = b.bit_length() - 1
            rest = smask ^ b
            cand = max(tw[rest], _q_value(nbr, n, rest, v))
            if cand < best:
                best = cand
            m ^= b
        tw[smask] = best
    return verts, nbr, tw


def exact_treewidth(g):
    """Exact treewidth via the elimination-order subset DP (n <= 14)."""
    if g.num_vertices() == 0:
        return 0
    _, _, tw = _tw_table(g)
    return tw[-1]


def exact_elimination_order(g):
    """An elimination order achieving the exact treewidth."""
    n = g.num_vertices()
    if n == 0:
        return []
    verts, nbr, tw = _tw_table(g)
    order = []
    smask = (1 << n) - 1
    while smask:
        pick = None
        for v in range(n):
            if not (smask >> v) & 1:
                continue
            rest = smask ^ (1 << v)
            if max(tw[rest], _q_value(nbr, n, rest, v)) == tw[smask]:
                pick = v
                break
        order.append(verts[pick])
        smask ^= 1 << pick
    order.reverse()
    return order


def min_fill_order(g):
    """Greedy minimum-fill elimination order; smallest id on ties."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    order = []
    remaining = set(g.vertices)
    while remaining:
        best = None
        for v in sorted(remaining):
            nb = adj[v] & remaining
            fill = 0
            nl = sorted(nb)
            for i in range(len(nl)):
                for j in range(i + 1, len(nl)):
                    if nl[j] not in adj[nl[i]]:
                        fill += 1
            key = (fill, len(nb), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        nb = sorted(adj[v] & remaining)
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                adj[nb[i]].add(nb[j])
                adj[nb[j]].add(nb[i])
        order.append(v)
        remaining.discard(v)
    return order


def decomposition_from_order(g, order):
    """Tree-decomposition of width = max back-degree of the order, with
    adjacent-contained bags merged away (so no bag is a subset of a
    neighbouring bag)."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    pos = {v: i for i, v in enumerate(order)}
    bags = {}
    parent_vertex = {}
    for i, v in enumerate(order):
        later = {u for u in adj[v] if pos[u] > i}
        bags[i] = frozenset({v} | later)
        for a in later:
            for b in later:
                if a != b:
                    adj[a].add(b)
        parent_vertex[i] = min(later, key=lambda u: pos[u]) if later else None
    nodes = list(range(len(order)))
    edges = []
    for i in nodes:
        pv = parent_vertex[i]
        if pv is not None:
            edges.append((i, pos[pv]))
        elif i + 1 < len(nodes):
            edges.append((i, i + 1))
    td = TreeDecomposition(nodes, edges, bags)
    return _merge_contained(td)


def _merge_contained(td):
    """Contract tree edges whose bags are comparable, keeping the larger."""
    nodes = set(td.nodes)
    bags = dict(td.bags)
    adj = {t: set() for t in nodes}
    for a, b in td.edges:
        adj[a].add(b)
        adj[b].add(a)
    changed = True
    while changed:
        changed = False
        for a in sorted(nodes):
            merged = False
            for b in sorted(adj[a]):
                if bags[a] <= bags[b] or bags[b] <= bags[a]:
                    keep, drop = (a, b) if len(bags[a]) >= len(bags[b]) else (b, a)
                    for x in adj[drop]:
                        if x != keep:
                            adj[x].discard(drop)
                            adj[x].add(keep)
                            adj[keep].add(x)
                    adj[keep].discard(drop)
                    nodes.discard(drop)
                    del bags[drop], adj[drop]
                    changed = True
                    merged = True
                    break
            if merged:
                break
    ordered = sorted(nodes)
    relabel = {t: i for i, t in enumerate(ordered)}
    edges = sorted({(min(relabel[a], relabel[b]), max(relabel[a], relabel[b]))
                    for a in nodes for b in adj[a]})
    return TreeDecomposition(list(range(len(ordered))),
                             edges, {relabel[t]: bags[t] for t in ordered})


def optimal_tree_decomposition(g):
    """Exact-width tree-decomposition for n <= 14."""
    if g.num_vertices() == 0:
        return TreeDecomposition([0], [], {0: frozenset()})
    return decomposition_from_order(g, exact_elimination_order(g))


def heuristic_tree_decomposition(g):
    """Valid tree-decomposition from the min-fill order (any size)."""
    if g.num_vertices() == 0:
        return TreeDecomposition([0], [], {0: frozenset()})
    return decomposition_from_order(g, min_fill_order(g))
