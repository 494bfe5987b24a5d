"""Exact odd cycle packing via branch and bound.

The engine works on signed multigraphs; plain graphs are handled as the
all-odd signing, whose odd cycles are exactly the odd-length cycles.

Branching: pick a pivot vertex v on a shortest odd cycle.  Any optimal
packing either avoids v entirely (delete branch) or uses v inside a member,
and that member can be assumed to be a minimal non-bipartite vertex set
through v (shrinking a member to the vertex set of a shortest odd cycle
inside its own territory never hurts).  Minimal sets through v are exactly
vertex sets of induced odd cycles through v and are enumerated by a DFS that
keeps the induced prefix free of odd cycles.  Taking each candidate or
deleting v is an exhaustive case split.

Practical limit: instances beyond roughly 40 vertices may exhaust the node
budget; the search then refuses with BudgetExceeded rather than returning a
bound.
"""

from .errors import BudgetExceeded
from .graphs import all_odd, shortest_odd_cycle_signed

DEFAULT_NODE_BUDGET = 10_000_000


class _Budget:
    __slots__ = ("left",)

    def __init__(self, n):
        self.left = n

    def spend(self, k=1):
        self.left -= k
        if self.left < 0:
            raise BudgetExceeded("ocp_exact", "configured")


def ocp_exact(g, cap=None, node_budget=DEFAULT_NODE_BUDGET):
    """Exact odd cycle packing number of a simple graph.

    With cap set, the search stops as soon as `cap` disjoint odd cycles are
    found and min(OCP(g), cap) is returned.
    """
    return ocp_exact_signed(all_odd(g), cap=cap, node_budget=node_budget)


def ocp_exact_signed(sg, cap=None, node_budget=DEFAULT_NODE_BUDGET):
    """Exact odd cycle packing number of a signed multigraph (odd loops and
    odd digons count as cycles of length 1 and 2)."""
    budget = _Budget(node_budget)
    total = 0
    for comp in _components_signed(sg):
        if cap is not None and total >= cap:
            return cap
        sub_cap = None if cap is None else cap - total
        total += _solve_component(comp, sub_cap, budget)
    if cap is not None:
        return min(total, cap)
    return total


def _components_signed(sg):
    adj = {v: set() for v in sg.vertices}
    for _, u, v, _lab in sg.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    seen = set()
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append(_induced(sg, comp))
    return out


def _induced(sg, keep):
    from .graphs import SignedGraph

    sub = SignedGraph(v for v in sg.vertices if v in keep)
    for _, u, v, lab in sg.edges:
        if u in keep and v in keep:
            sub.add_edge(u, v, lab)
    return sub


def _reduce(sg):
    """Drop even loops and iteratively strip vertices that cannot lie on any
    odd cycle for degree reasons (at most one non-loop edge, no odd loop)."""
    from .graphs import SignedGraph

    keep = set(sg.vertices)
    edges = [(u, v, lab) for _, u, v, lab in sg.edges if not (u == v and lab == 0)]
    changed = True
    while changed:
        changed = False
        deg = {v: 0 for v in keep}
        loops = {v: 0 for v in keep}
        for u, v, lab in edges:
            if u not in keep or v not in keep:
                continue
            if u == v:
                loops[u] += 1
            else:
                deg[u] += 1
                deg[v] += 1
        for v in sorted(keep):
            if loops[v] == 0 and deg[v] <= 1:
                keep.discard(v)
                changed = True
    sub = SignedGraph(sorted(keep))
    for u, v, lab in edges:
        if u in keep and v in keep:
            sub.add_edge(u, v, lab)
    return sub


def _greedy_transversal_bound(sg, budget):
    """Size of a greedily built odd cycle transversal; an upper bound on OCP."""
    h = sg
    count = 0
    while True:
        budget.spend()
        cyc = shortest_odd_cycle_signed(h)
        if cyc is None:
            return count
        # delete the cycle vertex of maximum degree, smallest id on ties
        deg = {v: 0 for v in h.vertices}
        for _, u, v, _lab in h.edges:
            deg[u] += 1
            if u != v:
                deg[v] += 1
        pick = max(sorted(cyc), key=lambda v: deg[v])
        h = h.without_vertices([pick])
        count += 1


def _greedy_packing(sg, budget):
    """Greedy disjoint packing by repeatedly removing a shortest odd cycle."""
    h = sg
    count = 0
    while True:
        budget.spend()
        cyc = shortest_odd_cycle_signed(h)
        if cyc is None:
            return count
        h = h.without_vertices(cyc)
        count += 1


def _signed_bipartite_conflict(adj_labels, colour, v):
    """Try to colour v consistently with its already-coloured neighbours.

    Returns the forced colour, or None on conflict (an odd cycle closed)."""
    forced = None
    for (u, lab) in adj_labels[v]:
        if u in colour:
            want = colour[u] ^ lab
            if forced is None:
                forced = want
            elif forced != want:
                return None
    return forced if forced is not None else 0


def _minimal_odd_sets_through(sg, pivot, budget):
    """All minimal non-bipartite vertex sets containing pivot.

    Each such set is the vertex set of an induced odd cycle through pivot.
    DFS over simple paths from pivot keeping the induced prefix odd-cycle
    free; a colouring conflict on extension closes a candidate, accepted if
    the set is deletion-minimal.
    """
    adj_labels = {v: [] for v in sg.vertices}
    has_odd_loop = {v: False for v in sg.vertices}
    for _, u, v, lab in sg.edges:
        if u == v:
            if lab == 1:
                has_odd_loop[u] = True
        else:
            adj_labels[u].append((v, lab))
            adj_labels[v].append((u, lab))
    for v in adj_labels:
        adj_labels[v].sort()

    if has_odd_loop[pivot]:
        # the loop alone is odd; no larger set through pivot can be minimal
        return [frozenset([pivot])]

    results = []
    seen = set()

    def is_minimal(vset):
        for x in vset:
            if not _is_signed_bipartite(vset - {x}, adj_labels, has_odd_loop):
                return False
        return True

    def dfs(path, pathset, colour):
        budget.spend()
        tail = path[-1]
        for (u, lab) in adj_labels[tail]:
            if u in pathset:
                continue
            if has_odd_loop[u]:
                continue  # the loop alone is a smaller odd set; never minimal with more
            forced = _signed_bipartite_conflict(adj_labels, colour, u)
            cand = pathset | {u}
            if forced is None:
                key = frozenset(cand)
                if key in seen:
                    continue
                if is_minimal(cand):
                    seen.add(key)
                    results.append(key)
                continue
            colour[u] = forced
            path.append(u)
            dfs(path, cand, colour)
            path.pop()
            del colour[u]

    dfs([pivot], frozenset([pivot]), {pivot: 0})
    return sorted(results, key=lambda s: (len(s), sorted(s)))


def _is_signed_bipartite(vset, adj_labels, has_odd_loop):
    """No odd cycle inside the induced subgraph on vset."""
    for v in vset:
        if has_odd_loop[v]:
            return False
    colour = {}
    for s in sorted(vset):
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for (y, lab) in adj_labels[x]:
                if y not in vset:
                    continue
                want = colour[x] ^ lab
                if y not in colour:
                    colour[y] = want
                    stack.append(y)
                elif colour[y] != want:
                    return False
    return True


def _solve_component(sg, cap, budget):
    sg = _reduce(sg)
    if sg.num_vertices() == 0:
        return 0
    first = shortest_odd_cycle_signed(sg)
    if first is None:
        return 0

    best = _greedy_packing(sg, budget)
    if cap is not None and best >= cap:
        return cap
    state = {"best": best}

    def upper(h, shortest_len):
        by_size = h.num_vertices() // max(1, shortest_len)
        by_transversal = _greedy_transversal_bound(h, budget)
        return min(by_size, by_transversal)

    def rec(h, gained):
        budget.spend()
        if cap is not None and state["best"] >= cap:
            return
        h = _reduce(h)
        cyc = shortest_odd_cycle_signed(h)
        if cyc is None:
            if gained > state["best"]:
                state["best"] = gained
            return
        if gained + upper(h, len(cyc)) <= state["best"]:
            return
        pivot = min(cyc)
        for cand in _minimal_odd_sets_through(h, pivot, budget):
            rec(h.without_vertices(cand), gained + 1)
            if cap is not None and state["best"] >= cap:
                return
        rec(h.without_vertices([pivot]), gained)

    rec(sg, 0)
    if cap is not None:
        return min(state["best"], cap)
    return state["best"]
