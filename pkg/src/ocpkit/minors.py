"""Odd-minor models: verification and a brute-force search oracle.

A model of a pattern H in a host G assigns disjoint connected branch sets to
the pattern vertices, one realizing host edge per pattern edge, and a
2-colouring witness of the union that is proper inside every branch set and
makes every realizing edge monochromatic.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import InstanceTooLarge
from .graphs import Graph, TwoColouring, two_colouring

SEARCH_PATTERN_LIMIT = 5
SEARCH_HOST_LIMIT = 12


@dataclass
class OddMinorModel:
    pattern: Graph
    host: Graph
    branch: dict  # pattern vertex -> frozenset of host vertices
    witness: TwoColouring
    edge_realization: dict  # (u, v) pattern edge with u < v -> (a, b) host edge


@dataclass
class ModelReport:
    ok: bool
    violation: str = ""

    def __bool__(self):
        return self.ok


def verify_odd_minor_model(m):
    """Check every model invariant; report the first violation found."""
    used = set()
    for v in m.pattern.vertices:
        if v not in m.branch:
            return ModelReport(False, f"pattern vertex {v} has no branch set")
        bs = set(m.branch[v])
        if not bs:
            return ModelReport(False, f"branch set of {v} is empty")
        for x in bs:
            if not m.host.has_vertex(x):
                return ModelReport(False, f"branch set of {v} uses unknown host vertex {x}")
            if x in used:
                return ModelReport(False, f"host vertex {x} lies in two branch sets (disjointness)")
        used |= bs
        if not m.host.subgraph(bs).is_connected():
            return ModelReport(False, f"branch set of {v} is not connected")

    union = used
    dom = set(m.witness.colour)
    if dom != union:
        return ModelReport(False, "witness domain differs from the union of branch sets")
    for v in m.pattern.vertices:
        for x in m.branch[v]:
            for y in m.host.neighbors(x):
                if y in m.branch[v] and y > x and m.witness[x] == m.witness[y]:
                    return ModelReport(
                        False, f"witness not proper inside branch set of {v}: edge ({x},{y})")

    for (u, v) in m.pattern.edges:
        key = (min(u, v), max(u, v))
        if key not in m.edge_realization:
            return ModelReport(False, f"pattern edge {key} has no realizing host edge")
        a, b = m.edge_realization[key]
        if not m.host.has_edge(a, b):
            return ModelReport(False, f"realizing edge ({a},{b}) of {key} is not a host edge")
        ends = {min(u, v): None, max(u, v): None}
        if a in m.branch[u] and b in m.branch[v]:
            pass
        elif a in m.branch[v] and b in m.branch[u]:
            pass
        else:
            return ModelReport(
                False, f"realizing edge ({a},{b}) of {key} does not join the two branch sets")
        if m.witness[a] != m.witness[b]:
            return ModelReport(False, f"realizing edge ({a},{b}) of {key} is not monochromatic")
    return ModelReport(True)


def _connected_subsets(g, max_size):
    """All connected vertex subsets of g with size <= max_size, as frozensets,
    grown canonically from their smallest vertex."""
    out = set()
    verts = g.vertices
    for s in verts:
        frontier = {frozenset([s])}
        out.add(frozenset([s]))
        for _ in range(max_size - 1):
            nxt = set()
            for comp in frontier:
                for x in comp:
                    for y in g.neighbors(x):
                        if y > s and y not in comp:
                            grown = comp | {y}
                            if grown not in out:
                                out.add(grown)
                                nxt.add(grown)
            frontier = nxt
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def _local_colourings(g, vset):
    """A proper 2-colouring of g[vset] anchored at its smallest vertex,
    or None if the induced subgraph is not bipartite or not connected."""
    sub = g.subgraph(vset)
    if not sub.is_connected():
        return None
    col = two_colouring(sub)
    if col is None:
        return None
    return col.colour


def _solve_phases(pattern, delta_options):
    """Assign a flip bit per pattern vertex so that for every pattern edge
    some allowed parity is realized.  delta_options maps each pattern edge to
    the set of achievable parities; edges offering both parities impose no
    constraint."""
    phase = {}
    fixed = {e: opts for e, opts in delta_options.items() if len(opts) == 1}
    for s in pattern.vertices:
        if s in phase:
            continue
        phase[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in pattern.neighbors(x):
                key = (min(x, y), max(x, y))
                if key not in fixed:
                    continue
                need = next(iter(fixed[key]))
                want = phase[x] ^ need
                if y not in phase:
                    phase[y] = want
                    stack.append(y)
                elif phase[y] != want:
                    return None
    # vertices joined only by unconstrained edges keep phase 0
    for v in pattern.vertices:
        phase.setdefault(v, 0)
    return phase


def search_odd_minor(pattern, host, node_budget=None):
    """Exhaustive search for an odd-minor model of pattern in host.

    Tries assignments of disjoint connected branch sets in pattern-vertex
    order; for every complete assignment the witness is sought by solving the
    parity system over branch-set flip bits.  Returns a verified model or
    None.
    """
    if pattern.num_vertices() > SEARCH_PATTERN_LIMIT:
        raise InstanceTooLarge("search_odd_minor pattern", SEARCH_PATTERN_LIMIT,
                               pattern.num_vertices())
    if host.num_vertices() > SEARCH_HOST_LIMIT:
        raise InstanceTooLarge("search_odd_minor host", SEARCH_HOST_LIMIT,
                               host.num_vertices())

    pverts = pattern.vertices
    if not pverts:
        return None
    budget = host.num_vertices() - pattern.num_vertices() + 1
    if budget < 1:
        return None
    cand = [c for c in _connected_subsets(host, budget)
            if _local_colourings(host, c) is not None]
    colour_of = {c: _local_colourings(host, c) for c in cand}

    def edge_parities(cu, cv):
        """Achievable witness parities over host edges joining cu and cv,
        with a representative host edge per parity."""
        opts = {}
        for a in sorted(cu):
            for b in host.neighbors(a):
                if b in cv:
                    d = colour_of[cu][a] ^ colour_of[cv][b]
                    opts.setdefault(d, (a, b))
        return opts

    def assign(i, chosen, used):
        if i == len(pverts):
            delta_options = {}
            reps = {}
            for (u, v) in pattern.edges:
                opts = edge_parities(chosen[u], chosen[v])
                if not opts:
                    return None
                key = (min(u, v), max(u, v))
                delta_options[key] = set(opts)
                reps[key] = opts
            phase = _solve_phases(pattern, delta_options)
            if phase is None:
                return None
            witness = {}
            for pv in pverts:
                for x in chosen[pv]:
                    witness[x] = colour_of[chosen[pv]][x] ^ phase[pv]
            realization = {}
            for key in delta_options:
                u, v = key
                need = phase[u] ^ phase[v]
                opts = reps[key]
                if need not in opts:
                    return None
                realization[key] = opts[need]
            model = OddMinorModel(pattern, host, {p: chosen[p] for p in pverts},
                                  TwoColouring(witness), realization)
            if verify_odd_minor_model(model):
                return model
            return None
        pv = pverts[i]
        for c in cand:
            if c & used:
                continue
            # every pattern edge to an already-placed vertex needs a host edge
            ok = True
            for q in pverts[:i]:
                if pattern.has_edge(pv, q) and not edge_parities(c, chosen[q]):
                    ok = False
                    break
            if not ok:
                continue
            chosen[pv] = c
            got = assign(i + 1, chosen, used | c)
            if got is not None:
                return got
            del chosen[pv]
        return None

    return assign(0, {}, frozenset())


def single_vertex_model(host):
    """Model of K1 in any nonempty host (smallest vertex)."""
    if host.num_vertices() == 0:
        return None
    pattern = Graph([0])
    v = host.vertices[0]
    return OddMinorModel(pattern, host, {0: frozenset([v])},
                         TwoColouring({v: 0}), {})


def one_step_odd_minors(g):
    """All graphs obtainable by one vertex deletion, edge deletion, or bond
    contraction, each paired with a short description.  Used by the
    monotonicity checks."""
    from .graphs import _is_minimal_cut

    out = []
    for v in g.vertices:
        out.append((f"delete vertex {v}", g.without_vertices([v])))
    for (u, v) in g.edges:
        h = Graph(g.vertices)
        for (a, b) in g.edges:
            if (a, b) != (u, v):
                h.add_edge(a, b)
        out.append((f"delete edge ({u},{v})", h))
    # bonds around single vertices and around connected pairs stay affordable
    seeds = [frozenset([v]) for v in g.vertices]
    seeds += [frozenset(e) for e in g.edges]
    seen = set()
    for x in seeds:
        cut = frozenset((min(a, b), max(a, b)) for a in x for b in g.neighbors(a) if b not in x)
        if not cut or cut in seen:
            continue
        seen.add(cut)
        if _is_minimal_cut(g, set(cut)):
            out.append((f"contract bond around {sorted(x)}", contract_edges(g, cut)))
    return out


def contract_edges(g, edges):
    """Contract the given edge set (union-find), dropping loops and parallels."""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (u, v) in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    h = Graph(sorted({find(v) for v in g.vertices}))
    for (u, v) in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            h.add_edge(ru, rv)
    return h
