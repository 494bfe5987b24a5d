"""Simple graphs, signed multigraphs, and the parity-aware algorithms on them.

Vertex ids are small non-negative integers but need not be contiguous.  All
searches break ties towards smaller ids so that every operation here is
deterministic.
"""

from collections import deque
from dataclasses import dataclass

from .errors import GraphStructureError


class Graph:
    """Finite simple undirected graph: no loops, no parallel edges."""

    def __init__(self, vertices=(), edges=()):
        self._adj = {}
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    def add_vertex(self, v):
        if v not in self._adj:
            self._adj[v] = set()

    def add_edge(self, u, v):
        if u == v:
            raise GraphStructureError(f"loop at vertex {u} not allowed in a simple graph")
        if u not in self._adj or v not in self._adj:
            raise GraphStructureError(f"edge ({u},{v}) references an undeclared vertex")
        self._adj[u].add(v)
        self._adj[v].add(u)

    @property
    def vertices(self):
        return sorted(self._adj)

    @property
    def edges(self):
        """Edges as sorted (u, v) pairs with u < v, in sorted order."""
        out = []
        for u in sorted(self._adj):
            for v in sorted(self._adj[u]):
                if u < v:
                    out.append((u, v))
        return out

    def num_vertices(self):
        return len(self._adj)

    def num_edges(self):
        return sum(len(s) for s in self._adj.values()) // 2

    def has_vertex(self, v):
        return v in self._adj

    def has_edge(self, u, v):
        return u in self._adj and v in self._adj[u]

    def neighbors(self, v):
        return sorted(self._adj[v])

    def degree(self, v):
        return len(self._adj[v])

    def subgraph(self, vertices):
        """Induced subgraph on the given vertex ids."""
        keep = set(vertices)
        g = Graph()
        for v in sorted(keep):
            if v not in self._adj:
                raise GraphStructureError(f"unknown vertex {v}")
            g.add_vertex(v)
        for v in sorted(keep):
            for u in self._adj[v]:
                if u in keep and v < u:
                    g.add_edge(v, u)
        return g

    def without_vertices(self, removed):
        gone = set(removed)
        return self.subgraph(v for v in self._adj if v not in gone)

    def copy(self):
        return self.subgraph(self._adj)

    def components(self):
        """Connected components as sorted vertex lists, ordered by smallest member."""
        seen = set()
        comps = []
        for s in sorted(self._adj):
            if s in seen:
                continue
            comp = []
            queue = deque([s])
            seen.add(s)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for u in sorted(self._adj[v]):
                    if u not in seen:
                        seen.add(u)
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self):
        return len(self.components()) <= 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self):
        return f"Graph({self.num_vertices()} vertices, {self.num_edges()} edges)"


def disjoint_union(g, h):
    """Disjoint union; h's vertex ids are shifted above g's maximum id."""
    shift = (max(g.vertices) + 1 if g.num_vertices() else 0)
    shift = max(shift, 0)
    out = g.copy()
    for v in h.vertices:
        out.add_vertex(v + shift)
    for u, v in h.edges:
        out.add_edge(u + shift, v + shift)
    return out


def cycle_graph(n, offset=0):
    g = Graph(range(offset, offset + n))
    for i in range(n):
        g.add_edge(offset + i, offset + (i + 1) % n)
    return g


def path_graph(n, offset=0):
    g = Graph(range(offset, offset + n))
    for i in range(n - 1):
        g.add_edge(offset + i, offset + i + 1)
    return g


def complete_graph(n, offset=0):
    g = Graph(range(offset, offset + n))
    for i in range(n):
        for j in range(i + 1, n):
            g.add_edge(offset + i, offset + j)
    return g


class SignedGraph:
    """Multigraph with a Z2 label per edge (0 = even, 1 = odd).

    Loops and parallel edges are permitted; edge ids are the positions in the
    edge list.  The parity of a cycle is the sum of its labels mod 2.
    """

    def __init__(self, vertices=(), edges=()):
        # edges: iterable of (u, v, label)
        self._vertices = set()
        self._edges = []  # list of (u, v, label)
        for v in vertices:
            self._vertices.add(v)
        for u, v, label in edges:
            self.add_edge(u, v, label)

    def add_vertex(self, v):
        self._vertices.add(v)

    def add_edge(self, u, v, label):
        if u not in self._vertices or v not in self._vertices:
            raise GraphStructureError(f"edge ({u},{v}) references an undeclared vertex")
        if label not in (0, 1):
            raise GraphStructureError(f"edge label must be 0 or 1, got {label!r}")
        self._edges.append((u, v, label))
        return len(self._edges) - 1

    @property
    def vertices(self):
        return sorted(self._vertices)

    @property
    def edges(self):
        """List of (edge id, u, v, label)."""
        return [(i, u, v, lab) for i, (u, v, lab) in enumerate(self._edges)]

    def num_vertices(self):
        return len(self._vertices)

    def num_edges(self):
        return len(self._edges)

    def label(self, edge_id):
        return self._edges[edge_id][2]

    def has_vertex(self, v):
        return v in self._vertices

    def same_underlying(self, other):
        """True iff vertices and the (u, v) pairs per edge id coincide."""
        if self._vertices != other._vertices:
            return False
        if len(self._edges) != len(other._edges):
            return False
        for (u1, v1, _), (u2, v2, _) in zip(self._edges, other._edges):
            if {u1, v1} != {u2, v2} and (u1, v1) != (u2, v2):
                return False
            if (u1, v1) not in ((u2, v2), (v2, u2)):
                return False
        return True

    def without_vertices(self, removed):
        gone = set(removed)
        sg = SignedGraph(v for v in self._vertices if v not in gone)
        for u, v, lab in self._edges:
            if u not in gone and v not in gone:
                sg.add_edge(u, v, lab)
        return sg

    def copy(self):
        sg = SignedGraph(self._vertices)
        for u, v, lab in self._edges:
            sg.add_edge(u, v, lab)
        return sg

    def incidence(self):
        """Map vertex -> list of (edge id, other endpoint, label); loops listed once."""
        inc = {v: [] for v in self._vertices}
        for i, (u, v, lab) in enumerate(self._edges):
            if u == v:
                inc[u].append((i, u, lab))
            else:
                inc[u].append((i, v, lab))
                inc[v].append((i, u, lab))
        return inc

    def __repr__(self):
        return f"SignedGraph({self.num_vertices()} vertices, {self.num_edges()} edges)"


def all_odd(g):
    """The signed graph carrying g with every edge odd: its odd cycles are
    exactly the odd-length cycles of g."""
    sg = SignedGraph(g.vertices)
    for u, v in g.edges:
        sg.add_edge(u, v, 1)
    return sg


@dataclass
class TwoColouring:
    """A {0,1}-colouring over a declared vertex domain."""

    colour: dict

    def __getitem__(self, v):
        return self.colour[v]

    @property
    def domain(self):
        return sorted(self.colour)

    def side(self, c):
        return sorted(v for v, col in self.colour.items() if col == c)


def two_colouring(g):
    """Proper 2-colouring of g if bipartite, else None.

    Colour 0 goes to the smallest vertex id of each component.
    """
    colour = {}
    for s in g.vertices:
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if u not in colour:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return None
    return TwoColouring(colour)


def _canonical_cycle(seq):
    """Canonical form of a cyclic vertex sequence: start at the minimum,
    then take the lexicographically smaller direction."""
    if len(seq) <= 2:
        return tuple(sorted(seq))
    n = len(seq)
    i = seq.index(min(seq))
    fwd = tuple(seq[(i + j) % n] for j in range(n))
    bwd = tuple(seq[(i - j) % n] for j in range(n))
    return min(fwd, bwd)


def shortest_odd_cycle_signed(sg):
    """Minimum-length odd cycle of a signed multigraph as a vertex sequence,
    or None.  An odd loop is a length-1 cycle, an odd digon a length-2 one.

    Runs a BFS per start vertex in the parity-layered doubled graph; among all
    minimum-length cycles recovered this way the lexicographically smallest
    canonical vertex sequence wins.
    """
    inc = sg.incidence()
    best = None
    for s in sg.vertices:
        # state (v, parity); parent pointers for walk recovery
        dist = {(s, 0): 0}
        parent = {(s, 0): None}
        queue = deque([(s, 0)])
        target = (s, 1)
        while queue:
            v, p = queue.popleft()
            if best is not None and dist[(v, p)] >= len(best):
                continue
            for eid, u, lab in sorted(inc[v]):
                nxt = (u, p ^ lab)
                if nxt not in dist:
                    dist[nxt] = dist[(v, p)] + 1
                    parent[nxt] = (v, p, eid)
                    queue.append(nxt)
        if target not in dist:
            continue
        walk = []
        cur = target
        while parent[cur] is not None:
            v, p, _ = parent[cur]
            walk.append(cur[0])
            cur = (v, p)
        walk.append(s)
        walk.reverse()  # closed walk s ... s, length = len(walk)-1
        cyc = walk[:-1]
        if len(set(cyc)) != len(cyc):
            continue  # not simple; a shorter odd cycle exists at another start
        cand = _canonical_cycle(cyc)
        if best is None or (len(cand), cand) < (len(best), best):
            best = cand
    return list(best) if best is not None else None


def shortest_odd_cycle(g):
    """Minimum-length odd cycle of a simple graph, or None if bipartite."""
    return shortest_odd_cycle_signed(all_odd(g))


@dataclass
class BlockDecomposition:
    """Blocks (maximal 2-connected subgraphs, bridges, or isolated vertices)
    plus a block tree whose edges join blocks sharing a cut vertex."""

    blocks: list  # list of sorted vertex lists
    tree_edges: list  # list of (block index, block index)
    cut_vertices: list


def blocks(g):
    """Block decomposition via lowpoint computation (iterative DFS).

    Isolated vertices are reported as singleton blocks so that the blocks
    cover every vertex; every edge lies in exactly one block.
    """
    disc = {}
    low = {}
    parent = {}
    edge_stack = []
    comps = []
    time = 0

    for root in g.vertices:
        if root in disc:
            continue
        if g.degree(root) == 0:
            comps.append([root])
            disc[root] = time
            time += 1
            continue
        parent[root] = None
        disc[root] = low[root] = time
        time += 1
        stack = [(root, iter(g.neighbors(root)))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if u not in disc:
                    parent[u] = v
                    disc[u] = low[u] = time
                    time += 1
                    edge_stack.append((v, u))
                    stack.append((u, iter(g.neighbors(u))))
                    advanced = True
                    break
                elif u != parent[v] and disc[u] < disc[v]:
                    edge_stack.append((v, u))
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if stack:
                w = stack[-1][0]
                low[w] = min(low[w], low[v])
                if low[v] >= disc[w]:
                    comp = set()
                    while edge_stack:
                        a, b = edge_stack.pop()
                        comp.add(a)
                        comp.add(b)
                        if (a, b) == (w, v):
                            break
                    comps.append(sorted(comp))

    comps_sorted = sorted(comps)
    seen_in = {}
    cuts = set()
    for bi, comp in enumerate(comps_sorted):
        for v in comp:
            if v in seen_in:
                cuts.add(v)
            else:
                seen_in[v] = bi

    # block tree: for each cut vertex, star its blocks on the first block holding it
    tree = []
    for bi, comp in enumerate(comps_sorted):
        for v in comp:
            if v in cuts and seen_in[v] != bi:
                tree.append((seen_in[v], bi))
    return BlockDecomposition(comps_sorted, sorted(set(tree)), sorted(cuts))


def is_two_connected(g):
    """True for graphs on >= 3 vertices that are connected with no cut vertex,
    and for a single edge."""
    n = g.num_vertices()
    if n < 2 or not g.is_connected():
        return False
    if n == 2:
        return g.num_edges() == 1
    b = blocks(g)
    return len(b.blocks) == 1


def even_subdivide_cut(g, cut):
    """Replace each edge of a minimal edge cut by a length-2 path through a
    fresh vertex.  The input graph is an odd minor of the result."""
    fset = set()
    for u, v in cut:
        if not g.has_edge(u, v):
            raise GraphStructureError(f"({u},{v}) is not an edge of the graph")
        fset.add((min(u, v), max(u, v)))
    if not fset:
        raise GraphStructureError("empty edge set is not a minimal cut")
    if not _is_minimal_cut(g, fset):
        raise GraphStructureError("edge set is not a minimal edge cut")
    out = Graph(g.vertices)
    nxt = max(g.vertices) + 1
    for u, v in g.edges:
        if (u, v) in fset:
            out.add_vertex(nxt)
            out.add_edge(u, nxt)
            out.add_edge(nxt, v)
            nxt += 1
        else:
            out.add_edge(u, v)
    return out


def _is_minimal_cut(g, fset):
    """A nonempty edge set F is a minimal edge cut (bond) iff deleting it
    splits exactly one component into two, and every F edge joins the halves."""
    comp_of = {}
    for ci, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = ci
    host = {comp_of[u] for u, v in fset} | {comp_of[v] for u, v in fset}
    if len(host) != 1:
        return False
    h = Graph(g.vertices)
    for u, v in g.edges:
        if (u, v) not in fset:
            h.add_edge(u, v)
    before = len(g.components())
    comps_after = h.components()
    if len(comps_after) != before + 1:
        return False
    after_of = {}
    for ci, comp in enumerate(comps_after):
        for v in comp:
            after_of[v] = ci
    sides = {(after_of[u], after_of[v]) if after_of[u] < after_of[v] else (after_of[v], after_of[u])
             for u, v in fset}
    if len(sides) != 1:
        return False
    a, b = sides.pop()
    return a != b


def shift_at_vertex(sg, v):
    """Flip the label of every non-loop edge incident to v; loops unchanged.
    Preserves the parity of every cycle."""
    if not sg.has_vertex(v):
        raise GraphStructureError(f"unknown vertex {v}")
    out = SignedGraph(sg.vertices)
    for _, a, b, lab in sg.edges:
        if a != b and (a == v or b == v):
            out.add_edge(a, b, lab ^ 1)
        else:
            out.add_edge(a, b, lab)
    return out


def _forest_potentials(sg):
    """Shift bits that make every edge of the canonical maximal forest even.

    The forest is grown by BFS from the smallest vertex of each component,
    always taking the smallest available edge id.
    """
    inc = sg.incidence()
    pot = {}
    for s in sg.vertices:
        if s in pot:
            continue
        pot[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for eid, u, lab in sorted(inc[v]):
                if u not in pot:
                    pot[u] = pot[v] ^ lab
                    queue.append(u)
    return pot


def canonical_labels(sg):
    """Residual edge labels after shifting every canonical-forest edge even."""
    pot = _forest_potentials(sg)
    out = []
    for _, u, v, lab in sg.edges:
        if u == v:
            out.append(lab)
        else:
            out.append(lab ^ pot[u] ^ pot[v])
    return out


def shifting_equivalent(s1, s2):
    """True iff s1 and s2 have the same odd cycles, decided by comparing
    residual labels after the spanning-forest canonicalisation."""
    if not s1.same_underlying(s2):
        raise GraphStructureError("signed graphs differ in their underlying multigraph")
    return canonical_labels(s1) == canonical_labels(s2)


def parity_paths(g, u, v):
    """Two u-v paths of opposite parity in a 2-connected non-bipartite graph.

    Construction: two disjoint {u,v}-C paths to an odd cycle C, combined with
    the two arcs of C.  Returns (odd path, even path) as vertex lists.
    """
    if u == v:
        raise GraphStructureError("endpoints must be distinct")
    if not is_two_connected(g):
        raise GraphStructureError("graph is not 2-connected")
    cyc = shortest_odd_cycle(g)
    if cyc is None:
        raise GraphStructureError("graph is bipartite")
    cset = set(cyc)

    q1, q2 = _two_disjoint_paths_to_set(g, u, v, cset)
    a1, a2 = q1[-1], q2[-1]
    i1, i2 = cyc.index(a1), cyc.index(a2)
    n = len(cyc)
    arc_fwd = [cyc[(i1 + j) % n] for j in range(0, (i2 - i1) % n + 1)]
    arc_bwd = [cyc[(i1 - j) % n] for j in range(0, (i1 - i2) % n + 1)]

    paths = []
    for arc in (arc_fwd, arc_bwd):
        p = q1[:-1] + arc + q2[-2::-1]
        paths.append(p)
    odd = [p for p in paths if (len(p) - 1) % 2 == 1]
    even = [p for p in paths if (len(p) - 1) % 2 == 0]
    return odd[0], even[0]


def _two_disjoint_paths_to_set(g, u, v, target):
    """Two vertex-disjoint paths from u and from v to the set `target`,
    internally disjoint from it.  Requires 2-connectivity to succeed."""
    from .flow import Dinic

    if u in target and v in target:
        return [u], [v]

    # unit vertex capacities via splitting; target vertices absorb flow
    def vin(x):
        return ("in", x)

    def vout(x):
        return ("out", x)

    net = Dinic()
    src, snk = "S", "T"
    for x in g.vertices:
        net.add_edge(vin(x), vout(x), 1)
    for a, b in g.edges:
        # target vertices only route to the sink, so paths end on first contact
        if a not in target:
            net.add_edge(vout(a), vin(b), 1)
        if b not in target:
            net.add_edge(vout(b), vin(a), 1)
    net.add_edge(src, vin(u), 1)
    net.add_edge(src, vin(v), 1)
    for t in sorted(target):
        net.add_edge(vout(t), snk, 1)
    flow = net.max_flow(src, snk)
    if flow < 2:
        raise GraphStructureError("could not find two disjoint paths to the odd cycle")
    path_u = net.trace_unit_path(src, snk, first=vin(u))
    path_v = net.trace_unit_path(src, snk, first=vin(v))
    p1 = [x for kind, x in path_u if kind == "in"]
    p2 = [x for kind, x in path_v if kind == "in"]
    # truncate at the first target vertex
    p1 = p1[: [i for i, x in enumerate(p1) if x in target][0] + 1]
    p2 = p2[: [i for i, x in enumerate(p2) if x in target][0] + 1]
    return p1, p2
