"""Generators for the obstruction families and odd-minor embeddings between them.

Vertex numbering is (cycle index, position) lexicographic for the cylindrical
families and row-major for the universal grid, with subdivision vertices
appended at the end.  The designated vertex set X of the handle and vortex is
the even-position subset of the outermost concentric cycle starting at
position 0.
"""

from dataclasses import dataclass, field

from .errors import GraphStructureError, InstanceTooLarge
from .graphs import Graph, TwoColouring
from .minors import OddMinorModel

EMBED_ORDER_LIMIT = 2


@dataclass
class ParityGrid:
    graph: Graph
    kind: str  # cylindrical | handle | vortex | universal
    order: int
    length: int = 0  # cylindrical only: number of positions per cycle
    concentric_cycles: list = field(default_factory=list)
    radial_paths: list = field(default_factory=list)
    horizontal_paths: list = field(default_factory=list)
    vertical_paths: list = field(default_factory=list)
    parity_breaking_edges: list = field(default_factory=list)


def _cyl_vertex(k, l, cycle, pos):
    return cycle * l + pos


def gen_cylindrical(k, l):
    """Cartesian product of a cycle on l vertices with a path on k vertices."""
    if k < 1 or l < 3:
        raise GraphStructureError(f"degenerate parameters: need k >= 1, l >= 3, got ({k},{l})")
    g = Graph(range(k * l))
    cycles = []
    for c in range(k):
        cyc = [_cyl_vertex(k, l, c, p) for p in range(l)]
        for p in range(l):
            g.add_edge(cyc[p], cyc[(p + 1) % l])
        cycles.append(cyc)
    paths = []
    for p in range(l):
        path = [_cyl_vertex(k, l, c, p) for c in range(k)]
        for c in range(k - 1):
            g.add_edge(path[c], path[c + 1])
        paths.append(path)
    return ParityGrid(g, "cylindrical", k, length=l,
                      concentric_cycles=cycles, radial_paths=paths)


def _with_breaking_edges(k, pairs, kind):
    base = gen_cylindrical(k, 4 * k)
    g = base.graph
    broken = []
    for (p, q) in pairs:
        u = _cyl_vertex(k, 4 * k, k - 1, p)
        v = _cyl_vertex(k, 4 * k, k - 1, q)
        g.add_edge(u, v)
        broken.append((min(u, v), max(u, v)))
    return ParityGrid(g, kind, k, length=4 * k,
                      concentric_cycles=base.concentric_cycles,
                      radial_paths=base.radial_paths,
                      parity_breaking_edges=sorted(broken))


def handle_chord_positions(k):
    """Position pairs of the k crossing-family chords: x_i with x_{2k-i+1},
    where x_j sits at position 2(j-1) of the outermost cycle."""
    return [(2 * (i - 1), 4 * k - 2 * i) for i in range(1, k + 1)]


def vortex_chord_positions(k):
    """Position pairs of the k disjoint chords: x_{2i-1} with x_{2i}."""
    return [(4 * (i - 1), 4 * i - 2) for i in range(1, k + 1)]


def gen_parity_handle(k):
    if k < 1:
        raise GraphStructureError("order must be at least 1")
    return _with_breaking_edges(k, handle_chord_positions(k), "handle")


def gen_parity_vortex(k):
    if k < 1:
        raise GraphStructureError("order must be at least 1")
    return _with_breaking_edges(k, vortex_chord_positions(k), "vortex")


def gen_universal(k):
    """Universal parity breaking grid of order k: the (2k x (2k+1))-grid with
    the k central edges in odd rows each subdivided once.

    Grid vertex (i, j), 1-based with i in [2k] rows and j in [2k+1] columns,
    gets id (i-1)*(2k+1) + (j-1); the subdivision vertex of row 2i-1 gets id
    2k*(2k+1) + (i-1).
    """
    if k < 1:
        raise GraphStructureError("order must be at least 1")
    rows, cols = 2 * k, 2 * k + 1

    def vid(i, j):
        return (i - 1) * cols + (j - 1)

    def sid(i):
        return rows * cols + (i - 1)

    subdivided = {(2 * i - 1, k): sid(i) for i in range(1, k + 1)}
    g = Graph(range(rows * cols + k))
    horizontal = []
    for i in range(1, rows + 1):
        path = []
        for j in range(1, cols + 1):
            path.append(vid(i, j))
            if j < cols:
                if (i, j) in subdivided and j == k:
                    s = subdivided[(i, j)]
                    g.add_edge(vid(i, j), s)
                    g.add_edge(s, vid(i, j + 1))
                    path.append(s)
                else:
                    g.add_edge(vid(i, j), vid(i, j + 1))
        horizontal.append(path)
    vertical = []
    for j in range(1, cols + 1):
        path = [vid(i, j) for i in range(1, rows + 1)]
        for i in range(1, rows):
            g.add_edge(vid(i, j), vid(i + 1, j))
        vertical.append(path)
    # one edge per subdivision path; removing them leaves the subdivision
    # vertices pendant on a bipartite grid and each removed edge joins two
    # vertices of the same colour class
    breaking = sorted((min(sid(i), vid(2 * i - 1, k + 1)), max(sid(i), vid(2 * i - 1, k + 1)))
                      for i in range(1, k + 1))
    return ParityGrid(g, "universal", k,
                      horizontal_paths=horizontal, vertical_paths=vertical,
                      parity_breaking_edges=breaking)


# ---------------------------------------------------------------------------
# Embedding the handle and vortex of order k into the universal grid of
# order 3k.  Geometry (1-based grid coordinates (row, col) of the host):
#   * ring m, m = 1..k, is the boundary of rows [2m, 6k+2-2m] x cols
#     [2m, 6k+2-2m]; top and bottom rows are even so no ring ever crosses a
#     subdivided edge;
#   * spokes join consecutive rings through the single gap row/column,
#     k spokes per side;
#   * each chord of the innermost ring is routed through its own subdivision
#     vertex, which supplies the parity twist.
# Correctness is enforced solely by the model verifier.
# ---------------------------------------------------------------------------


class _UniversalCoords:
    def __init__(self, k3):
        self.k3 = k3
        self.rows = 2 * k3
        self.cols = 2 * k3 + 1

    def vid(self, i, j):
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise ValueError(f"({i},{j}) outside the grid")
        return (i - 1) * self.cols + (j - 1)

    def sid(self, i):
        # subdivision vertex on row 2i-1
        return self.rows * self.cols + (i - 1)

    def srow(self, row):
        """Subdivision vertex id sitting on the given odd row."""
        assert row % 2 == 1
        return self.sid((row + 1) // 2)


def _ring_perimeter(co, m, k):
    """Clockwise perimeter of ring m starting at the top-left corner."""
    lo, hi = 2 * m, 6 * k + 2 - 2 * m
    top = [co.vid(lo, j) for j in range(lo, hi + 1)]
    right = [co.vid(i, hi) for i in range(lo + 1, hi + 1)]
    bottom = [co.vid(hi, j) for j in range(hi - 1, lo - 1, -1)]
    left = [co.vid(i, lo) for i in range(hi - 1, lo, -1)]
    return top + right + bottom + left


def _spoke_offsets(k):
    """Spoke coordinates (columns for top, rows for right, ...) relative to
    the grid, k per side, inside every ring."""
    return [2 * k + 1 + 2 * t for t in range(k)]


def _anchor(co, m, k, pos):
    """Grid coordinate (row, col) of cylinder position pos on ring m."""
    lo, hi = 2 * m, 6 * k + 2 - 2 * m
    side, idx = divmod(pos, k)
    offs = _spoke_offsets(k)
    if side == 0:
        return (lo, offs[idx])
    if side == 1:
        return (offs[idx], hi)
    if side == 2:
        return (hi, offs[k - 1 - idx])
    return (offs[k - 1 - idx], lo)


def _arc_split(perimeter, anchors):
    """Partition the cyclic perimeter into contiguous arcs, one per anchor,
    in anchor order.  Arc boundaries sit halfway between consecutive anchors."""
    n = len(perimeter)
    idx = [perimeter.index(a) for a in anchors]
    arcs = []
    m = len(anchors)
    for t in range(m):
        start = idx[t]
        prev_gap = (start - idx[t - 1]) % n
        next_gap = (idx[(t + 1) % m] - start) % n
        lo = (start - prev_gap // 2) % n
        length = prev_gap // 2 + (next_gap + 1) // 2
        arcs.append([perimeter[(lo + s) % n] for s in range(length)])
    return arcs


def _chord_routes(co, k, target):
    """Hand-laid interior routes for the innermost-ring chords, one per chord:
    (position pair, extension of the first branch set ending at a subdivision
    vertex, realizing edge, extension of the second branch set).

    Every route passes through exactly one subdivision vertex, supplying the
    parity twist; routes are pairwise disjoint and avoid all rings and spokes.
    """
    v = co.vid
    if k == 1:
        # single chord between the top (2,3) and bottom (6,3) anchors via s(3)
        s = co.srow(3)
        return [((0, 2), [v(3, 3), s], (s, v(3, 4)),
                 [v(5, 3), v(4, 3), v(4, 4), v(3, 4)])]
    if k == 2 and target == "handle":
        s5, s7 = co.srow(5), co.srow(7)
        return [
            # top (4,5) to left (7,4) via s(5)
            ((0, 6), [v(5, 5), v(5, 6), s5], (s5, v(5, 7)),
             [v(7, 5), v(6, 5), v(6, 6), v(6, 7), v(5, 7)]),
            # right (5,10) to bottom (10,7) via s(7)
            ((2, 4), [v(5, 9), v(6, 9), v(7, 9), v(7, 8), v(7, 7), s7],
             (s7, v(7, 6)), [v(9, 7), v(8, 7), v(8, 6), v(7, 6)]),
        ]
    if k == 2 and target == "vortex":
        s5, s7 = co.srow(5), co.srow(7)
        return [
            # top (4,5) to right (5,10) via s(5)
            ((0, 2), [v(5, 5), v(5, 6), s5], (s5, v(5, 7)),
             [v(5, 9), v(5, 8), v(5, 7)]),
            # bottom (10,7) to left (7,4) via s(7)
            ((4, 6), [v(9, 7), v(8, 7), v(7, 7), s7], (s7, v(7, 6)),
             [v(7, 5), v(7, 6)]),
        ]
    raise InstanceTooLarge("embed_in_universal", EMBED_ORDER_LIMIT, k)


def embed_in_universal(target, k):
    """Checker-verified odd-minor model of the order-k handle or vortex in the
    order-3k universal grid.  Supported for k <= 2."""
    if target not in ("handle", "vortex"):
        raise GraphStructureError(f"target must be 'handle' or 'vortex', got {target!r}")
    if k < 1:
        raise GraphStructureError("order must be at least 1")
    if k > EMBED_ORDER_LIMIT:
        raise InstanceTooLarge("embed_in_universal", EMBED_ORDER_LIMIT, k)

    pattern_pg = gen_parity_handle(k) if target == "handle" else gen_parity_vortex(k)
    pattern = pattern_pg.graph
    host_pg = gen_universal(3 * k)
    host = host_pg.graph
    co = _UniversalCoords(3 * k)

    # ring m carries the pattern's cycle m-1, so the chord-bearing outermost
    # pattern cycle (index k-1) sits on the innermost rectangle where the
    # subdivision vertices are reachable
    branch = {}
    for m in range(1, k + 1):
        perimeter = _ring_perimeter(co, m, k)
        anchors = [co.vid(*_anchor(co, m, k, pos)) for pos in range(4 * k)]
        arcs = _arc_split(perimeter, anchors)
        for pos in range(4 * k):
            pv = _cyl_vertex(k, 4 * k, m - 1, pos)
            branch[pv] = list(arcs[pos])

    # spokes: absorb the single gap vertex into the outer ring's branch set
    for m in range(1, k):
        for pos in range(4 * k):
            (r1, c1) = _anchor(co, m, k, pos)
            (r2, c2) = _anchor(co, m + 1, k, pos)
            pv = _cyl_vertex(k, 4 * k, m - 1, pos)
            if r1 == r2:
                branch[pv].append(co.vid(r1, (c1 + c2) // 2))
            else:
                branch[pv].append(co.vid((r1 + r2) // 2, c1))

    routes = _chord_routes(co, k, target)
    expected = (handle_chord_positions(k) if target == "handle"
                else vortex_chord_positions(k))
    if sorted(pair for pair, *_ in routes) != sorted(expected):
        raise GraphStructureError("chord route catalogue out of sync with the generator")
    chord_realizations = {}
    for (pa, pb), ext_a, realizing, ext_b in routes:
        va = _cyl_vertex(k, 4 * k, k - 1, pa)
        vb = _cyl_vertex(k, 4 * k, k - 1, pb)
        branch[va].extend(ext_a)
        branch[vb].extend(ext_b)
        chord_realizations[(min(va, vb), max(va, vb))] = realizing

    # realizing edges: ring neighbours share consecutive arc ends, spokes run
    # through the absorbed gap vertex, chords were fixed above
    realization = dict(chord_realizations)
    branch_sets = {pv: frozenset(vs) for pv, vs in branch.items()}
    owner = {}
    for pv, vs in branch_sets.items():
        for x in vs:
            owner[x] = pv
    for (u, v) in pattern.edges:
        key = (u, v)
        if key in realization:
            continue
        found = None
        for a in sorted(branch_sets[u]):
            for b in host.neighbors(a):
                if b in branch_sets[v]:
                    found = (a, b)
                    break
            if found:
                break
        if found is None:
            raise GraphStructureError(f"no host edge realizes pattern edge {key}")
        realization[key] = found

    witness = _solve_witness(pattern, host, branch_sets, realization)
    model = OddMinorModel(pattern, host, branch_sets, witness, realization)
    from .minors import verify_odd_minor_model

    report = verify_odd_minor_model(model)
    if not report:
        raise GraphStructureError(f"embedding construction failed verification: {report.violation}")
    return model


def _solve_witness(pattern, host, branch_sets, realization):
    """Solve the flip-bit parity system for a valid witness colouring."""
    from .graphs import two_colouring as tc

    local = {}
    for pv, vs in branch_sets.items():
        col = tc(host.subgraph(vs))
        if col is None:
            raise GraphStructureError(f"branch set of {pv} is not bipartite")
        local[pv] = col.colour

    constraints = {}
    for key, (a, b) in realization.items():
        u, v = key
        if a not in local[u]:  # orient: a must lie in branch(u)
            a, b = b, a
        constraints[key] = local[u][a] ^ local[v][b]

    phase = {}
    for s in pattern.vertices:
        if s in phase:
            continue
        phase[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in pattern.neighbors(x):
                key = (min(x, y), max(x, y))
                need = constraints[key]
                want = phase[x] ^ need
                if y not in phase:
                    phase[y] = want
                    stack.append(y)
                elif phase[y] != want:
                    raise GraphStructureError(
                        f"parity system inconsistent at pattern edge {key}")
    witness = {}
    for pv, vs in branch_sets.items():
        for x in vs:
            witness[x] = local[pv][x] ^ phase[pv]
    return TwoColouring(witness)
