"""Width lower-bound certificates: pairwise-intersecting families of
2-connected, odd-cycle-rich vertex sets that no small set can hit.

An accepted certificate of order k proves that the OCP-treewidth is at least
k; the explicit family for the parity handle follows the duality argument:
group the concentric cycles and the chord-carrying paths into k blocks each
and take the 2-connected cores of the k*k pairwise unions.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import InstanceTooLarge
from .graphs import blocks
from .ocp import ocp_exact
from .paritygrids import gen_parity_handle

HITTING_ENUM_LIMIT = 2_000_000
BRAMBLE_ORDER_LIMIT = 2


@dataclass
class OcpBramble:
    elements: list  # list of frozensets of host vertices
    order: int


@dataclass
class BrambleReport:
    ok: bool
    violation: str = ""

    def __bool__(self):
        return self.ok


def verify_bramble(g, bramble):
    """Exact check of the three axioms: pairwise intersection, 2-connected
    induced subgraphs with enough disjoint odd cycles, and no hitting set of
    size below the order."""
    k = bramble.order
    elems = [frozenset(e) for e in bramble.elements]
    if not elems:
        return BrambleReport(False, "no elements")
    vset = set(g.vertices)
    for i, e in enumerate(elems):
        if not e <= vset:
            return BrambleReport(False, f"element {i} uses unknown vertices")
    for i, a in enumerate(elems):
        for j in range(i + 1, len(elems)):
            if not a & elems[j]:
                return BrambleReport(False, f"elements {i} and {j} are disjoint")
    for i, e in enumerate(elems):
        sub = g.subgraph(e)
        bd = blocks(sub)
        if len(bd.blocks) != 1 or len(bd.blocks[0]) != len(e) or len(e) < 2:
            return BrambleReport(False, f"element {i} does not induce a 2-connected subgraph")
        if ocp_exact(sub, cap=k) < k:
            return BrambleReport(False, f"element {i} has fewer than {k} disjoint odd cycles")
    if k >= 1:
        n = len(vset)
        if comb(n, k - 1) > HITTING_ENUM_LIMIT:
            raise InstanceTooLarge("verify_bramble hitting check",
                                   HITTING_ENUM_LIMIT, comb(n, k - 1))
        for hit in combinations(sorted(vset), k - 1):
            hs = set(hit)
            if all(hs & e for e in elems):
                return BrambleReport(False, f"hitting set below order: {sorted(hs)}")
    return BrambleReport(True)


def _paper_vertex(k2, pos_1b, cyc_1b):
    """Duality-proof coordinates on the order-k2 parity handle: position i in
    [4k2] along a concentric cycle, cycle j in [k2] with the chords on j=1,
    mapped onto the generator's numbering."""
    pos = (pos_1b - 2) % (4 * k2)
    cyc = k2 - cyc_1b
    return cyc * 4 * k2 + pos


def _chord_path_vertices(k2, ell):
    """Vertex set of the path Q_ell: the ell-th chord plus the four column
    pairs walking it across every concentric cycle."""
    cols = (2 * ell - 1, 2 * ell, 4 * k2 + 1 - 2 * ell, 4 * k2 + 2 - 2 * ell)
    verts = set()
    for j in range(1, k2 + 1):
        for i in cols:
            verts.add(_paper_vertex(k2, i, j))
    return verts


def bramble_from_parity_handle(k):
    """The order-k certificate inside the parity handle of order k*k.

    Elements B_i^j take the block, containing the (i*k)-th concentric cycle,
    of the subgraph induced by the i-th group of k concentric cycles together
    with the j-th group of k chord paths.
    """
    if k < 1:
        raise InstanceTooLarge("bramble_from_parity_handle", BRAMBLE_ORDER_LIMIT, k)
    if k > BRAMBLE_ORDER_LIMIT:
        raise InstanceTooLarge("bramble_from_parity_handle", BRAMBLE_ORDER_LIMIT, k)
    k2 = k * k
    host = gen_parity_handle(k2).graph
    cycles = {j: {_paper_vertex(k2, i, j) for i in range(1, 4 * k2 + 1)}
              for j in range(1, k2 + 1)}
    paths = {ell: _chord_path_vertices(k2, ell) for ell in range(1, k2 + 1)}

    elements = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            region = set()
            for a in range(1, k + 1):
                region |= cycles[(i - 1) * k + a]
            for b in range(1, k + 1):
                region |= paths[(j - 1) * k + b]
            sub = host.subgraph(region)
            bd = blocks(sub)
            anchor = cycles[i * k]
            holder = [blk for blk in bd.blocks if anchor <= set(blk)]
            if len(holder) != 1:
                raise AssertionError("anchor cycle not inside a unique block")
            elements.append(frozenset(holder[0]))
    return host, OcpBramble(elements, k)
