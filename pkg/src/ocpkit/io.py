"""Text and JSON formats: graphs, signed graphs, weights, decompositions,
brambles, and integer programs.

Writers emit canonical sorted output so that a parse/emit round trip is
byte-stable; parsers reject malformed input with 1-based line numbers.
"""

import json

from .decomposition import OcpTreeDecomposition
from .errors import FormatError
from .graphs import Graph, SignedGraph
from .intprog import IntegerProgram


def _tokens(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_graph(text):
    g = None
    n = m = None
    edges_seen = 0
    for lineno, tok in _tokens(text):
        if tok[0] == "p":
            if g is not None:
                raise FormatError("duplicate problem line", lineno)
            if len(tok) != 4 or tok[1] != "graph":
                raise FormatError("expected 'p graph <n> <m>'", lineno)
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise FormatError("vertex/edge counts must be integers", lineno)
            if n < 0 or m < 0:
                raise FormatError("negative counts", lineno)
            g = Graph(range(n))
        elif tok[0] == "e":
            if g is None:
                raise FormatError("edge before the problem line", lineno)
            if len(tok) != 3:
                raise FormatError("expected 'e <u> <v>'", lineno)
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError:
                raise FormatError("endpoints must be integers", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"endpoint outside [0,{n})", lineno)
            if u == v:
                raise FormatError("loops are not allowed in plain graphs", lineno)
            if g.has_edge(u, v):
                raise FormatError(f"duplicate edge ({u},{v})", lineno)
            g.add_edge(u, v)
            edges_seen += 1
        else:
            raise FormatError(f"unknown record {tok[0]!r}", lineno)
    if g is None:
        raise FormatError("missing problem line")
    if edges_seen != m:
        raise FormatError(f"header announced {m} edges, found {edges_seen}")
    return g


def emit_graph(g):
    verts = g.vertices
    remap = {v: i for i, v in enumerate(verts)}
    lines = [f"p graph {len(verts)} {g.num_edges()}"]
    for u, v in sorted((remap[u], remap[v]) for u, v in g.edges):
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def parse_signed_graph(text):
    sg = None
    n = m = None
    seen = 0
    for lineno, tok in _tokens(text):
        if tok[0] == "p":
            if sg is not None:
                raise FormatError("duplicate problem line", lineno)
            if len(tok) != 4 or tok[1] != "sgraph":
                raise FormatError("expected 'p sgraph <n> <m>'", lineno)
            n, m = int(tok[2]), int(tok[3])
            sg = SignedGraph(range(n))
        elif tok[0] == "e":
            if sg is None:
                raise FormatError("edge before the problem line", lineno)
            if len(tok) != 4:
                raise FormatError("expected 'e <u> <v> <0|1>'", lineno)
            u, v, lab = int(tok[1]), int(tok[2]), int(tok[3])
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"endpoint outside [0,{n})", lineno)
            if lab not in (0, 1):
                raise FormatError("label must be 0 or 1", lineno)
            sg.add_edge(u, v, lab)
            seen += 1
        else:
            raise FormatError(f"unknown record {tok[0]!r}", lineno)
    if sg is None:
        raise FormatError("missing problem line")
    if seen != m:
        raise FormatError(f"header announced {m} edges, found {seen}")
    return sg


def emit_signed_graph(sg):
    lines = [f"p sgraph {sg.num_vertices()} {sg.num_edges()}"]
    for _, u, v, lab in sg.edges:
        a, b = min(u, v), max(u, v)
        lines.append(f"e {a} {b} {lab}")
    return "\n".join(lines) + "\n"


def parse_weights(text, g):
    weights = {}
    for lineno, tok in _tokens(text):
        if tok[0] != "w" or len(tok) != 3:
            raise FormatError("expected 'w <vertex> <weight>'", lineno)
        v, wt = int(tok[1]), int(tok[2])
        if not g.has_vertex(v):
            raise FormatError(f"unknown vertex {v}", lineno)
        if v in weights:
            raise FormatError(f"duplicate weight for vertex {v}", lineno)
        weights[v] = wt
    for v in g.vertices:
        weights.setdefault(v, 0)
    return weights


def emit_weights(weights):
    return "".join(f"w {v} {weights[v]}\n" for v in sorted(weights))


def parse_decomposition(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as ex:
        raise FormatError(f"invalid JSON: {ex}")
    for key in ("nodes", "edges", "bags", "apex"):
        if key not in data:
            raise FormatError(f"missing key {key!r}")
    nodes = [int(t) for t in data["nodes"]]
    edges = [(int(a), int(b)) for a, b in data["edges"]]
    bags = {int(t): frozenset(int(v) for v in vs) for t, vs in data["bags"].items()}
    apex = {int(t): frozenset(int(v) for v in vs) for t, vs in data["apex"].items()}
    for t in nodes:
        if t not in bags:
            raise FormatError(f"node {t} has no bag")
        apex.setdefault(t, frozenset())
    root = data.get("root")
    return OcpTreeDecomposition(nodes, edges, bags, apex,
                                int(root) if root is not None else None)


def emit_decomposition(d):
    data = {
        "nodes": sorted(d.nodes),
        "edges": sorted([min(a, b), max(a, b)] for a, b in d.edges),
        "bags": {str(t): sorted(d.beta[t]) for t in sorted(d.nodes)},
        "apex": {str(t): sorted(d.alpha[t]) for t in sorted(d.nodes)},
    }
    if d.root is not None:
        data["root"] = d.root
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def parse_bramble(text):
    from .brambles import OcpBramble

    try:
        data = json.loads(text)
    except json.JSONDecodeError as ex:
        raise FormatError(f"invalid JSON: {ex}")
    if "order" not in data or "elements" not in data:
        raise FormatError("bramble file needs 'order' and 'elements'")
    return OcpBramble([frozenset(int(v) for v in e) for e in data["elements"]],
                      int(data["order"]))


def emit_bramble(b):
    data = {"order": b.order, "elements": sorted(sorted(e) for e in b.elements)}
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _parse_bound(tok):
    if tok == "-inf":
        return None, "lower"
    if tok == "+inf" or tok == "inf":
        return None, "upper"
    return int(tok), None


def parse_ip(text):
    header = None
    rows, rels, b = [], [], []
    lower = upper = None
    w = None
    num_vars = 0
    for lineno, tok in _tokens(text):
        if tok[0] == "p":
            if header is not None:
                raise FormatError("duplicate problem line", lineno)
            if len(tok) != 4 or tok[1] != "ip":
                raise FormatError("expected 'p ip <m> <n>'", lineno)
            header = (int(tok[2]), int(tok[3]))
            num_vars = header[1]
            lower = [None] * num_vars
            upper = [None] * num_vars
            w = [0] * num_vars
        elif tok[0] == "c":
            if header is None:
                raise FormatError("row before the problem line", lineno)
            if len(tok) < 3:
                raise FormatError("expected 'c <rhs> <le|eq> <idx:coef>...'", lineno)
            rhs = int(tok[1])
            rel = tok[2]
            if rel not in ("le", "eq"):
                raise FormatError("relation must be 'le' or 'eq'", lineno)
            row = {}
            for item in tok[3:]:
                try:
                    idx, coef = item.split(":")
                    idx, coef = int(idx), int(coef)
                except ValueError:
                    raise FormatError(f"bad coefficient token {item!r}", lineno)
                if not 0 <= idx < num_vars:
                    raise FormatError(f"column {idx} outside [0,{num_vars})", lineno)
                if idx in row:
                    raise FormatError(f"duplicate column {idx} in row", lineno)
                row[idx] = coef
            rows.append(row)
            rels.append(rel)
            b.append(rhs)
        elif tok[0] == "b":
            if header is None or len(tok) != 4:
                raise FormatError("expected 'b <idx> <lo|-inf> <hi|+inf>'", lineno)
            idx = int(tok[1])
            if not 0 <= idx < num_vars:
                raise FormatError(f"column {idx} outside [0,{num_vars})", lineno)
            lo, kind = _parse_bound(tok[2])
            if kind == "upper":
                raise FormatError("lower bound cannot be +inf", lineno)
            hi, kind = _parse_bound(tok[3])
            if kind == "lower":
                raise FormatError("upper bound cannot be -inf", lineno)
            lower[idx] = lo
            upper[idx] = hi
        elif tok[0] == "o":
            if header is None:
                raise FormatError("objective before the problem line", lineno)
            for item in tok[1:]:
                try:
                    idx, coef = item.split(":")
                    idx, coef = int(idx), int(coef)
                except ValueError:
                    raise FormatError(f"bad objective token {item!r}", lineno)
                if not 0 <= idx < num_vars:
                    raise FormatError(f"column {idx} outside [0,{num_vars})", lineno)
                w[idx] = coef
        else:
            raise FormatError(f"unknown record {tok[0]!r}", lineno)
    if header is None:
        raise FormatError("missing problem line")
    if len(rows) != header[0]:
        raise FormatError(f"header announced {header[0]} rows, found {len(rows)}")
    return IntegerProgram(num_vars, rows, rels, b, w, lower, upper)


def emit_ip(ip):
    lines = [f"p ip {len(ip.rows)} {ip.num_vars}"]
    for row, rel, bb in zip(ip.rows, ip.rels, ip.b):
        items = " ".join(f"{j}:{c}" for j, c in sorted(row.items()) if c)
        lines.append(f"c {bb} {rel} {items}".rstrip())
    for j in range(ip.num_vars):
        lo = "-inf" if ip.lower[j] is None else str(ip.lower[j])
        hi = "+inf" if ip.upper[j] is None else str(ip.upper[j])
        lines.append(f"b {j} {lo} {hi}")
    obj = " ".join(f"{j}:{c}" for j, c in enumerate(ip.w) if c)
    lines.append(f"o {obj}".rstrip())
    return "\n".join(lines) + "\n"


def emit_annotation(pg):
    data = {
        "kind": pg.kind,
        "order": pg.order,
        "parity_breaking_edges": [sorted(e) for e in pg.parity_breaking_edges],
    }
    if pg.kind in ("cylindrical", "handle", "vortex"):
        data["length"] = pg.length
        data["concentric_cycles"] = pg.concentric_cycles
        data["radial_paths"] = pg.radial_paths
    if pg.kind == "universal":
        data["horizontal_paths"] = pg.horizontal_paths
        data["vertical_paths"] = pg.vertical_paths
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def emit_dot(g, name="g"):
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f"  {v};")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
