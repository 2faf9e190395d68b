"""Multigraphs, their cycle and bond matroids, vertex splitting, and the
text formats (edge lists and graph6) used to ingest graph catalogs.
"""

from __future__ import annotations

from dataclasses import dataclass

from rainbowforge.bitset import bits
from rainbowforge.matroid import BinaryMatroid, GF2Matrix


class GraphError(ValueError):
    """Malformed graph input or an invalid graph operation."""


class Graph:
    """Multigraph with dense, append-ordered edge ids.  Loops and parallel
    edges are permitted; immutable after construction."""

    __slots__ = ("num_vertices", "edges")

    def __init__(self, num_vertices, edges):
        edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise GraphError(f"edge ({u},{v}) has endpoints outside range")
        self.num_vertices = num_vertices
        self.edges = edges

    @property
    def num_edges(self):
        return len(self.edges)

    def degree(self, v):
        d = 0
        for u, w in self.edges:
            d += (u == v) + (w == v)
        return d

    def incident_edges(self, v):
        return tuple(
            i for i, (u, w) in enumerate(self.edges) if u == v or w == v
        )

    def degree_sequence(self):
        return tuple(sorted(self.degree(v) for v in range(self.num_vertices)))

    def components(self):
        """List of vertex sets, one per connected component."""
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups = {}
        for v in range(self.num_vertices):
            groups.setdefault(find(v), set()).add(v)
        return sorted(groups.values(), key=min)

    def is_connected(self):
        return len(self.components()) <= 1

    def edge_multiset(self):
        return tuple(sorted(tuple(sorted(e)) for e in self.edges))

    def to_edge_list_text(self):
        body = ",".join(f"{u}-{v}" for u, v in self.edges)
        return f"{self.num_vertices}; {body}" if body else f"{self.num_vertices};"


# -- parsing -----------------------------------------------------------


def parse_edge_list(text):
    head, sep, body = text.partition(";")
    if not sep:
        raise GraphError(f"edge list {text!r} is missing the ';' separator")
    try:
        n = int(head.strip())
    except ValueError as exc:
        raise GraphError(f"bad vertex count in {text!r}") from exc
    edges = []
    body = body.strip()
    if body:
        for token in body.split(","):
            u, sep, v = token.strip().partition("-")
            if not sep:
                raise GraphError(f"bad edge token {token!r}")
            try:
                edges.append((int(u), int(v)))
            except ValueError as exc:
                raise GraphError(f"bad edge token {token!r}") from exc
    return Graph(n, edges)


_G6_HEADER = ">>graph6<<"


def _g6_read_n(data):
    if not data:
        raise GraphError("empty graph6 line")
    c = data[0]
    if c == 126:
        if len(data) >= 4 and data[1] == 126:
            vals = data[2:8]
            if len(vals) != 6 or any(not 63 <= b <= 126 for b in vals):
                raise GraphError("bad graph6 long size field")
            n = 0
            for b in vals:
                n = (n << 6) | (b - 63)
            return n, 8
        vals = data[1:4]
        if len(vals) != 3 or any(not 63 <= b <= 126 for b in vals):
            raise GraphError("bad graph6 medium size field")
        n = 0
        for b in vals:
            n = (n << 6) | (b - 63)
        return n, 4
    if not 63 <= c <= 125:
        raise GraphError(f"bad graph6 size byte {c}")
    return c - 63, 1


def parse_graph6(line):
    """Decode one graph6 line (simple graph).  Rejects malformed input:
    wrong length, out-of-range bytes, or nonzero padding bits."""
    line = line.strip()
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
    data = line.encode("ascii", errors="strict") if isinstance(line, str) else line
    n, offset = _g6_read_n(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = data[offset:]
    if len(payload) != nbytes:
        raise GraphError(
            f"graph6 payload length {len(payload)} != expected {nbytes} for n={n}"
        )
    if any(not 63 <= b <= 126 for b in payload):
        raise GraphError("graph6 payload byte out of range")
    bitstream = 0
    for b in payload:
        bitstream = (bitstream << 6) | (b - 63)
    pad = nbytes * 6 - nbits
    if pad and bitstream & ((1 << pad) - 1):
        raise GraphError("graph6 padding bits are not zero")
    bitstream >>= pad
    edges = []
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bitstream & (1 << pos):
                edges.append((i, j))
            pos -= 1
    return Graph(n, edges)


def encode_graph6(graph):
    """Encode a simple graph as one graph6 line."""
    n = graph.num_vertices
    adj = set()
    for u, v in graph.edges:
        if u == v:
            raise GraphError("graph6 cannot encode loops")
        key = (min(u, v), max(u, v))
        if key in adj:
            raise GraphError("graph6 cannot encode parallel edges")
        adj.add(key)
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    else:
        raise GraphError("graph too large for this encoder")
    stream = 0
    nbits = n * (n - 1) // 2
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if (i, j) in adj:
                stream |= 1 << pos
            pos -= 1
    pad = (6 - nbits % 6) % 6
    stream <<= pad
    payload = bytes(
        63 + ((stream >> (6 * k)) & 63) for k in reversed(range((nbits + pad) // 6))
    )
    return (head + payload).decode("ascii")


def parse_graph(text, fmt="edge-list"):
    if fmt == "edge-list":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise GraphError(f"unknown graph format {fmt!r}")


def read_graph6_file(path):
    graphs = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                graphs.append(parse_graph6(line))
    return graphs


# -- matroids ----------------------------------------------------------


def cycle_matroid(graph):
    """Cycle matroid: circuits are the edge sets of simple cycles.
    Element i is edge i; the identity edge map is returned alongside."""
    if graph.num_edges == 0:
        raise GraphError("cycle matroid needs at least one edge")
    rows = []
    for v in range(graph.num_vertices):
        row = 0
        for i, (a, b) in enumerate(graph.edges):
            if (a == v) != (b == v):  # loops give zero columns
                row |= 1 << i
        rows.append(row)
    matroid = BinaryMatroid(GF2Matrix(graph.num_vertices, graph.num_edges, rows))
    edge_map = {i: i for i in range(graph.num_edges)}
    return matroid, edge_map


def bond_matroid(graph):
    """Bond matroid (dual of the cycle matroid): circuits are minimal
    edge cuts of the graph."""
    matroid, edge_map = cycle_matroid(graph)
    return matroid.dual(), edge_map


# -- constructions -----------------------------------------------------


@dataclass(frozen=True)
class SplitSpec:
    """Split `vertex` into two vertices joined by k new parallel edges;
    incident edge ids in `side1` stay on the old vertex id, the rest move
    to the new one."""

    vertex: int
    side1: tuple
    k: int = 1


def split_vertex(graph, spec):
    """Vertex splitting (inverse of contracting the new parallel edges).

    Old edge ids are preserved; the k new parallel edges get the next ids.
    Returns (new_graph, new_edge_ids).  A loop at the split vertex stays a
    loop on whichever side its id was assigned to.
    """
    v = spec.vertex
    incident = set(graph.incident_edges(v))
    side1 = set(spec.side1)
    if not side1 <= incident:
        raise GraphError("side1 contains edges not incident with the vertex")
    side2 = incident - side1
    if not side1 or not side2:
        raise GraphError("both sides of a split must be non-empty")
    if spec.k < 1:
        raise GraphError("a split must add at least one new edge")
    v2 = graph.num_vertices
    edges = []
    for i, (a, b) in enumerate(graph.edges):
        if i in side2:
            a = v2 if a == v else a
            b = v2 if b == v else b
        edges.append((a, b))
    new_ids = tuple(range(graph.num_edges, graph.num_edges + spec.k))
    edges.extend((v, v2) for _ in range(spec.k))
    return Graph(graph.num_vertices + 1, edges), new_ids


def add_triangle(graph, vertices):
    """Add the three edges x1x2, x1x3, x2x3 on existing distinct vertices;
    returns (new_graph, (e1, e2, e3))."""
    x1, x2, x3 = vertices
    if len({x1, x2, x3}) != 3:
        raise GraphError("triangle vertices must be distinct")
    for x in (x1, x2, x3):
        if not 0 <= x < graph.num_vertices:
            raise GraphError(f"vertex {x} does not exist")
    base = graph.num_edges
    edges = graph.edges + ((x1, x2), (x1, x3), (x2, x3))
    return Graph(graph.num_vertices, edges), (base, base + 1, base + 2)


def add_edge(graph, u, v):
    """Append a single edge; returns (new_graph, edge_id)."""
    if u == v:
        raise GraphError("refusing to add a loop")
    for x in (u, v):
        if not 0 <= x < graph.num_vertices:
            raise GraphError(f"vertex {x} does not exist")
    return Graph(graph.num_vertices, graph.edges + ((u, v),)), graph.num_edges


def bonds_by_bipartition(graph):
    """Oracle-style bond enumeration: all bipartition cuts filtered to
    inclusion-minimal nonempty ones.  Exponential in the vertex count."""
    n = graph.num_vertices
    cuts = set()
    for side in range(1, 1 << (n - 1)):
        cut = bits(
            i
            for i, (u, v) in enumerate(graph.edges)
            if ((side >> u) & 1) != ((side >> v) & 1)
        )
        if cut:
            cuts.add(cut)
    minimal = [c for c in cuts if not any(d != c and d & ~c == 0 for d in cuts)]
    return sorted(minimal)
