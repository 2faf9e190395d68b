"""Builders for the instance families under verification.

Every bundle re-checks its declared properties (edge-count formula,
achromaticity, singular count, simplicity) at construction and aborts
with the violating choice sequence if one fails.  Choice sequences are
plain tuples so each instance reproduces from its provenance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from rainbowforge.bitset import bits, members
from rainbowforge.coloring import ColoredMatroid, Coloring, is_circuit_achromatic
from rainbowforge.graphs import (
    Graph,
    GraphError,
    SplitSpec,
    add_edge,
    add_triangle,
    bond_matroid,
    cycle_matroid,
    parse_edge_list,
    split_vertex,
)
from rainbowforge.matroid import BinaryMatroid, GF2Matrix


class GeneratorError(ValueError):
    """Invalid choice sequence or a failed declared-property check."""


@dataclass
class InstanceBundle:
    """A generated instance: host (graph or matrix), optional colouring,
    optional extension data, and reproducible provenance."""

    family: str
    kind: str  # "graphic" | "cographic" | "matrix"
    graph: Graph = None
    matrix: GF2Matrix = None
    coloring: Coloring = None
    provenance: dict = field(default_factory=dict)
    declared: dict = field(default_factory=dict)
    extension: dict = field(default_factory=dict)
    _matroid: BinaryMatroid = field(default=None, repr=False)

    @property
    def matroid(self):
        if self._matroid is None:
            if self.kind == "matrix":
                self._matroid = BinaryMatroid(self.matrix)
            elif self.kind == "graphic":
                self._matroid, _ = cycle_matroid(self.graph)
            elif self.kind == "cographic":
                self._matroid, _ = bond_matroid(self.graph)
            else:
                raise GeneratorError(f"unknown bundle kind {self.kind}")
        return self._matroid

    @property
    def cm(self):
        if self.coloring is None:
            raise GeneratorError("bundle carries no colouring")
        return ColoredMatroid(self.matroid, self.coloring)

    def with_coloring(self, coloring):
        return InstanceBundle(
            self.family,
            self.kind,
            self.graph,
            self.matrix,
            coloring,
            dict(self.provenance),
            dict(self.declared),
            dict(self.extension),
            self._matroid,
        )

    def to_payload(self):
        payload = {
            "family": self.family,
            "kind": self.kind,
            "provenance": self.provenance,
            "declared": self.declared,
            "extension": self.extension,
        }
        if self.graph is not None:
            payload["graph"] = self.graph.to_edge_list_text()
        if self.matrix is not None:
            payload["matrix"] = self.matrix.to_text()
        if self.coloring is not None:
            payload["coloring"] = self.coloring.to_text()
        return payload

    @classmethod
    def from_payload(cls, payload):
        return cls(
            family=payload["family"],
            kind=payload["kind"],
            graph=parse_edge_list(payload["graph"]) if "graph" in payload else None,
            matrix=GF2Matrix.from_text(payload["matrix"]) if "matrix" in payload else None,
            coloring=Coloring.from_text(payload["coloring"]) if "coloring" in payload else None,
            provenance=payload.get("provenance", {}),
            declared=payload.get("declared", {}),
            extension=payload.get("extension", {}),
        )


def _verify(bundle, condition, what):
    if not condition:
        raise GeneratorError(
            f"{bundle.family}: declared property failed ({what}); "
            f"provenance={bundle.provenance}"
        )


# -- the graphic stratified family (one singular edge) -------------------


def gen_graphic_stratified(n, choices):
    """Vertex-accretion family: start from a single edge, then each new
    vertex attaches by two same-coloured edges to distinct old vertices.
    Gives a connected simple graph with 2n-3 edges whose cycle matroid,
    with the class colouring, has no rainbow circuit and exactly one
    colour-singular edge."""
    if n < 3:
        raise GeneratorError("family needs n >= 3")
    choices = tuple((int(a), int(b)) for a, b in choices)
    if len(choices) != n - 2:
        raise GeneratorError(f"need {n - 2} attachment choices, got {len(choices)}")
    edges = [(0, 1)]
    colours = [0]
    for step, (a, b) in enumerate(choices):
        i = step + 2
        if a == b:
            raise GeneratorError(f"attachment {a},{b} would create parallel edges")
        if not (0 <= a < i and 0 <= b < i):
            raise GeneratorError(f"attachment {a},{b} outside the current graph")
        edges.append((i, a))
        edges.append((i, b))
        colours += [i - 1, i - 1]
        degs = [0] * (i + 1)
        for u, v in edges:
            degs[u] += 1
            degs[v] += 1
        if min(degs) < 2:
            raise GeneratorError(f"minimum degree dropped below 2 at step {i}")
    graph = Graph(n, edges)
    bundle = InstanceBundle(
        family="graphic-stratified",
        kind="graphic",
        graph=graph,
        coloring=Coloring(colours, expect_bounded=2),
        provenance={"n": n, "choices": [list(c) for c in choices]},
        declared={"epsilon": 2 * n - 3, "achromatic": True, "singular": 1},
    )
    _verify(bundle, graph.num_edges == 2 * n - 3, "edge count 2n-3")
    _verify(bundle, graph.is_connected(), "connected")
    _verify(bundle, bundle.matroid.simplicity_report().is_simple, "simple")
    _verify(bundle, is_circuit_achromatic(bundle.cm)[0], "circuit-achromatic")
    _verify(bundle, bundle.cm.colour_singular_elements() == 1, "singular edge is e1")
    return bundle


def graphic_choice_sequences(n):
    """All attachment sequences for the vertex-accretion family, in
    canonical order."""
    pools = [
        list(itertools.combinations(range(i), 2)) for i in range(2, n - 1 + 1)
    ]
    return itertools.product(*pools)


# -- the cographic stratified family --------------------------------------


def gen_cographic_stratified(n, choices):
    """Splitting-chain family: a triple edge on two vertices, then each
    step splits one vertex and adds two parallel same-coloured edges.
    The bond matroid with the class colouring has no rainbow cocycle."""
    if n < 3:
        raise GeneratorError("family needs n >= 3")
    choices = tuple((int(v), tuple(int(e) for e in side)) for v, side in choices)
    if len(choices) != n - 3:
        raise GeneratorError(f"need {n - 3} split choices, got {len(choices)}")
    graph = Graph(2, [(0, 1), (0, 1), (0, 1)])
    colours = [0, 1, 1]
    for step, (v, side1) in enumerate(choices):
        i = step + 3
        try:
            graph, new_ids = split_vertex(graph, SplitSpec(vertex=v, side1=side1, k=2))
        except GraphError as exc:
            raise GeneratorError(f"invalid split at step {i}: {exc}") from exc
        colours += [i - 1, i - 1]
        _check_obs_degree_bounds(graph, i)
    bundle = InstanceBundle(
        family="cographic-stratified",
        kind="cographic",
        graph=graph,
        coloring=Coloring(colours, expect_bounded=2),
        provenance={"n": n, "choices": [[v, list(s)] for v, s in choices]},
        declared={"epsilon": 2 * n - 3, "achromatic": True, "singular": 1},
    )
    _verify(bundle, graph.num_vertices == n - 1, "vertex count n-1")
    _verify(bundle, graph.num_edges == 2 * n - 3, "edge count 2n-3")
    _verify(bundle, graph.is_connected(), "connected")
    _verify(bundle, bundle.matroid.rank == n - 1, "bond matroid rank n-1")
    _verify(
        bundle,
        bundle.matroid.simplicity_report().is_simple,
        "no bridges or 2-cocycles",
    )
    _verify(bundle, is_circuit_achromatic(bundle.cm)[0], "no rainbow cocycles")
    _verify(bundle, bundle.cm.colour_singular_elements() == 1, "singular edge is e1")
    return bundle


def _check_obs_degree_bounds(graph, i):
    """Degree facts along the splitting chain: no loops, max degree at
    most i+1, and degree sums of vertex pairs at most i+4."""
    if any(u == v for u, v in graph.edges):
        raise GeneratorError(f"loop created at step {i}")
    degs = sorted((graph.degree(v) for v in range(graph.num_vertices)), reverse=True)
    if degs[0] > i + 1:
        raise GeneratorError(f"degree bound i+1 violated at step {i}")
    if len(degs) >= 2 and degs[0] + degs[1] > i + 4:
        raise GeneratorError(f"degree-sum bound i+4 violated at step {i}")


def cographic_choice_sequences(n, require_simple=True):
    """All split sequences yielding a valid chain instance, canonical
    order; sequences whose final bond matroid is not simple are skipped
    when require_simple (they fall outside the standing hypotheses)."""

    def rec(graph, step, prefix):
        if step > n - 1:
            yield tuple(prefix)
            return
        for v in range(graph.num_vertices):
            incident = graph.incident_edges(v)
            if len(incident) < 2:
                continue
            low = incident[0]
            rest = incident[1:]
            for r in range(len(rest) + 1):
                for extra in itertools.combinations(rest, r):
                    side1 = (low,) + extra
                    if len(side1) == len(incident):
                        continue
                    try:
                        g2, _ = split_vertex(
                            graph, SplitSpec(vertex=v, side1=side1, k=2)
                        )
                        _check_obs_degree_bounds(g2, step)
                    except (GraphError, GeneratorError):
                        continue
                    prefix.append((v, side1))
                    yield from rec(g2, step + 1, prefix)
                    prefix.pop()

    base = Graph(2, [(0, 1), (0, 1), (0, 1)])
    for seq in rec(base, 3, []):
        if require_simple:
            try:
                gen_cographic_stratified(n, seq)
            except GeneratorError:
                continue
        yield seq


# -- the k-singular family (edge-pair accretion over components) ----------


def gen_graphic_2r_minus_2(n, k, choices):
    """Component-merging family: k singular edges then same-coloured edge
    pairs, each step joining two components.  Gives a connected simple
    graph with 2(n-1)-k edges, a 2-bounded (n-1)-class colouring with no
    rainbow circuit and exactly k colour-singular edges."""
    if k not in (1, 2, 3):
        raise GeneratorError("k must be 1, 2 or 3")
    if n < k + 2:
        raise GeneratorError(f"need n >= {k + 2} for k = {k}")
    choices = tuple(tuple(int(x) for x in c) for c in choices)
    if len(choices) != n - 2:
        raise GeneratorError(f"need {n - 2} step choices, got {len(choices)}")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    edges = [(0, 1)]
    colours = [0]
    union(0, 1)
    for step, choice in enumerate(choices):
        i = step + 2
        if i <= k:
            if len(choice) != 2:
                raise GeneratorError(f"step {i} expects one edge (u,v)")
            u, v = choice
            if find(u) == find(v):
                raise GeneratorError(f"singular edge {choice} does not join components")
            edges.append((u, v))
            colours.append(i - 1)
            union(u, v)
        else:
            if len(choice) != 4:
                raise GeneratorError(f"step {i} expects an edge pair (u1,v1,u2,v2)")
            u1, v1, u2, v2 = choice
            if find(u1) != find(u2) or find(v1) != find(v2) or find(u1) == find(v1):
                raise GeneratorError(
                    f"edge pair {choice} must join the same two components"
                )
            if {u1, v1} == {u2, v2}:
                raise GeneratorError(f"edge pair {choice} would be parallel")
            edges.append((u1, v1))
            edges.append((u2, v2))
            colours += [i - 1, i - 1]
            union(u1, v1)
    graph = Graph(n, edges)
    bundle = InstanceBundle(
        family="graphic-2r-minus-2",
        kind="graphic",
        graph=graph,
        coloring=Coloring(colours, expect_bounded=2),
        provenance={"n": n, "k": k, "choices": [list(c) for c in choices]},
        declared={"epsilon": 2 * (n - 1) - k, "achromatic": True, "singular": k},
    )
    _verify(bundle, graph.num_edges == 2 * (n - 1) - k, "edge count 2(n-1)-k")
    _verify(bundle, graph.is_connected(), "connected")
    _verify(bundle, bundle.matroid.simplicity_report().is_simple, "simple")
    _verify(bundle, is_circuit_achromatic(bundle.cm)[0], "circuit-achromatic")
    _verify(
        bundle,
        bundle.cm.colour_singular_elements().bit_count() == k,
        f"exactly {k} singular edges",
    )
    return bundle


def family_2r2_choice_sequences(n, k):
    """All step sequences for the component-merging family, canonical
    order.  Exponential; campaigns sample from it."""

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def comp_map(parent):
        groups = {}
        for v in range(n):
            groups.setdefault(find(parent, v), []).append(v)
        return sorted(groups.values(), key=lambda g: g[0])

    def merged(parent, a, b):
        p2 = parent[:]
        p2[find(p2, a)] = find(p2, b)
        return p2

    def rec(parent, step, prefix):
        if step > n - 1:
            yield tuple(prefix)
            return
        comps = comp_map(parent)
        if step <= k:
            for ia in range(len(comps)):
                for ib in range(ia + 1, len(comps)):
                    for u in comps[ia]:
                        for v in comps[ib]:
                            prefix.append((min(u, v), max(u, v)))
                            yield from rec(merged(parent, u, v), step + 1, prefix)
                            prefix.pop()
        else:
            for ia in range(len(comps)):
                for ib in range(ia + 1, len(comps)):
                    cross = [(u, v) for u in comps[ia] for v in comps[ib]]
                    for (u1, v1), (u2, v2) in itertools.combinations(cross, 2):
                        prefix.append((u1, v1, u2, v2))
                        yield from rec(merged(parent, u1, v1), step + 1, prefix)
                        prefix.pop()

    parent = list(range(n))
    parent[0] = 1
    yield from rec(parent, 2, [])


# -- named instances -------------------------------------------------------


def _k23_plus(which):
    if which == 1:
        # hub vertices 0, 1; e1 = 01 joins them
        edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]
        colours = [0, 1, 2, 3, 1, 2, 3]
        note = "added edge carries the singular colour"
    else:
        # hub vertices 0, 1; the singular edge is a bipartite edge 0-2
        edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]
        colours = [1, 0, 2, 3, 1, 2, 3]
        note = "singular colour sits inside the biclique"
    graph = Graph(5, edges)
    bundle = InstanceBundle(
        family=f"K23_PLUS_{which}",
        kind="graphic",
        graph=graph,
        coloring=Coloring(colours, expect_bounded=2),
        provenance={"figure_colouring": which, "note": note},
        declared={"epsilon": 7, "achromatic": True, "singular": 1},
    )
    _verify(bundle, is_circuit_achromatic(bundle.cm)[0], "circuit-achromatic")
    _verify(bundle, bundle.cm.colour_singular_elements().bit_count() == 1, "one singular")
    return bundle


_R10_ROWS = None


def _r10_matrix():
    """[I5 | C] with C the circulant whose first row is 1,1,0,0,1; this
    is validated structurally, not trusted."""
    rows = []
    for i in range(5):
        left = [1 if j == i else 0 for j in range(5)]
        right = [1 if (j - i) % 5 in (0, 1, 4) else 0 for j in range(5)]
        rows.append(left + right)
    return GF2Matrix.from_lists(rows)


def _k33_graph():
    return Graph(6, [(a, b) for a in range(3) for b in range(3, 6)])


def gen_named(name):
    """Named hosts; K23_PLUS_* carry their fixed colourings, the rest are
    bare hosts to be coloured by campaigns."""
    name = name.upper()
    if name == "K23_PLUS_1":
        return _k23_plus(1)
    if name == "K23_PLUS_2":
        return _k23_plus(2)
    if name in ("K4", "K5"):
        n = 4 if name == "K4" else 5
        graph = Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])
        return InstanceBundle(
            family=name, kind="graphic", graph=graph, provenance={"name": name}
        )
    if name == "K33":
        return InstanceBundle(
            family="K33", kind="graphic", graph=_k33_graph(), provenance={"name": name}
        )
    if name == "R10":
        bundle = InstanceBundle(
            family="R10",
            kind="matrix",
            matrix=_r10_matrix(),
            provenance={"name": "R10", "representation": "[I5 | circulant(1,1,0,0,1)]"},
            declared={"epsilon": 10, "rank": 5},
        )
        matroid = bundle.matroid
        _verify(bundle, matroid.epsilon == 10 and matroid.rank == 5, "eps 10, rank 5")
        k33_sig, _ = cycle_matroid(_k33_graph())
        sig = k33_sig.circuit_size_multiset()
        for e in range(10):
            deletion, _ = matroid.minor(1 << e, 0)
            _verify(
                bundle,
                deletion.circuit_size_multiset() == sig,
                f"deletion of {e} has the circuit-size multiset of M(K33)",
            )
        return bundle
    raise GeneratorError(f"unknown named instance {name!r}")


# -- colouring enumeration -------------------------------------------------


def count_two_uniform_colourings(epsilon):
    """(epsilon - 1)!! perfect pairings of the ground set."""
    if epsilon % 2:
        raise GeneratorError("2-uniform colourings need an even ground set")
    count = 1
    for m in range(1, epsilon, 2):
        count *= m
    return count


def _pairings(elements):
    if not elements:
        yield ()
        return
    first = elements[0]
    for idx in range(1, len(elements)):
        partner = elements[idx]
        rest = elements[1:idx] + elements[idx + 1 :]
        for tail in _pairings(rest):
            yield ((first, partner),) + tail


def enumerate_two_uniform_colourings(epsilon, cap=None, seed=None):
    """Stream every perfect pairing of [0, epsilon) as a 2-uniform
    colouring, canonical order; with cap, a deterministic seeded sample
    of that enumeration."""
    if epsilon % 2:
        raise GeneratorError("2-uniform colourings need an even ground set")
    total = count_two_uniform_colourings(epsilon)
    keep = None
    if cap is not None and cap < total:
        rng = random.Random(seed)
        keep = set(rng.sample(range(total), cap))
    for index, pairing in enumerate(_pairings(tuple(range(epsilon)))):
        if keep is not None and index not in keep:
            continue
        colour_of = [0] * epsilon
        for colour, (a, b) in enumerate(pairing):
            colour_of[a] = colour
            colour_of[b] = colour
        yield Coloring(colour_of, expect_uniform=2)


def set_partitions(elements, blocks):
    """All partitions of `elements` into exactly `blocks` nonempty
    classes, canonical order (restricted-growth strings)."""
    n = len(elements)
    if blocks < 1 or blocks > n:
        return

    def rec(i, used, assignment):
        if i == n:
            if used == blocks:
                classes = [[] for _ in range(blocks)]
                for e, c in zip(elements, assignment):
                    classes[c].append(e)
                yield tuple(tuple(c) for c in classes)
            return
        if used + (n - i) < blocks:
            return
        for c in range(min(used + 1, blocks)):
            assignment.append(c)
            yield from rec(i + 1, max(used, c + 1), assignment)
            assignment.pop()

    yield from rec(0, 0, [])


def enumerate_r_colourings(epsilon, r, cap=None, seed=None):
    """Stream colourings with exactly r classes, deduplicated up to
    colour permutation (one per set partition); seeded reservoir sample
    when capped."""
    gen = set_partitions(tuple(range(epsilon)), r)
    if cap is None:
        chosen = gen
    else:
        rng = random.Random(seed)
        reservoir = []
        for i, part in enumerate(gen):
            if len(reservoir) < cap:
                reservoir.append(part)
            else:
                j = rng.randint(0, i)
                if j < cap:
                    reservoir[j] = part
        chosen = sorted(reservoir)
    for part in chosen:
        colour_of = [0] * epsilon
        for colour, cls in enumerate(part):
            for e in cls:
                colour_of[e] = colour
        yield Coloring(colour_of)


# -- extensions -------------------------------------------------------------


def extend_with_triangle_or_element(bundle, mode, params):
    """Extend a host instance for the T-collection and semi-pair
    searches.

    modes: "triangle" (graphic: add a triangle on three existing
    vertices), "element" (graphic: add one edge), "split-chain"
    (cographic: three single-edge splits).  The extension colouring
    follows params["t_colours"] (fresh distinct colours by default; the
    k-singular campaigns pass one shared colour)."""
    if bundle.coloring is None:
        raise GeneratorError("extension needs a coloured host")
    ncol = bundle.coloring.num_colours
    if mode == "triangle":
        if bundle.kind != "graphic":
            raise GeneratorError("triangle mode extends graphic hosts")
        x1, x2, x3 = params["vertices"]
        graph, T = add_triangle(bundle.graph, (x1, x2, x3))
        t_colours = tuple(params.get("t_colours", (ncol, ncol + 1, ncol + 2)))
        coloring = Coloring(tuple(bundle.coloring.colour_of) + t_colours)
        matroid, _ = cycle_matroid(graph)
        if not matroid.is_coindependent(bits(T)):
            raise GeneratorError("added triangle is not co-independent")
        return InstanceBundle(
            family=bundle.family + "+T",
            kind="graphic",
            graph=graph,
            coloring=coloring,
            provenance={**bundle.provenance, "triangle": [x1, x2, x3]},
            declared=dict(bundle.declared),
            extension={"mode": "triangle", "T": list(T)},
            _matroid=matroid,
        )
    if mode == "element":
        if bundle.kind != "graphic":
            raise GeneratorError("element mode extends graphic hosts")
        u, v = params["edge"]
        graph, x = add_edge(bundle.graph, u, v)
        nonparallel_to = params.get("nonparallel_to")
        if nonparallel_to is not None:
            a, b = bundle.graph.edges[nonparallel_to]
            if {a, b} == {u, v}:
                raise GeneratorError(
                    "extension element is parallel to the excluded element"
                )
        coloring = Coloring(tuple(bundle.coloring.colour_of) + (ncol,))
        return InstanceBundle(
            family=bundle.family + "+x",
            kind="graphic",
            graph=graph,
            coloring=coloring,
            provenance={**bundle.provenance, "edge": [u, v]},
            declared=dict(bundle.declared),
            extension={"mode": "element", "x": x},
        )
    if mode == "split-chain":
        if bundle.kind != "cographic":
            raise GeneratorError("split-chain mode extends cographic hosts")
        graph = bundle.graph
        T = []
        for v, side1 in params["splits"]:
            try:
                graph, new_ids = split_vertex(
                    graph, SplitSpec(vertex=int(v), side1=tuple(side1), k=1)
                )
            except GraphError as exc:
                raise GeneratorError(f"invalid split: {exc}") from exc
            T.append(new_ids[0])
        t_colours = tuple(params.get("t_colours", (ncol, ncol + 1, ncol + 2)))
        coloring = Coloring(tuple(bundle.coloring.colour_of) + t_colours)
        matroid, _ = bond_matroid(graph)
        tmask = bits(T)
        if not matroid.is_circuit(tmask):
            raise GeneratorError("split edges do not form a 3-cocycle")
        if not matroid.is_coindependent(tmask):
            raise GeneratorError("split edges are not co-independent")
        return InstanceBundle(
            family=bundle.family + "+T",
            kind="cographic",
            graph=graph,
            coloring=coloring,
            provenance={
                **bundle.provenance,
                "splits": [[int(v), list(s)] for v, s in params["splits"]],
            },
            declared=dict(bundle.declared),
            extension={"mode": "split-chain", "T": list(T)},
            _matroid=matroid,
        )
    raise GeneratorError(f"unknown extension mode {mode!r}")
