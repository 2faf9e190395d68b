"""Certificate finders for rainbow structures.

Every finder is exhaustive over enumerated circuits (or cycle-space
members) with size-bound pruning, so a returned certificate is a proof
and a None is a disproof within the stated bound.  Certificates
re-verify themselves from scratch at construction; a failure there is a
bug, not an input condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from rainbowforge import budget, kernels
from rainbowforge.bitset import bits, canonical_key, members
from rainbowforge.coloring import ColoredMatroid

KIND_RAINBOW_CIRCUIT = "RAINBOW_CIRCUIT"
KIND_SHORT_RC = "SHORT_RC"
KIND_SRCP = "SRCP"
KIND_SRC4 = "SRC4"
KIND_SRTHCP = "SRThCP"
KIND_T_SRCP = "T_SRCP"
KIND_T_SRCT = "T_SRCT"
KIND_NEAR_T_SRCP = "NEAR_T_SRCP"
KIND_X_SEMI_SRCP = "X_SEMI_SRCP"
KIND_E_RAINBOW = "E_RAINBOW"
KIND_S_RAINBOW = "S_RAINBOW"

_T_KINDS = {KIND_T_SRCP, KIND_T_SRCT, KIND_NEAR_T_SRCP}


class SearchError(ValueError):
    """Violated structural precondition on a finder."""


class CertificateError(AssertionError):
    """A freshly built certificate failed its own re-verification."""


@dataclass(frozen=True)
class RainbowCertificate:
    """A found witness.  `sets` are element masks; `cycles_allowed` means
    members are verified as cycles rather than circuits."""

    kind: str
    sets: tuple
    bounds: dict
    transcript: tuple
    cycles_allowed: bool = False

    def to_record(self, instance_id):
        return {
            "instance_id": instance_id,
            "kind": self.kind,
            "circuits": [list(members(s)) for s in self.sets],
            "bounds": dict(self.bounds),
            "verified": True,
        }

    @classmethod
    def from_record(cls, record):
        return cls(
            kind=record["kind"],
            sets=tuple(bits(ids) for ids in record["circuits"]),
            bounds=dict(record["bounds"]),
            transcript=(),
            cycles_allowed=bool(record["bounds"].get("cycles", False)),
        )


def _mask_from_bounds(bounds, key):
    return bits(bounds.get(key, ()))


def reverify(cert, cm):
    """Re-verify a certificate from scratch against its coloured matroid
    (the extension matroid for T/x/e/s kinds).  Returns the transcript;
    raises CertificateError if any condition fails."""
    matroid = cm.matroid
    lines = []

    def ensure(cond, text):
        lines.append(("ok " if cond else "FAIL ") + text)
        if not cond:
            raise CertificateError("; ".join(lines))

    for s in cert.sets:
        if cert.cycles_allowed:
            ensure(matroid.is_cycle(s) and s != 0, f"{members(s)} is a nonzero cycle")
        else:
            ensure(matroid.is_circuit(s), f"{members(s)} is a circuit")

    kind = cert.kind
    b = cert.bounds
    sizes = [s.bit_count() for s in cert.sets]

    if kind in (KIND_RAINBOW_CIRCUIT, KIND_SHORT_RC):
        (c,) = cert.sets
        ensure(cm.is_rainbow(c), "circuit is rainbow")
        if "bound" in b:
            ensure(sizes[0] <= b["bound"], f"|C| = {sizes[0]} <= {b['bound']}")
    elif kind == KIND_SRCP:
        c1, c2 = cert.sets
        ensure(c1 & c2 == 0, "circuits are disjoint")
        ensure(cm.is_rainbow(c1) and cm.is_rainbow(c2), "both circuits rainbow")
        ensure(sum(sizes) <= b["bound"], f"|C1|+|C2| = {sum(sizes)} <= {b['bound']}")
    elif kind == KIND_SRC4:
        ensure(len(cert.sets) == 4, "four circuits")
        for s in cert.sets:
            ensure(cm.is_rainbow(s), f"{members(s)} rainbow")
        total = sum(sizes)
        ensure(total <= b["bound"], f"total {total} <= {b['bound']}")
        union = 0
        twice = 0
        thrice = 0
        for s in cert.sets:
            thrice |= twice & s
            twice |= union & s
            union |= s
        ensure(thrice == 0, "no element lies in three of the circuits")
    elif kind == KIND_SRTHCP:
        d1, d2, d3, c = cert.sets
        theta = d1 | d2 | d3
        ensure(d1 ^ d2 == d3, "theta circuits pairwise-xor to the third")
        inside = [x for x in matroid.circuits() if x & ~theta == 0]
        ensure(len(inside) == 3, "theta subset contains exactly three circuits")
        ensure(cm.is_rainbow(theta), "theta subset is rainbow")
        ensure(cm.is_rainbow(c), "companion circuit is rainbow")
        ensure(theta & c == 0, "theta and circuit are disjoint")
        psi = math.ceil(c.bit_count() / 2) + theta.bit_count()
        ensure(psi == b["psi"], f"psi recomputes to {psi}")
        if "bound" in b:
            ensure(psi <= b["bound"], f"psi {psi} <= {b['bound']}")
    elif kind in _T_KINDS:
        T = _mask_from_bounds(b, "T")
        avoid = _mask_from_bounds(b, "avoid")
        for s in cert.sets:
            ensure((s & T).bit_count() == 1, f"{members(s)} meets T exactly once")
            ensure(cm.is_rainbow(s & ~T), f"{members(s)} minus T is rainbow")
            ensure(s & avoid == 0, "avoid constraint respected")
        for i in range(len(cert.sets)):
            for j in range(i + 1, len(cert.sets)):
                ensure(cert.sets[i] & cert.sets[j] == 0, "members pairwise disjoint")
                if kind != KIND_NEAR_T_SRCP:
                    ensure(
                        sizes[i] + sizes[j] <= b["bound"],
                        f"|C{i}|+|C{j}| = {sizes[i] + sizes[j]} <= {b['bound']}",
                    )
        if kind == KIND_NEAR_T_SRCP:
            ensure(sum(sizes) <= b["bound"], f"sum {sum(sizes)} <= {b['bound']}")
        anchors = b.get("anchors")
        if anchors:
            for s, a in zip(cert.sets, anchors):
                ensure(s & (1 << a) != 0, f"anchor {a} inside {members(s)}")
    elif kind == KIND_X_SEMI_SRCP:
        x = b["x"]
        xbit = 1 << x
        c1, c2 = cert.sets
        ensure(c1 & c2 == xbit, "circuits meet exactly in x")
        ensure(cm.is_rainbow(c1 & ~xbit) and cm.is_rainbow(c2 & ~xbit), "C - x rainbow")
        ensure(sum(sizes) <= b["bound"], f"|C1|+|C2| = {sum(sizes)} <= {b['bound']}")
    elif kind in (KIND_E_RAINBOW, KIND_S_RAINBOW):
        T = _mask_from_bounds(b, "T")
        avoid = _mask_from_bounds(b, "avoid")
        (c,) = cert.sets
        ensure((c & T).bit_count() == 1, "circuit meets the extension set once")
        ensure(cm.is_rainbow(c & ~T), "circuit minus extension set is rainbow")
        ensure(sizes[0] <= b["bound"], f"|C| = {sizes[0]} <= {b['bound']}")
        ensure(c & avoid == 0, "avoid constraint respected")
        anchors = b.get("anchors")
        if anchors:
            ensure(c & (1 << anchors[0]) != 0, f"anchor {anchors[0]} in circuit")
    else:
        raise CertificateError(f"unknown certificate kind {kind}")
    return tuple(lines)


def _certify(kind, sets, bounds, cm, cycles_allowed=False):
    cert = RainbowCertificate(kind, tuple(sets), bounds, (), cycles_allowed)
    transcript = reverify(cert, cm)
    return RainbowCertificate(kind, tuple(sets), bounds, transcript, cycles_allowed)


# -- plain rainbow circuits -------------------------------------------


def rainbow_circuits(cm, max_size=None):
    """Rainbow circuits in canonical order."""
    return [c for c in cm.matroid.circuits(max_size) if cm.is_rainbow(c)]


def find_rainbow_circuit(cm, max_size=None):
    """Smallest rainbow circuit (within max_size), or None."""
    for c in cm.matroid.circuits(max_size):
        if cm.is_rainbow(c):
            bounds = {"rank": cm.matroid.rank}
            if max_size is not None:
                bounds["bound"] = max_size
            return _certify(KIND_RAINBOW_CIRCUIT, (c,), bounds, cm)
    return None


def find_short_rainbow_circuit(cm):
    """Rainbow circuit of size at most floor((r+2)/2), or None."""
    bound = (cm.matroid.rank + 2) // 2
    for c in cm.matroid.circuits(bound):
        if cm.is_rainbow(c):
            return _certify(
                KIND_SHORT_RC, (c,), {"rank": cm.matroid.rank, "bound": bound}, cm
            )
    return None


def find_srcp(cm):
    """Disjoint rainbow circuit pair minimizing |C1|+|C2| <= r+2, or None."""
    rank = cm.matroid.rank
    bound = rank + 2
    cands = rainbow_circuits(cm, max_size=bound - 1)
    sizes = [c.bit_count() for c in cands]
    pair = kernels.best_disjoint_pair(cands, sizes, bound, cm.matroid.epsilon)
    if pair is None:
        return None
    i, j = pair
    return _certify(
        KIND_SRCP, (cands[i], cands[j]), {"rank": rank, "bound": bound}, cm
    )


# -- theta subsets ------------------------------------------------------


@dataclass(frozen=True)
class ThetaSubset:
    elements: int
    circuits: tuple


def rainbow_theta_subsets(cm):
    """All rainbow theta-subsets: unions of two crossing circuits whose
    symmetric difference is again a circuit, containing exactly three
    circuits in total, with all colours distinct."""
    circuits = cm.matroid.circuits()
    circuit_set = set(circuits)
    seen = {}
    for i, c1 in enumerate(circuits):
        for c2 in circuits[i + 1 :]:
            if c1 & c2 == 0:
                continue
            union = c1 | c2
            if union in seen:
                continue
            third = c1 ^ c2
            if third not in circuit_set:
                continue
            if sum(1 for c in circuits if c & ~union == 0) != 3:
                continue
            if not cm.is_rainbow(union):
                continue
            triple = tuple(sorted((c1, c2, third), key=canonical_key))
            seen[union] = ThetaSubset(union, triple)
    return sorted(seen.values(), key=lambda t: canonical_key(t.elements))


def theta_chords(matroid, theta):
    """Chords of a theta subset: elements of cl(theta) - theta."""
    return members(matroid.closure(theta) & ~theta)


@dataclass(frozen=True)
class ThetaOutcome:
    """Minimum-psi rainbow theta-circuit pair plus the case split it
    lands in: a short pair exists (i), psi <= r+2 (ii), or the chordal
    shapes iii.1 / iii.2."""

    certificate: object
    outcome_srcp: bool
    outcome_psi_r2: bool
    outcome_iii1: bool
    outcome_iii2: bool

    @property
    def any_outcome(self):
        return (
            self.outcome_srcp
            or self.outcome_psi_r2
            or self.outcome_iii1
            or self.outcome_iii2
        )


def _theta_chord_conditions(matroid, theta):
    """Theta has at most two chords and every chordal circuit leaves an
    independent remainder."""
    chords = theta_chords(matroid, theta)
    if len(chords) > 2:
        return False, chords
    for e in chords:
        ebit = 1 << e
        for d in matroid.circuits():
            if d & ebit and d & ~(theta | ebit) == 0:
                if not matroid.is_independent(theta & ~d):
                    return False, chords
    return True, chords


def find_theta_circuit_pair(cm):
    """Search rainbow theta-subset / rainbow-circuit disjoint pairs,
    minimizing psi = ceil(|C|/2) + |theta|, and classify the outcome."""
    matroid = cm.matroid
    rank = matroid.rank
    thetas = rainbow_theta_subsets(cm)
    rbows = rainbow_circuits(cm)
    best = None
    for th in thetas:
        for c in rbows:
            if c & th.elements:
                continue
            psi = math.ceil(c.bit_count() / 2) + th.elements.bit_count()
            key = (psi, canonical_key(th.elements), canonical_key(c))
            if best is None or key < best[0]:
                best = (key, th, c)
    srcp = find_srcp(cm) is not None
    if best is None:
        return ThetaOutcome(None, srcp, False, False, False)
    (psi, _, _), th, c = best
    cert = None
    if psi <= rank + 3:
        cert = _certify(
            KIND_SRTHCP,
            (*th.circuits, c),
            {"rank": rank, "bound": rank + 3, "psi": psi},
            cm,
        )
    iii1 = iii2 = False
    for th2 in thetas:
        if iii1 and iii2:
            break
        ok, chords = _theta_chord_conditions(matroid, th2.elements)
        if not ok:
            continue
        chord_mask = bits(chords)
        tsize = th2.elements.bit_count()
        for c2 in rbows:
            if c2 & th2.elements:
                continue
            psi2 = math.ceil(c2.bit_count() / 2) + tsize
            if psi2 > rank + 3:
                continue
            k = (c2 & chord_mask).bit_count()
            csize = c2.bit_count()
            if k == 1 and csize % 2 == 1 and 2 * tsize + csize <= 2 * rank + 5:
                iii1 = True
            if k == 2 and csize % 2 == 0 and 2 * tsize + csize <= 2 * rank + 6:
                iii2 = True
    return ThetaOutcome(cert, srcp, psi <= rank + 2, iii1, iii2)


# -- SRC 4-tuples --------------------------------------------------------


def _multiplicity_ok(sets):
    union = 0
    twice = 0
    thrice = 0
    for s in sets:
        thrice |= twice & s
        twice |= union & s
        union |= s
    return thrice == 0


def find_src4tuple(cm):
    """Four rainbow circuits with total size <= 2r+4 and no element in
    more than two, or None.

    Search order: doubling an SRCP, then a rainbow theta plus a disjoint
    circuit, then distinct 4-subsets, then doubled-singleton multisets
    {C1, C1, C2, C3}; together these cover every multiset shape that can
    satisfy the multiplicity condition.
    """
    rank = cm.matroid.rank
    bound = 2 * rank + 4
    srcp = find_srcp(cm)
    if srcp is not None:
        c1, c2 = srcp.sets
        return _certify(
            KIND_SRC4, (c1, c1, c2, c2), {"rank": rank, "bound": bound}, cm
        )
    rbows = rainbow_circuits(cm, max_size=bound - 3)
    sizes = [c.bit_count() for c in rbows]
    for th in rainbow_theta_subsets(cm):
        budget_left = bound - 2 * th.elements.bit_count()
        if budget_left < 0:
            continue
        for c, sz in zip(rbows, sizes):
            if sz > budget_left:
                break
            if c & th.elements == 0:
                return _certify(
                    KIND_SRC4, (*th.circuits, c), {"rank": rank, "bound": bound}, cm
                )
    n = len(rbows)
    for i in range(n):
        if 4 * sizes[i] > bound:
            break
        for j in range(i + 1, n):
            if sizes[i] + 3 * sizes[j] > bound:
                break
            for k in range(j + 1, n):
                if sizes[i] + sizes[j] + 2 * sizes[k] > bound:
                    break
                for l in range(k + 1, n):
                    if sizes[i] + sizes[j] + sizes[k] + sizes[l] > bound:
                        break
                    quad = (rbows[i], rbows[j], rbows[k], rbows[l])
                    if _multiplicity_ok(quad):
                        return _certify(
                            KIND_SRC4, quad, {"rank": rank, "bound": bound}, cm
                        )
    for i in range(n):
        if 2 * sizes[i] + 2 > bound:
            break
        for j in range(n):
            if j == i or rbows[i] & rbows[j]:
                continue
            if 2 * sizes[i] + sizes[j] + 1 > bound:
                break
            for k in range(j + 1, n):
                if k == i:
                    continue
                if 2 * sizes[i] + sizes[j] + sizes[k] > bound:
                    break
                if rbows[i] & rbows[k]:
                    continue
                return _certify(
                    KIND_SRC4,
                    (rbows[i], rbows[i], rbows[j], rbows[k]),
                    {"rank": rank, "bound": bound},
                    cm,
                )
    return None


# -- T-collections -------------------------------------------------------


def _check_T_structure(cm, T, kind):
    matroid = cm.matroid
    if T == 0:
        raise SearchError("T must be non-empty")
    if kind in _T_KINDS:
        if T.bit_count() != 3:
            raise SearchError(f"{kind} needs a 3-element T")
        if not matroid.is_circuit(T):
            raise SearchError("T is not a 3-circuit of the extension")
        if not matroid.is_coindependent(T):
            raise SearchError("T is not co-independent in the extension")
    elif kind in (KIND_X_SEMI_SRCP, KIND_E_RAINBOW):
        if T.bit_count() != 1:
            raise SearchError(f"{kind} takes a single extension element")


def find_T_collection(cm, T, kind, avoid=0, anchors=None, use_cycles=False):
    """Find a T-collection of the requested kind in the extension
    matroid cm (whose ground set includes T).

    Bounds use the base rank r = r(N minus T).  `avoid` is a mask no
    member may touch; `anchors` pins member i to contain anchors[i].
    With use_cycles the members are cycles rather than circuits (the
    certificate records it); circuits remain the default because a cycle
    collection always upgrades to a circuit one.
    """
    T = int(T)
    _check_T_structure(cm, T, kind)
    matroid = cm.matroid
    base_rank = matroid.rank_of(matroid.ground & ~T)
    if kind in (KIND_T_SRCP, KIND_T_SRCT):
        bound = base_rank + 2
    elif kind in (KIND_NEAR_T_SRCP, KIND_X_SEMI_SRCP):
        bound = base_rank + 3
    elif kind == KIND_E_RAINBOW:
        bound = base_rank
    elif kind == KIND_S_RAINBOW:
        bound = matroid.rank
    else:
        raise SearchError(f"unknown T-collection kind {kind}")

    single = kind in (KIND_E_RAINBOW, KIND_S_RAINBOW)
    size_cap = bound if single else bound - 1
    if use_cycles:
        budget.check_nullity(matroid.nullity)
        pool = sorted(
            kernels.cycle_vectors(matroid.cycle_basis, size_cap, matroid.epsilon),
            key=canonical_key,
        )
    else:
        pool = matroid.circuits(size_cap)

    xbit = T if kind == KIND_X_SEMI_SRCP else 0
    cands = []
    for c in pool:
        if c & avoid:
            continue
        if kind == KIND_X_SEMI_SRCP:
            if c & T == 0:
                continue
            if not cm.is_rainbow(c & ~T):
                continue
        else:
            if (c & T).bit_count() != 1:
                continue
            if not cm.is_rainbow(c & ~T):
                continue
        cands.append(c)

    bounds = {
        "rank": base_rank,
        "bound": bound,
        "T": list(members(T)),
    }
    if kind == KIND_X_SEMI_SRCP:
        bounds["x"] = members(T)[0]
    if avoid:
        bounds["avoid"] = list(members(avoid))
    if anchors:
        bounds["anchors"] = list(anchors)
    if use_cycles:
        bounds["cycles"] = True

    def anchored(c, pos):
        return anchors is None or c & (1 << anchors[pos])

    if single:
        for c in cands:
            if c.bit_count() <= bound and anchored(c, 0):
                return _certify(kind, (c,), bounds, cm, use_cycles)
        return None

    sizes = [c.bit_count() for c in cands]
    if kind == KIND_X_SEMI_SRCP:
        best = None
        for i in range(len(cands)):
            for j in range(i + 1, len(cands)):
                if cands[i] & cands[j] != xbit:
                    continue
                total = sizes[i] + sizes[j]
                if total > bound:
                    continue
                pair = (cands[i], cands[j]) if anchors is None else None
                if anchors is not None:
                    if anchored(cands[i], 0) and anchored(cands[j], 1):
                        pair = (cands[i], cands[j])
                    elif anchored(cands[j], 0) and anchored(cands[i], 1):
                        pair = (cands[j], cands[i])
                    else:
                        continue
                if best is None or total < best[0]:
                    best = (total, pair)
        if best is None:
            return None
        return _certify(kind, best[1], bounds, cm, use_cycles)

    if kind in (KIND_T_SRCP, KIND_NEAR_T_SRCP):
        best = None
        for i in range(len(cands)):
            for j in range(i + 1, len(cands)):
                if cands[i] & cands[j]:
                    continue
                total = sizes[i] + sizes[j]
                if total > bound:
                    continue
                if anchors is not None:
                    if anchored(cands[i], 0) and anchored(cands[j], 1):
                        pair = (cands[i], cands[j])
                    elif anchored(cands[j], 0) and anchored(cands[i], 1):
                        pair = (cands[j], cands[i])
                    else:
                        continue
                else:
                    pair = (cands[i], cands[j])
                if best is None or total < best[0]:
                    best = (total, pair)
        if best is None:
            return None
        return _certify(kind, best[1], bounds, cm, use_cycles)

    # T-SRCT: pairwise disjoint triple with pairwise size bound.
    n = len(cands)
    for i in range(n):
        for j in range(i + 1, n):
            if cands[i] & cands[j] or sizes[i] + sizes[j] > bound:
                continue
            ij = cands[i] | cands[j]
            for k in range(j + 1, n):
                if cands[k] & ij:
                    continue
                if sizes[i] + sizes[k] > bound or sizes[j] + sizes[k] > bound:
                    continue
                triple = [cands[i], cands[j], cands[k]]
                if anchors is not None:
                    order = _match_anchors(triple, anchors)
                    if order is None:
                        continue
                    triple = order
                return _certify(kind, tuple(triple), bounds, cm, use_cycles)
    return None


def _match_anchors(sets, anchors):
    """Order the pairwise-disjoint `sets` so that set i contains
    anchors[i]; None when some anchor is uncovered."""
    if len(sets) != len(anchors):
        return None
    remaining = list(sets)
    out = []
    for a in anchors:
        hit = next((s for s in remaining if s & (1 << a)), None)
        if hit is None:
            return None
        out.append(hit)
        remaining.remove(hit)
    return out


def decompose_cycle(matroid, cycle):
    """Split a cycle into pairwise disjoint circuits (canonical greedy)."""
    parts = []
    rest = cycle
    while rest:
        found = None
        for c in matroid.circuits(rest.bit_count()):
            if c & ~rest == 0:
                found = c
                break
        if found is None:
            raise SearchError("not a cycle: no circuit inside the remainder")
        parts.append(found)
        rest &= ~found
    return parts


def upgrade_cycle_collection(cm, cert, T):
    """Cycle-collection to circuit-collection upgrade: keep, from each
    cycle, the circuit component meeting T; bounds only shrink."""
    if not cert.cycles_allowed:
        return cert
    matroid = cm.matroid
    upgraded = []
    for s in cert.sets:
        comp = None
        for part in decompose_cycle(matroid, s):
            if part & T:
                comp = part
                break
        if comp is None:
            raise SearchError("cycle member does not meet T")
        upgraded.append(comp)
    bounds = dict(cert.bounds)
    bounds.pop("cycles", None)
    return _certify(cert.kind, tuple(upgraded), bounds, cm, cycles_allowed=False)


# -- graph-level searches -------------------------------------------------


def rainbow_distance(graph, coloring, u, v):
    """Length of a shortest rainbow path from u to v, or math.inf.

    Exhaustive search over (vertex, used-colour-set) states; path length
    equals the number of colours used, so plain breadth-first order is
    exact.
    """
    if u == v:
        raise SearchError("endpoints must differ")
    incident = [[] for _ in range(graph.num_vertices)]
    for i, (a, b) in enumerate(graph.edges):
        if a != b:
            incident[a].append((i, b))
            incident[b].append((i, a))
    start = (u, 0)
    frontier = [start]
    seen = {start}
    dist = 0
    while frontier:
        dist += 1
        nxt = []
        for x, used in frontier:
            for eid, y in incident[x]:
                cb = 1 << coloring.colour_of[eid]
                if used & cb:
                    continue
                if y == v:
                    return dist
                state = (y, used | cb)
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt
    return math.inf


def _rainbow_paths(graph, coloring, start, goals, max_len, banned):
    """DFS enumeration of vertex-simple rainbow paths from `start` to any
    vertex in `goals`, as edge-id tuples, in ascending edge-id order."""
    incident = [[] for _ in range(graph.num_vertices)]
    for i, (a, b) in enumerate(graph.edges):
        if a != b and i not in banned:
            incident[a].append((i, b))
            incident[b].append((i, a))
    out = []

    def walk(x, used_colours, visited, path):
        if x in goals and path:
            out.append((tuple(path), x))
        if len(path) >= max_len:
            return
        for eid, y in incident[x]:
            if y in visited:
                continue
            cb = 1 << coloring.colour_of[eid]
            if used_colours & cb:
                continue
            path.append(eid)
            visited.add(y)
            walk(y, used_colours | cb, visited, path)
            visited.remove(y)
            path.pop()

    walk(start, 0, {start}, [])
    return out


def find_disjoint_rainbow_paths(graph, coloring, sources, targets, bound):
    """Edge-disjoint rainbow path pair for one of the three endpoint
    patterns, with |P1| + |P2| <= bound, or None.

    Patterns: one source and two targets (path i ends at target i); two
    sources and two targets (distinct sources to distinct targets, either
    matching); one source and one target (two paths between the same
    pair).
    """
    sources = list(sources)
    targets = list(targets)
    if len(sources) == 1 and len(targets) == 2:
        matchings = [((sources[0], targets[0]), (sources[0], targets[1]))]
    elif len(sources) == 2 and len(targets) == 2:
        matchings = [
            ((sources[0], targets[0]), (sources[1], targets[1])),
            ((sources[0], targets[1]), (sources[1], targets[0])),
        ]
    elif len(sources) == 1 and len(targets) == 1:
        matchings = [((sources[0], targets[0]), (sources[0], targets[0]))]
    else:
        raise SearchError("unsupported endpoint pattern")
    best = None
    for (s1, t1), (s2, t2) in matchings:
        for p1, end1 in _rainbow_paths(graph, coloring, s1, {t1}, bound - 1, set()):
            rest = bound - len(p1)
            for p2, end2 in _rainbow_paths(
                graph, coloring, s2, {t2}, rest, set(p1)
            ):
                total = len(p1) + len(p2)
                key = (total, p1, p2)
                if best is None or key < best[0]:
                    best = (key, (p1, p2))
    if best is None:
        return None
    return best[1]


def find_cocycle_collection(graph, coloring, kind, params):
    """Cocycle/cycle collection finders for the splitting-chain and
    triangle-extension instances.

    kinds: "colem3-triple" (three rainbow cocycles through the split
    edges, pairwise bound r+2), "newtheorem3-pair" (two rainbow cocycles
    anchored at the first two split edges, bound r+2), and
    "newlemma2-near-pair" (two rainbow cycles through a triangle, joint
    bound r+3).
    """
    from rainbowforge.graphs import bond_matroid, cycle_matroid

    T_ids = tuple(params["T"])
    T = bits(T_ids)
    use_cycles = bool(params.get("use_cycles", False))
    if kind == "colem3-triple":
        matroid, _ = bond_matroid(graph)
        cm = ColoredMatroid(matroid, coloring)
        return find_T_collection(
            cm, T, KIND_T_SRCT, anchors=T_ids, use_cycles=use_cycles
        )
    if kind == "newtheorem3-pair":
        matroid, _ = bond_matroid(graph)
        cm = ColoredMatroid(matroid, coloring)
        return find_T_collection(
            cm, T, KIND_T_SRCP, anchors=T_ids[:2], use_cycles=use_cycles
        )
    if kind == "newlemma2-near-pair":
        matroid, _ = cycle_matroid(graph)
        cm = ColoredMatroid(matroid, coloring)
        return find_T_collection(cm, T, KIND_NEAR_T_SRCP, use_cycles=use_cycles)
    raise SearchError(f"unknown cocycle collection kind {kind}")
