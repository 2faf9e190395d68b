"""Binary matroids over GF(2): rank, closure, circuits, minors, duality,
and binary k-sums.

A matroid is held as a 0/1 matrix whose rows and columns are int
bitmasks; circuits are the inclusion-minimal nonzero members of the
cycle space (the null space of the matrix), enumerated by walking all
2^nullity combinations of a null-space basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from rainbowforge import budget, kernels
from rainbowforge.bitset import bits, canonical_key, members


class MatroidError(ValueError):
    """Violated precondition on a matroid operation."""


def _rref(rows, ncols):
    """Reduced row-echelon form.  Returns (nonzero rows, pivot columns)."""
    rows = [r for r in rows]
    pivots = []
    pivot_row = 0
    for col in range(ncols):
        bit = 1 << col
        found = -1
        for i in range(pivot_row, len(rows)):
            if rows[i] & bit:
                found = i
                break
        if found < 0:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        for i in range(len(rows)):
            if i != pivot_row and rows[i] & bit:
                rows[i] ^= rows[pivot_row]
        pivots.append(col)
        pivot_row += 1
    return rows[:pivot_row], pivots


def gf2_nullspace(rows, ncols):
    """Basis of {x : Ax = 0} for the row-bitmask matrix A, as column masks."""
    rref, pivots = _rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, p in zip(rref, pivots):
            if row & (1 << free):
                v |= 1 << p
        basis.append(v)
    return basis


class GF2Matrix:
    """Row-major 0/1 matrix; each row is an int bitmask over the columns."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows):
        rows = tuple(rows)
        if len(rows) != nrows:
            raise MatroidError(f"expected {nrows} rows, got {len(rows)}")
        mask = (1 << ncols) - 1
        if any(r & ~mask for r in rows):
            raise MatroidError("row has bits outside the declared column count")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def from_lists(cls, lists):
        nrows = len(lists)
        ncols = len(lists[0]) if lists else 0
        rows = []
        for row in lists:
            if len(row) != ncols:
                raise MatroidError("ragged matrix")
            rows.append(bits(j for j, v in enumerate(row) if v))
        return cls(nrows, ncols, rows)

    @classmethod
    def from_text(cls, text):
        """Parse the matrix text format: first line "rows cols", then one
        line of 0/1 characters per row."""
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines:
            raise MatroidError("empty matrix text")
        head = lines[0].split()
        if len(head) != 2:
            raise MatroidError(f"bad header line {lines[0]!r}")
        nrows, ncols = int(head[0]), int(head[1])
        if len(lines) - 1 != nrows:
            raise MatroidError(f"expected {nrows} rows, got {len(lines) - 1}")
        rows = []
        for ln in lines[1:]:
            if len(ln) != ncols or set(ln) - {"0", "1"}:
                raise MatroidError(f"bad matrix row {ln!r}")
            rows.append(bits(j for j, ch in enumerate(ln) if ch == "1"))
        return cls(nrows, ncols, rows)

    def to_text(self):
        body = "\n".join(
            "".join("1" if r & (1 << j) else "0" for j in range(self.ncols))
            for r in self.rows
        )
        return f"{self.nrows} {self.ncols}" + ("\n" + body if self.nrows else "")


class BinaryMatroid:
    """Immutable binary matroid; all operations are pure."""

    __slots__ = (
        "matrix",
        "epsilon",
        "rank",
        "nullity",
        "cycle_basis",
        "_colmasks",
        "_circuits",
    )

    def __init__(self, matrix):
        if matrix.ncols == 0:
            raise MatroidError("a matroid needs at least one element (zero columns)")
        self.matrix = matrix
        self.epsilon = matrix.ncols
        cols = []
        for j in range(matrix.ncols):
            bit = 1 << j
            cols.append(bits(i for i, r in enumerate(matrix.rows) if r & bit))
        self._colmasks = tuple(cols)
        self.cycle_basis = tuple(gf2_nullspace(matrix.rows, matrix.ncols))
        self.nullity = len(self.cycle_basis)
        self.rank = self.epsilon - self.nullity
        self._circuits = None

    # -- rank / closure ------------------------------------------------

    @property
    def ground(self):
        return (1 << self.epsilon) - 1

    def _check_subset(self, A):
        if A & ~self.ground:
            raise MatroidError("set contains ids outside the ground set")

    def rank_of(self, A):
        self._check_subset(A)
        cols = [self._colmasks[e] for e in members(A)]
        return kernels.gf2_rank(cols, self.matrix.nrows)

    def closure(self, A):
        self._check_subset(A)
        basis = []
        for e in members(A):
            v = self._colmasks[e]
            for b in basis:
                if v & (b & -b):
                    v ^= b
            if v:
                basis.append(v)
        out = A
        for e in range(self.epsilon):
            if out & (1 << e):
                continue
            v = self._colmasks[e]
            for b in basis:
                if v & (b & -b):
                    v ^= b
            if not v:
                out |= 1 << e
        return out

    def is_independent(self, A):
        return self.rank_of(A) == A.bit_count()

    def is_cycle(self, A):
        """True iff A is in the cycle space (a disjoint union of circuits)."""
        self._check_subset(A)
        return all((r & A).bit_count() % 2 == 0 for r in self.matrix.rows)

    def is_circuit(self, A):
        return A != 0 and self.is_cycle(A) and self.rank_of(A) == A.bit_count() - 1

    # -- circuits --------------------------------------------------------

    def circuits(self, max_size=None):
        """Circuits in canonical order (size, then element tuple), optionally
        only those of size <= max_size."""
        if self._circuits is None:
            budget.check_nullity(self.nullity)
            vecs = kernels.cycle_vectors(self.cycle_basis, self.epsilon, self.epsilon)
            minimal = kernels.minimal_supports(vecs, self.epsilon)
            self._circuits = tuple(sorted(minimal, key=canonical_key))
        if max_size is None:
            return list(self._circuits)
        return [c for c in self._circuits if c.bit_count() <= max_size]

    def chordal_circuits(self, X, e):
        """The two circuits through the chord e inside X + e, for X a circuit.

        They satisfy C1 | C2 == X + e and C1 & C2 == {e}."""
        self._check_subset(X)
        if not self.is_circuit(X):
            raise MatroidError("X is not a circuit")
        ebit = 1 << e
        if X & ebit:
            raise MatroidError("e lies in X, so it is not a chord")
        if self._colmasks[e] == 0:
            raise MatroidError("e is a loop, not a chord")
        if self.closure(X) & ebit == 0:
            raise MatroidError("e is not in the closure of X")
        support = X | ebit
        elems = members(support)
        local_rows = [
            bits(pos for pos, x in enumerate(elems) if row & (1 << x))
            for row in self.matrix.rows
        ]
        local = gf2_nullspace(local_rows, len(elems))
        cycles = set()
        for i in range(1, 1 << len(local)):
            acc = 0
            for idx, v in enumerate(local):
                if i & (1 << idx):
                    acc ^= v
            if acc:
                cycles.add(bits(elems[pos] for pos in members(acc)))
        through = sorted(
            (c for c in cycles if c & ebit and self.is_circuit(c)), key=canonical_key
        )
        if len(through) != 2:
            raise MatroidError("chordal structure violated (not exactly two circuits)")
        c1, c2 = through
        assert (c1 | c2) == support and (c1 & c2) == ebit
        return c1, c2

    # -- minors, duality, sums -------------------------------------------

    def minor(self, delete, contract):
        """Delete/contract; returns the minor and a total old-id -> new-id
        remap for the surviving elements."""
        self._check_subset(delete)
        self._check_subset(contract)
        if delete & contract:
            raise MatroidError("delete and contract sets overlap")
        if not self.is_independent(contract):
            raise MatroidError("contract set is dependent (or contains loops)")
        rows = list(self.matrix.rows)
        for e in members(contract):
            bit = 1 << e
            pivot = -1
            for i, r in enumerate(rows):
                if r & bit:
                    pivot = i
                    break
            if pivot < 0:
                raise MatroidError("contract element vanished (dependent set?)")
            prow = rows[pivot]
            rows = [r ^ prow if (r & bit and i != pivot) else r for i, r in enumerate(rows)]
            rows.pop(pivot)
        gone = delete | contract
        survivors = [e for e in range(self.epsilon) if not gone & (1 << e)]
        if not survivors:
            raise MatroidError("minor would have an empty ground set")
        remap = {old: new for new, old in enumerate(survivors)}
        new_rows = []
        for r in rows:
            nr = 0
            for old, new in remap.items():
                if r & (1 << old):
                    nr |= 1 << new
            if nr:
                new_rows.append(nr)
        matroid = BinaryMatroid(GF2Matrix(len(new_rows), len(survivors), new_rows))
        return matroid, remap

    def delete(self, D):
        return self.minor(D, 0)

    def contract(self, C):
        return self.minor(0, C)

    def dual(self):
        """Dual matroid: its matrix rows span the cycle space of self."""
        return BinaryMatroid(
            GF2Matrix(self.nullity, self.epsilon, self.cycle_basis)
        )

    def is_coindependent(self, T):
        self._check_subset(T)
        return self.rank_of(self.ground & ~T) == self.rank

    def simplicity_report(self):
        loops = bits(e for e in range(self.epsilon) if self._colmasks[e] == 0)
        groups = {}
        for e in range(self.epsilon):
            col = self._colmasks[e]
            if col:
                groups.setdefault(col, []).append(e)
        classes = sorted((bits(g) for g in groups.values()), key=canonical_key)
        is_simple = loops == 0 and all(c.bit_count() == 1 for c in classes)
        return SimplicityReport(is_simple, loops, classes)

    def circuit_size_multiset(self):
        """Sorted circuit sizes; the only isomorphism signature used here."""
        return tuple(sorted(c.bit_count() for c in self.circuits()))


@dataclass(frozen=True)
class SimplicityReport:
    is_simple: bool
    loops: int
    parallel_classes: list


def from_matrix(matrix):
    """Build a matroid from its GF(2) representation."""
    return BinaryMatroid(matrix)


@dataclass(frozen=True)
class KSumResult:
    matroid: BinaryMatroid
    remap1: dict
    remap2: dict


def _check_3sum_seam(m, T, side):
    elems = members(T)
    if len(elems) != 3:
        raise MatroidError(f"3-sum seam in {side} must have three elements")
    cols = [m._colmasks[e] for e in elems]
    if 0 in cols:
        raise MatroidError(f"3-sum seam in {side} contains a loop")
    if len(set(cols)) != 3:
        raise MatroidError(f"3-sum seam in {side} contains a parallel pair")
    if not m.is_circuit(T):
        raise MatroidError(f"3-sum seam is not a circuit of {side}")
    if not m.is_coindependent(T):
        raise MatroidError(f"3-sum seam is not co-independent in {side}")


def k_sum(m1, m2, shared, k):
    """Binary k-sum along the seam pairing `shared` (pairs of element ids,
    first from m1, second from m2; empty for k = 1).

    Cycles of the sum are exactly the symmetric differences C1 ^ C2 of
    cycles that agree on the identified seam elements, restricted to the
    surviving ground set; the rank identity r = r1 + r2 - (k - 1) is
    asserted on the result.
    """
    if k not in (1, 2, 3):
        raise MatroidError("k must be 1, 2 or 3")
    shared = list(shared)
    expected = {1: 0, 2: 1, 3: 3}[k]
    if len(shared) != expected:
        raise MatroidError(f"{k}-sum needs {expected} shared pairs, got {len(shared)}")
    seam1 = bits(p[0] for p in shared)
    seam2 = bits(p[1] for p in shared)
    if seam1.bit_count() != expected or seam2.bit_count() != expected:
        raise MatroidError("seam ids repeat")
    m1._check_subset(seam1)
    m2._check_subset(seam2)
    if k == 2:
        (e1, e2), = shared
        for m, e, side in ((m1, e1, "M1"), (m2, e2, "M2")):
            if m._colmasks[e] == 0:
                raise MatroidError(f"2-sum element is a loop in {side}")
            if m.rank_of(m.ground & ~(1 << e)) != m.rank:
                raise MatroidError(f"2-sum element is a coloop in {side}")
    if k == 3:
        _check_3sum_seam(m1, seam1, "M1")
        _check_3sum_seam(m2, seam2, "M2")
    if m1.epsilon - expected <= 0 or m2.epsilon - expected <= 0:
        raise MatroidError("a side of the sum has no elements beyond the seam")

    surv1 = [e for e in range(m1.epsilon) if not seam1 & (1 << e)]
    surv2 = [e for e in range(m2.epsilon) if not seam2 & (1 << e)]
    remap1 = {old: new for new, old in enumerate(surv1)}
    remap2 = {old: len(surv1) + new for new, old in enumerate(surv2)}
    ncols = len(surv1) + len(surv2)

    def generator(vec, remap, seam_ids):
        sig = 0
        for pos, e in enumerate(seam_ids):
            if vec & (1 << e):
                sig |= 1 << pos
        proj = bits(remap[e] for e in members(vec) if e in remap)
        return (proj << expected) | sig

    seam_ids1 = [p[0] for p in shared]
    seam_ids2 = [p[1] for p in shared]
    gens = [generator(v, remap1, seam_ids1) for v in m1.cycle_basis]
    gens += [generator(v, remap2, seam_ids2) for v in m2.cycle_basis]

    # Eliminate the low (signature) bits; combinations reduced to zero
    # signature project onto a basis of the sum's cycle space.
    sig_mask = (1 << expected) - 1
    pivots = []
    cycle_rows = []
    for g in gens:
        for p in pivots:
            low = (p & sig_mask) & -(p & sig_mask)
            if g & low:
                g ^= p
        if g & sig_mask:
            pivots.append(g)
        elif g:
            cycle_rows.append(g >> expected)
    cycle_basis, _ = _rref(cycle_rows, ncols)
    matrix_rows = gf2_nullspace(cycle_basis, ncols)
    matroid = BinaryMatroid(GF2Matrix(len(matrix_rows), ncols, matrix_rows))
    want = m1.rank + m2.rank - (k - 1)
    if matroid.rank != want:
        raise MatroidError(
            f"{k}-sum rank check failed: got {matroid.rank}, expected {want}"
        )
    return KSumResult(matroid, remap1, remap2)
