"""Colourings of matroid ground sets: rainbow predicates, the
circuit-achromatic test, and the stratification search.

A colouring is stratified when some ordering of its colour classes has
every prefix union closed with strictly increasing rank; for colourings
with exactly r(M) classes this is equivalent to having no rainbow
circuit, and that equivalence is a verification target, not an
assumption.
"""

from __future__ import annotations

from dataclasses import dataclass

from rainbowforge.bitset import bits, canonical_key, members


class ColoringError(ValueError):
    """Malformed colouring or mismatched domain."""


class Coloring:
    """Total map element -> colour with derived colour-class masks.

    Colour classes are the nonempty preimages; k-bounded / k-uniform are
    declared expectations checked at construction, never inferred.
    """

    __slots__ = ("colour_of", "classes")

    def __init__(self, colour_of, expect_bounded=None, expect_uniform=None):
        self.colour_of = tuple(int(c) for c in colour_of)
        classes = {}
        for e, c in enumerate(self.colour_of):
            classes[c] = classes.get(c, 0) | (1 << e)
        self.classes = classes
        if expect_bounded is not None and not self.is_k_bounded(expect_bounded):
            raise ColoringError(f"declared {expect_bounded}-bounded, but is not")
        if expect_uniform is not None and not self.is_k_uniform(expect_uniform):
            raise ColoringError(f"declared {expect_uniform}-uniform, but is not")

    def __len__(self):
        return len(self.colour_of)

    def __eq__(self, other):
        return isinstance(other, Coloring) and self.colour_of == other.colour_of

    def __hash__(self):
        return hash(self.colour_of)

    @property
    def num_colours(self):
        return len(self.classes)

    def class_masks(self):
        return [self.classes[c] for c in sorted(self.classes)]

    def is_k_bounded(self, k):
        return all(m.bit_count() <= k for m in self.classes.values())

    def is_k_uniform(self, k):
        return all(m.bit_count() == k for m in self.classes.values())

    def canonical_classes(self):
        """Colour-permutation canonical form: class masks sorted by
        (size, smallest element).  Used to deduplicate colourings."""
        return tuple(sorted(self.classes.values(), key=canonical_key))

    def to_text(self):
        body = ",".join(f"{e}:{c}" for e, c in enumerate(self.colour_of))
        return f"{self.num_colours}; {body}"

    @classmethod
    def from_text(cls, text):
        head, sep, body = text.partition(";")
        if not sep:
            raise ColoringError(f"colouring text {text!r} missing ';'")
        try:
            k = int(head.strip())
        except ValueError as exc:
            raise ColoringError(f"bad colour count in {text!r}") from exc
        pairs = {}
        body = body.strip()
        if body:
            for token in body.split(","):
                e, sep, c = token.strip().partition(":")
                if not sep:
                    raise ColoringError(f"bad token {token!r}")
                pairs[int(e)] = int(c)
        if sorted(pairs) != list(range(len(pairs))):
            raise ColoringError("element ids are not dense from 0")
        colouring = cls(pairs[e] for e in range(len(pairs)))
        if colouring.num_colours != k:
            raise ColoringError(
                f"declared {k} colours but {colouring.num_colours} appear"
            )
        return colouring


class ColoredMatroid:
    """A matroid with a colouring of its ground set."""

    __slots__ = ("matroid", "coloring")

    def __init__(self, matroid, coloring):
        if len(coloring) != matroid.epsilon:
            raise ColoringError(
                f"colouring covers {len(coloring)} elements, matroid has {matroid.epsilon}"
            )
        self.matroid = matroid
        self.coloring = coloring

    def is_rainbow(self, A):
        """True iff the colours on A are pairwise distinct."""
        for cls in self.coloring.classes.values():
            if (A & cls).bit_count() > 1:
                return False
        return True

    def colour_singular_elements(self):
        """Union of the singleton colour classes."""
        out = 0
        for cls in self.coloring.classes.values():
            if cls.bit_count() == 1:
                out |= cls
        return out

    def monochromatic_pairs(self):
        """All 2-subsets lying inside one colour class, as masks."""
        out = []
        for cls in self.coloring.classes.values():
            elems = members(cls)
            for i in range(len(elems)):
                for j in range(i + 1, len(elems)):
                    out.append((1 << elems[i]) | (1 << elems[j]))
        return out


def is_circuit_achromatic(cm, max_size=None):
    """(True, None) if no rainbow circuit exists (within max_size when
    given), else (False, smallest rainbow circuit in canonical order)."""
    for c in cm.matroid.circuits(max_size):
        if cm.is_rainbow(c):
            return False, c
    return True, None


@dataclass(frozen=True)
class Stratification:
    """Certificate: colour classes in `order` have closed prefix unions
    with strictly increasing ranks ending at r(M)."""

    order: tuple
    prefix_ranks: tuple

    def replay(self, cm):
        """Re-verify the certificate from scratch against its instance."""
        matroid, coloring = cm.matroid, cm.coloring
        if sorted(self.order) != sorted(coloring.classes):
            return False
        prefix = 0
        last_rank = 0
        for colour, expect in zip(self.order, self.prefix_ranks):
            prefix |= coloring.classes[colour]
            r = matroid.rank_of(prefix)
            if r != expect or r <= last_rank:
                return False
            if matroid.closure(prefix) != prefix:
                return False
            last_rank = r
        return prefix == matroid.ground and last_rank == matroid.rank


def find_stratification(cm):
    """Depth-first search for a stratification, or None.

    Prefix feasibility depends only on the set of used classes, so failed
    class subsets are memoized; greedy choice alone is not assumed
    sufficient.
    """
    matroid, coloring = cm.matroid, cm.coloring
    colours = sorted(coloring.classes)
    n = len(colours)
    dead = set()

    def extend(used_mask, prefix, rank, order, ranks):
        if len(order) == n:
            return Stratification(tuple(order), tuple(ranks))
        if used_mask in dead:
            return None
        for i in range(n):
            if used_mask & (1 << i):
                continue
            new_prefix = prefix | coloring.classes[colours[i]]
            new_rank = matroid.rank_of(new_prefix)
            if new_rank <= rank:
                continue
            if matroid.closure(new_prefix) != new_prefix:
                continue
            order.append(colours[i])
            ranks.append(new_rank)
            found = extend(used_mask | (1 << i), new_prefix, new_rank, order, ranks)
            if found:
                return found
            order.pop()
            ranks.pop()
        dead.add(used_mask)
        return None

    return extend(0, 0, 0, [], [])


@dataclass(frozen=True)
class CorollaryReport:
    applicable_32: bool
    reason_32: str
    parallel_class_colour: object
    cocircuit_colour: object
    ok_32: bool
    applicable_33: bool
    reason_33: str
    rainbow_witness: object
    ok_33: bool


def check_corollaries(cm):
    """Check the two consequences of the stratification theorem on one
    instance; precondition mismatches are reported, not raised.

    For a circuit-achromatic r(M)-class colouring: some class is a
    parallel class and some class is a cocircuit.  For a simple matroid
    with an r(M)-class colouring and no colour-singular element: a
    rainbow circuit exists.
    """
    matroid, coloring = cm.matroid, cm.coloring
    achromatic, witness = is_circuit_achromatic(cm)

    applicable_32 = coloring.num_colours == matroid.rank and achromatic
    reason_32 = ""
    parallel_colour = cocircuit_colour = None
    ok_32 = False
    if not applicable_32:
        reason_32 = (
            "needs an r(M)-class circuit-achromatic colouring"
            if coloring.num_colours != matroid.rank
            else "instance is not circuit-achromatic"
        )
    else:
        parallel_classes = set(matroid.simplicity_report().parallel_classes)
        dual = matroid.dual()
        for colour in sorted(coloring.classes):
            mask = coloring.classes[colour]
            if parallel_colour is None and mask in parallel_classes:
                parallel_colour = colour
            if cocircuit_colour is None and dual.is_circuit(mask):
                cocircuit_colour = colour
        ok_32 = parallel_colour is not None and cocircuit_colour is not None

    simple = matroid.simplicity_report().is_simple
    applicable_33 = (
        simple
        and coloring.num_colours == matroid.rank
        and cm.colour_singular_elements() == 0
    )
    reason_33 = ""
    ok_33 = False
    if not applicable_33:
        if not simple:
            reason_33 = "matroid is not simple"
        elif coloring.num_colours != matroid.rank:
            reason_33 = "needs an r(M)-class colouring"
        else:
            reason_33 = "colouring has colour-singular elements"
    else:
        ok_33 = not achromatic
    return CorollaryReport(
        applicable_32,
        reason_32,
        parallel_colour,
        cocircuit_colour,
        ok_32,
        applicable_33,
        reason_33,
        witness if not achromatic else None,
        ok_33,
    )


def restrict_coloring(cm, minor_matroid, remap):
    """Carry a colouring through the element remap produced by a minor."""
    if len(remap) != minor_matroid.epsilon:
        raise ColoringError("remap does not cover the minor's ground set")
    colour_of = [None] * minor_matroid.epsilon
    for old, new in remap.items():
        if not 0 <= old < len(cm.coloring):
            raise ColoringError(f"remap source {old} outside the old ground set")
        colour_of[new] = cm.coloring.colour_of[old]
    return ColoredMatroid(minor_matroid, Coloring(colour_of))


def colour_extension(coloring, new_colours):
    """Colouring of an extension: existing colours followed by the colours
    of the appended elements."""
    return Coloring(tuple(coloring.colour_of) + tuple(new_colours))
