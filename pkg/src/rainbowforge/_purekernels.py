"""Pure-Python bitset kernels.

Reference implementation of the hot inner loops; element sets are Python
ints used as bit vectors, so there is no width limit.  A compiled
drop-in replacement lives in _fastkernels.pyx; `rainbowforge.kernels`
picks between the two at import time.
"""


def gf2_rank(vectors):
    """GF(2) rank of a list of int bitmasks."""
    basis = []
    rank = 0
    for v in vectors:
        for b in basis:
            low = b & -b
            if v & low:
                v ^= b
        if v:
            basis.append(v)
            rank += 1
    return rank


def cycle_vectors(basis, max_size):
    """All nonzero GF(2) combinations of `basis` with popcount <= max_size.

    Gray-code walk: combination i differs from i-1 in exactly one basis
    vector, so each step is a single XOR.
    """
    k = len(basis)
    out = []
    acc = 0
    for i in range(1, 1 << k):
        acc ^= basis[(i & -i).bit_length() - 1]
        if acc.bit_count() <= max_size:
            out.append(acc)
    return out


def minimal_supports(vectors):
    """Inclusion-minimal members of a list of distinct nonzero bitmasks.

    Returned sorted by (popcount, value); the candidate scan only needs
    to look at already-accepted smaller sets.
    """
    ordered = sorted(set(vectors), key=lambda v: (v.bit_count(), v))
    minimal = []
    for v in ordered:
        if not any(m & ~v == 0 for m in minimal):
            minimal.append(v)
    return minimal


def best_disjoint_pair(masks, sizes, bound):
    """Index pair (i, j), i < j, with masks disjoint and sizes[i]+sizes[j]
    minimal and <= bound; ties broken by (i, j).  Returns None if no pair
    qualifies.  `masks` must be sorted by ascending size for the early
    break to be valid.
    """
    n = len(masks)
    best = None
    best_sum = bound + 1
    for i in range(n - 1):
        si = sizes[i]
        if si + sizes[i + 1] >= best_sum:
            break
        for j in range(i + 1, n):
            total = si + sizes[j]
            if total >= best_sum:
                break
            if masks[i] & masks[j] == 0:
                best = (i, j)
                best_sum = total
                break
    return best
