"""Element sets are plain ints used as bit vectors over a dense ground set."""


def bits(elements):
    """Bitmask of an iterable of element ids."""
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def members(mask):
    """Ascending tuple of element ids in a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def popcount(mask):
    return mask.bit_count()


def canonical_key(mask):
    """Sort key realizing the canonical set order: size, then the sorted
    element tuple compared lexicographically."""
    return (mask.bit_count(), members(mask))
