"""Kernel backend selection.

The compiled extension only handles masks that fit in 64 bits, so every
entry point takes the ground-set width and falls back to the pure-Python
twin for wider instances (or when the extension did not build).
"""

from rainbowforge import _purekernels as _py

try:
    from rainbowforge import _fastkernels as _fast

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    _fast = None
    BACKEND = "python"

_WORD = 64


def _impl(width):
    if _fast is not None and width <= _WORD:
        return _fast
    return _py


def gf2_rank(vectors, width):
    return _impl(width).gf2_rank(vectors)


def cycle_vectors(basis, max_size, width):
    return _impl(width).cycle_vectors(basis, max_size)


def minimal_supports(vectors, width):
    return _impl(width).minimal_supports(vectors)


def best_disjoint_pair(masks, sizes, bound, width):
    return _impl(width).best_disjoint_pair(masks, sizes, bound)
