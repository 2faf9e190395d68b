# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels for ground sets of at most 64 elements.

Same contracts as _purekernels; `rainbowforge.kernels` routes calls here
when the extension built and every mask fits in one machine word.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    """
    static inline int rf_popcount(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    static inline int rf_ctz(unsigned long long x) {
        return __builtin_ctzll(x);
    }
    """
    int rf_popcount(unsigned long long x) nogil
    int rf_ctz(unsigned long long x) nogil


def gf2_rank(vectors):
    cdef unsigned long long basis[64]
    cdef int nbasis = 0
    cdef unsigned long long v, low
    cdef int i, rank = 0
    for pyv in vectors:
        v = <unsigned long long> pyv
        for i in range(nbasis):
            low = basis[i] & (~basis[i] + 1)
            if v & low:
                v ^= basis[i]
        if v:
            basis[nbasis] = v
            nbasis += 1
            rank += 1
    return rank


def cycle_vectors(basis, max_size):
    cdef int k = len(basis)
    cdef unsigned long long cbasis[64]
    cdef int i
    for i in range(k):
        cbasis[i] = <unsigned long long> basis[i]
    cdef unsigned long long acc = 0
    cdef unsigned long long n = (<unsigned long long> 1) << k
    cdef unsigned long long step
    cdef int cap = <int> max_size
    out = []
    for step in range(1, n):
        acc ^= cbasis[rf_ctz(step)]
        if rf_popcount(acc) <= cap:
            out.append(acc)
    return out


def minimal_supports(vectors):
    ordered = sorted(set(vectors), key=lambda v: (v.bit_count(), v))
    cdef Py_ssize_t n = len(ordered)
    cdef unsigned long long *vecs = <unsigned long long *> malloc(n * sizeof(unsigned long long))
    if vecs == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, nkept = 0
    cdef unsigned long long v
    cdef bint dominated
    out = []
    try:
        for i in range(n):
            v = <unsigned long long> ordered[i]
            dominated = False
            for j in range(nkept):
                if vecs[j] & ~v == 0:
                    dominated = True
                    break
            if not dominated:
                vecs[nkept] = v
                nkept += 1
                out.append(ordered[i])
    finally:
        free(vecs)
    return out


def best_disjoint_pair(masks, sizes, bound):
    cdef Py_ssize_t n = len(masks)
    if n < 2:
        return None
    cdef unsigned long long *cmasks = <unsigned long long *> malloc(n * sizeof(unsigned long long))
    if cmasks == NULL:
        raise MemoryError()
    cdef long *csizes = <long *> malloc(n * sizeof(long))
    if csizes == NULL:
        free(cmasks)
        raise MemoryError()
    cdef Py_ssize_t i, j, bi = -1, bj = -1
    cdef long total, si, best_sum = <long> bound + 1
    try:
        for i in range(n):
            cmasks[i] = <unsigned long long> masks[i]
            csizes[i] = <long> sizes[i]
        for i in range(n - 1):
            si = csizes[i]
            if si + csizes[i + 1] >= best_sum:
                break
            for j in range(i + 1, n):
                total = si + csizes[j]
                if total >= best_sum:
                    break
                if cmasks[i] & cmasks[j] == 0:
                    bi = i
                    bj = j
                    best_sum = total
                    break
    finally:
        free(cmasks)
        free(csizes)
    if bi < 0:
        return None
    return (bi, bj)
