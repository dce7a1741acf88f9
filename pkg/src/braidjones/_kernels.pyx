# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: sparse generator application and bracket state counting."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


def apply_word(const long[:, ::1] partner,
               const double complex[:, ::1] diag,
               const double complex[:, ::1] off,
               const long[::1] word,
               double complex[:, ::1] vecs):
    """Apply table rows ``word[0], word[1], ...`` in that order to the columns of ``vecs`` in place."""
    cdef Py_ssize_t d = vecs.shape[0], b = vecs.shape[1]
    cdef Py_ssize_t w, j, c, g, p
    cdef double ar, ai, orr, oi, sr, si, pr, pi_
    # explicit real arithmetic: C99 complex products go through the slow NaN-safe __muldc3
    cdef double[:, ::1] src = np.ascontiguousarray(vecs).view(np.float64).copy()
    cdef double[:, ::1] dst = np.empty_like(src)
    cdef double[:, ::1] swap
    for w in range(word.shape[0]):
        g = word[w]
        for j in range(d):
            p = partner[g, j]
            ar = diag[g, j].real
            ai = diag[g, j].imag
            if p == j:
                for c in range(b):
                    sr = src[j, 2 * c]
                    si = src[j, 2 * c + 1]
                    dst[j, 2 * c] = ar * sr - ai * si
                    dst[j, 2 * c + 1] = ar * si + ai * sr
            else:
                orr = off[g, j].real
                oi = off[g, j].imag
                for c in range(b):
                    sr = src[j, 2 * c]
                    si = src[j, 2 * c + 1]
                    pr = src[p, 2 * c]
                    pi_ = src[p, 2 * c + 1]
                    dst[j, 2 * c] = ar * sr - ai * si + orr * pr - oi * pi_
                    dst[j, 2 * c + 1] = ar * si + ai * sr + orr * pi_ + oi * pr
        swap = src
        src = dst
        dst = swap
    for j in range(d):
        for c in range(b):
            vecs[j, c] = src[j, 2 * c] + 1j * src[j, 2 * c + 1]


cdef inline long _find(long* parent, long x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def bracket_histogram(long n_nodes,
                      const long[:, ::1] fixed_edges,
                      const long[:, :, ::1] options,
                      const long[::1] a_when_one):
    """Histogram ``h[a, loops]`` over all 2^m smoothings.

    ``options[c, s]`` holds four node ids (two edges) for choice ``s`` at crossing ``c``.
    """
    cdef Py_ssize_t m = options.shape[0]
    cdef Py_ssize_t nf = fixed_edges.shape[0]
    cdef long max_loops = n_nodes
    h_arr = np.zeros((m + 1, max_loops + 1), dtype=np.int64)
    cdef long long[:, ::1] h = h_arr
    cdef long* base = <long*> malloc(n_nodes * sizeof(long))
    cdef long* parent = <long*> malloc(n_nodes * sizeof(long))
    cdef long base_merges = 0, merges, acount, x, y, i, s
    cdef unsigned long long state, nstates = (<unsigned long long> 1) << m
    cdef Py_ssize_t c, e
    try:
        for i in range(n_nodes):
            base[i] = i
        for e in range(nf):
            x = _find(base, fixed_edges[e, 0])
            y = _find(base, fixed_edges[e, 1])
            if x != y:
                base[x] = y
                base_merges += 1
        with nogil:
            for state in range(nstates):
                for i in range(n_nodes):
                    parent[i] = base[i]
                merges = base_merges
                acount = 0
                for c in range(m):
                    s = (state >> c) & 1
                    if s == a_when_one[c]:
                        acount += 1
                    for e in range(2):
                        x = _find(parent, options[c, s, 2 * e])
                        y = _find(parent, options[c, s, 2 * e + 1])
                        if x != y:
                            parent[x] = y
                            merges += 1
                h[acount, n_nodes - merges] += 1
    finally:
        free(base)
        free(parent)
    return h_arr
