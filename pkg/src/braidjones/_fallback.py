"""Pure-Python/numpy versions of the compiled kernels, with identical signatures."""

from __future__ import annotations

import numpy as np


def apply_word(partner, diag, off, word, vecs):
    """Apply table rows ``word[0], word[1], ...`` in that order to the columns of ``vecs`` in place."""
    cur = vecs
    for g in word:
        cur = diag[g][:, None] * cur + off[g][:, None] * cur[partner[g]]
    vecs[...] = cur


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def bracket_histogram(n_nodes, fixed_edges, options, a_when_one):
    """Histogram ``h[a, loops]`` over all 2^m smoothings."""
    m = len(options)
    h = np.zeros((m + 1, n_nodes + 1), dtype=np.int64)
    base = list(range(n_nodes))
    base_merges = 0
    for u, v in fixed_edges:
        x, y = _find(base, int(u)), _find(base, int(v))
        if x != y:
            base[x] = y
            base_merges += 1
    opts = [[[int(z) for z in options[c][s]] for s in range(2)] for c in range(m)]
    a1 = [int(z) for z in a_when_one]
    for state in range(1 << m):
        parent = base[:]
        merges = base_merges
        acount = 0
        for c in range(m):
            s = (state >> c) & 1
            acount += s == a1[c]
            o = opts[c][s]
            for e in (0, 2):
                x, y = _find(parent, o[e]), _find(parent, o[e + 1])
                if x != y:
                    parent[x] = y
                    merges += 1
        h[acount, n_nodes - merges] += 1
    return h
