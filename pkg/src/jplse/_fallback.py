"""Pure-numpy versions of the compiled kernels in ``_kernels.pyx``.

Vectorised along one loop level; the arithmetic order matches the compiled
code so results agree bit for bit.
"""

import numpy as np


def _cost_row(s1, s2, i, n):
    a = s1[i + 1 : n + 1] - s1[i]
    ln = np.arange(1, n - i + 1, dtype=np.float64)
    v = (s2[i + 1 : n + 1] - s2[i]) - a * a / ln
    return np.where(v > 0.0, v, 0.0)


def _cost_matrix(s1, s2):
    n = s1.shape[0] - 1
    C = np.full((n, n), np.inf)
    for i in range(n):
        C[i, i:] = _cost_row(s1, s2, i, n)
    return C


def _pick(cand, jumps, tie_rel, n):
    # cand, jumps: (rows, cols); cols ordered by segment end j
    m = cand.min(axis=1)
    tol = tie_rel * (float(n) + np.abs(m))
    ok = cand <= (m + tol)[:, None]
    jm = np.where(ok, jumps, n + 1)
    kmin = jm.min(axis=1)
    col = np.argmax(jm == kmin[:, None], axis=1)
    return col, kmin


def potts_fixed(s1, s2, pen, tie_rel):
    s1 = np.ascontiguousarray(s1, dtype=np.float64)
    s2 = np.ascontiguousarray(s2, dtype=np.float64)
    n = s1.shape[0] - 1
    E = np.zeros(n + 1)
    J = np.zeros(n + 1, dtype=np.int64)
    nxt = np.zeros(n, dtype=np.int64)
    for i in range(n - 1, -1, -1):
        c = _cost_row(s1, s2, i, n)
        c[:-1] = c[:-1] + (pen + E[i + 1 : n])
        k = np.zeros(n - i, dtype=np.int64)
        k[:-1] = 1 + J[i + 1 : n]
        col, kmin = _pick(c[None, :], k[None, :], tie_rel, n)
        E[i] = c[col[0]]
        J[i] = kmin[0]
        nxt[i] = i + col[0]
    return nxt, float(E[0]), int(J[0])


def potts_all_k(s1, s2, K, tie_rel):
    s1 = np.ascontiguousarray(s1, dtype=np.float64)
    s2 = np.ascontiguousarray(s2, dtype=np.float64)
    n = s1.shape[0] - 1
    C = _cost_matrix(s1, s2)
    sse = np.empty(K + 1)
    nxt = np.empty((K + 1, n), dtype=np.int64)
    Fp = C[:, n - 1].copy()
    Jp = np.zeros(n, dtype=np.int64)
    nxt[0] = n - 1
    sse[0] = Fp[0]
    rows = np.arange(n)
    for b in range(1, K + 1):
        cand = C.copy()
        cand[:, :-1] = cand[:, :-1] + Fp[None, 1:]
        jumps = np.zeros(n, dtype=np.int64)
        jumps[:-1] = 1 + Jp[1:]
        col, kmin = _pick(cand, np.broadcast_to(jumps, (n, n)), tie_rel, n)
        Fp = cand[rows, col]
        Jp = kmin.astype(np.int64)
        nxt[b] = col
        sse[b] = Fp[0]
    return sse, nxt


def max_partial_exact(s):
    s = np.ascontiguousarray(s, dtype=np.float64)
    n = s.shape[0] - 1
    best, bi, bj = -1.0, 0, 1
    for i in range(n):
        a = s[i + 1 :] - s[i]
        v = a * a / np.arange(1, n - i + 1, dtype=np.float64)
        j = int(np.argmax(v))
        if v[j] > best:
            best, bi, bj = float(v[j]), i, i + 1 + j
    return best, bi, bj
