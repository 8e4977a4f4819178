# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: exact segmentation DPs and the maximal partial-sum scan.

Every routine mirrors ``_fallback.py`` operation for operation so both
backends return bit-identical results.
"""

import numpy as np

from libc.math cimport fabs, INFINITY

# segment-cost matrix is cached for the all-k DP up to this length (32 MB)
cdef Py_ssize_t COST_CACHE_MAX_N = 2048


cdef inline double _cost(const double[::1] s1, const double[::1] s2,
                         Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    # SSE of segment i..j (0-based, inclusive) from centred prefix sums
    cdef double a = s1[j + 1] - s1[i]
    cdef double v = (s2[j + 1] - s2[i]) - a * a / <double>(j - i + 1)
    if v > 0.0:
        return v
    return 0.0


def potts_fixed(const double[::1] s1, const double[::1] s2, double pen, double tie_rel):
    """Suffix Bellman recursion for ``pen * #jumps + SSE``.

    Returns ``(nxt, best, jumps)`` where ``nxt[i]`` is the last index of the
    canonical first segment of the suffix starting at ``i``.
    """
    cdef Py_ssize_t n = s1.shape[0] - 1
    cdef Py_ssize_t i, j, bestj
    cdef double m, c, tol
    cdef long k, bestk
    E_arr = np.zeros(n + 1, dtype=np.float64)
    J_arr = np.zeros(n + 1, dtype=np.int64)
    nxt_arr = np.zeros(n, dtype=np.int64)
    buf_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] E = E_arr
    cdef long long[::1] J = J_arr
    cdef long long[::1] nxt = nxt_arr
    cdef double[::1] buf = buf_arr
    with nogil:
        for i in range(n - 1, -1, -1):
            m = INFINITY
            for j in range(i, n):
                c = _cost(s1, s2, i, j)
                if j < n - 1:
                    c = c + (pen + E[j + 1])
                buf[j] = c
                if c < m:
                    m = c
            tol = tie_rel * (<double>n + fabs(m))
            bestj = -1
            bestk = n + 1
            for j in range(i, n):
                if buf[j] <= m + tol:
                    if j < n - 1:
                        k = 1 + J[j + 1]
                    else:
                        k = 0
                    if k < bestk:
                        bestk = k
                        bestj = j
            E[i] = buf[bestj]
            J[i] = bestk
            nxt[i] = bestj
    return nxt_arr, float(E_arr[0]), int(J_arr[0])


def potts_all_k(const double[::1] s1, const double[::1] s2, Py_ssize_t K, double tie_rel):
    """Best segmentations with at most ``b`` jumps for every ``b <= K``.

    Returns ``(sse, nxt)``: ``sse[b]`` is the minimal SSE of the whole series
    and ``nxt[b, i]`` the canonical first-segment end for the suffix at ``i``
    under budget ``b``.
    """
    cdef Py_ssize_t n = s1.shape[0] - 1
    cdef Py_ssize_t i, j, b, bestj
    cdef double m, c, tol
    cdef long k, bestk
    cdef bint cached = n <= COST_CACHE_MAX_N and K > 1
    sse_arr = np.empty(K + 1, dtype=np.float64)
    nxt_arr = np.empty((K + 1, n), dtype=np.int64)
    Fp_arr = np.empty(n, dtype=np.float64)
    Fc_arr = np.empty(n, dtype=np.float64)
    Jp_arr = np.zeros(n, dtype=np.int64)
    Jc_arr = np.zeros(n, dtype=np.int64)
    buf_arr = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t cn = n if cached else 1
    C_arr = np.zeros((cn, cn), dtype=np.float64)
    cdef double[::1] sse = sse_arr
    cdef long long[:, ::1] nxt = nxt_arr
    cdef double[::1] Fp = Fp_arr
    cdef double[::1] Fc = Fc_arr
    cdef long long[::1] Jp = Jp_arr
    cdef long long[::1] Jc = Jc_arr
    cdef double[::1] buf = buf_arr
    cdef double[:, ::1] C = C_arr
    cdef double[::1] tmpd
    cdef long long[::1] tmpl
    with nogil:
        if cached:
            for i in range(n):
                for j in range(i, n):
                    C[i, j] = _cost(s1, s2, i, j)
        for i in range(n):
            Fp[i] = _cost(s1, s2, i, n - 1)
            Jp[i] = 0
            nxt[0, i] = n - 1
        sse[0] = Fp[0]
        for b in range(1, K + 1):
            for i in range(n):
                m = INFINITY
                for j in range(i, n):
                    if cached:
                        c = C[i, j]
                    else:
                        c = _cost(s1, s2, i, j)
                    if j < n - 1:
                        c = c + Fp[j + 1]
                    buf[j] = c
                    if c < m:
                        m = c
                tol = tie_rel * (<double>n + fabs(m))
                bestj = -1
                bestk = n + 1
                for j in range(i, n):
                    if buf[j] <= m + tol:
                        if j < n - 1:
                            k = 1 + Jp[j + 1]
                        else:
                            k = 0
                        if k < bestk:
                            bestk = k
                            bestj = j
                Fc[i] = buf[bestj]
                Jc[i] = bestk
                nxt[b, i] = bestj
            sse[b] = Fc[0]
            tmpd = Fp
            Fp = Fc
            Fc = tmpd
            tmpl = Jp
            Jp = Jc
            Jc = tmpl
    return sse_arr, nxt_arr


def max_partial_exact(const double[::1] s):
    """Max over ``0 <= i < j <= n`` of ``(s[j] - s[i])**2 / (j - i)``; first maximiser wins."""
    cdef Py_ssize_t n = s.shape[0] - 1
    cdef Py_ssize_t i, j, bi = 0, bj = 1
    cdef double best = -1.0, a, v
    with nogil:
        for i in range(n):
            for j in range(i + 1, n + 1):
                a = s[j] - s[i]
                v = a * a / <double>(j - i)
                if v > best:
                    best = v
                    bi = i
                    bj = j
    return best, bi, bj
