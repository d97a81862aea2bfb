# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: sparse unitriangular inverse, weighted row sums, WHT.

Arithmetic is int64 with explicit overflow checks; on overflow an
``OverflowError`` is raised and the caller retries with the pure-Python
kernels.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef extern from *:
    """
    static inline int nb_add_ovf(long long a, long long b, long long *out) {
        return __builtin_add_overflow(a, b, out);
    }
    static inline int nb_mul_ovf(long long a, long long b, long long *out) {
        return __builtin_mul_overflow(a, b, out);
    }
    """
    int nb_add_ovf(long long a, long long b, long long *out) nogil
    int nb_mul_ovf(long long a, long long b, long long *out) nogil


def unitri_inverse(Py_ssize_t n, order, pred_ptr, pred_idx):
    cdef int64_t[::1] ordv = np.ascontiguousarray(order, dtype=np.int64)
    cdef int64_t[::1] pp = np.ascontiguousarray(pred_ptr, dtype=np.int64)
    cdef int64_t[::1] pi = np.ascontiguousarray(pred_idx, dtype=np.int64)
    cdef int64_t[::1] acc = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] mark = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] touched = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t ntouched, t, k, e, c, q, col
    cdef long long v
    cdef Py_ssize_t oi
    # per-row storage, assembled into CSR at the end
    row_cols = [None] * n
    row_vals = [None] * n
    cdef int64_t[::1] qc
    cdef int64_t[::1] qv
    cdef int64_t[::1] oc
    cdef int64_t[::1] ov
    cdef Py_ssize_t nz
    for oi in range(ordv.shape[0]):
        c = ordv[oi]
        ntouched = 0
        acc[c] = 1
        mark[c] = c
        touched[ntouched] = c
        ntouched += 1
        for k in range(pp[c], pp[c + 1]):
            q = pi[k]
            if row_cols[q] is None:
                raise ValueError(f"row {q} used before it was computed")
            qc = row_cols[q]
            qv = row_vals[q]
            for e in range(qc.shape[0]):
                col = qc[e]
                if mark[col] != c:
                    mark[col] = c
                    acc[col] = 0
                    touched[ntouched] = col
                    ntouched += 1
                if nb_add_ovf(acc[col], -qv[e], &v):
                    raise OverflowError("int64 overflow in unitri_inverse")
                acc[col] = v
        nz = 0
        for t in range(ntouched):
            if acc[touched[t]] != 0:
                nz += 1
        cols = np.empty(nz, dtype=np.int64)
        vals = np.empty(nz, dtype=np.int64)
        oc = cols
        ov = vals
        nz = 0
        for t in range(ntouched):
            col = touched[t]
            if acc[col] != 0:
                oc[nz] = col
                ov[nz] = acc[col]
                nz += 1
        perm = np.argsort(cols, kind="stable")
        row_cols[c] = cols[perm]
        row_vals[c] = vals[perm]
    for c in range(n):
        if row_cols[c] is None:
            raise ValueError("order does not cover every row")
    lengths = np.fromiter((len(x) for x in row_cols), dtype=np.int64, count=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(lengths, out=indptr[1:])
    indices = np.concatenate(row_cols) if n else np.empty(0, dtype=np.int64)
    data = np.concatenate(row_vals) if n else np.empty(0, dtype=np.int64)
    return indptr, indices, data


def combine_rows(indptr, indices, data, rows, weights, Py_ssize_t n):
    cdef int64_t[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef int64_t[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef int64_t[::1] dv = np.ascontiguousarray(data, dtype=np.int64)
    cdef int64_t[::1] rv = np.ascontiguousarray(rows, dtype=np.int64)
    cdef int64_t[::1] wv = np.ascontiguousarray(weights, dtype=np.int64)
    cdef int64_t[::1] acc = np.zeros(n, dtype=np.int64)
    cdef unsigned char[::1] seen = np.zeros(n, dtype=np.uint8)
    cdef int64_t[::1] touched = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t ntouched = 0, k, e, r, col, t, nz
    cdef long long w, prod, s
    if rv.shape[0] != wv.shape[0]:
        raise ValueError("rows and weights differ in length")
    for k in range(rv.shape[0]):
        w = wv[k]
        if w == 0:
            continue
        r = rv[k]
        for e in range(ip[r], ip[r + 1]):
            col = ix[e]
            if not seen[col]:
                seen[col] = 1
                touched[ntouched] = col
                ntouched += 1
            if nb_mul_ovf(w, dv[e], &prod) or nb_add_ovf(acc[col], prod, &s):
                raise OverflowError("int64 overflow in combine_rows")
            acc[col] = s
    nz = 0
    for t in range(ntouched):
        if acc[touched[t]] != 0:
            nz += 1
    cols = np.empty(nz, dtype=np.int64)
    vals = np.empty(nz, dtype=np.int64)
    cdef int64_t[::1] oc = cols
    cdef int64_t[::1] ov = vals
    nz = 0
    for t in range(ntouched):
        col = touched[t]
        if acc[col] != 0:
            oc[nz] = col
            ov[nz] = acc[col]
            nz += 1
    perm = np.argsort(cols, kind="stable")
    return cols[perm], vals[perm]


def wht_rows(cnp.ndarray a):
    cdef int64_t[:, ::1] m = a
    cdef Py_ssize_t rows = m.shape[0], width = m.shape[1]
    cdef Py_ssize_t h = 1, i, j, k
    cdef int64_t x, y
    while h < width:
        for k in range(rows):
            i = 0
            while i < width:
                for j in range(i, i + h):
                    x = m[k, j]
                    y = m[k, j + h]
                    m[k, j] = x + y
                    m[k, j + h] = x - y
                i += 2 * h
        h *= 2
