# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p kernels. Same contract as _kernels_py."""

import numpy as np

NAME = "compiled"


cdef long long _modinv(long long a, long long p):
    # extended Euclid; a in (0, p)
    cdef long long old_r = a, r = p
    cdef long long old_s = 1, s = 0
    cdef long long q, tmp
    while r != 0:
        q = old_r / r
        tmp = old_r - q * r; old_r = r; r = tmp
        tmp = old_s - q * s; old_s = s; s = tmp
    old_s %= p
    if old_s < 0:
        old_s += p
    return old_s


def rref(a, long long p):
    """Reduced row echelon form mod p, first-nonzero pivoting."""
    m_arr = np.array(a, dtype=np.int64) % p
    cdef long long[:, ::1] m = m_arr
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef long long inv, f, tmp
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if m[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(ncols):
                tmp = m[r, j]; m[r, j] = m[pr, j]; m[pr, j] = tmp
        inv = _modinv(m[r, c], p)
        for j in range(ncols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(nrows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(ncols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
                    if m[i, j] < 0:
                        m[i, j] += p
        pivots.append(c)
        r += 1
    return m_arr, tuple(pivots)


def matmul(a, b, long long p):
    a_arr = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    b_arr = np.ascontiguousarray(np.asarray(b, dtype=np.int64) % p)
    cdef long long[:, ::1] av = a_arr
    cdef long long[:, ::1] bv = b_arr
    cdef Py_ssize_t n = av.shape[0], k = av.shape[1], m = bv.shape[1]
    out_arr = np.zeros((n, m), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, t
    cdef long long acc, aij
    for i in range(n):
        for t in range(k):
            aij = av[i, t]
            if aij != 0:
                for j in range(m):
                    out[i, j] = (out[i, j] + aij * bv[t, j]) % p
    return out_arr


def matvec(a, v, long long p):
    a_arr = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    v_arr = np.ascontiguousarray(np.asarray(v, dtype=np.int64) % p)
    cdef long long[:, ::1] av = a_arr
    cdef long long[::1] vv = v_arr
    cdef Py_ssize_t n = av.shape[0], k = av.shape[1]
    out_arr = np.zeros(n, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t i, t
    cdef long long acc
    for i in range(n):
        acc = 0
        for t in range(k):
            acc = (acc + av[i, t] * vv[t]) % p
        out[i] = acc
    return out_arr


def poly_eval_many(coeffs, xs, long long p):
    coeff_arr = np.ascontiguousarray(np.asarray(coeffs, dtype=np.int64) % p)
    xs_arr = np.ascontiguousarray(np.asarray(xs, dtype=np.int64) % p)
    cdef long long[::1] cs = coeff_arr
    cdef long long[::1] xv = xs_arr
    cdef Py_ssize_t npts = xv.shape[0], ncs = cs.shape[0]
    out_arr = np.zeros(npts, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef long long acc, x
    for i in range(npts):
        acc = 0
        x = xv[i]
        for j in range(ncs - 1, -1, -1):
            acc = (acc * x + cs[j]) % p
        out[i] = acc
    return out_arr
