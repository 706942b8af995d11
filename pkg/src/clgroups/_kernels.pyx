# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for matrix product, Gauss-Jordan elimination and
determinant over GF(p) (p < 2^31) and over tabled fields GF(p^n) <= 2^16.

mode 0: prime field, entries in [0, p)
mode 1: tabled field of characteristic 2 (addition is xor)
mode 2: tabled field of odd characteristic (addition via Zech logarithms)
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

ctypedef int64_t i64

cdef struct Fld:
    int mode
    i64 p
    i64 qm1
    const i64* exp
    const i64* log
    const i64* zech
    const i64* neg


cdef inline i64 f_add(Fld* f, i64 a, i64 b) nogil:
    cdef i64 la, d, z
    if f.mode == 0:
        a = a + b
        if a >= f.p:
            a -= f.p
        return a
    if a == 0:
        return b
    if b == 0:
        return a
    if f.mode == 1:
        return a ^ b
    la = f.log[a]
    d = f.log[b] - la
    if d < 0:
        d += f.qm1
    z = f.zech[d]
    if z < 0:
        return 0
    return f.exp[la + z]


cdef inline i64 f_mul(Fld* f, i64 a, i64 b) nogil:
    if f.mode == 0:
        return (a * b) % f.p
    if a == 0 or b == 0:
        return 0
    return f.exp[f.log[a] + f.log[b]]


cdef inline i64 f_neg(Fld* f, i64 a) nogil:
    if f.mode == 0:
        return 0 if a == 0 else f.p - a
    return f.neg[a]


cdef inline i64 f_inv(Fld* f, i64 a) nogil:
    cdef i64 t = 0, nt = 1, r, nr, qq, tmp
    if f.mode == 0:
        r = f.p
        nr = a
        while nr != 0:
            qq = r // nr
            tmp = t - qq * nt
            t = nt
            nt = tmp
            tmp = r - qq * nr
            r = nr
            nr = tmp
        if t < 0:
            t += f.p
        return t
    return f.exp[(f.qm1 - f.log[a]) % f.qm1]


cdef Fld make_fld(int mode, i64 p, i64 qm1, const i64[::1] exp, const i64[::1] log,
                  const i64[::1] zech, const i64[::1] neg):
    cdef Fld f
    f.mode = mode
    f.p = p
    f.qm1 = qm1
    f.exp = &exp[0]
    f.log = &log[0]
    f.zech = &zech[0]
    f.neg = &neg[0]
    return f


def matmul(const i64[:, :] A, const i64[:, :] B, int mode, i64 p, i64 qm1, const i64[::1] exp,
           const i64[::1] log, const i64[::1] zech, const i64[::1] neg):
    cdef Fld f = make_fld(mode, p, qm1, exp, log, zech, neg)
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1], r = B.shape[1]
    cdef Py_ssize_t i, j, k
    cdef i64 a, b, la
    out = np.zeros((m, r), dtype=np.int64)
    cdef i64[:, ::1] C = out
    with nogil:
        for i in range(m):
            for k in range(n):
                a = A[i, k]
                if a == 0:
                    continue
                if f.mode == 0:
                    for j in range(r):
                        b = B[k, j]
                        if b != 0:
                            C[i, j] = (C[i, j] + a * b) % f.p
                else:
                    la = f.log[a]
                    for j in range(r):
                        b = B[k, j]
                        if b != 0:
                            C[i, j] = f_add(&f, C[i, j], f.exp[la + f.log[b]])
    return out


def rref(A0, bint transform, int mode, i64 p, i64 qm1, const i64[::1] exp,
         const i64[::1] log, const i64[::1] zech, const i64[::1] neg):
    cdef Fld f = make_fld(mode, p, qm1, exp, log, zech, neg)
    Ea = np.array(A0, dtype=np.int64, copy=True, order="C")
    cdef i64[:, ::1] E = Ea
    cdef Py_ssize_t m = E.shape[0], n = E.shape[1]
    Ta = np.eye(m, dtype=np.int64) if transform else np.zeros((0, 0), dtype=np.int64)
    cdef i64[:, ::1] T = Ta
    cdef Py_ssize_t r = 0, i, j, c, piv_row
    cdef i64 inv, fac, tmp
    pivots = []
    for j in range(n):
        if r == m:
            break
        piv_row = -1
        for i in range(r, m):
            if E[i, j] != 0:
                piv_row = i
                break
        if piv_row < 0:
            continue
        with nogil:
            if piv_row != r:
                for c in range(n):
                    tmp = E[r, c]; E[r, c] = E[piv_row, c]; E[piv_row, c] = tmp
                if transform:
                    for c in range(m):
                        tmp = T[r, c]; T[r, c] = T[piv_row, c]; T[piv_row, c] = tmp
            inv = f_inv(&f, E[r, j])
            if inv != 1:
                for c in range(j, n):
                    E[r, c] = f_mul(&f, inv, E[r, c])
                if transform:
                    for c in range(m):
                        T[r, c] = f_mul(&f, inv, T[r, c])
            for i in range(m):
                if i == r or E[i, j] == 0:
                    continue
                fac = f_neg(&f, E[i, j])
                for c in range(j, n):
                    if E[r, c] != 0:
                        E[i, c] = f_add(&f, E[i, c], f_mul(&f, fac, E[r, c]))
                if transform:
                    for c in range(m):
                        if T[r, c] != 0:
                            T[i, c] = f_add(&f, T[i, c], f_mul(&f, fac, T[r, c]))
        pivots.append(j)
        r += 1
    return Ea, (Ta if transform else None), pivots


def det(A0, int mode, i64 p, i64 qm1, const i64[::1] exp, const i64[::1] log,
        const i64[::1] zech, const i64[::1] neg):
    cdef Fld f = make_fld(mode, p, qm1, exp, log, zech, neg)
    Ea = np.array(A0, dtype=np.int64, copy=True, order="C")
    cdef i64[:, ::1] E = Ea
    cdef Py_ssize_t n = E.shape[0], i, j, c, piv_row
    cdef i64 d = 1, inv, fac, tmp
    with nogil:
        for j in range(n):
            piv_row = -1
            for i in range(j, n):
                if E[i, j] != 0:
                    piv_row = i
                    break
            if piv_row < 0:
                d = 0
                break
            if piv_row != j:
                for c in range(n):
                    tmp = E[j, c]; E[j, c] = E[piv_row, c]; E[piv_row, c] = tmp
                d = f_neg(&f, d)
            d = f_mul(&f, d, E[j, j])
            inv = f_inv(&f, E[j, j])
            for i in range(j + 1, n):
                if E[i, j] == 0:
                    continue
                fac = f_neg(&f, f_mul(&f, inv, E[i, j]))
                for c in range(j, n):
                    if E[j, c] != 0:
                        E[i, c] = f_add(&f, E[i, c], f_mul(&f, fac, E[j, c]))
    return d
