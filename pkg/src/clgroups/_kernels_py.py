"""Reference kernels in Python/numpy.  Used when the compiled extension is
unavailable, for fields it does not cover (object dtype), and as the baseline
in ``benchmarks/bench_kernels.py``.  Row operations are vectorised with the
field's numpy helpers; the control flow is plain Python."""

import numpy as np


def matmul(F, A, B):
    m, n = A.shape
    r = B.shape[1]
    if F.mode == "prime" and (F.dtype is object or n * (F.p - 1) ** 2 < (1 << 63)):
        return (A @ B) % F.p
    C = np.zeros((m, r), dtype=F.dtype)
    for k in range(n):
        col = A[:, k]
        if not col.any():
            continue
        C = F.vadd(C, F.vmul(col[:, None], B[k][None, :]))
    return C


def rref(F, A, transform=True):
    """Gauss-Jordan: returns (E, T, pivots) with T @ A = E (T is None when
    ``transform`` is false).  Pivot = topmost nonzero entry of the first
    column not yet used, normalised to 1."""
    E = np.array(A, dtype=F.dtype, copy=True)
    m, n = E.shape
    T = np.eye(m, dtype=np.int64).astype(F.dtype) if transform else None
    pivots = []
    r = 0
    for j in range(n):
        if r == m:
            break
        nz = np.flatnonzero(E[r:, j])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            E[[r, i]] = E[[i, r]]
            if transform:
                T[[r, i]] = T[[i, r]]
        inv = F.inv(int(E[r, j]))
        if inv != 1:
            E[r] = F.vscale(inv, E[r])
            if transform:
                T[r] = F.vscale(inv, T[r])
        col = E[:, j].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            f = F.vneg(col[rows])[:, None]
            E[rows] = F.vadd(E[rows], F.vmul(f, E[r][None, :]))
            if transform:
                T[rows] = F.vadd(T[rows], F.vmul(f, T[r][None, :]))
        pivots.append(j)
        r += 1
    return E, T, pivots


def det(F, A):
    E = np.array(A, dtype=F.dtype, copy=True)
    n = E.shape[0]
    d = 1
    for j in range(n):
        nz = np.flatnonzero(E[j:, j])
        if nz.size == 0:
            return 0
        i = j + int(nz[0])
        if i != j:
            E[[j, i]] = E[[i, j]]
            d = F.neg(d)
        piv = int(E[j, j])
        d = F.mul(d, piv)
        if j + 1 < n:
            col = E[j + 1 :, j]
            rows = np.flatnonzero(col)
            if rows.size:
                f = F.vneg(F.vscale(F.inv(piv), col[rows]))[:, None]
                E[j + 1 + rows] = F.vadd(E[j + 1 + rows], F.vmul(f, E[j][None, :]))
    return int(d) if not isinstance(d, int) else d
