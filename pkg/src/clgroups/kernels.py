"""Kernel dispatch.  The compiled extension ``_kernels`` is used whenever it
imported and the field fits int64 tables; otherwise the numpy fallback in
``_kernels_py`` runs.  Set ``CLGROUPS_PURE_PYTHON=1`` to force the fallback."""

import os

import numpy as np

from . import _kernels_py as _py

_ext = None
if not os.environ.get("CLGROUPS_PURE_PYTHON"):
    try:
        from . import _kernels as _ext
    except ImportError:  # extension not built
        _ext = None

BACKEND = "cython" if _ext is not None else "python"

_DUMMY = np.zeros(1, dtype=np.int64)


def kernel_args(F):
    """Argument tuple for the compiled kernels, or None if unsupported."""
    args = getattr(F, "_kargs", False)
    if args is not False:
        return args
    if F.mode == "prime" and F.dtype is not object:
        args = (0, F.p, F.p - 1, _DUMMY, _DUMMY, _DUMMY, _DUMMY)
    elif F.mode == "table":
        args = (1 if F.p == 2 else 2, F.p, F.order - 1, F._exp, F._log, F._zech, F._neg)
    else:
        args = None
    F._kargs = args
    return args


def matmul(F, A, B):
    # numpy's integer matmul beats the compiled loop over prime fields
    if F.mode == "prime" and (F.dtype is object or A.shape[1] * (F.p - 1) ** 2 < (1 << 63)):
        return (A @ B) % F.p
    if _ext is not None and A.size and B.size:
        ka = kernel_args(F)
        if ka is not None:
            return _ext.matmul(A, B, *ka)
    return _py.matmul(F, A, B)


def rref(F, A, transform=True):
    if _ext is not None and A.size:
        ka = kernel_args(F)
        if ka is not None:
            return _ext.rref(A, transform, *ka)
    return _py.rref(F, A, transform)


def det(F, A):
    if A.shape[0] == 0:
        return 1
    if _ext is not None:
        ka = kernel_args(F)
        if ka is not None:
            return int(_ext.det(A, *ka))
    return _py.det(F, A)
