"""Kernel dispatch: the compiled extension when it is built, else pure Python.

``BACKEND`` names the kernels picked at import.  Integer kernels that
overflow int64 in compiled code are rerun with Python integers, so results
stay exact either way.
"""

from __future__ import annotations

import numpy as np

from . import _pykernels

try:
    from . import _ckernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_impl = _compiled or _pykernels


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def set_backend(name: str) -> str:
    """Switch kernels; returns the previous backend name."""
    global BACKEND, _impl
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        new = _compiled
    elif name == "python":
        new = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    old = BACKEND
    BACKEND, _impl = name, new
    return old


def _is_object(*arrays) -> bool:
    return any(isinstance(a, np.ndarray) and a.dtype == object for a in arrays)


def unitri_inverse(n: int, order, pred_ptr, pred_idx):
    if _impl is _pykernels:
        return _pykernels.unitri_inverse(n, order, pred_ptr, pred_idx)
    try:
        return _impl.unitri_inverse(n, order, pred_ptr, pred_idx)
    except OverflowError:
        return _pykernels.unitri_inverse(n, order, pred_ptr, pred_idx)


def combine_rows(indptr, indices, data, rows, weights, n: int):
    if _impl is _pykernels or _is_object(data, weights):
        return _pykernels.combine_rows(indptr, indices, data, rows, weights, n)
    try:
        return _impl.combine_rows(indptr, indices, data, rows, weights, n)
    except OverflowError:
        return _pykernels.combine_rows(indptr, indices, data, rows, weights, n)


def wht_rows(a: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform of each row of an int64 array, in place.

    The caller keeps ``max|a| * width`` below 2**63.
    """
    if a.dtype != np.int64 or a.ndim != 2 or not a.flags.c_contiguous:
        raise TypeError("wht_rows needs a C-contiguous 2-D int64 array")
    width = a.shape[1]
    if width & (width - 1):
        raise ValueError("row length must be a power of two")
    _impl.wht_rows(a)
    return a
