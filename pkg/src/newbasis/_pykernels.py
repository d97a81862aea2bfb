"""Pure-Python versions of the compiled kernels.

Same signatures and results as ``_ckernels``.  Arithmetic is on Python ints,
so these never overflow; the result arrays fall back to ``dtype=object``
when a value does not fit in int64.
"""

from __future__ import annotations

import numpy as np


def int_array(values) -> np.ndarray:
    try:
        return np.array(values, dtype=np.int64)
    except OverflowError:
        out = np.empty(len(values), dtype=object)
        out[:] = [int(v) for v in values]
        return out


def unitri_inverse(n, order, pred_ptr, pred_idx):
    """Rows of R with R[c] = e_c - sum of R[q] over q in preds[c].

    Rows are produced in ``order``, which must list every pred before the
    rows that use it.  Returns CSR arrays ``(indptr, indices, data)`` with
    rows in natural index order and sorted columns.
    """
    n = int(n)
    pred_ptr = [int(v) for v in pred_ptr]
    pred_idx = [int(v) for v in pred_idx]
    rows: list[dict[int, int] | None] = [None] * n
    for c in order:
        c = int(c)
        acc = {c: 1}
        for k in range(pred_ptr[c], pred_ptr[c + 1]):
            q = pred_idx[k]
            row = rows[q]
            if row is None:
                raise ValueError(f"row {q} used before it was computed")
            for col, v in row.items():
                acc[col] = acc.get(col, 0) - v
        rows[c] = {col: v for col, v in acc.items() if v}
    indptr = [0]
    indices: list[int] = []
    data: list[int] = []
    for row in rows:
        if row is None:
            raise ValueError("order does not cover every row")
        for col in sorted(row):
            indices.append(col)
            data.append(row[col])
        indptr.append(len(indices))
    return np.array(indptr, dtype=np.int64), np.array(indices, dtype=np.int64), int_array(data)


def combine_rows(indptr, indices, data, rows, weights, n):
    """Sparse sum of ``weights[k] * row[rows[k]]``; returns sorted ``(cols, vals)``."""
    indptr = [int(v) for v in indptr]
    acc: dict[int, int] = {}
    for r, w in zip(rows, weights):
        r = int(r)
        w = int(w)
        if not w:
            continue
        for k in range(indptr[r], indptr[r + 1]):
            col = int(indices[k])
            acc[col] = acc.get(col, 0) + w * int(data[k])
    cols = sorted(c for c, v in acc.items() if v)
    return np.array(cols, dtype=np.int64), int_array([acc[c] for c in cols])


def wht_rows(a: np.ndarray) -> None:
    """In-place unnormalised Walsh-Hadamard transform of each row."""
    m = a.shape[1]
    h = 1
    while h < m:
        view = a.reshape(a.shape[0], m // (2 * h), 2, h)
        lo = view[:, :, 0, :].copy()
        hi = view[:, :, 1, :]
        view[:, :, 0, :] += hi
        view[:, :, 1, :] = lo - hi
        h *= 2
