"""Elementary divisors of integer matrices over Z/p^e.

Z/p^e is a local principal ring, so Gaussian elimination with a pivot of
minimal valuation yields the Smith form directly; only pivot valuations are
recorded.
"""
from __future__ import annotations

import numpy as np


def _valuations(a: np.ndarray, p: int, e: int) -> np.ndarray:
    v = np.zeros(a.shape, dtype=np.int64)
    pk = 1
    for _ in range(e):
        pk *= p
        v += (a % pk == 0)
    return v


def elementary_valuations(matrix, p: int, e: int) -> list[int]:
    """Valuations (capped at e) of the Smith diagonal of ``matrix`` mod p^e.

    One entry per row; rows beyond the column rank get ``e``.
    """
    mod = p**e
    dtype = np.int64 if mod < 2**31 else object
    a = np.array(matrix, dtype=dtype) % mod
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = a.shape
    out: list[int] = []
    while a.shape[0] and a.shape[1]:
        v = _valuations(a, p, e)
        k = int(np.argmin(v))
        i, j = divmod(k, a.shape[1])
        vmin = int(v[i, j])
        if vmin >= e:
            break
        pv = p**vmin
        unit = int(a[i, j]) // pv
        inv = pow(unit, -1, mod)
        piv_row = (a[i] * inv) % mod
        col = a[:, j] // pv
        a = (a - np.outer(col, piv_row)) % mod
        a = np.delete(np.delete(a, i, axis=0), j, axis=1)
        out.append(vmin)
    out.extend([e] * (rows - len(out)))
    return out


def cokernel_exponent(matrix, p: int, e: int) -> int:
    """log_p of |coker(matrix)| for a square matrix over Z/p^e."""
    return sum(elementary_valuations(matrix, p, e))


def kernel_exponent(matrix, p: int, e: int) -> int:
    """log_p of |ker(matrix)| for a square matrix over Z/p^e."""
    return sum(elementary_valuations(matrix, p, e))
