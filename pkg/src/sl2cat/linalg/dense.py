"""Small dense matrices over a :class:`Field`.

Rational matrices are numpy object arrays of ints/Fractions; prime-field
matrices are int64 arrays reduced mod p.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

import numpy as np

from .fields import RATIONAL, Field
from .kernels import rank_mod_p, rref_mod_p


def zeros(rows: int, cols: int, field: Field = RATIONAL) -> np.ndarray:
    if field.is_rational:
        out = np.empty((rows, cols), dtype=object)
        out.fill(0)
        return out
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int, field: Field = RATIONAL) -> np.ndarray:
    out = zeros(n, n, field)
    for i in range(n):
        out[i, i] = 1
    return out


def asmatrix(data, field: Field = RATIONAL) -> np.ndarray:
    arr = np.array(data, dtype=object)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if field.is_rational:
        return arr
    return np.array([[field.convert(x) for x in row] for row in arr], dtype=np.int64).reshape(arr.shape)


def matmul(a: np.ndarray, b: np.ndarray, field: Field = RATIONAL) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1], field)
    if field.is_rational:
        return np.dot(a, b)
    p = field.p
    # split to stay inside int64: entries < 2**31
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = (out + np.outer(a[:, k], b[k, :]) % p) % p
    return out


def add(a: np.ndarray, b: np.ndarray, field: Field = RATIONAL) -> np.ndarray:
    return a + b if field.is_rational else (a + b) % field.p


def neg(a: np.ndarray, field: Field = RATIONAL) -> np.ndarray:
    return -a if field.is_rational else (-a) % field.p


def is_zero(a: np.ndarray) -> bool:
    return a.size == 0 or not np.any(a != 0)


def rref(a: np.ndarray, field: Field = RATIONAL) -> Tuple[np.ndarray, List[int]]:
    if not field.is_rational:
        r, piv = rref_mod_p(a, field.p)
        return r, [int(c) for c in piv]
    m = np.array(a, dtype=object, copy=True)
    rows, cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        lead = m[r, c]
        if lead != 1:
            m[r] = [Fraction(x) / lead if x else 0 for x in m[r]]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                m[i] = m[i] - f * m[r]
        pivots.append(c)
        r += 1
    # keep integral entries as ints
    for idx, x in np.ndenumerate(m):
        if isinstance(x, Fraction) and x.denominator == 1:
            m[idx] = x.numerator
    return m, pivots


def rank(a: np.ndarray, field: Field = RATIONAL) -> int:
    if a.size == 0:
        return 0
    if not field.is_rational:
        return rank_mod_p(a, field.p)
    return len(rref(a, field)[1])


def nullspace(a: np.ndarray, field: Field = RATIONAL) -> np.ndarray:
    """Columns spanning the kernel of ``a`` (shape cols x nullity)."""
    rows, cols = a.shape
    if rows == 0:
        return identity(cols, field)
    r, piv = rref(a, field)
    free = [c for c in range(cols) if c not in piv]
    out = zeros(cols, len(free), field)
    for j, fc in enumerate(free):
        out[fc, j] = 1
        for i, pc in enumerate(piv):
            out[pc, j] = field.normalize(-r[i, fc])
    return out


def inverse(a: np.ndarray, field: Field = RATIONAL) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = zeros(n, 2 * n, field)
    aug[:, :n] = a
    for i in range(n):
        aug[i, n + i] = 1
    r, piv = rref(aug, field)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return r[:, n:]


def column_space_basis(a: np.ndarray, field: Field = RATIONAL) -> np.ndarray:
    """Independent columns of ``a`` spanning its column space."""
    if a.size == 0:
        return zeros(a.shape[0], 0, field)
    _, piv = rref(a, field)
    return a[:, piv]
