"""Dense row reduction over GF(p).

The numba kernels are used unless ``SL2CAT_DISABLE_NUMBA`` is set (or numba
is missing); the numpy versions do the same elimination with vectorized row
operations.  Entries are int64 in [0, p) with p < 2**31, so products fit.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("SL2CAT_DISABLE_NUMBA", "").strip() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def _rref_mod_p_numpy(mat: np.ndarray, p: int):
    a = mat.copy() % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a, np.array(pivots, dtype=np.int64)


def _rank_mod_p_numpy(mat: np.ndarray, p: int) -> int:
    return len(_rref_mod_p_numpy(mat, p)[1])


if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod(a, p):
        # extended Euclid
        t, new_t = 0, 1
        r, new_r = p, a % p
        while new_r != 0:
            qq = r // new_r
            t, new_t = new_t, t - qq * new_t
            r, new_r = new_r, r - qq * new_r
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_mod_p_numba(mat, p):
        a = mat.copy()
        rows, cols = a.shape
        for i in range(rows):
            for j in range(cols):
                a[i, j] %= p
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = _inv_mod(a[r, c], p)
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(rows):
                if i != r:
                    f = a[i, c]
                    if f != 0:
                        for j in range(c, cols):
                            a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[r] = c
            r += 1
        return a, pivots[:r]

    @njit(cache=True)
    def _rank_mod_p_numba(mat, p):
        # forward elimination only
        a = mat.copy()
        rows, cols = a.shape
        for i in range(rows):
            for j in range(cols):
                a[i, j] %= p
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = _inv_mod(a[r, c], p)
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(r + 1, rows):
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
        return r


def rref_mod_p(mat: np.ndarray, p: int, use_numba=None):
    """Reduced row echelon form and pivot columns of an int64 matrix mod p."""
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    if mat.size == 0:
        return mat.copy(), np.zeros(0, dtype=np.int64)
    if (HAVE_NUMBA if use_numba is None else use_numba and HAVE_NUMBA):
        return _rref_mod_p_numba(mat, p)
    return _rref_mod_p_numpy(mat, p)


def rank_mod_p(mat: np.ndarray, p: int, use_numba=None) -> int:
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    if mat.size == 0:
        return 0
    if (HAVE_NUMBA if use_numba is None else use_numba and HAVE_NUMBA):
        return int(_rank_mod_p_numba(mat, p))
    return _rank_mod_p_numpy(mat, p)
