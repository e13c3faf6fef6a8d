"""Exact incremental row echelon forms on sparse vectors.

Vectors are dicts from sortable keys to scalars.  Every stored row has its
largest key as pivot with coefficient 1, so reducing by a row only touches
smaller keys and a vector can be reduced by scanning pivots top-down.
"""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence

import numpy as np

from .fields import RATIONAL, Field
from .kernels import rank_mod_p

Vector = Dict[Hashable, object]


class SparseEchelon:
    """Incremental echelon form; optionally tracks how rows combine the inputs."""

    def __init__(self, field: Field = RATIONAL, track: bool = False):
        self.field = field
        self.track = track
        self.rows: Dict[Hashable, Vector] = {}
        self.combos: Dict[Hashable, Dict[int, object]] = {}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _clean(self, v: Mapping) -> Vector:
        f = self.field
        out = {}
        for k, c in v.items():
            c = f.convert(c)
            if c:
                out[k] = c
        return out

    def _reduce(self, v: Vector, combo: Optional[Dict[int, object]]):
        f = self.field
        p = f.p
        rows = self.rows
        while v:
            hits = [k for k in v if k in rows]
            if not hits:
                break
            k = max(hits)
            c = v[k]
            row = rows[k]
            for kk, rv in row.items():
                nv = v.get(kk, 0) - c * rv
                if p is not None:
                    nv %= p
                if nv:
                    v[kk] = nv
                else:
                    v.pop(kk, None)
            if combo is not None:
                for idx, cv in self.combos[k].items():
                    nv = combo.get(idx, 0) - c * cv
                    if p is not None:
                        nv %= p
                    if nv:
                        combo[idx] = nv
                    else:
                        combo.pop(idx, None)
        return v

    def add(self, vec: Mapping) -> bool:
        """Insert a vector; returns True if it was independent of the previous ones."""
        idx = self.count
        self.count += 1
        v = self._clean(vec)
        combo = {idx: 1} if self.track else None
        v = self._reduce(v, combo)
        if not v:
            return False
        piv = max(v)
        inv = self.field.inv(v[piv])
        if inv != 1:
            v = {k: self.field.normalize(c * inv) for k, c in v.items()}
            if combo is not None:
                combo = {i: self.field.normalize(c * inv) for i, c in combo.items()}
        self.rows[piv] = v
        if combo is not None:
            self.combos[piv] = combo
        return True

    def reduce(self, vec: Mapping) -> Vector:
        return self._reduce(self._clean(vec), None)

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: Mapping) -> Optional[Dict[int, object]]:
        """Coefficients expressing ``vec`` in the inserted vectors, or None if outside the span.

        Only meaningful when the inserted vectors were independent.
        """
        if not self.track:
            raise ValueError("coordinates need track=True")
        combo: Dict[int, object] = {}
        v = self._reduce(self._clean(vec), combo)
        if v:
            return None
        f = self.field
        # combo currently holds -coordinates
        return {i: f.normalize(-c) for i, c in combo.items() if c}


class SpanBasis:
    """An independent list of vectors with coordinate extraction."""

    def __init__(self, vectors: Sequence[Mapping], field: Field = RATIONAL, check: bool = True):
        self.field = field
        self.vectors = list(vectors)
        self._ech = SparseEchelon(field, track=True)
        for v in self.vectors:
            ok = self._ech.add(v)
            if check and not ok:
                raise ValueError("vectors are linearly dependent")
        self.independent = self._ech.rank == len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def coordinates(self, vec: Mapping) -> List[object]:
        c = self._ech.coordinates(vec)
        if c is None:
            raise ValueError("vector is not in the span")
        out = [0] * len(self.vectors)
        for i, v in c.items():
            out[i] = v
        return out

    def contains(self, vec: Mapping) -> bool:
        return self._ech.contains(vec)


def to_dense_mod_p(vectors: Sequence[Mapping], p: int) -> np.ndarray:
    """Pack sparse vectors into an int64 matrix over the columns that occur."""
    cols: Dict[Hashable, int] = {}
    for v in vectors:
        for k in v:
            if k not in cols:
                cols[k] = len(cols)
    mat = np.zeros((len(vectors), len(cols)), dtype=np.int64)
    for i, v in enumerate(vectors):
        for k, c in v.items():
            if hasattr(c, "denominator") and c.denominator != 1:
                c = c.numerator * pow(c.denominator, -1, p)
            mat[i, cols[k]] = int(c) % p
    return mat


def rank(vectors: Iterable[Mapping], field: Field = RATIONAL, dense_threshold: int = 64) -> int:
    """Rank of a family of sparse vectors.

    Rationals use exact sparse elimination.  Over a prime field large
    families are packed into a dense matrix and handed to the GF(p) kernel.
    """
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    if field.p is not None and len(vectors) >= dense_threshold:
        return rank_mod_p(to_dense_mod_p(vectors, field.p), field.p)
    ech = SparseEchelon(field)
    for v in vectors:
        ech.add(v)
    return ech.rank


def is_independent(vectors: Sequence[Mapping], field: Field = RATIONAL) -> bool:
    return rank(vectors, field) == len(vectors)
