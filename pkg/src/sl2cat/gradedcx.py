"""Cochain complexes of graded vector spaces, presented degree by degree.

A :class:`GradedComplex` stores, for each homological index r and internal
degree d (up to ``cutoff``), the dimension of the (r, d) piece and the matrix
of d^r restricted to it.  All internal degrees are true degrees: any q-shift
of a term is already applied, and ``shift_offsets`` only records it.

Conventions: (M[s])^r = M^{r-s} with differential (-1)^s d, and
Cone(f)^r = M^{r+1} + N^r with differential [[-d_M, 0], [f, d_N]].
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidArgument
from .linalg import RATIONAL, Field
from .linalg import dense

Key = Tuple[int, int]


@dataclass
class GradedComplex:
    """Bounded cochain complex of graded spaces, truncated at ``cutoff``."""

    dims: Dict[Key, int]
    diffs: Dict[Key, np.ndarray]
    cutoff: int
    field: Field = RATIONAL
    shift_offsets: Dict[int, int] = dc_field(default_factory=dict)
    labels: Dict[Key, list] = dc_field(default_factory=dict)

    def __post_init__(self):
        self.dims = {k: v for k, v in self.dims.items() if v and k[1] <= self.cutoff}
        for (r, d), m in list(self.diffs.items()):
            if d > self.cutoff:
                del self.diffs[(r, d)]
                continue
            want = (self.dim(r + 1, d), self.dim(r, d))
            if m.shape != want:
                raise InvalidArgument(f"differential at {(r, d)} has shape {m.shape}, expected {want}")

    def dim(self, r: int, d: int) -> int:
        return self.dims.get((r, d), 0)

    def diff(self, r: int, d: int) -> np.ndarray:
        m = self.diffs.get((r, d))
        if m is None:
            return dense.zeros(self.dim(r + 1, d), self.dim(r, d), self.field)
        return m

    def hom_degrees(self) -> List[int]:
        return sorted({r for r, _ in self.dims})

    def q_degrees(self) -> List[int]:
        return sorted({d for _, d in self.dims})

    def keys(self) -> List[Key]:
        return sorted(self.dims)

    def check_dd(self) -> bool:
        for (r, d) in self.keys():
            a = self.diff(r, d)
            b = self.diff(r + 1, d)
            if b.shape[1] and a.shape[1] and not dense.is_zero(dense.matmul(b, a, self.field)):
                return False
        return True

    def total_dims(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (r, d), v in self.dims.items():
            out[r] = out.get(r, 0) + v
        return out


def zero_complex(cutoff: int, field: Field = RATIONAL) -> GradedComplex:
    return GradedComplex({}, {}, cutoff, field)


def complex_from_pieces(dims: Mapping[Key, int], diffs: Mapping[Key, object], cutoff: int,
                        field: Field = RATIONAL) -> GradedComplex:
    """Build from plain nested lists (converted into the field)."""
    mats = {}
    for key, m in diffs.items():
        r, d = key
        rows, cols = dims.get((r + 1, d), 0), dims.get((r, d), 0)
        arr = dense.zeros(rows, cols, field)
        for i in range(rows):
            for j in range(cols):
                arr[i, j] = field.convert(m[i][j])
        mats[key] = arr
    return GradedComplex(dict(dims), mats, cutoff, field)


@dataclass
class ChainMap:
    """Degreewise matrices f^{(r,d)}: M^{(r,d)} -> N^{(r,d)}."""

    source: GradedComplex
    target: GradedComplex
    maps: Dict[Key, np.ndarray]

    def component(self, r: int, d: int) -> np.ndarray:
        m = self.maps.get((r, d))
        if m is None:
            return dense.zeros(self.target.dim(r, d), self.source.dim(r, d), self.source.field)
        return m

    def is_chain_map(self) -> bool:
        f = self.source.field
        keys = set(self.source.keys()) | set(self.target.keys())
        for r, d in keys:
            if d > min(self.source.cutoff, self.target.cutoff):
                continue
            lhs = dense.matmul(self.component(r + 1, d), self.source.diff(r, d), f)
            rhs = dense.matmul(self.target.diff(r, d), self.component(r, d), f)
            if lhs.shape != rhs.shape or not dense.is_zero(dense.add(lhs, dense.neg(rhs, f), f)):
                return False
        return True


def _block(rows: int, cols: int, field: Field) -> np.ndarray:
    return dense.zeros(rows, cols, field)


def shift_hom(C: GradedComplex, s: int = 1) -> GradedComplex:
    """C[s]: (C[s])^r = C^{r-s}, differential multiplied by (-1)^s."""
    sign = -1 if s % 2 else 1
    dims = {(r + s, d): v for (r, d), v in C.dims.items()}
    diffs = {}
    for (r, d), m in C.diffs.items():
        diffs[(r + s, d)] = m if sign == 1 else dense.neg(m, C.field)
    offs = {r + s: v for r, v in C.shift_offsets.items()}
    labels = {(r + s, d): v for (r, d), v in C.labels.items()}
    return GradedComplex(dims, diffs, C.cutoff, C.field, offs, labels)


def shift_q(C: GradedComplex, s: int = 1, cutoff: Optional[int] = None) -> GradedComplex:
    """q^s C: (q^s V)_d = V_{d-s}."""
    cut = C.cutoff + s if cutoff is None else cutoff
    dims = {(r, d + s): v for (r, d), v in C.dims.items()}
    diffs = {(r, d + s): m for (r, d), m in C.diffs.items()}
    offs = {r: v + s for r, v in C.shift_offsets.items()}
    labels = {(r, d + s): v for (r, d), v in C.labels.items()}
    return GradedComplex(dims, diffs, cut, C.field, offs, labels)


def cone(f: ChainMap, check: bool = True) -> GradedComplex:
    """Cone(f)^r = M^{r+1} + N^r, d = [[-d_M, 0], [f, d_N]]."""
    M, N = f.source, f.target
    if M.field != N.field:
        raise InvalidArgument("complexes over different fields")
    if check and not f.is_chain_map():
        raise InvalidArgument("cone of a map that is not a chain map")
    fld = M.field
    cutoff = min(M.cutoff, N.cutoff)
    dims: Dict[Key, int] = {}
    keys = {(r - 1, d) for r, d in M.keys()} | set(N.keys())
    for r, d in keys:
        if d <= cutoff:
            dims[(r, d)] = M.dim(r + 1, d) + N.dim(r, d)
    diffs = {}
    for r, d in keys:
        if d > cutoff:
            continue
        a1, b1 = M.dim(r + 1, d), N.dim(r, d)
        a2, b2 = M.dim(r + 2, d), N.dim(r + 1, d)
        if not (a1 + b1) or not (a2 + b2):
            continue
        m = _block(a2 + b2, a1 + b1, fld)
        if a1 and a2:
            m[:a2, :a1] = dense.neg(M.diff(r + 1, d), fld)
        if a1 and b2:
            m[a2:, :a1] = f.component(r + 1, d)
        if b1 and b2:
            m[a2:, a1:] = N.diff(r, d)
        diffs[(r, d)] = m
    return GradedComplex(dims, diffs, cutoff, fld)


def cohomology_dims(C: GradedComplex) -> Dict[Key, int]:
    """dim ker d^r - rank d^{r-1} for every (r, d) piece (zeros omitted)."""
    out = {}
    ranks: Dict[Key, int] = {}

    def rk(r, d):
        if (r, d) not in ranks:
            m = C.diffs.get((r, d))
            ranks[(r, d)] = 0 if m is None or m.size == 0 else dense.rank(m, C.field)
        return ranks[(r, d)]

    for r, d in C.keys():
        h = C.dim(r, d) - rk(r, d) - rk(r - 1, d)
        if h < 0:
            raise ArithmeticError(f"negative cohomology at {(r, d)}: is d*d = 0?")
        if h:
            out[(r, d)] = h
    return out


def cohomology_table(C: GradedComplex) -> List[Dict[str, int]]:
    return [{"r": r, "d": d, "dim": v} for (r, d), v in sorted(cohomology_dims(C).items())]


def cohomology_json(C: GradedComplex) -> str:
    return json.dumps(cohomology_table(C))


def is_acyclic_up_to(C: GradedComplex) -> bool:
    return not cohomology_dims(C)


def _cycles_and_boundaries(C: GradedComplex, r: int, d: int):
    fld = C.field
    z = dense.nullspace(C.diff(r, d), fld) if C.dim(r, d) else dense.zeros(0, 0, fld)
    if C.dim(r - 1, d) and C.dim(r, d):
        b = dense.column_space_basis(C.diff(r - 1, d), fld)
    else:
        b = dense.zeros(C.dim(r, d), 0, fld)
    return z, b


def quasi_iso_check(f: ChainMap, check: bool = True) -> bool:
    """Does f induce isomorphisms on every cohomology piece?

    Computed directly: H(f) is injective and surjective on (r, d) iff
    rank[B_N | f Z_M] = dim H_M + rank B_N and dim H_M = dim H_N.
    """
    if check and not f.is_chain_map():
        raise InvalidArgument("not a chain map")
    M, N = f.source, f.target
    fld = M.field
    cutoff = min(M.cutoff, N.cutoff)
    keys = {k for k in set(M.keys()) | set(N.keys()) if k[1] <= cutoff}
    hM, hN = cohomology_dims(M), cohomology_dims(N)
    for r, d in keys:
        a, b = hM.get((r, d), 0), hN.get((r, d), 0)
        if a != b:
            return False
        if not a:
            continue
        zM, bM = _cycles_and_boundaries(M, r, d)
        zN, bN = _cycles_and_boundaries(N, r, d)
        img = dense.matmul(f.component(r, d), zM, fld)
        joint = np.concatenate([bN, img], axis=1) if bN.shape[1] else img
        rb = dense.rank(bN, fld) if bN.shape[1] else 0
        if dense.rank(joint, fld) - rb != b:
            return False
    return True


def gaussian_eliminate(C: GradedComplex, r: int, block) -> GradedComplex:
    """Cancel an invertible block a of d^r: X + Y -> Z + W becomes Y -> W.

    ``block`` is either a pair (cols, rows) applied in every internal degree,
    or a mapping d -> (cols, rows); ``cols`` index the summand X of C^r and
    ``rows`` the summand Z of C^{r+1}.  The new differential on Y -> W is
    d - c a^{-1} b; the map into Y and the map out of W are restrictions.
    """
    fld = C.field
    if isinstance(block, Mapping):
        per_degree = {d: (list(b[0]), list(b[1])) for d, b in block.items()}
    else:
        cols, rows = block
        per_degree = {d: (list(cols), list(rows)) for d in C.q_degrees()}
    dims = dict(C.dims)
    diffs = dict(C.diffs)
    labels = dict(C.labels)
    for d, (xs, zs) in per_degree.items():
        if not xs and not zs:
            continue
        if len(xs) != len(zs):
            raise InvalidArgument("block is not square")
        m = C.diff(r, d)
        a = m[np.ix_(zs, xs)]
        try:
            a_inv = dense.inverse(a, fld)
        except ValueError:
            raise InvalidArgument(f"block at degree {d} is not invertible") from None
        ys = [j for j in range(C.dim(r, d)) if j not in xs]
        ws = [i for i in range(C.dim(r + 1, d)) if i not in zs]
        bmat = m[np.ix_(zs, ys)]
        cmat = m[np.ix_(ws, xs)]
        dmat = m[np.ix_(ws, ys)]
        if len(ws) and len(ys):
            corr = dense.matmul(dense.matmul(cmat, a_inv, fld), bmat, fld)
            new = dense.add(dmat, dense.neg(corr, fld), fld)
        else:
            new = dense.zeros(len(ws), len(ys), fld)
        diffs[(r, d)] = new
        # incoming map C^{r-1} -> Y, outgoing W -> C^{r+2}
        if (r - 1, d) in diffs:
            diffs[(r - 1, d)] = diffs[(r - 1, d)][ys, :] if len(ys) else dense.zeros(0, C.dim(r - 1, d), fld)
        if (r + 1, d) in diffs:
            diffs[(r + 1, d)] = diffs[(r + 1, d)][:, ws] if len(ws) else dense.zeros(C.dim(r + 2, d), 0, fld)
        dims[(r, d)] = len(ys)
        dims[(r + 1, d)] = len(ws)
        if (r, d) in labels:
            labels[(r, d)] = [labels[(r, d)][j] for j in ys]
        if (r + 1, d) in labels:
            labels[(r + 1, d)] = [labels[(r + 1, d)][i] for i in ws]
    return GradedComplex(dims, diffs, C.cutoff, fld, dict(C.shift_offsets), labels)


def find_invertible_entry(C: GradedComplex, r: int, d: int) -> Optional[Tuple[int, int]]:
    m = C.diffs.get((r, d))
    if m is None:
        return None
    nz = np.argwhere(m != 0)
    if len(nz) == 0:
        return None
    i, j = nz[0]
    return int(j), int(i)


def simplify(C: GradedComplex) -> GradedComplex:
    """Repeatedly cancel nonzero 1x1 blocks until every differential vanishes."""
    while True:
        for r, d in sorted(C.diffs):
            hit = find_invertible_entry(C, r, d)
            if hit is not None:
                j, i = hit
                C = gaussian_eliminate(C, r, {d: ([j], [i])})
                break
        else:
            return C


# random test complexes

def _random_invertible(n: int, rng: random.Random, field: Field) -> np.ndarray:
    while True:
        m = dense.zeros(n, n, field)
        for i in range(n):
            for j in range(n):
                m[i, j] = field.convert(rng.randint(-2, 2))
        if n == 0 or dense.rank(m, field) == n:
            return m


def random_complex(rng: random.Random, max_dim: int = 6, length: int = 4, cutoff: int = 12,
                   field: Field = RATIONAL, degrees: Optional[Sequence[int]] = None):
    """A random bounded complex with known cohomology.

    Per internal degree: a direct sum of homology pieces and contractible pairs,
    conjugated by random invertible matrices.  Returns (complex, cohomology).
    """
    if degrees is None:
        degrees = sorted(rng.sample(range(0, cutoff + 1), k=min(3, cutoff + 1)))
    dims: Dict[Key, int] = {}
    diffs: Dict[Key, np.ndarray] = {}
    homology: Dict[Key, int] = {}
    for d in degrees:
        while True:
            h = [rng.randint(0, 2) for _ in range(length)]
            pairs = [rng.randint(0, 2) for _ in range(length - 1)] + [0]
            sizes = [h[r] + pairs[r] + (pairs[r - 1] if r else 0) for r in range(length)]
            if max(sizes) <= max_dim:
                break
        bases = [_random_invertible(s, rng, field) for s in sizes]
        for r in range(length):
            if sizes[r]:
                dims[(r, d)] = sizes[r]
            if h[r]:
                homology[(r, d)] = h[r]
        # standard form: C^r = H^r + U^r (sources) + V^r (targets of pairs from r-1)
        for r in range(length - 1):
            if not sizes[r] or not sizes[r + 1]:
                continue
            std = dense.zeros(sizes[r + 1], sizes[r], field)
            # U^r occupies positions h[r] .. h[r]+pairs[r]-1 in C^r,
            # its image V^{r+1} sits after H^{r+1} and U^{r+1}
            for t in range(pairs[r]):
                std[h[r + 1] + pairs[r + 1] + t, h[r] + t] = 1
            p_next = bases[r + 1]
            p_inv = dense.inverse(bases[r], field)
            diffs[(r, d)] = dense.matmul(dense.matmul(p_next, std, field), p_inv, field)
    return GradedComplex(dims, diffs, cutoff, field), homology


def chain_map_space(M: GradedComplex, N: GradedComplex, d: int) -> Tuple[List[Key], np.ndarray]:
    """Basis of all chain maps M -> N in internal degree d.

    Returns the list of (r, d) blocks in unknown order and a matrix whose
    columns are the flattened solutions (row-major per block).
    """
    fld = M.field
    rs = sorted({r for r, dd in M.keys() if dd == d} & {r for r, dd in N.keys() if dd == d})
    blocks = [(r, d) for r in rs]
    offset, pos = 0, {}
    for r, _ in blocks:
        pos[r] = offset
        offset += N.dim(r, d) * M.dim(r, d)
    eqs: List[List] = []
    lo = min(rs) - 1 if rs else 0
    hi = max(rs) + 1 if rs else -1
    for r in range(lo, hi):
        # f^{r+1} d_M^r - d_N^r f^r = 0, an N^{r+1} x M^r system
        rows, cols = N.dim(r + 1, d), M.dim(r, d)
        if not rows or not cols:
            continue
        dm, dn = M.diff(r, d), N.diff(r, d)
        for i in range(rows):
            for j in range(cols):
                eq = [0] * offset
                if r + 1 in pos:
                    w = M.dim(r + 1, d)
                    for t in range(w):
                        if dm[t, j]:
                            eq[pos[r + 1] + i * w + t] = dm[t, j]
                if r in pos:
                    for t in range(N.dim(r, d)):
                        if dn[i, t]:
                            eq[pos[r] + t * cols + j] = fld.normalize(eq[pos[r] + t * cols + j] - dn[i, t])
                eqs.append(eq)
    if not offset:
        return blocks, dense.zeros(0, 0, fld)
    if not eqs:
        return blocks, dense.identity(offset, fld)
    return blocks, dense.nullspace(dense.asmatrix(eqs, fld), fld)


def random_chain_map(rng: random.Random, M: GradedComplex, N: GradedComplex) -> ChainMap:
    """A random element of the space of chain maps M -> N (per internal degree)."""
    fld = M.field
    maps: Dict[Key, np.ndarray] = {}
    cutoff = min(M.cutoff, N.cutoff)
    for d in sorted(set(M.q_degrees()) & set(N.q_degrees())):
        if d > cutoff:
            continue
        blocks, sol = chain_map_space(M, N, d)
        if not sol.size:
            continue
        coeffs = dense.zeros(sol.shape[1], 1, fld)
        for i in range(sol.shape[1]):
            coeffs[i, 0] = fld.convert(rng.randint(-2, 2))
        vec = dense.matmul(sol, coeffs, fld)[:, 0]
        offset = 0
        for r, _ in blocks:
            rows, cols = N.dim(r, d), M.dim(r, d)
            blk = dense.zeros(rows, cols, fld)
            for i in range(rows):
                for j in range(cols):
                    blk[i, j] = vec[offset + i * cols + j]
            offset += rows * cols
            maps[(r, d)] = blk
    return ChainMap(M, N, maps)


def identity_map(C: GradedComplex) -> ChainMap:
    return ChainMap(C, C, {key: dense.identity(C.dim(*key), C.field) for key in C.keys()})


def check_gauss_props(seed: int, field: Field = RATIONAL, max_dim: int = 6, cutoff: int = 12) -> Dict[str, bool]:
    """Elimination and cone properties on one seeded random complex.

    ``elimination``: one Gaussian elimination step, and full simplification,
    keep the known cohomology.  ``cone``: for a random chain map and for the
    identity, the cone is acyclic exactly when the map is a quasi-isomorphism.
    """
    rng = random.Random(seed)
    C, known = random_complex(rng, max_dim=max_dim, cutoff=cutoff, field=field)
    res = {"cohomology": cohomology_dims(C) == known}
    step_ok = True
    for r, d in sorted(C.diffs):
        hit = find_invertible_entry(C, r, d)
        if hit is not None:
            j, i = hit
            step_ok = cohomology_dims(gaussian_eliminate(C, r, {d: ([j], [i])})) == known
            break
    S = simplify(C)
    res["elimination"] = bool(step_ok and cohomology_dims(S) == known
                              and all(dense.is_zero(m) for m in S.diffs.values()))
    D, _ = random_complex(rng, max_dim=max_dim, cutoff=cutoff, field=field,
                          degrees=sorted({d for _, d in C.keys()}))
    f = random_chain_map(rng, C, D)
    ok = f.is_chain_map() and quasi_iso_check(f) == is_acyclic_up_to(cone(f))
    g = identity_map(C)
    ok = ok and quasi_iso_check(g) and is_acyclic_up_to(cone(g))
    res["cone"] = bool(ok)
    return res
