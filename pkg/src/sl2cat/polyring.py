"""Polynomials in x_1..x_n with deg x_i = 2, Demazure operators, invariant rings."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import InternalError, InvalidArgument
from .linalg import RATIONAL, Field, rank
from .symgrp import Permutation

__all__ = [
    "MultiPoly",
    "var",
    "monomial",
    "demazure",
    "demazure_reference",
    "demazure_word",
    "elementary_symmetric",
    "x_window",
    "x_prime_window",
    "invariant_monomial_basis",
    "monomials_of_degree",
    "is_invariant",
    "check_polsym",
]

Exp = Tuple[int, ...]


class MultiPoly:
    """Sparse polynomial: exponent tuple -> exact coefficient (int or Fraction)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Exp, object]] = None):
        self.n = n
        t: Dict[Exp, object] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != n:
                        raise InvalidArgument(f"exponent {e} has wrong length for n={n}")
                    t[tuple(e)] = c
        self.terms = t

    @classmethod
    def _raw(cls, n: int, terms: Dict[Exp, object]) -> "MultiPoly":
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    @classmethod
    def const(cls, n: int, c=1) -> "MultiPoly":
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def zero(cls, n: int) -> "MultiPoly":
        return cls._raw(n, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def copy(self) -> "MultiPoly":
        return MultiPoly._raw(self.n, dict(self.terms))

    # grading
    def degrees(self) -> set:
        return {2 * sum(e) for e in self.terms}

    def degree(self) -> int:
        """The degree of a homogeneous nonzero polynomial."""
        ds = self.degrees()
        if len(ds) != 1:
            raise InvalidArgument("polynomial is zero or not homogeneous")
        return ds.pop()

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly._raw(self.n, {e: c for e, c in self.terms.items() if 2 * sum(e) == d})

    # arithmetic
    def _check(self, other: "MultiPoly"):
        if other.n != self.n:
            raise InvalidArgument(f"polynomials in {self.n} and {other.n} variables")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly.zero(self.n)
        return MultiPoly._raw(self.n, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Exp, object] = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(self.n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.const(self.n)
        for _ in range(k):
            out = out * self
        return out

    def mul_monomial(self, exp: Exp, c=1) -> "MultiPoly":
        return MultiPoly._raw(
            self.n, {tuple(x + y for x, y in zip(e, exp)): v * c for e, v in self.terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # symmetric group action
    def swap(self, i: int) -> "MultiPoly":
        """s_i P: exchange x_i and x_{i+1}."""
        i0 = i - 1
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i0], f[i0 + 1] = f[i0 + 1], f[i0]
            out[tuple(f)] = c
        return MultiPoly._raw(self.n, out)

    def permute(self, w: Permutation) -> "MultiPoly":
        """w P: substitute x_j -> x_{w(j)}."""
        if len(w) != self.n:
            raise InvalidArgument("permutation size does not match")
        out = {}
        for e, c in self.terms.items():
            f = [0] * self.n
            for j, a in enumerate(e):
                f[w[j] - 1] = a
            out[tuple(f)] = c
        return MultiPoly._raw(self.n, out)

    def extend(self, n: int, offset: int = 0) -> "MultiPoly":
        """Reinterpret in n variables, sending x_j to x_{j+offset}."""
        if offset + self.n > n:
            raise InvalidArgument("variables fall outside the target ring")
        out = {}
        for e, c in self.terms.items():
            f = [0] * n
            f[offset:offset + self.n] = e
            out[tuple(f)] = c
        return MultiPoly._raw(n, out)

    def substitute_coefficients(self, field: Field) -> "MultiPoly":
        return MultiPoly(self.n, {e: field.convert(c) for e, c in self.terms.items()})

    # display
    def sorted_terms(self) -> List[Tuple[Exp, object]]:
        return sorted(self.terms.items(), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (f"x{i}" if a == 1 else f"x{i}^{a}") for i, a in enumerate(e, start=1) if a
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def to_json(self):
        return [[list(e), str(c)] for e, c in self.sorted_terms()]

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"

    __str__ = to_text


def var(i: int, n: int) -> MultiPoly:
    if not 1 <= i <= n:
        raise InvalidArgument(f"x_{i} is not a variable of P_{n}")
    e = [0] * n
    e[i - 1] = 1
    return MultiPoly._raw(n, {tuple(e): 1})


def monomial(exp: Sequence[int], c=1) -> MultiPoly:
    return MultiPoly(len(exp), {tuple(exp): c})


@lru_cache(maxsize=None)
def _divdiff_pairs(a: int, b: int) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """(x^a y^b - x^b y^a)/(y - x) as sign and list of (x-exponent, y-exponent)."""
    if a == b:
        return 0, ()
    if a < b:
        lo, c, sign = a, b - a, 1
    else:
        lo, c, sign = b, a - b, -1
    return sign, tuple((lo + c - 1 - j, lo + j) for j in range(c))


def demazure(i: int, p: MultiPoly) -> MultiPoly:
    """(P - s_i P)/(x_{i+1} - x_i)."""
    if not 1 <= i < p.n:
        raise InvalidArgument(f"no Demazure operator d_{i} on P_{p.n}")
    i0 = i - 1
    out: Dict[Exp, object] = {}
    for e, c in p.terms.items():
        sign, pairs = _divdiff_pairs(e[i0], e[i0 + 1])
        if not sign:
            continue
        cc = c if sign > 0 else -c
        base = list(e)
        for ax, ay in pairs:
            base[i0] = ax
            base[i0 + 1] = ay
            f = tuple(base)
            v = out.get(f, 0) + cc
            if v:
                out[f] = v
            else:
                del out[f]
    return MultiPoly._raw(p.n, out)


def demazure_reference(i: int, p: MultiPoly) -> MultiPoly:
    """Demazure operator by synthetic division of P - s_i P by (x_{i+1} - x_i).

    The numerator is treated as a polynomial in y = x_{i+1} with coefficients
    in the other variables; dividing by (y - x_i) leaves remainder N(y = x_i),
    which must vanish.
    """
    num = p - p.swap(i)
    if num.is_zero():
        return MultiPoly.zero(p.n)
    i0 = i - 1
    by_y: Dict[int, MultiPoly] = {}
    for e, c in num.terms.items():
        f = list(e)
        k = f[i0 + 1]
        f[i0 + 1] = 0
        by_y.setdefault(k, MultiPoly.zero(p.n))
        by_y[k] = by_y[k] + MultiPoly._raw(p.n, {tuple(f): c})
    top = max(by_y)
    xi = var(i, p.n)
    y_exp = [0] * p.n
    y_exp[i0 + 1] = 1
    quotient = MultiPoly.zero(p.n)
    carry = MultiPoly.zero(p.n)
    for k in range(top, 0, -1):
        carry = by_y.get(k, MultiPoly.zero(p.n)) + xi * carry
        f = [0] * p.n
        f[i0 + 1] = k - 1
        quotient = quotient + carry.mul_monomial(tuple(f))
    remainder = by_y.get(0, MultiPoly.zero(p.n)) + xi * carry
    if not remainder.is_zero():
        raise InternalError(f"nonzero remainder dividing by x{i + 1} - x{i}: {remainder}")
    return quotient


def demazure_word(w: Permutation, p: MultiPoly) -> MultiPoly:
    """d_w = d_{i1} ... d_{ir} for a reduced word w = s_{i1} ... s_{ir}."""
    for i in reversed(w.reduced_word()):
        p = demazure(i, p)
        if p.is_zero():
            break
    return p


def elementary_symmetric(j: int, variables: Sequence[int], n: Optional[int] = None) -> MultiPoly:
    """e_j in the listed variables (1-based indices) inside P_n."""
    if n is None:
        n = max(variables) if variables else 0
    if j < 0 or j > len(variables):
        return MultiPoly.zero(n) if j != 0 else MultiPoly.const(n)
    out = {}
    for sub in itertools.combinations(variables, j):
        e = [0] * n
        for v in sub:
            e[v - 1] += 1
        out[tuple(e)] = out.get(tuple(e), 0) + 1
    return MultiPoly(n, out)


def x_window(r: int, l: int, n: int) -> MultiPoly:
    """x_{r+1} x_{r+2}^2 ... x_l^{l-r} (1 when l <= r)."""
    e = [0] * n
    for j in range(r + 1, l + 1):
        e[j - 1] = j - r
    return MultiPoly._raw(n, {tuple(e): 1})


def x_prime_window(r: int, l: int, n: int) -> MultiPoly:
    """(-1)^{m(m-1)/2} x_r^{l-r} x_{r+1}^{l-r-1} ... x_{l-1} with m = l-r+1 (1 when l <= r).

    The sign is the one that makes tau_{w0[r,l]} x'_{[r,l]} idempotent; for
    the full window it agrees with e'_n = (-1)^{n(n-1)/2} tau_{w0} x_1^{n-1} ... x_{n-1}.
    """
    e = [0] * n
    for j in range(r, l):
        e[j - 1] = l - j
    m = l - r + 1
    sign = -1 if m > 1 and (m * (m - 1) // 2) % 2 else 1
    return MultiPoly._raw(n, {tuple(e): sign})


def _windows_and_free(n: int, windows: Iterable[Sequence[int]]):
    blocks = []
    covered = set()
    for w in windows:
        a, b = int(w[0]), int(w[1])
        if a > b:
            continue
        if a < 1 or b > n:
            raise InvalidArgument(f"window [{a},{b}] not inside 1..{n}")
        rng = set(range(a, b + 1))
        if rng & covered:
            raise InvalidArgument("windows overlap")
        covered |= rng
        if b > a:
            blocks.append((a, b))
    # singleton windows impose nothing
    free = [i for i in range(1, n + 1) if not any(a <= i <= b for a, b in blocks)]
    return tuple(sorted(blocks)), tuple(free)


def monomials_of_degree(nvars: int, total: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of length nvars summing to ``total``, lex-descending."""
    if nvars == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total, -1, -1):
        for rest in monomials_of_degree(nvars - 1, total - first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def _basis_cached(n: int, blocks: Tuple[Tuple[int, int], ...], free: Tuple[int, ...], half: int):
    # generators: free variables (weight 1) and e_j of each block (weight j)
    gens: List[Tuple[int, object]] = []
    for i in free:
        gens.append((1, ("x", i)))
    for a, b in blocks:
        for j in range(1, b - a + 2):
            gens.append((j, ("e", a, b, j)))
    results: List[MultiPoly] = []

    def gen_poly(g):
        if g[0] == "x":
            return var(g[1], n)
        _, a, b, j = g
        return elementary_symmetric(j, list(range(a, b + 1)), n)

    polys = [gen_poly(g) for _, g in gens]

    def rec(idx: int, remaining: int, acc: MultiPoly):
        if remaining == 0:
            results.append(acc)
            return
        if idx == len(gens):
            return
        w = gens[idx][0]
        cur = acc
        k = 0
        while k * w <= remaining:
            rec(idx + 1, remaining - k * w, cur)
            cur = cur * polys[idx]
            k += 1

    rec(0, half, MultiPoly.const(n))
    return tuple(results)


def invariant_monomial_basis(n: int, window_partition: Iterable[Sequence[int]], degree: int) -> List[MultiPoly]:
    """Basis of the degree-``degree`` part of the invariants under the interval groups.

    Products of elementary symmetric polynomials of each window times monomials
    in the remaining variables.
    """
    if degree < 0 or degree % 2:
        return []
    blocks, free = _windows_and_free(n, window_partition)
    return list(_basis_cached(n, blocks, free, degree // 2))


def is_invariant(p: MultiPoly, window_partition: Iterable[Sequence[int]]) -> bool:
    blocks, _ = _windows_and_free(p.n, window_partition)
    for a, b in blocks:
        for i in range(a, b):
            if p.swap(i) != p:
                return False
    return True


def check_polsym(k: int, l: int, r: int, max_degree: int, field: Field = RATIONAL) -> bool:
    """Products of S_{k+l} x S_r and S_k x S_{l+r} invariants span the S_k x S_l x S_r invariants."""
    from .qcalc import grdim_invariant_ring

    n = k + l + r
    src1 = [(1, k + l), (k + l + 1, n)]
    src2 = [(1, k), (k + 1, n)]
    tgt = [(1, k), (k + 1, k + l), (k + l + 1, n)]
    expected = grdim_invariant_ring(n, tgt, max_degree)
    for d in range(0, max_degree + 1, 2):
        vecs = []
        for d1 in range(0, d + 1, 2):
            left = invariant_monomial_basis(n, src1, d1)
            right = invariant_monomial_basis(n, src2, d - d1)
            for a in left:
                for b in right:
                    prod = a * b
                    if not is_invariant(prod, tgt):
                        raise InternalError("product left the target invariant ring")
                    vecs.append(prod.terms)
        if rank(vecs, field) != expected[d]:
            return False
    return True
