"""Laurent polynomials and truncated series in q.

Graded dimensions are stored as :class:`LaurentSeries`.  A value is either an
exact Laurent polynomial or a series known only up to (and including) a cutoff
exponent.  Everything the package says about infinite-dimensional graded
spaces goes through this type, so the cutoff is tracked carefully.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import InvalidArgument, ResourceLimit

__all__ = [
    "LaurentSeries",
    "q",
    "quantum_int",
    "quantum_factorial",
    "quantum_binom",
    "quantum_binom_or_zero",
    "braced",
    "braced_fact",
    "poincare_symmetric_group",
    "subset_qsum",
    "subset_qsum_closed_form",
    "grdim_invariant_ring",
    "grdim_polynomial_ring",
    "grdim_Hn",
    "check_decomposition_identities",
    "adj_hom_grdim",
    "end_divided_power_grdim",
    "indec_series",
    "lowest_term",
    "check_indec",
    "indec_exponent",
    "iso_exponents",
]

SYMMETRIC_GROUP_ENUM_BOUND = 8


class LaurentSeries:
    """Sparse integer Laurent polynomial, optionally truncated at ``cutoff``.

    ``cutoff is None`` means exact.  For truncated values every coefficient
    with exponent ``<= cutoff`` is correct and nothing above is stored.
    """

    __slots__ = ("_c", "cutoff")

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None, cutoff: Optional[int] = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v and (cutoff is None or e <= cutoff):
                    c[int(e)] = int(v)
        self._c: Dict[int, int] = c
        self.cutoff = cutoff

    # construction helpers
    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentSeries":
        return cls({e: c})

    @classmethod
    def geometric(cls, step: int, cutoff: int) -> "LaurentSeries":
        """1/(1 - q^step) expanded up to ``cutoff`` (step > 0)."""
        if step <= 0:
            raise InvalidArgument("geometric series needs a positive step")
        return cls({e: 1 for e in range(0, max(cutoff, -1) + 1, step)}, cutoff)

    @property
    def is_exact(self) -> bool:
        return self.cutoff is None

    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, e: int) -> int:
        if self.cutoff is not None and e > self.cutoff:
            raise KeyError(f"coefficient of q^{e} lies above cutoff {self.cutoff}")
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def min_exp(self) -> Optional[int]:
        return min(self._c) if self._c else None

    def max_exp(self) -> Optional[int]:
        return max(self._c) if self._c else None

    def truncate(self, cutoff: int) -> "LaurentSeries":
        cut = cutoff if self.cutoff is None else min(cutoff, self.cutoff)
        return LaurentSeries(self._c, cut)

    # arithmetic
    @staticmethod
    def _coerce(other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, int):
            return LaurentSeries({0: other})
        return NotImplemented

    @staticmethod
    def _min_cut(a: Optional[int], b: Optional[int]) -> Optional[int]:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return LaurentSeries(out, self._min_cut(self.cutoff, other.cutoff))

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries({e: -v for e, v in self._c.items()}, self.cutoff)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # a truncated factor is only known up to its cutoff; the other factor's
        # lowest exponent decides how far the product stays reliable
        cut = None
        if self.cutoff is not None:
            low = other.min_exp()
            cut = self.cutoff + (low if low is not None else 0)
        if other.cutoff is not None:
            low = self.min_exp()
            c2 = other.cutoff + (low if low is not None else 0)
            cut = c2 if cut is None else min(cut, c2)
        out: Dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                if cut is not None and e > cut:
                    continue
                out[e] = out.get(e, 0) + v1 * v2
        return LaurentSeries(out, cut)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidArgument("negative powers are not supported")
        out = LaurentSeries({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def shift(self, s: int) -> "LaurentSeries":
        """Multiply by q^s."""
        cut = None if self.cutoff is None else self.cutoff + s
        return LaurentSeries({e + s: v for e, v in self._c.items()}, cut)

    def bar(self) -> "LaurentSeries":
        if self.cutoff is not None:
            raise InvalidArgument("bar involution is only defined on exact values")
        return LaurentSeries({-e: v for e, v in self._c.items()})

    def exact_div(self, other: "LaurentSeries") -> "LaurentSeries":
        """Exact division by a nonzero exact Laurent polynomial.

        Long division from the top degree; any remainder is an error.
        Truncated dividends are divided as power series from the bottom,
        which requires the divisor's lowest coefficient to be a unit.
        """
        if other.cutoff is not None or other.is_zero():
            raise InvalidArgument("divisor must be a nonzero exact Laurent polynomial")
        if self.cutoff is not None:
            return self._series_div(other)
        rem = dict(self._c)
        dmax, dmin = other.max_exp(), other.min_exp()
        lead = other._c[dmax]
        floor = min(rem) - dmin if rem else 0
        quot: Dict[int, int] = {}
        while rem:
            top = max(rem)
            qe = top - dmax
            if qe < floor:
                raise ArithmeticError("nonzero remainder in exact division")
            c = rem[top]
            if c % lead:
                raise ArithmeticError("non-integral quotient in exact division")
            qc = c // lead
            quot[qe] = qc
            for e, v in other._c.items():
                k = qe + e
                nv = rem.get(k, 0) - qc * v
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return LaurentSeries(quot)

    def _series_div(self, other: "LaurentSeries") -> "LaurentSeries":
        dmin = other.min_exp()
        lead = other._c[dmin]
        if lead not in (1, -1):
            raise InvalidArgument("series division needs a unit lowest coefficient")
        # result is reliable up to cutoff - dmin
        cut = self.cutoff - dmin
        rem = dict(self._c)
        quot: Dict[int, int] = {}
        while rem:
            low = min(rem)
            qe = low - dmin
            if qe > cut:
                break
            qc = rem[low] * lead
            quot[qe] = qc
            for e, v in other._c.items():
                k = qe + e
                if k > self.cutoff:
                    continue
                nv = rem.get(k, 0) - qc * v
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return LaurentSeries(quot, cut)

    # comparison / display
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c and self.cutoff == other.cutoff

    def agrees_with(self, other: "LaurentSeries", cutoff: Optional[int] = None) -> bool:
        """Coefficientwise equality up to the common cutoff (and ``cutoff``)."""
        cut = self._min_cut(self._min_cut(self.cutoff, other.cutoff), cutoff)
        keys = set(self._c) | set(other._c)
        return all(self._c.get(e, 0) == other._c.get(e, 0) for e in keys if cut is None or e <= cut)

    def __hash__(self):
        return hash((frozenset(self._c.items()), self.cutoff))

    def __call__(self, value):
        """Evaluate at a number (exact values only)."""
        return sum(v * value ** e for e, v in self._c.items())

    def to_text(self) -> str:
        if not self._c:
            body = "0"
        else:
            parts = []
            for e, v in sorted(self._c.items()):
                parts.append(str(v) if e == 0 else f"{v}*q^{e}")
            body = " + ".join(parts)
        if self.cutoff is not None:
            body += f" + O(q^{self.cutoff + 1})"
        return body

    def to_json(self):
        return {"coeffs": [[e, v] for e, v in sorted(self._c.items())], "cutoff": self.cutoff}

    @classmethod
    def from_json(cls, data) -> "LaurentSeries":
        return cls({e: v for e, v in data["coeffs"]}, data["cutoff"])

    def __repr__(self):
        return f"LaurentSeries({self.to_text()})"

    __str__ = to_text


q = LaurentSeries({1: 1})
ONE = LaurentSeries({0: 1})


def quantum_int(k: int) -> LaurentSeries:
    """[k] = (q^k - q^-k)/(q - q^-1)."""
    if k == 0:
        return LaurentSeries()
    if k < 0:
        return -quantum_int(-k)
    return LaurentSeries({k - 1 - 2 * j: 1 for j in range(k)})


def quantum_factorial(k: int) -> LaurentSeries:
    out = ONE
    for j in range(1, k + 1):
        out = out * quantum_int(j)
    return out


def quantum_binom(n: int, k: int) -> LaurentSeries:
    if k < 0 or n < 0 or k > n:
        raise InvalidArgument(f"quantum binomial needs 0 <= k <= n, got ({n}, {k})")
    num = ONE
    for j in range(n - k + 1, n + 1):
        num = num * quantum_int(j)
    return num.exact_div(quantum_factorial(k))


def quantum_binom_or_zero(n: int, k: int) -> LaurentSeries:
    """Quantum binomial extended by zero outside 0 <= k <= n (n >= 0)."""
    if k < 0 or n < 0 or k > n:
        return LaurentSeries()
    return quantum_binom(n, k)


def braced(k: int) -> LaurentSeries:
    """{k} = (q^{2k} - 1)/(q^2 - 1)."""
    return LaurentSeries({2 * j: 1 for j in range(k)})


def braced_fact(k: int) -> LaurentSeries:
    out = ONE
    for j in range(1, k + 1):
        out = out * braced(j)
    return out


def poincare_symmetric_group(n: int, bound: int = SYMMETRIC_GROUP_ENUM_BOUND) -> LaurentSeries:
    """Sum of q^{2 l(w)} over S_n, by enumeration."""
    if n > bound:
        raise ResourceLimit(f"enumerating S_{n} exceeds the bound {bound}")
    out: Dict[int, int] = {}
    for w in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
        out[2 * inv] = out.get(2 * inv, 0) + 1
    return LaurentSeries(out)


def subset_qsum(ground_size: int, r: int) -> LaurentSeries:
    """Sum over r-subsets u of {0..ground_size-1} of q^{2 sum(u)}."""
    if r < 0 or r > ground_size:
        raise InvalidArgument(f"need 0 <= r <= ground_size, got r={r}, ground_size={ground_size}")
    out: Dict[int, int] = {}
    for u in itertools.combinations(range(ground_size), r):
        e = 2 * sum(u)
        out[e] = out.get(e, 0) + 1
    return LaurentSeries(out)


def subset_qsum_closed_form(ground_size: int, r: int) -> LaurentSeries:
    num = braced_fact(ground_size).shift(r * (r - 1))
    return num.exact_div(braced_fact(r) * braced_fact(ground_size - r))


def _normalize_windows(n: int, windows: Iterable[Sequence[int]]) -> Tuple[Tuple[int, int], ...]:
    seen = set()
    out = []
    for w in windows:
        a, b = int(w[0]), int(w[1])
        if a > b:
            continue
        if a < 1 or b > n:
            raise InvalidArgument(f"window [{a},{b}] is not inside 1..{n}")
        block = set(range(a, b + 1))
        if block & seen:
            raise InvalidArgument("windows overlap")
        seen |= block
        out.append((a, b))
    return tuple(sorted(out))


def grdim_invariant_ring(n: int, window_partition: Iterable[Sequence[int]], cutoff: int) -> LaurentSeries:
    """Graded dimension of the invariants of P_n under a product of interval groups."""
    windows = _normalize_windows(n, window_partition)
    out = LaurentSeries({0: 1}, cutoff)
    covered = 0
    for a, b in windows:
        m = b - a + 1
        covered += m
        for j in range(1, m + 1):
            out = out * LaurentSeries.geometric(2 * j, cutoff)
    for _ in range(n - covered):
        out = out * LaurentSeries.geometric(2, cutoff)
    return out


def grdim_polynomial_ring(n: int, cutoff: int) -> LaurentSeries:
    return grdim_invariant_ring(n, [], cutoff)


def grdim_Hn(n: int, cutoff: int) -> LaurentSeries:
    """grdim(P_n^{S_n}) {n}! bar({n}!) up to ``cutoff``."""
    low = -n * (n - 1)
    center = grdim_invariant_ring(n, [(1, n)] if n else [], cutoff - low)
    return (center * braced_fact(n) * braced_fact(n).bar()).truncate(cutoff)


# Grothendieck-level identities, checked on the simple modules V(N).
# Basis v_0..v_N of V(N) with v_j of weight N-2j,
# F v_j = [j+1] v_{j+1}, E v_j = [N-j+1] v_{j-1}.

def _op_scalar(word: Sequence[Tuple[str, int]], N: int, j: int):
    """Apply a word of divided powers (rightmost first) to v_j in V(N).

    Returns (scalar, index) or None if the result vanishes.
    """
    scalar = ONE
    for kind, a in reversed(word):
        if kind == "F":
            if j + a > N:
                return None
            for t in range(a):
                scalar = scalar * quantum_int(j + t + 1)
            j += a
        else:
            if j - a < 0:
                return None
            for t in range(a):
                scalar = scalar * quantum_int(N - (j - t) + 1)
            j -= a
        scalar = scalar.exact_div(quantum_factorial(a))
    return scalar, j


def _combo_on_vector(terms, N: int, j: int):
    """terms: list of (coefficient, word).  Returns {index: scalar}."""
    out: Dict[int, LaurentSeries] = {}
    for coeff, word in terms:
        res = _op_scalar(word, N, j)
        if res is None:
            continue
        s, idx = res
        out[idx] = out.get(idx, LaurentSeries()) + coeff * s
    return {k: v for k, v in out.items() if not v.is_zero()}


def check_decomposition_identities(a: int, b: int, lam: int, max_N: Optional[int] = None) -> bool:
    """Check the divided-power and commutation identities on V(N) for all N.

    F^(a) F^(b) = [a+b, a] F^(a+b) (same for E), and
    E^(a) F^(b) 1_lam = sum_i [lam+a-b, i] F^(b-i) E^(a-i) 1_lam   if lam >= b-a,
    F^(b) E^(a) 1_lam = sum_i [-lam-a+b, i] E^(a-i) F^(b-i) 1_lam  if lam <= b-a.
    """
    if max_N is None:
        max_N = abs(lam) + 2 * (a + b) + 2
    for N in range(0, max_N + 1):
        for j in range(N + 1):
            # decompdp
            for kind in "FE":
                lhs = _combo_on_vector([(ONE, [(kind, a), (kind, b)])], N, j)
                rhs = _combo_on_vector([(quantum_binom(a + b, a), [(kind, a + b)])], N, j)
                if lhs != rhs:
                    return False
            if N - 2 * j != lam:
                continue
            if lam >= b - a:
                lhs = _combo_on_vector([(ONE, [("E", a), ("F", b)])], N, j)
                terms = [
                    (quantum_binom_or_zero(lam + a - b, i), [("F", b - i), ("E", a - i)])
                    for i in range(min(a, b) + 1)
                ]
                if lhs != _combo_on_vector(terms, N, j):
                    return False
            if lam <= b - a:
                lhs = _combo_on_vector([(ONE, [("F", b), ("E", a)])], N, j)
                terms = [
                    (quantum_binom_or_zero(-lam - a + b, i), [("E", a - i), ("F", b - i)])
                    for i in range(min(a, b) + 1)
                ]
                if lhs != _combo_on_vector(terms, N, j):
                    return False
    return True


def end_divided_power_grdim(kind: str, a: int, lam: int, n: int, cutoff: int) -> LaurentSeries:
    """Graded dimension of End of the image of F^(a) 1_lam or E^(a) 1_lam in L(n).

    The image of E^(a) 1_lam with lam = -n+2k has endomorphism ring the invariants
    of S_k x S_a x S_{n-k-a}; F^(a) 1_lam with lam = -n+2k gives S_{k-a} x S_a x S_{n-k}.
    Weights outside 0..n (or a too large) give 0.
    """
    if (lam + n) % 2:
        raise InvalidArgument("weight parity does not match n")
    k = (lam + n) // 2
    if kind == "E":
        blocks = (k, a, n - k - a)
    elif kind == "F":
        blocks = (k - a, a, n - k)
    else:
        raise InvalidArgument(f"unknown kind {kind!r}")
    if min(blocks) < 0 or k < 0 or k > n:
        return LaurentSeries({}, cutoff)
    windows = []
    start = 1
    for size in blocks:
        if size > 1:
            windows.append((start, start + size - 1))
        start += size
    return grdim_invariant_ring(n, windows, cutoff)


def adj_hom_grdim(a: int, b: int, c: int, d: int, lam: int, n: int, cutoff: int) -> LaurentSeries:
    """Graded Hom dimension from the adjunction formula, in L(n).

    For lam >= b-a this is Hom(F^(b)E^(a)1_lam, F^(d)E^(c)1_lam) =
      sum_{i=0}^{min(a,c)} q^{(a+c-i)(lam+a+c-i)} [lam+a+c, i][b+c-i, b][a+d-i, d]
          End(F^(a+d-i) 1_{lam+2(a+c-i)}),
    and for lam < b-a it is Hom(E^(a)F^(b)1_lam, E^(c)F^(d)1_lam) =
      sum_{i=0}^{min(b,d)} q^{(b+d-i)(-lam+b+d-i)} [-lam+b+d, i][a+d-i, a][b+c-i, c]
          End(E^(b+c-i) 1_{lam-2(b+d-i)}).
    """
    if a - b != c - d:
        raise InvalidArgument("need a - b = c - d")
    if (n - lam) % 2:
        raise InvalidArgument("n and lam must have the same parity")
    total = LaurentSeries({}, cutoff)
    if lam >= b - a:
        for i in range(min(a, c) + 1):
            mult = (quantum_binom_or_zero(lam + a + c, i)
                    * quantum_binom_or_zero(b + c - i, b)
                    * quantum_binom_or_zero(a + d - i, d))
            if mult.is_zero():
                continue
            e = (a + c - i) * (lam + a + c - i)
            low = e + (mult.min_exp() or 0)
            end = end_divided_power_grdim("F", a + d - i, lam + 2 * (a + c - i), n, cutoff - low)
            total = total + (mult * end).shift(e)
    else:
        for i in range(min(b, d) + 1):
            mult = (quantum_binom_or_zero(-lam + b + d, i)
                    * quantum_binom_or_zero(a + d - i, a)
                    * quantum_binom_or_zero(b + c - i, c))
            if mult.is_zero():
                continue
            e = (b + d - i) * (-lam + b + d - i)
            low = e + (mult.min_exp() or 0)
            end = end_divided_power_grdim("E", b + c - i, lam - 2 * (b + d - i), n, cutoff - low)
            total = total + (mult * end).shift(e)
    return total.truncate(cutoff)


def indec_series(a: int, b: int, lam: int, n: int, cutoff: int) -> LaurentSeries:
    """End of the image of F^(b)E^(a)1_lam, assembled from the adjunction formula."""
    return adj_hom_grdim(a, b, a, b, lam, n, cutoff)


def lowest_term(s: LaurentSeries) -> Tuple[int, int]:
    if s.is_zero():
        raise InvalidArgument("zero series has no lowest term")
    e = s.min_exp()
    return e, s[e]


def indec_exponent(a: int, b: int, lam: int, i: int) -> int:
    """Lowest exponent of the i-th summand of End(F^(b)E^(a)1_lam): 2(a-i)(lam+2a-b-i)."""
    return 2 * (a - i) * (lam + 2 * a - b - i)


def iso_exponents(a: int, b: int, c: int, d: int, lam: int, i: int) -> Tuple[int, int]:
    """The two factors controlling the lowest degrees in Hom(X, Y) and Hom(Y, X)."""
    return (a - i) * (lam + 2 * a - b - i), (c - i) * (lam + 2 * c - d - i)


def check_indec(a: int, b: int, lam: int, n: int, cutoff: int) -> bool:
    """For lam >= b-a a nonzero End(F^(b)E^(a)1_lam) lies in 1 + q N[q]."""
    if lam < b - a:
        raise InvalidArgument("the indecomposability range is lam >= b - a")
    s = indec_series(a, b, lam, n, cutoff)
    if s.is_zero():
        return True
    return lowest_term(s) == (0, 1) and all(c >= 0 for _, c in s.items())
