"""Symmetric-group combinatorics in one-line notation.

Permutations are functions on {1..n}; products compose right to left,
``(u*v)(i) = u(v(i))``.  The simple reflection s_i swaps i and i+1.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .errors import InvalidArgument

__all__ = [
    "Permutation",
    "ZERO",
    "identity",
    "simple",
    "from_word",
    "longest_element",
    "min_coset_reps",
    "coset_filter",
    "sigma_k",
    "nil_coxeter_product",
    "all_permutations",
]


class Permutation(tuple):
    """A permutation of {1..n} stored as its one-line notation."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidArgument(f"{images} is not a permutation of 1..{len(images)}")
        return super().__new__(cls, images)

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> "Permutation":
        return super().__new__(cls, images)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other) != len(self):
            raise InvalidArgument("permutations of different sizes")
        return Permutation._trusted(tuple(self[j - 1] for j in other))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for pos, val in enumerate(self, start=1):
            inv[val - 1] = pos
        return Permutation._trusted(tuple(inv))

    def length(self) -> int:
        return _length(tuple(self))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self, start=1))

    def extend(self, n: int) -> "Permutation":
        """Embed into S_n fixing the extra points."""
        if n < len(self):
            raise InvalidArgument("cannot shrink a permutation")
        return Permutation._trusted(tuple(self) + tuple(range(len(self) + 1, n + 1)))

    def reduced_word(self) -> Tuple[int, ...]:
        return _reduced_word(tuple(self))

    def word_text(self) -> str:
        w = self.reduced_word()
        return "*".join(f"s{i}" for i in w) if w else "1"

    def to_text(self) -> str:
        return "[" + ",".join(str(v) for v in self) + "]"

    def __repr__(self) -> str:
        return f"Permutation({self.to_text()})"


class _Zero:
    """Marker for a vanishing nilCoxeter product."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ZERO"

    def __bool__(self):
        return False


ZERO = _Zero()


@lru_cache(maxsize=None)
def _length(images: Tuple[int, ...]) -> int:
    n = len(images)
    return sum(1 for i in range(n) for j in range(i + 1, n) if images[i] > images[j])


@lru_cache(maxsize=None)
def _reduced_word(images: Tuple[int, ...]) -> Tuple[int, ...]:
    # peel right descents: w = (w s_i) s_i with l(w s_i) < l(w)
    w = list(images)
    word: List[int] = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                break
        else:
            break
    return tuple(reversed(word))


def identity(n: int) -> Permutation:
    return Permutation._trusted(tuple(range(1, n + 1)))


def simple(i: int, n: int) -> Permutation:
    if not 1 <= i < n:
        raise InvalidArgument(f"s_{i} is not in S_{n}")
    img = list(range(1, n + 1))
    img[i - 1], img[i] = img[i], img[i - 1]
    return Permutation._trusted(tuple(img))


def from_word(word: Sequence[int], n: int) -> Permutation:
    w = identity(n)
    for i in word:
        w = w * simple(i, n)
    return w


def longest_element(k: int, l: int, n: int) -> Permutation:
    """Longest element of S_[k,l] inside S_n (identity for degenerate windows)."""
    img = list(range(1, n + 1))
    if k < l:
        if k < 1 or l > n:
            raise InvalidArgument(f"window [{k},{l}] is not inside 1..{n}")
        img[k - 1:l] = reversed(img[k - 1:l])
    return Permutation._trusted(tuple(img))


def all_permutations(n: int) -> List[Permutation]:
    return [Permutation._trusted(p) for p in itertools.permutations(range(1, n + 1))]


@lru_cache(maxsize=None)
def _min_coset_reps(k: int, m: int) -> Tuple[Permutation, ...]:
    out = []
    for p in itertools.permutations(range(1, m + 1)):
        if all(p[i] < p[i + 1] for i in range(k - 1, m - 1)):
            out.append(Permutation._trusted(p))
    out.sort(key=lambda w: (w.length(), tuple(w)))
    return tuple(out)


def min_coset_reps(k: int, m: int) -> List[Permutation]:
    """Minimal length representatives of the left cosets w S_[k,m] in S_m.

    These are the w with w(k) < w(k+1) < ... < w(m).  ``k`` may be m+1
    (trivial subgroup).  Sorted by length, then one-line notation.
    """
    if m < 0 or k < 1 or k > m + 1:
        raise InvalidArgument(f"need 1 <= k <= m+1, got k={k}, m={m}")
    return list(_min_coset_reps(k, m))


def coset_filter(reps: Iterable[Permutation], u: int, mode: str) -> List[Permutation]:
    """Filter by the value w(m) at the last position: ``equal``, ``at_least`` or ``less``."""
    if mode == "equal":
        keep = lambda v: v == u
    elif mode == "at_least":
        keep = lambda v: v >= u
    elif mode == "less":
        keep = lambda v: v < u
    else:
        raise InvalidArgument(f"unknown mode {mode!r}")
    return [w for w in reps if keep(w[-1])]


def sigma_k(n: int, k: int) -> Permutation:
    """i -> i+n-k for i <= k, i -> i-k otherwise."""
    if not 0 <= k <= n:
        raise InvalidArgument(f"need 0 <= k <= n, got k={k}, n={n}")
    return Permutation._trusted(tuple(i + n - k if i <= k else i - k for i in range(1, n + 1)))


def nil_coxeter_product(u: Permutation, v: Permutation):
    """tau_u tau_v: the product uv if lengths add, else ZERO."""
    w = u * v
    if w.length() == u.length() + v.length():
        return w
    return ZERO
