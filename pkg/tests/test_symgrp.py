import itertools
from math import factorial

import pytest
from hypothesis import given, strategies as st

from sl2cat.errors import InvalidArgument
from sl2cat.symgrp import (
    ZERO,
    Permutation,
    all_permutations,
    coset_filter,
    from_word,
    identity,
    longest_element,
    min_coset_reps,
    nil_coxeter_product,
    sigma_k,
    simple,
)


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(Permutation)


def test_composition_is_functional():
    s1, s2 = simple(1, 3), simple(2, 3)
    w = s1 * s2
    # (s1 s2)(3) = s1(2) = 1
    assert w(3) == 1
    assert tuple(w) == (2, 3, 1)


def test_lengths_and_words():
    assert identity(4).length() == 0
    assert from_word([1, 2, 1], 3) == from_word([2, 1, 2], 3)
    assert from_word([1, 2, 1], 3).length() == 3


def test_longest_element_window():
    w = longest_element(2, 4, 5)
    assert tuple(w) == (1, 4, 3, 2, 5)
    assert w.length() == 3


def test_sigma_k_examples():
    assert tuple(sigma_k(3, 1)) == (3, 1, 2)
    assert tuple(sigma_k(4, 2)) == (3, 4, 1, 2)
    assert sigma_k(3, 0) == identity(3) == sigma_k(3, 3)


def test_nil_coxeter_zero():
    s1 = simple(1, 3)
    assert nil_coxeter_product(s1, s1) is ZERO
    assert nil_coxeter_product(s1, simple(2, 3)) == s1 * simple(2, 3)


def test_invalid_permutation():
    with pytest.raises(InvalidArgument):
        Permutation((1, 1, 2))


def _brute_min_reps(k, m):
    """Shortest element of each coset w S_[k,m], found by exhausting the coset."""
    sub = [Permutation(tuple(range(1, k)) + tuple(p)) for p in itertools.permutations(range(k, m + 1))]
    seen, reps = set(), set()
    for w in all_permutations(m):
        if w in seen:
            continue
        coset = [w * u for u in sub]
        seen.update(coset)
        best = min(coset, key=lambda v: v.length())
        assert sum(1 for v in coset if v.length() == best.length()) == 1
        reps.add(best)
    return reps


@pytest.mark.parametrize("m", range(1, 6))
def test_min_coset_reps_brute_force(m):
    for k in range(1, m + 2):
        got = min_coset_reps(k, m)
        assert set(got) == _brute_min_reps(k, m)
        assert len(got) == factorial(m) // factorial(m - k + 1)


def test_coset_filter_modes():
    reps = min_coset_reps(2, 3)
    assert all(w[-1] == 3 for w in coset_filter(reps, 3, "equal"))
    assert len(coset_filter(reps, 2, "at_least")) + len(coset_filter(reps, 2, "less")) == len(reps)
    with pytest.raises(InvalidArgument):
        coset_filter(reps, 1, "between")


@given(perms(5), perms(5))
def test_inverse_of_product(u, v):
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert (u * v).length() <= u.length() + v.length()


@given(perms(5))
def test_reduced_word_roundtrip(w):
    word = w.reduced_word()
    assert len(word) == w.length() == w.inverse().length()
    assert from_word(word, 5) == w
