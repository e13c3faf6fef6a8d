import random

import pytest
from hypothesis import given, strategies as st

from sl2cat.errors import InvalidArgument
from sl2cat.gradedcx import (
    ChainMap,
    check_gauss_props,
    cohomology_dims,
    complex_from_pieces,
    cone,
    find_invertible_entry,
    gaussian_eliminate,
    identity_map,
    is_acyclic_up_to,
    quasi_iso_check,
    random_chain_map,
    random_complex,
    shift_hom,
    shift_q,
    simplify,
)
from sl2cat.linalg import RATIONAL, dense, parse_field

GF = parse_field("prime:101")


def two_term(a=1):
    # k --a--> k in degree (0, 0)
    return complex_from_pieces({(0, 0): 1, (1, 0): 1}, {(0, 0): [[a]]}, cutoff=4)


def same(C, D):
    if C.dims != D.dims or set(C.diffs) != set(D.diffs):
        return False
    return all((C.diffs[k] == D.diffs[k]).all() for k in C.diffs)


def test_cohomology_by_hand():
    assert cohomology_dims(two_term(1)) == {}
    assert cohomology_dims(two_term(0)) == {(0, 0): 1, (1, 0): 1}


def test_shift_hom_convention():
    C = two_term(3)
    S = shift_hom(C, 1)
    # (C[1])^r = C^{r-1}, differential negated
    assert S.dim(1, 0) == C.dim(0, 0) and S.dim(2, 0) == C.dim(1, 0)
    assert S.diff(1, 0)[0, 0] == -3


def test_shift_q_convention():
    C = two_term()
    S = shift_q(C, 2)
    # (q^2 V)_d = V_{d-2}
    assert S.dim(0, 2) == 1 and S.dim(0, 0) == 0
    assert S.cutoff == C.cutoff + 2


@given(st.integers(0, 5000), st.integers(-3, 3), st.integers(-4, 4))
def test_shift_roundtrips(seed, s, t):
    C, _ = random_complex(random.Random(seed), max_dim=4, cutoff=8)
    assert same(shift_hom(shift_hom(C, s), -s), C)
    assert same(shift_q(shift_q(C, t), -t), C)
    assert shift_hom(C, 2).check_dd() and shift_hom(C, 1).check_dd()


def test_cone_shape_and_sign():
    C = two_term(1)
    f = identity_map(C)
    K = cone(f)
    # Cone^r = M^{r+1} + N^r
    assert K.dim(-1, 0) == 1 and K.dim(0, 0) == 2 and K.dim(1, 0) == 1
    # K^{-1} = M^0 -> K^0 = M^1 + N^0 is the column [-d_M; f]
    assert [K.diff(-1, 0)[i, 0] for i in range(2)] == [-1, 1]
    # K^0 -> K^1 = N^1 is the row [f, d_N]
    assert [K.diff(0, 0)[0, j] for j in range(2)] == [1, 1]
    assert is_acyclic_up_to(K)


def test_cone_rejects_non_chain_map():
    C = two_term(1)
    bad = ChainMap(C, C, {(0, 0): dense.identity(1, RATIONAL)})
    with pytest.raises(InvalidArgument):
        cone(bad)
    with pytest.raises(InvalidArgument):
        quasi_iso_check(bad)


def test_zero_map_not_quasi_iso():
    C = two_term(0)
    z = ChainMap(C, C, {})
    assert z.is_chain_map()
    assert not quasi_iso_check(z)
    assert not is_acyclic_up_to(cone(z))


def test_gaussian_requires_invertible_block():
    C = two_term(0)
    with pytest.raises(InvalidArgument):
        gaussian_eliminate(C, 0, {0: ([0], [0])})


def test_gaussian_two_by_two_schur():
    # d = [[1, 2], [3, 4]] : cancel the (0, 0) entry, the rest is 4 - 3*2 = -2
    C = complex_from_pieces({(0, 0): 2, (1, 0): 2}, {(0, 0): [[1, 2], [3, 4]]}, cutoff=0)
    D = gaussian_eliminate(C, 0, {0: ([0], [0])})
    assert D.dim(0, 0) == 1 and D.diff(0, 0)[0, 0] == -2


@given(st.integers(0, 10_000))
def test_random_complex_properties(seed):
    rng = random.Random(seed)
    C, known = random_complex(rng, cutoff=12)
    assert C.check_dd()
    assert cohomology_dims(C) == known
    S = simplify(C)
    assert cohomology_dims(S) == known
    assert sum(S.dims.values()) == sum(known.values())
    hit = next(((r, d, find_invertible_entry(C, r, d)) for r, d in sorted(C.diffs)
                if find_invertible_entry(C, r, d)), None)
    if hit:
        r, d, (j, i) = hit
        assert cohomology_dims(gaussian_eliminate(C, r, {d: ([j], [i])})) == known


@given(st.integers(0, 10_000))
def test_cone_iff_quasi_iso(seed):
    rng = random.Random(seed)
    M, _ = random_complex(rng, max_dim=4, cutoff=8, degrees=[0, 2])
    N, _ = random_complex(rng, max_dim=4, cutoff=8, degrees=[0, 2])
    f = random_chain_map(rng, M, N)
    assert f.is_chain_map()
    assert quasi_iso_check(f) == is_acyclic_up_to(cone(f))


@pytest.mark.parametrize("seed", range(10))
def test_gauss_props_prime_field(seed):
    assert all(check_gauss_props(seed, GF).values())


def test_inclusion_of_summand_is_quasi_iso():
    # M = k in degree 0; N = k + (k -> k); inclusion into the first summand
    M = complex_from_pieces({(0, 0): 1}, {}, cutoff=0)
    N = complex_from_pieces({(0, 0): 2, (1, 0): 1}, {(0, 0): [[0, 1]]}, cutoff=0)
    f = ChainMap(M, N, {(0, 0): dense.asmatrix([[1], [0]], RATIONAL)})
    assert quasi_iso_check(f) and is_acyclic_up_to(cone(f))
    g = ChainMap(M, N, {(0, 0): dense.asmatrix([[0], [1]], RATIONAL)})
    assert g.is_chain_map() is False
