import itertools

import pytest
from hypothesis import given, strategies as st

from sl2cat.errors import InvalidArgument, ResourceLimit
from sl2cat.qcalc import (
    LaurentSeries,
    adj_hom_grdim,
    braced_fact,
    check_decomposition_identities,
    check_indec,
    grdim_Hn,
    grdim_invariant_ring,
    indec_exponent,
    iso_exponents,
    lowest_term,
    poincare_symmetric_group,
    q,
    quantum_binom,
    quantum_int,
    subset_qsum,
    subset_qsum_closed_form,
)


def L(d, cutoff=None):
    return LaurentSeries(d, cutoff)


# hand-computed oracles

def test_quantum_int_small():
    assert quantum_int(1) == L({0: 1})
    assert quantum_int(2) == L({1: 1, -1: 1})
    assert quantum_int(3) == L({2: 1, 0: 1, -2: 1})
    assert quantum_int(-2) == -quantum_int(2)
    assert quantum_int(0).is_zero()


def test_quantum_binom_4_2():
    # [4][3]/([2][1]) = q^-4 + q^-2 + 2 + q^2 + q^4
    assert quantum_binom(4, 2) == L({-4: 1, -2: 1, 0: 2, 2: 1, 4: 1})
    assert lowest_term(quantum_binom(4, 2)) == (-4, 1)


def test_braced_fact_3():
    # {1}{2}{3} = (1)(1+q^2)(1+q^2+q^4)
    assert braced_fact(3) == L({0: 1, 2: 2, 4: 2, 6: 1})
    assert lowest_term(braced_fact(3)) == (0, 1)


def test_lowest_term_examples():
    assert lowest_term(q + L({-1: 1})) == (-1, 1)
    with pytest.raises(InvalidArgument):
        lowest_term(L({}))


def test_poincare_s3_by_hand():
    # lengths in S_3: 0,1,1,2,2,3
    assert poincare_symmetric_group(3) == L({0: 1, 2: 2, 4: 2, 6: 1})


def test_poincare_bound():
    with pytest.raises(ResourceLimit):
        poincare_symmetric_group(12)


@pytest.mark.parametrize("n", range(8))
def test_hilbertsym(n):
    assert poincare_symmetric_group(n) == braced_fact(n)


def test_qbinomial_ground_set_convention():
    # r = 1 on a 3-element ground set {0,1,2}: 1 + q^2 + q^4 = {3}
    assert subset_qsum(3, 1) == L({0: 1, 2: 1, 4: 1})
    assert subset_qsum_closed_form(3, 1) == subset_qsum(3, 1)
    # r = 2 on {0,1,2}: q^2 + q^4 + q^6
    assert subset_qsum(3, 2) == L({2: 1, 4: 1, 6: 1})


@pytest.mark.parametrize("g", range(11))
def test_qbinomial_all(g):
    for r in range(g + 1):
        assert subset_qsum(g, r) == subset_qsum_closed_form(g, r)


@given(st.integers(0, 12), st.data())
def test_qbinom_bar_invariant_nonnegative(n, data):
    k = data.draw(st.integers(0, n))
    b = quantum_binom(n, k)
    assert b == b.bar()
    assert all(c > 0 for _, c in b.items())


@given(st.integers(0, 8), st.data())
def test_qbinom_pascal(n, data):
    k = data.draw(st.integers(1, n + 1)) if n else 1
    if k > n:
        return
    # [n+1, k] = q^{-k} [n, k] + q^{n+1-k} [n, k-1]
    lhs = quantum_binom(n + 1, k)
    a = quantum_binom(n, k).shift(-k) if k <= n else L({})
    b = quantum_binom(n, k - 1).shift(n + 1 - k)
    assert lhs == a + b


def test_laurent_truncation_and_shift():
    s = L({0: 1, 2: 3, 9: 1}, cutoff=4)
    assert s[2] == 3
    assert 9 not in dict(s.items())
    with pytest.raises(KeyError):
        s[5]
    assert s.shift(2)[4] == 3
    assert s.shift(2).cutoff == 6


@given(st.dictionaries(st.integers(-6, 6), st.integers(-3, 3), max_size=5),
       st.dictionaries(st.integers(-6, 6), st.integers(-3, 3), max_size=5))
def test_laurent_ring_axioms(a, b):
    A, B = L(a), L(b)
    assert A * B == B * A
    assert (A + B).bar() == A.bar() + B.bar()
    assert (A * B).bar() == A.bar() * B.bar()


def test_grdim_invariant_ring_one_variable():
    assert grdim_invariant_ring(1, [], 6) == L({0: 1, 2: 1, 4: 1, 6: 1}, 6)


def test_grdim_invariant_ring_two_symmetric():
    # P_2^{S_2} = k[e1, e2]: degrees 0,2,4,4,6,6,8,8,8
    assert grdim_invariant_ring(2, [(1, 2)], 8) == L({0: 1, 2: 1, 4: 2, 6: 2, 8: 3}, 8)


def test_grdim_hn_lowest_term():
    # H_n e_n is q^{-n(n-1)} P_n, so H_n starts in degree -n(n-1)
    for n in range(1, 4):
        assert lowest_term(grdim_Hn(n, 6)) == (-n * (n - 1), 1)


@pytest.mark.parametrize("a,b,lam", [(1, 1, 0), (2, 1, 1), (0, 2, -1), (2, 2, -2)])
def test_decomposition_examples(a, b, lam):
    assert check_decomposition_identities(a, b, lam)


def test_adj_trivial_word_is_end_of_identity():
    for n in range(0, 5):
        for k in range(n + 1):
            lam = -n + 2 * k
            got = adj_hom_grdim(0, 0, 0, 0, lam, n, 10)
            want = grdim_invariant_ring(n, [w for w in [(1, k), (k + 1, n)] if w[1] > w[0]], 10)
            assert got == want


def test_adj_two_term_sum():
    # (a,b,c,d,lam) = (1,0,1,0,0) at n = 4:
    #   i = 0: q^4 End(F 1_4),  i = 1: q [2] End(1_2);
    # both End rings are the S_3 x S_1 invariants, so the total is (1 + q^2 + q^4) R
    got = adj_hom_grdim(1, 0, 1, 0, 0, 4, 10)
    R = grdim_invariant_ring(4, [(1, 3)], 10)
    assert got == (L({0: 1, 2: 1, 4: 1}) * R).truncate(10)


def test_adj_preconditions():
    with pytest.raises(InvalidArgument):
        adj_hom_grdim(1, 0, 0, 0, 0, 2, 4)
    with pytest.raises(InvalidArgument):
        adj_hom_grdim(0, 0, 0, 0, 1, 2, 4)


def test_indec_exponent_inequalities():
    for a, b, lam in itertools.product(range(6), range(6), range(-5, 6)):
        if lam < b - a:
            continue
        for i in range(a):
            assert indec_exponent(a, b, lam, i) > 0
    for a, b, c, d, lam in itertools.product(range(6), repeat=5):
        if a - b != c - d or a <= c or lam < b - a:
            continue
        for i in range(c + 1):
            e1, e2 = iso_exponents(a, b, c, d, lam, i)
            assert e1 > 0 and e2 >= 0


@pytest.mark.parametrize("a,b", [(a, b) for a in range(3) for b in range(3)])
def test_indec_constant_term(a, b):
    for lam in range(b - a, b - a + 4):
        for n in range(11):
            if (n - lam) % 2 == 0:
                assert check_indec(a, b, lam, n, 8)
