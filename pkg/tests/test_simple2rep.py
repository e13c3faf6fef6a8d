import pytest

from sl2cat.errors import InvalidArgument, ResourceLimit
from sl2cat.qcalc import adj_hom_grdim
from sl2cat.simple2rep import (
    PLUS,
    BimoduleTerm,
    Y_set,
    Y_stratify,
    _basis_element,
    _scalar_between,
    b_prime_degree,
    build_theta_complex,
    check_absorption_on_basis,
    check_basis,
    check_dd,
    check_divided_power_grdim,
    check_hom_oracle,
    check_kerim,
    check_linearity,
    check_phi,
    check_prop_diff,
    check_step1,
    check_theta_cohomology,
    differential,
    hom_space_dim,
    phi,
    phi_Y,
    prop_diff_windows,
    term_shift_from_divided_powers,
    theta_global_shift,
    top_cohomology_structure,
    word_term,
    worked_example,
)
from sl2cat.symgrp import Permutation, simple


def test_Y_set_n4_l1_m3_strata():
    ys = Y_set(1, 3, 4)
    assert ys == [(2, 1, 0), (3, 1, 0), (3, 2, 0), (3, 2, 1)]
    assert [Y_stratify(a) for a in ys] == [2, 1, 0, PLUS]


def test_Y_stratify_examples():
    assert Y_stratify((2, 1, 0)) == 2
    assert Y_stratify((5, 0)) == 0
    assert Y_stratify((1,)) == PLUS
    with pytest.raises(InvalidArgument):
        Y_stratify(())


def test_phi_Y_examples():
    assert phi_Y((3, 2, 1)) == (3, 2, 1, 0)
    assert phi_Y((3, 1, 0)) == (3, 2, 1, 0)
    assert phi_Y((2, 1, 0)) == (3, 2, 1, 0)
    assert phi_Y(()) == (0,)


def test_phi_domain_enforced():
    # a = (1, 0) has r = 1, so w(m) must be < m - 1 = 1: impossible
    with pytest.raises(InvalidArgument):
        phi((1, 0), Permutation((1, 2)), 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_phi_injective_with_stated_image(n):
    assert check_phi(n) == {"injective": True, "image": True}


def test_worked_example_scalars():
    scalars = [c for c, _, _ in worked_example()]
    assert scalars == [1, 1, 1]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_basis_small(n):
    for m in range(1, n + 1):
        for l in range(1, m + 2):
            for k in range(1, m + 2):
                term = BimoduleTerm(n, k, l, m)
                res = check_basis(term, 10)
                assert res["independent"] and res["count_matches"], (n, k, l, m)
                assert check_absorption_on_basis(term)


def test_differential_sign_example():
    # n=3, l=1, k=2, m=2, a=(2,0), w=s_1: d(b) = -b(phi(a, w)) because d_2(x_2) = -1
    n, l, k, m = 3, 1, 2, 2
    a, w = (2, 0), simple(1, 2)
    b = _basis_element(a, tuple(w), n, l, m, k)
    a2, w2 = phi(a, w, m)
    target = _basis_element(a2, tuple(w2), n, l, m + 1, k)
    assert _scalar_between(differential(b, l, k, m), target) == -1


@pytest.mark.parametrize("n", [2, 3])
def test_prop_diff_signed_form(n):
    for l, k, m in prop_diff_windows(n):
        res = check_prop_diff(n, l, k, m)
        assert res["zero_set_ok"] and res["signed"], (l, k, m, res)


def test_prop_diff_window_precondition():
    with pytest.raises(InvalidArgument):
        check_prop_diff(3, 1, 3, 2)


@pytest.mark.parametrize("n", [2, 3])
def test_kerim_dd_linearity(n):
    for m in range(1, n):
        for l in range(1, m + 2):
            for k in range(1, m + 1):
                assert check_kerim(n, l, k, m, 10) == {"kernel": True, "image": True}
                assert check_dd(n, l, k, m)
                assert check_linearity(n, l, k, m)
        for l in range(1, m + 1):
            assert check_step1(n, l, m, 10)


def test_theta_shift_closed_form():
    # the per-term shift is the global prefactor for every term
    for n in range(0, 5):
        for k in range(n + 1):
            cx = build_theta_complex(n, k)
            for r in cx.terms:
                assert term_shift_from_divided_powers(n, k, r) == theta_global_shift(n, k)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_theta_cohomology_concentrated(n):
    for k in range(n + 1):
        res = check_theta_cohomology(n, k, 12)
        assert res["concentrated"] and res["top_matches"], (n, k)


def test_b_prime_degree():
    assert b_prime_degree(2, 1) == -2
    assert b_prime_degree(1, 1) == 0


@pytest.mark.parametrize("n,k", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)])
def test_top_structure(n, k):
    res = top_cohomology_structure(n, k, 10)
    for key in ("b_in_top_term", "b_absorbs", "generates", "free_rank_one", "grdim_matches",
                "right_action_twisted"):
        assert res[key], key


@pytest.mark.parametrize("kind", ["E", "F"])
def test_divided_power_images(kind):
    for n in range(1, 4):
        for k in range(n + 1):
            for a in range(0, k + 1):
                assert check_divided_power_grdim(kind, a, n, k, 10)


def test_hom_oracle_FE_weight_zero():
    A = word_term(1, 1, 0, 2)
    series = adj_hom_grdim(1, 1, 1, 1, 0, 2, 6)
    assert [hom_space_dim(A, A, d) for d in (0, 2, 4, 6)] == [series[d] for d in (0, 2, 4, 6)] == [1, 3, 5, 7]


def test_hom_degree_zero_of_indecomposable():
    # F E 1_0 at n = 2 has one-dimensional degree-zero endomorphisms
    assert hom_space_dim(word_term(1, 1, 0, 2), word_term(1, 1, 0, 2), 0) == 1


def test_hom_shift_compatibility():
    A = word_term(0, 1, 1, 1)
    B = A.shifted(2)
    assert hom_space_dim(A, B, 2) == hom_space_dim(A, A, 0)


@pytest.mark.parametrize("args", [(0, 0, 0, 0, -1, 1), (1, 0, 1, 0, -1, 1), (0, 1, 0, 1, 1, 1),
                                  (0, 0, 1, 1, 0, 2), (1, 1, 0, 0, 0, 2)])
def test_hom_oracle_small(args):
    a, b, c, d, lam, n = args
    assert check_hom_oracle(a, b, c, d, lam, n, -8, 6)["ok"]


def test_resource_limits():
    with pytest.raises(ResourceLimit):
        BimoduleTerm(6, 1, 1, 1)
    A = BimoduleTerm(4, 1, 1, 1)
    with pytest.raises(ResourceLimit):
        hom_space_dim(A, A, 0)
