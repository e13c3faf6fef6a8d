import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sl2cat.errors import InvalidArgument
from sl2cat.linalg import RATIONAL, SparseEchelon, SpanBasis, parse_field, rank, rank_mod_p, rref_mod_p
from sl2cat.linalg import dense
from sl2cat.linalg.kernels import HAVE_NUMBA

P = 10007

matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_parse_field():
    assert parse_field("rational") is RATIONAL
    assert parse_field("prime:101").p == 101
    with pytest.raises(InvalidArgument):
        parse_field("prime:100")
    with pytest.raises(InvalidArgument):
        parse_field("reals")


@given(matrices)
def test_rank_rational_matches_sparse(rows):
    m = dense.asmatrix(rows, RATIONAL)
    vecs = [{j: v for j, v in enumerate(r) if v} for r in rows]
    assert dense.rank(m, RATIONAL) == rank(vecs, RATIONAL)


@given(matrices)
def test_mod_p_rank_bounded_by_rational(rows):
    r_q = dense.rank(dense.asmatrix(rows, RATIONAL), RATIONAL)
    arr = np.array(rows, dtype=np.int64) % P
    assert rank_mod_p(arr, P) <= r_q
    assert rank_mod_p(arr, P, use_numba=False) == rank_mod_p(arr, P, use_numba=HAVE_NUMBA)


@given(matrices)
def test_rref_backends_agree(rows):
    arr = np.array(rows, dtype=np.int64) % P
    a, pa = rref_mod_p(arr, P, use_numba=False)
    b, pb = rref_mod_p(arr, P, use_numba=HAVE_NUMBA)
    assert np.array_equal(a, b) and list(pa) == list(pb)


@given(matrices)
def test_nullspace(rows):
    m = dense.asmatrix(rows, RATIONAL)
    ns = dense.nullspace(m, RATIONAL)
    assert ns.shape[1] == m.shape[1] - dense.rank(m, RATIONAL)
    if ns.size:
        assert dense.is_zero(dense.matmul(m, ns, RATIONAL))


def test_inverse_rational():
    m = dense.asmatrix([[2, 1], [1, 1]], RATIONAL)
    inv = dense.inverse(m, RATIONAL)
    assert inv[0, 0] == Fraction(1) and inv[0, 1] == Fraction(-1)
    with pytest.raises(ValueError):
        dense.inverse(dense.asmatrix([[1, 2], [2, 4]], RATIONAL), RATIONAL)


def test_span_basis_coordinates():
    basis = SpanBasis([{0: 1, 1: 1}, {1: 1}], RATIONAL)
    assert list(basis.coordinates({0: 2, 1: 5})) == [2, 3]
    ech = SparseEchelon(RATIONAL)
    ech.add({0: 1, 1: 1})
    assert ech.contains({0: 3, 1: 3}) and not ech.contains({1: 1})


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, SL2CAT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from sl2cat.linalg import backend; print(backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
