import pytest

from sl2cat.errors import InvalidArgument
from sl2cat.gradedcx import cohomology_dims
from sl2cat.rickard import (
    ThetaTermDescriptor,
    build_theta,
    check_descriptors,
    check_surjinj,
    check_theta_invertible_evidence,
    check_thetae,
    realize_F_theta,
    realize_pair,
    realize_theta_E,
    twisted_ring_check,
)


def weights(n):
    return [-n + 2 * k for k in range(n + 1)]


def test_descriptor_words():
    d = ThetaTermDescriptor(1, 2)
    assert d.word() == "q^-2 F^(3) E^(2)"
    assert ThetaTermDescriptor(-3, 1).is_zero
    assert [t.r for t in build_theta(0, 3)] == [0, 1, 2, 3]


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_descriptors_match_explicit_complex(n):
    for k in range(n + 1):
        assert check_descriptors(n, k)


def test_top_weight_gives_zero_complexes():
    assert not realize_theta_E(2, 2, 8).dims
    assert not realize_F_theta(2, 2, 8).dims


def test_not_a_weight():
    with pytest.raises(InvalidArgument):
        realize_theta_E(2, 1, 8)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_thetae_certificates(n):
    for lam in weights(n):
        cert = check_thetae(n, lam, 10)
        assert cert["status"] == "pass", cert


def test_same_cohomology_tables():
    pair = realize_pair(3, -1, 10)
    assert cohomology_dims(pair.theta_e) == cohomology_dims(pair.f_theta)


def test_alternating_sign_is_needed():
    # without the (-1)^r on the components, G fails to commute with d at n=3, lam=-1
    unsigned = realize_pair(3, -1, 10, sign=lambda r: 1)
    assert not unsigned.G.is_chain_map()
    assert realize_pair(3, -1, 10).G.is_chain_map()


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_surjinj_corrected_ranges(n):
    for lam in weights(n):
        assert check_surjinj(n, lam, 10)["corrected"], (n, lam)


def test_surjinj_weight_zero_only_one_side():
    # at lam = 0 only T G = id holds; G T is not the identity on F Theta [-1]
    res = check_surjinj(2, 0, 10)
    assert res["TG_identity"] and not res["GT_identity"]
    assert not res["stated"]
    res = check_surjinj(3, -1, 10)
    assert res["TG_identity"] and res["GT_identity"]


@pytest.mark.parametrize("n,k", [(2, 0), (3, 0), (3, 1), (4, 1), (4, 2)])
def test_twisted_ring(n, k):
    assert twisted_ring_check(n, k, 8)


@pytest.mark.parametrize("n,k", [(1, 0), (2, 1), (3, 1), (3, 2)])
def test_invertible_evidence(n, k):
    cert = check_theta_invertible_evidence(n, k, 10)
    assert cert["status"] == "pass"
    assert set(cert) >= {"theorem", "n", "lambda_or_k", "cutoff", "status", "cohomology_table", "notes"}
