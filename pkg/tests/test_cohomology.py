import random

import pytest
from hypothesis import given, settings, strategies as st

from etalegen.cohomology import (
    MODES,
    MotivicDQRing,
    b_real_cohomology,
    b_stabilization_table,
    chase_certificate,
    chow_dq_ring,
    chow_stabilization,
    motivic_dq_ring,
    motivic_stabilization,
    ojanguren_certificate,
    rp_cohomology,
    rp_stabilization,
)


def test_rp_cohomology_examples():
    R = rp_cohomology(2)
    th = R.theta_power(1)
    assert R.mul(th, th) == R.theta_power(2)
    assert R.mul(R.theta_power(2), th) == 0
    assert rp_cohomology(0).theta_power(1) == 0
    one_plus = R.add(R.one(), th)
    assert R.mul(one_plus, one_plus) == R.add(R.one(), R.theta_power(2))
    assert R.format(one_plus) == "1 + θ"


def test_b_real_cohomology_examples():
    B = b_real_cohomology(2)
    assert B.component.m == 1
    assert B.dim(1) == 2 and B.dim(2) == 0 and B.dim(0) == 2
    for r in range(1, 10):
        B = b_real_cohomology(r)
        assert B.dim(r - 1) == 2 and B.dim(r) == 0


def test_rp_stabilization_examples():
    assert rp_stabilization(4) == [
        (0, 1, 1, 1),
        (1, 1, 1, 1),
        (2, 1, 1, 1),
        (3, 1, 1, 1),
        (4, 1, 1, 1),
        (5, 1, 0, 0),
    ]
    rows = rp_stabilization(2)
    assert rows[2][3] == 1 and rows[3][3] == 0


@pytest.mark.parametrize("r", range(1, 17))
def test_b_stabilization_table_flags_j_equal_r(r):
    rows = b_stabilization_table(r)
    assert [row.degree for row in rows] == list(range(r + 2))
    for row in rows:
        expected = "iso" if row.degree < r else "zero"
        assert row.computed == expected
    assert [row.degree for row in rows if row.discrepancy] == [r]


def test_motivic_relation():
    R = motivic_dq_ring(3, "real")
    a = R.a()
    assert R.mul(a, a) == R.add(R.mul(R.rho(), a), R.mul(R.tau(), R.b()))
    C = motivic_dq_ring(3, "alg-closed")
    assert C.mul(C.a(), C.a()) == C.mul(C.tau(), C.b())
    assert C.rho() == C.zero()


def test_motivic_truncation():
    for mode in MODES:
        R = motivic_dq_ring(4, mode)
        assert R.pow(R.b(), 3) != R.zero()
        assert R.mul(R.pow(R.b(), 3), R.b()) == R.zero()


def test_motivic_bidegrees():
    R = motivic_dq_ring(3)
    assert R.bidegree((0, 0, 1, 0)) == (1, 1)
    assert R.bidegree((0, 0, 0, 1)) == (2, 1)
    assert R.bidegree((1, 0, 0, 0)) == (0, 1)
    assert R.bidegree((0, 1, 0, 0)) == (1, 1)
    assert R.is_homogeneous(R.mul(R.a(), R.a()))


def test_motivic_format():
    R = motivic_dq_ring(2)
    assert R.format(R.mul(R.a(), R.a())) == "ρ*a + τ*b"
    assert R.format(R.zero()) == "0"


@st.composite
def ring_and_triple(draw):
    mode = draw(st.sampled_from(MODES))
    r = draw(st.sampled_from([2, 3, 5]))
    R = MotivicDQRing(r, mode)
    rng = random.Random(draw(st.integers(0, 2**32)))
    return R, [R.random_element(rng) for _ in range(3)]


@settings(max_examples=500, deadline=None)
@given(ring_and_triple())
def test_motivic_ring_axioms(data):
    R, (x, y, z) = data
    assert R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z))
    assert R.mul(x, y) == R.mul(y, x)
    assert R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z))
    assert R.mul(R.one(), x) == x


@pytest.mark.parametrize("r", range(1, 9))
def test_alg_closed_specialization(r):
    R = motivic_dq_ring(r, "alg-closed")
    a = R.a()
    top = R.specialize_tau(R.pow(a, 2 * r - 1))
    assert top == 1 << (2 * r - 1)
    assert R.pow(a, 2 * r) == R.zero()
    for k in range(2 * r):
        assert R.topological_dim(k) == 1
        assert R.specialize_tau(R.pow(a, k)) == 1 << k
    assert R.topological_dim(2 * r) == 0


def test_specialize_needs_alg_closed():
    with pytest.raises(ValueError):
        motivic_dq_ring(2, "real").specialize_tau(frozenset())


def test_motivic_stabilization_examples():
    r = 3
    st_map = motivic_stabilization(r)
    S = st_map.source
    assert st_map(S.pow(S.b(), r)) == st_map.target.zero()
    assert st_map(S.pow(S.b(), r - 1)) == st_map.target.pow(st_map.target.b(), r - 1)
    ab = S.mul(S.a(), S.pow(S.b(), r - 1))
    assert st_map(ab) == ab
    with pytest.raises(ValueError):
        motivic_stabilization(r, source=MotivicDQRing(r + 1, "real"), target=MotivicDQRing(r, "alg-closed"))


@pytest.mark.parametrize("mode", MODES)
def test_motivic_stabilization_ring_map(mode):
    rng = random.Random(17)
    for r in (2, 3, 5):
        st_map = motivic_stabilization(r, mode)
        pairs = [(st_map.source.random_element(rng), st_map.source.random_element(rng)) for _ in range(200)]
        assert st_map.ring_map_ok(pairs)


def test_chow_examples():
    C = chow_dq_ring(3)
    b = C.b()
    assert not C.is_zero(C.b_power(2))
    assert C.is_zero(C.b_power(3))
    assert C.is_zero(C.scale(2, b))
    assert C.scale(3, C.one()) == (3, 0)
    assert C.mul((3, 0), b) == b


def test_chow_stabilization():
    big, small = chow_dq_ring(5), chow_dq_ring(3)
    assert chow_stabilization(big, small, big.b_power(2)) == small.b_power(2)
    assert small.is_zero(chow_stabilization(big, small, big.b_power(3)))
    with pytest.raises(ValueError):
        chow_stabilization(small, big, small.one())


@pytest.mark.parametrize("r", range(1, 9))
def test_chow_mod2_comparison(r):
    C = chow_dq_ring(r)
    for mode in MODES:
        M = motivic_dq_ring(r, mode)
        images = [C.to_motivic(C.b_power(k), M) for k in range(r)]
        assert images == [M.pow(M.b(), k) for k in range(r)]
        # distinct nonzero monomials, so the span maps isomorphically
        assert len(set(images)) == r and M.zero() not in images
        for i in range(r):
            for j in range(r):
                lhs = C.to_motivic(C.mul(C.b_power(i), C.b_power(j)), M)
                assert lhs == M.mul(images[i], images[j])


def test_chase_certificate_examples():
    c = chase_certificate(2)
    assert c.holds and c.witness_degrees == (1, 1)
    assert "θ^1" in c.nonzero_witness and "θ^1" in c.vanishing_witness
    assert c.verdict == "1 generators impossible for the sphere algebra"
    assert chase_certificate(10).witness_degrees == (9, 9)


def test_ojanguren_certificate_examples():
    c = ojanguren_certificate(2)
    assert c.holds and c.witness_degrees == (1, 1)
    assert c.details["composite_image_matches"]
    assert c.verdict == "the quadratic DQ algebra needs 2 generators"


def test_certificates_reject_small_r():
    for fn in (chase_certificate, ojanguren_certificate):
        with pytest.raises(ValueError):
            fn(1)


def test_certificates_all_r():
    for r in range(2, 65):
        c = chase_certificate(r)
        o = ojanguren_certificate(r)
        assert c.holds and o.holds
        assert c.witness_degrees == (r - 1, r - 1)
        assert o.witness_degrees == (r - 1, r - 1)
