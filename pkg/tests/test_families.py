import random
from itertools import permutations

import pytest

from etalegen.algebra import GenMatrix, closure_echelon, make_monogenic, make_split_algebra, split_generation_criterion
from etalegen.errors import BudgetExceededError, CertificateError
from etalegen.families import (
    Claim,
    PresentedRing,
    chase_rings,
    coordinate_change_n2,
    coordinate_change_n2_inverse,
    dq_generation_certificate,
    dq_ring,
    enumerate_points,
    fiber_generates,
    fiberwise_generation_scan,
    nonsquare,
    split_quadric_substitution,
    subalgebra_certificate_check,
)
from etalegen.fields import GF, QQ
from etalegen.polys import UniPoly, poly_ring

F3, F5 = GF(3), GF(5)


def test_chase_ring_r2():
    S, even = chase_rings(2, F5)
    z1, z2 = S.variables()
    assert S.relations == [z1 * z1 + z2 * z2 - 1]
    assert S.signs == (-1, -1)
    assert all(S.is_invariant(f) for f in S.relations)
    assert even == [z1 * z1, z1 * z2, z2 * z2]


def test_chase_ring_r1():
    S, even = chase_rings(1, F5)
    (z,) = S.variables()
    assert S.relations == [z * z - 1]
    # z^2 = 1 in S, so the even part is just the constants
    assert even == [z * z]


def test_dq_ring_r1():
    T = dq_ring(1, F5)
    x, y = T.variables()
    assert T.relations == [1 - x * y]
    assert T.is_invariant(x * x) and T.is_invariant(x * y)
    assert not T.is_invariant(x)


def test_presented_ring_validation():
    x, y = poly_ring(F5, "x y")
    with pytest.raises(ValueError):
        PresentedRing(F5, "x y", [x + y * y], signs=[-1, -1])
    with pytest.raises(ValueError):
        PresentedRing(F5, "x y", [x * y], signs=[2, 1])
    with pytest.raises(ValueError):
        PresentedRing(F5, "x y", [x * 0])
    assert PresentedRing(F5, "x y", [x * x - y * y], signs=[-1, 1]).nvars == 2


def test_split_substitution_f5():
    sub = split_quadric_substitution(2, F5)
    assert F5.mul(sub.i, sub.i) == F5.neg(1)
    z1, z2 = sub.sphere.variables()
    x, y = sub.xy_in_z
    assert x * y == z1 * z1 + z2 * z2
    assert sub.relation_maps_exactly()
    assert sub.roundtrip_ok()


@pytest.mark.parametrize("r", [2, 4, 6])
def test_split_substitution_exact(r):
    for F in (F5, GF(13)):
        sub = split_quadric_substitution(r, F)
        assert sub.relation_maps_exactly()
        assert sub.roundtrip_ok()


def test_split_substitution_errors():
    with pytest.raises(ValueError):
        split_quadric_substitution(2, F3)
    with pytest.raises(ValueError):
        split_quadric_substitution(3, F5)
    with pytest.raises(ValueError):
        split_quadric_substitution(2, QQ)


def test_coordinate_change_examples():
    z, w = coordinate_change_n2(GenMatrix(F5, [[1, 3]]))
    assert z == (3,) and w == (4,)
    z, _ = coordinate_change_n2(GenMatrix(F5, [[2, 2], [4, 4]]))
    assert z == (0, 0)
    with pytest.raises(ValueError):
        coordinate_change_n2(GenMatrix(GF(2), [[0, 1]]))


def test_coordinate_change_roundtrip_and_action():
    rng = random.Random(2)
    for _ in range(200):
        p = rng.choice([3, 5, 7])
        F = GF(p)
        r = rng.randint(1, 4)
        rows = [[rng.randrange(p), rng.randrange(p)] for _ in range(r)]
        M = GenMatrix(F, rows)
        z, w = coordinate_change_n2(M)
        assert coordinate_change_n2_inverse(F, z, w).rows == M.rows
        assert split_generation_criterion(M) == any(a != 0 for a in z)
        sz, sw = coordinate_change_n2(GenMatrix(F, [[b, a] for a, b in rows]))
        assert sz == tuple(F.neg(a) for a in z) and sw == w


@pytest.mark.parametrize("m", [1, 2, 3])
def test_dq_certificate_passes(m):
    T, xs, claims, scalars = dq_generation_certificate(m, F5)
    res = subalgebra_certificate_check(T, xs, claims, scalars)
    assert res
    assert all(ok for _, ok in res.claims)


def test_certificate_false_claim_fails():
    T = dq_ring(1, F5)
    x, y = T.variables()
    res = subalgebra_certificate_check(T, [x], [Claim(y, [(1, (x,))])])
    assert not res


def test_certificate_trivial_claim():
    T = dq_ring(1, F5)
    x, _ = T.variables()
    assert subalgebra_certificate_check(T, [x], [Claim(x, [(1, (x,))])])


def test_certificate_admissibility():
    T = dq_ring(1, F5)
    x, y = T.variables()
    with pytest.raises(CertificateError):
        subalgebra_certificate_check(T, [x], [Claim(y, [(1, (y,))])])
    with pytest.raises(CertificateError):
        subalgebra_certificate_check(T, [x], [], scalars=[y])


def test_certificate_needs_one_relation():
    x, y = poly_ring(F5, "x y")
    R = PresentedRing(F5, "x y", [x * y - 1, x - y])
    with pytest.raises(ValueError):
        subalgebra_certificate_check(R, [x], [])


def test_certified_targets_become_blocks():
    T, xs, claims, scalars = dq_generation_certificate(1, F5)
    x, y = T.variables()
    extra = Claim(y * y, [(1, (y, y))])
    assert subalgebra_certificate_check(T, xs, claims + [extra], scalars)


def test_enumerate_circle_f5():
    S, _ = chase_rings(2, F5)
    pts = enumerate_points(S)
    assert sorted(p.coords for p in pts) == [(0, 1), (0, 4), (1, 0), (4, 0)]
    assert all(p.free for p in pts)
    assert len({p.orbit for p in pts}) == 2


def test_enumerate_dq_f3():
    pts = enumerate_points(dq_ring(1, F3))
    assert sorted(p.coords for p in pts) == [(1, 1), (2, 2)]
    assert len({p.orbit for p in pts}) == 1


def test_enumerate_empty_relations():
    R = PresentedRing(F3, "a b", [], signs=[-1, -1])
    pts = enumerate_points(R)
    assert len(pts) == 9
    # only the origin is fixed by negation
    assert sum(not p.free for p in pts) == 1


def test_enumerate_extension_degree():
    S, _ = chase_rings(2, F3)
    pts = enumerate_points(S, d=2)
    K = pts[0].field
    assert K.order == 9
    # the circle over F_9 has 9 - 1 points (x^2 + y^2 splits since -1 is a square)
    assert len(pts) == 8


def test_enumerate_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_points(dq_ring(3, F5), budget=10)


def test_point_counts_stable_under_permutation():
    for F in (F3, F5):
        names = ["a", "b", "c"]
        a, b, c = poly_ring(F, names)
        base = len(enumerate_points(PresentedRing(F, names, [a * a + 2 * b * b + c * c * c - 1])))
        for perm in permutations(range(3)):
            vs = [(a, b, c)[i] for i in perm]
            rel = vs[0] * vs[0] + 2 * vs[1] * vs[1] + vs[2] * vs[2] * vs[2] - 1
            assert len(enumerate_points(PresentedRing(F, names, [rel]))) == base


def test_scan_chase_counterexample():
    S, _ = chase_rings(2, F5)
    z1 = S.var("z1")
    rep = fiberwise_generation_scan(S, [z1], 1)
    assert not rep.passed
    bad = {c.point for c in rep.failures if c.kind == "split"}
    assert bad == {(0, 1)}
    assert rep.verdict.startswith("counterexample")


def test_scan_dq_passes():
    T, xs, _, _ = dq_generation_certificate(1, F5)
    rep = fiberwise_generation_scan(T, xs, 2)
    assert rep.passed
    assert rep.verdict == "verified up to degree 2"
    assert rep.counts[(1, "split")] > 0 and rep.counts[(2, "conjugate")] > 0
    assert rep.orbits_checked == sum(rep.counts.values())


def test_scan_empty_generators_fail():
    T = dq_ring(1, F5)
    rep = fiberwise_generation_scan(T, [], 1)
    assert rep.orbits_checked > 0
    assert len(rep.failures) == rep.orbits_checked


def test_scan_skips_fixed_points():
    R = PresentedRing(F3, "a b", [], signs=[-1, -1])
    rep = fiberwise_generation_scan(R, [R.var("a"), R.var("b")], 1)
    assert rep.skipped and rep.warnings
    assert rep.passed


@pytest.mark.parametrize("F", [F3, F5])
@pytest.mark.parametrize("m", [1, 2])
def test_certificate_sound_against_scan(F, m):
    T, xs, claims, scalars = dq_generation_certificate(m, F)
    assert subalgebra_certificate_check(T, xs, claims, scalars)
    assert fiberwise_generation_scan(T, xs, 2).passed


@pytest.mark.parametrize("K", [F3, F5, GF(3, 2), GF(5, 2)])
def test_fiber_shortcut_matches_closure(K):
    rng = random.Random(K.order)
    c = nonsquare(K)
    algebras = {
        "split": make_split_algebra(K, 2),
        "conjugate": make_monogenic(UniPoly(K, [K.neg(c), K.zero, K.one])),
    }
    elems = list(K.elements())
    for kind, A in algebras.items():
        for _ in range(300):
            values = [(rng.choice(elems), rng.choice(elems)) for _ in range(rng.randint(0, 3))]
            assert fiber_generates(K, kind, values) == (len(closure_echelon(A, values)) == 2)
