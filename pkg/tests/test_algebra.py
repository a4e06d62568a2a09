import math
import random
from itertools import permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from etalegen.algebra import (
    FiniteAlgebra,
    GenMatrix,
    automorphisms,
    characteristic_polynomial,
    generates,
    is_etale,
    make_monogenic,
    make_split_algebra,
    min_generators,
    minimal_polynomial,
    primitive_idempotents,
    separating_polynomials,
    split_generation_criterion,
    subalgebra_closure,
    trace_form,
    violated_pairs,
)
from etalegen.errors import DoesNotSplitError, NotEtaleError
from etalegen.fields import GF, QQ, FunctionField
from etalegen.polys import UniPoly, all_monic, discriminant, poly_eval


def mono(F, high):
    return make_monogenic(UniPoly.from_high(F, high))


def test_split_constants():
    A = make_split_algebra(GF(2), 2)
    assert A.c[0][0] == (1, 0)
    assert A.c[1][1] == (0, 1)
    assert A.c[0][1] == (0, 0)
    assert make_split_algebra(QQ, 1).dim == 1
    B = make_split_algebra(GF(5), 3)
    assert B.mul((1, 2, 3), (1, 1, 1)) == (1, 2, 3)


def test_monogenic_examples():
    A = mono(GF(5), [1, 0, 1])
    z = (0, 1)
    assert A.mul(z, z) == (4, 0)
    B = mono(GF(3), [1, -1, 0])
    assert B.mul(z, z) == z
    C = mono(GF(2), [1, 0, 0, -1])
    z2 = (0, 0, 1)
    assert C.mul(z2, z2) == (0, 1, 0)


def test_monogenic_needs_monic():
    with pytest.raises(ValueError):
        make_monogenic(UniPoly.from_high(GF(5), [2, 0, 1]))


def test_table_algebra_checks_axioms():
    F = GF(3)
    consts = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    A = FiniteAlgebra(F, consts)
    assert A.unit == (1, 0)
    # e0*e1 != e1*e0
    bad = [[[1, 0], [0, 0]], [[0, 1], [0, 0]]]
    with pytest.raises((ValueError, AssertionError)):
        FiniteAlgebra(F, bad)


def test_trace_form_examples():
    assert trace_form(make_split_algebra(GF(5), 2)) == [[1, 0], [0, 1]]
    assert trace_form(mono(GF(3), [1, 0, 0])) == [[2, 0], [0, 0]]
    for c in range(5):
        assert trace_form(mono(GF(5), [1, 0, -c])) == [[2, 0], [0, (2 * c) % 5]]


def test_is_etale_examples():
    assert is_etale(mono(GF(5), [1, 0, -1]))
    assert not is_etale(mono(GF(3), [1, 0, 0]))
    assert is_etale(make_split_algebra(GF(2), 3))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_is_etale_matches_discriminant(p):
    F = GF(p)
    for deg in (2, 3):
        for f in all_monic(F, deg):
            assert is_etale(make_monogenic(f)) == (not discriminant(f).is_zero())


def test_closure_examples():
    assert subalgebra_closure(make_split_algebra(GF(5), 3), [(0, 1, 2)])[0] == 3
    assert subalgebra_closure(make_split_algebra(GF(2), 3), [(0, 0, 1)])[0] == 2
    assert subalgebra_closure(make_split_algebra(GF(2), 3), [])[0] == 1


def test_generates_examples():
    F2 = GF(2)
    assert generates(make_split_algebra(GF(5), 3), [[0, 1, 2]])
    assert not generates(make_split_algebra(F2, 3), [[0, 0, 1]])
    assert generates(make_split_algebra(F2, 3), [[0, 0, 1], [0, 1, 0]])


def test_criterion_examples():
    F2 = GF(2)
    assert not split_generation_criterion(GenMatrix(F2, [[0, 0, 1]]))
    assert violated_pairs(GenMatrix(F2, [[0, 0, 1]])) == [(0, 1)]
    assert split_generation_criterion(GenMatrix(F2, [[0, 0, 1], [0, 1, 0]]))
    assert not split_generation_criterion(GenMatrix(GF(5), [[1, 2, 1], [3, 0, 3]]))


@pytest.mark.parametrize("p,n,r", [(p, n, r) for p in (2, 3) for n in (1, 2, 3) for r in (0, 1, 2)])
def test_criterion_matches_closure_exhaustive(p, n, r):
    F = GF(p)
    A = make_split_algebra(F, n)
    vecs = list(product(range(p), repeat=n))
    for rows in product(vecs, repeat=r):
        M = GenMatrix(F, rows, raw=True)
        assert split_generation_criterion(M, n) == generates(A, list(rows))


def test_separating_polynomials_examples():
    F = GF(5)
    p1, p2 = separating_polynomials(GenMatrix(F, [[1, 3]]))
    assert repr(p1) == "2*x1 + 4"
    assert p1(1) == 1 and p1(3) == 0
    (q,) = separating_polynomials(GenMatrix(F, [[4]]))
    assert q == 1
    M = GenMatrix(GF(2), [[0, 0, 1], [0, 1, 0]])
    polys = separating_polynomials(M)
    for i, p in enumerate(polys):
        for j, col in enumerate(M.columns()):
            assert p(*col) == (1 if i == j else 0)


def test_separating_polynomials_rejects_collisions():
    with pytest.raises(ValueError):
        separating_polynomials(GenMatrix(GF(2), [[0, 0, 1]]))


@pytest.mark.parametrize("p", [5, 7])
def test_separating_polynomials_random(p):
    F = GF(p)
    rng = random.Random(p)
    done = 0
    while done < 100:
        n, r = rng.randint(1, 4), rng.randint(1, 3)
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(r)]
        M = GenMatrix(F, rows)
        if not split_generation_criterion(M):
            continue
        polys = separating_polynomials(M)
        for i, poly in enumerate(polys):
            for j, col in enumerate(M.columns()):
                assert poly_eval(poly, col) == (1 if i == j else 0)
        assert generates(make_split_algebra(F, n), rows)
        done += 1


def test_min_generators_examples():
    assert min_generators(make_split_algebra(GF(2), 3), 3).value == 2
    assert min_generators(make_split_algebra(GF(5), 2), 2).value == 1


@pytest.mark.parametrize("q", [2, 3])
def test_min_generators_small_split(q):
    for n in range(2, 6):
        res = min_generators(make_split_algebra(GF(q), n), n)
        assert res.exact
        assert res.value == math.ceil(math.log(n, q) - 1e-12)
        assert generates(make_split_algebra(GF(q), n), list(res.witness))


def test_min_generators_nonsplit():
    # a field extension is generated by one element
    res = min_generators(mono(GF(3), [1, 0, 1]), 2)
    assert res.value == 1
    # F2[z]/(z^2) is not étale, but z still generates
    assert min_generators(mono(GF(2), [1, 0, 0]), 2).value == 1


def test_min_generators_budget_fallback():
    res = min_generators(make_split_algebra(GF(3), 8), 8, budget=5, seed=1)
    assert not res.exact
    assert res.value is None or res.value >= 2


def test_primitive_idempotents_split():
    assert primitive_idempotents(make_split_algebra(GF(5), 3)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_primitive_idempotents_monogenic_matches_brute_force():
    A = mono(GF(5), [1, 0, 1])
    brute = [e for e in product(range(5), repeat=2) if A.mul(e, e) == e and e not in ((0, 0), (1, 0))]
    assert sorted(brute) == sorted(primitive_idempotents(A))
    assert A.add(*brute) == A.unit


def test_primitive_idempotents_nonsplit():
    with pytest.raises(DoesNotSplitError) as exc:
        primitive_idempotents(mono(GF(3), [1, 0, 1]))
    assert exc.value.factor_degrees == [2]


def test_primitive_idempotents_mixed():
    # (z - 1)(z^2 + 1) over F3: one linear and one quadratic factor
    f = UniPoly.from_roots(GF(3), [1]) * UniPoly.from_high(GF(3), [1, 0, 1])
    with pytest.raises(DoesNotSplitError) as exc:
        primitive_idempotents(make_monogenic(f))
    assert exc.value.factor_degrees == [1, 2]


def test_primitive_idempotents_over_q():
    A = mono(QQ, [1, 0, -1])
    idems = primitive_idempotents(A)
    assert len(idems) == 2
    for e in idems:
        assert A.mul(e, e) == e
    with pytest.raises(DoesNotSplitError):
        primitive_idempotents(mono(QQ, [1, 0, -2]))


def test_primitive_idempotents_not_etale():
    with pytest.raises(NotEtaleError):
        primitive_idempotents(mono(GF(3), [1, 0, 0]))


def test_idempotents_extension_field():
    K = GF(3, 2)
    # z^2 + 1 splits over F9
    A = make_monogenic(UniPoly(K, [K.one, K.zero, K.one]))
    idems = primitive_idempotents(A)
    assert len(idems) == 2
    assert A.add(*idems) == A.unit


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_automorphisms_are_permutations(p, n):
    A = make_split_algebra(GF(p), n)
    auts = automorphisms(A)
    assert len(auts) == math.factorial(n)
    idems = set(primitive_idempotents(A))
    for images in auts:
        assert set(images) == idems


def test_minimal_and_characteristic_polynomials():
    F = GF(5)
    A = make_split_algebra(F, 3)
    a = (1, 1, 2)
    assert minimal_polynomial(A, a) == UniPoly.from_roots(F, [1, 2])
    assert characteristic_polynomial(A, a) == UniPoly.from_roots(F, [1, 1, 2])
    B = mono(F, [1, 2, 3, 4])
    z = (0, 1, 0)
    assert characteristic_polynomial(B, z) == UniPoly.from_high(F, [1, 2, 3, 4])


def test_base_change_to_function_field():
    A = mono(GF(5), [1, 0, 2])
    T = FunctionField(GF(5))
    At = A.base_change(T)
    z = (T.zero, T.one)
    assert At.mul(z, z) == (T.from_int(-2), T.zero)


@st.composite
def closure_inputs(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 4))
    vec = st.tuples(*[st.integers(0, p - 1)] * n)
    gens = draw(st.lists(vec, max_size=3))
    extra = draw(vec)
    return GF(p), n, gens, extra


@settings(max_examples=200, deadline=None)
@given(closure_inputs())
def test_closure_monotone(data):
    F, n, gens, extra = data
    A = make_split_algebra(F, n)
    before = subalgebra_closure(A, gens)[0]
    after = subalgebra_closure(A, gens + [extra])[0]
    assert after >= before


@settings(max_examples=100, deadline=None)
@given(closure_inputs())
def test_closure_is_permutation_equivariant(data):
    F, n, gens, _ = data
    A = make_split_algebra(F, n)
    perm = list(permutations(range(n)))[-1]
    moved = [tuple(g[i] for i in perm) for g in gens]
    assert subalgebra_closure(A, gens)[0] == subalgebra_closure(A, moved)[0]
