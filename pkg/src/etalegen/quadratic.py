"""Quadratic algebras and their trace-zero lines (characteristic != 2).

For a 2-dimensional algebra ``A`` the trace gives an involution
``sigma = Tr - id`` and a splitting ``A = F*1 + L`` with ``L = ker(Tr)``.
``L`` is represented by a basis vector ``l`` and the scalar ``c`` with
``l*l = c*1``; conversely ``algebra_from_line(c)`` builds ``F + F*l`` with
``l*l = c``. Elements ``a_1..a_r`` generate ``A`` exactly when the
projections ``a_i - Tr(a_i)/2`` span ``L``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FiniteAlgebra, generates, is_etale
from .errors import NotEtaleError
from .fields import Field, FieldElem
from .linalg import nullspace


@dataclass(frozen=True)
class QuadraticAlgebra:
    algebra: FiniteAlgebra
    etale: bool

    @property
    def field(self) -> Field:
        return self.algebra.field


@dataclass(frozen=True)
class LineWithForm:
    """Basis vector ``ell`` of ``ker(Tr)`` and ``phi = ell*ell`` as a scalar."""

    ell: tuple
    phi: object  # raw field value

    def phi_elem(self, field) -> FieldElem:
        return FieldElem(field, self.phi)


@dataclass(frozen=True)
class TraceData:
    trace: tuple   # Tr(x) = sum_i trace[i] * x_i
    sigma: tuple   # sigma[k][j]: coefficient of e_k in sigma(e_j)

    def tr(self, F, x):
        acc = F.zero
        for t, a in zip(self.trace, x):
            acc = F.add(acc, F.mul(t, a))
        return acc

    def apply_sigma(self, F, x):
        return tuple(
            _dot(F, row, x) for row in self.sigma
        )


def _dot(F, u, v):
    acc = F.zero
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


def as_quadratic(A: FiniteAlgebra) -> QuadraticAlgebra:
    if A.dim != 2:
        raise ValueError(f"quadratic algebras have dimension 2, got {A.dim}")
    _require_odd(A.field)
    return QuadraticAlgebra(A, is_etale(A))


def _require_odd(F: Field):
    if F.characteristic == 2:
        raise ValueError("characteristic 2 is excluded: 2 must be invertible")


def _unwrap(A):
    return A.algebra if isinstance(A, QuadraticAlgebra) else as_quadratic(A).algebra


def trace_and_involution(A) -> TraceData:
    """Trace functional and ``sigma = Tr - id``; checks ``sigma`` is an involutive automorphism."""
    alg = _unwrap(A)
    F = alg.field
    trace = tuple(alg.trace(alg.basis_vector(i)) for i in range(2))
    cols = []
    for j in range(2):
        e = alg.basis_vector(j)
        cols.append(alg.sub(alg.scalar(trace[j]), e))
    sigma = tuple(tuple(cols[j][k] for j in range(2)) for k in range(2))
    data = TraceData(trace, sigma)
    for j in range(2):
        e = alg.basis_vector(j)
        if data.apply_sigma(F, data.apply_sigma(F, e)) != e:
            raise AssertionError("sigma is not an involution")
        for i in range(2):
            lhs = data.apply_sigma(F, alg.c[i][j])
            rhs = alg.mul(data.apply_sigma(F, alg.basis_vector(i)), data.apply_sigma(F, e))
            if lhs != rhs:
                raise AssertionError("sigma is not multiplicative")
    if data.apply_sigma(F, alg.unit) != alg.unit:
        raise AssertionError("sigma does not fix 1")
    return data


def _unit_coordinate(alg, v):
    """The scalar ``c`` with ``v == c * 1``, or ``None``."""
    F = alg.field
    k = next(i for i, u in enumerate(alg.unit) if not F.is_zero(u))
    c = F.div(v[k], alg.unit[k])
    return c if alg.scalar(c) == tuple(v) else None


def trace_kernel(A) -> LineWithForm:
    """Normalised spanning vector of ``ker(Tr)`` (first nonzero coordinate 1)."""
    alg = _unwrap(A)
    F = alg.field
    data = trace_and_involution(alg)
    (ell,) = nullspace(F, [list(data.trace)], 2)
    lead = next(x for x in ell if not F.is_zero(x))
    ell = tuple(F.div(x, lead) for x in ell)
    phi = _unit_coordinate(alg, alg.mul(ell, ell))
    if phi is None:
        raise AssertionError("square of a trace-zero element is not a scalar")
    return LineWithForm(ell, phi)


def algebra_from_line(c, field: Field) -> QuadraticAlgebra:
    """``F + F*l`` with ``l*l = c``; étale exactly when ``c != 0``."""
    _require_odd(field)
    F = field
    c = F.convert(c)
    z, o = F.zero, F.one
    consts = [[[o, z], [z, o]], [[z, o], [c, z]]]
    alg = FiniteAlgebra(F, consts, [o, z], raw=True, check=False, kind="line")
    return QuadraticAlgebra(alg, not F.is_zero(c))


def q_projection(A, a) -> tuple:
    """``a - Tr(a)/2``."""
    alg = _unwrap(A)
    F = alg.field
    a = alg.coerce(a)
    half = F.inv(F.from_int(2))
    return alg.sub(a, alg.scalar(F.mul(half, alg.trace(a))))


def generation_equivalence_check(A, gens):
    """``(generates the algebra, projections span the line)``.

    For étale ``A`` the two booleans agree; callers compare them.
    """
    qa = A if isinstance(A, QuadraticAlgebra) else as_quadratic(A)
    if not qa.etale:
        raise NotEtaleError("the equivalence is only claimed for étale algebras")
    alg = qa.algebra
    gens = [alg.coerce(g) for g in gens]
    algebra_side = generates(alg, gens)
    line_side = any(not alg.is_zero(q_projection(alg, g)) for g in gens)
    return algebra_side, line_side
