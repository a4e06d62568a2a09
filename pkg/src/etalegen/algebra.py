"""Finite-dimensional commutative algebras given by structure constants.

An algebra of dimension ``n`` over a field ``F`` is stored as
``c[i][j][k]`` with ``e_i * e_j = sum_k c[i][j][k] e_k`` and an explicit unit
vector. Elements are tuples of raw field values (coordinates in the basis);
public functions also accept lists of ints, Fractions or FieldElems, which are
converted (a tuple is always taken to be raw already).

Generation is decided by closure: starting from the unit, the span is
multiplied by the generators until the dimension stabilises. For the split
algebra ``F^n`` the same question has a direct combinatorial answer
(``split_generation_criterion``), which the test-suite checks against the
closure exhaustively on small fields.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd

from . import _upoly as up
from .errors import (
    BudgetExceededError,
    DoesNotSplitError,
    FieldMismatchError,
    NotEtaleError,
)
from .fields import Field, FieldElem, RationalField
from .linalg import Echelon, det, nullspace, rank, rref
from .polys import MultiPoly, UniPoly


class FiniteAlgebra:
    """Commutative, associative, unital algebra with a chosen basis.

    ``constants[i][j]`` is the coordinate vector of ``e_i * e_j``. Entries are
    converted with ``field.convert`` unless ``raw=True``. The axioms are
    checked at construction unless ``check=False``.
    """

    def __init__(self, field: Field, constants, unit=None, *, raw=False, check=True, kind="table"):
        self.field = field
        conv = (lambda x: x) if raw else field.convert
        self.c = tuple(
            tuple(tuple(conv(x) for x in vec) for vec in row) for row in constants
        )
        self.dim = len(self.c)
        if any(len(row) != self.dim or any(len(v) != self.dim for v in row) for row in self.c):
            raise ValueError("structure constants must have shape n x n x n")
        self.kind = kind
        self.modulus = None
        F = field
        self._table = []
        for i in range(self.dim):
            entries = []
            for j in range(self.dim):
                nz = [(k, x) for k, x in enumerate(self.c[i][j]) if not F.is_zero(x)]
                if nz:
                    entries.append((j, nz))
            self._table.append(entries)
        self._traces = tuple(
            _sum(F, (self.c[i][j][j] for j in range(self.dim))) for i in range(self.dim)
        )
        if unit is None:
            self.unit = self._find_unit()
        else:
            self.unit = tuple(conv(x) for x in unit)
        if check:
            self.check_axioms()

    # --- construction helpers ---
    def _find_unit(self):
        F, n = self.field, self.dim
        # sum_i u_i c[i][j][k] = delta_jk, unknowns u_i
        rows = []
        for j in range(n):
            for k in range(n):
                rows.append([self.c[i][j][k] for i in range(n)] + [F.one if j == k else F.zero])
        red, pivots = rref(F, rows)
        if n in pivots or len(pivots) < n:
            raise ValueError("algebra has no (unique) unit")
        return tuple(red[i][n] for i in range(n))

    def check_axioms(self):
        n = self.dim
        basis = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if self.c[i][j] != self.c[j][i]:
                    raise ValueError(f"not commutative: e{i}*e{j} != e{j}*e{i}")
        for i in range(n):
            if self.mul(self.unit, basis[i]) != basis[i]:
                raise ValueError(f"unit law fails on e{i}")
        for i, j, k in itertools.product(range(n), repeat=3):
            if self.mul(self.c[i][j], basis[k]) != self.mul(basis[i], self.c[j][k]):
                raise ValueError(f"not associative on (e{i}, e{j}, e{k})")

    # --- elements ---
    def element(self, coords) -> tuple:
        """Convert user coordinates (ints, Fractions, FieldElems) to a raw element."""
        coords = tuple(self.field.convert(x) for x in coords)
        if len(coords) != self.dim:
            raise ValueError(f"element needs {self.dim} coordinates, got {len(coords)}")
        return coords

    def coerce(self, x) -> tuple:
        if isinstance(x, tuple) and not any(isinstance(a, FieldElem) for a in x):
            if len(x) != self.dim:
                raise ValueError(f"element needs {self.dim} coordinates, got {len(x)}")
            return x
        return self.element(x)

    def zero(self):
        return (self.field.zero,) * self.dim

    def basis_vector(self, i):
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def scalar(self, c):
        F = self.field
        return tuple(F.mul(c, u) for u in self.unit)

    def add(self, x, y):
        F = self.field
        return tuple(F.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        F = self.field
        return tuple(F.sub(a, b) for a, b in zip(x, y))

    def scale(self, c, x):
        F = self.field
        return tuple(F.mul(c, a) for a in x)

    def mul(self, x, y):
        F = self.field
        out = [F.zero] * self.dim
        for i, xi in enumerate(x):
            if F.is_zero(xi):
                continue
            for j, entries in self._table[i]:
                yj = y[j]
                if F.is_zero(yj):
                    continue
                coef = F.mul(xi, yj)
                for k, ck in entries:
                    out[k] = F.add(out[k], F.mul(coef, ck))
        return tuple(out)

    def pow(self, x, e: int):
        acc = self.unit
        while e:
            if e & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            e >>= 1
        return acc

    def is_zero(self, x) -> bool:
        return all(self.field.is_zero(a) for a in x)

    def left_mult_matrix(self, x):
        """``M[k][j]`` = coefficient of ``e_k`` in ``x * e_j``."""
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def trace(self, x):
        F = self.field
        return _sum(F, (F.mul(a, t) for a, t in zip(x, self._traces)))

    def base_change(self, field: Field, embed=None) -> "FiniteAlgebra":
        """Same structure constants viewed over a larger field."""
        embed = embed or getattr(field, "from_base", None)
        if embed is None:
            raise FieldMismatchError(f"no embedding of {self.field} into {field}")
        consts = [[[embed(x) for x in v] for v in row] for row in self.c]
        out = FiniteAlgebra(field, consts, [embed(u) for u in self.unit], raw=True, check=False, kind=self.kind)
        return out

    def format_element(self, x):
        return [self.field.format(a) for a in x]

    def __repr__(self):
        return f"FiniteAlgebra({self.field.name}, dim={self.dim}, kind={self.kind})"


def _sum(F, xs):
    acc = F.zero
    for x in xs:
        acc = F.add(acc, x)
    return acc


def make_split_algebra(field: Field, n: int) -> FiniteAlgebra:
    """The product ring ``F^n`` with componentwise operations."""
    if n < 1:
        raise ValueError("n must be positive")
    F = field
    consts = [
        [[F.one if (i == j == k) else F.zero for k in range(n)] for j in range(n)]
        for i in range(n)
    ]
    return FiniteAlgebra(F, consts, [F.one] * n, raw=True, check=False, kind="split")


def make_monogenic(f: UniPoly) -> FiniteAlgebra:
    """``F[z]/(f)`` on the basis ``1, z, ..., z^(n-1)``."""
    F = f.field
    if f.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if not f.is_monic():
        raise ValueError("polynomial must be monic")
    n = f.degree
    consts = []
    for i in range(n):
        row = []
        for j in range(n):
            mono = (F.zero,) * (i + j) + (F.one,)
            rem = up.divmod_(F, mono, f.coeffs)[1]
            row.append(list(rem) + [F.zero] * (n - len(rem)))
        consts.append(row)
    A = FiniteAlgebra(F, consts, [F.one] + [F.zero] * (n - 1), raw=True, check=False, kind="monogenic")
    A.modulus = f
    return A


def trace_form(A: FiniteAlgebra):
    """Matrix of ``(i, j) -> Tr(e_i e_j)``."""
    return [[A.trace(A.c[i][j]) for j in range(A.dim)] for i in range(A.dim)]


def is_etale(A: FiniteAlgebra) -> bool:
    """Nondegeneracy of the trace form."""
    F = A.field
    return not F.is_zero(det(F, trace_form(A)))


def _close(A, ech: Echelon, gens, queue):
    while queue:
        v = queue.pop()
        for g in gens:
            w = A.mul(v, g)
            if ech.add(w):
                queue.append(w)
    return ech


def closure_echelon(A: FiniteAlgebra, gens) -> Echelon:
    ech = Echelon(A.field, A.dim)
    ech.add(A.unit)
    queue = [A.unit]
    for g in gens:
        if ech.add(g):
            queue.append(g)
    return _close(A, ech, gens, queue)


def subalgebra_closure(A: FiniteAlgebra, gens):
    """``(dimension, basis)`` of the smallest unital subalgebra containing ``gens``.

    The basis is the reduced row echelon basis of the subalgebra, so it is
    canonical for the subspace.
    """
    ech = closure_echelon(A, [A.coerce(g) for g in gens])
    return len(ech), ech.basis()


def generates(A: FiniteAlgebra, gens) -> bool:
    return subalgebra_closure(A, gens)[0] == A.dim


class GenMatrix:
    """``r x n`` matrix over a field: row ``l`` holds generator ``l`` in ``F^n``."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows, raw=False):
        self.field = field
        conv = (lambda x: x) if raw else field.convert
        self.rows = tuple(tuple(conv(x) for x in row) for row in rows)
        if len({len(r) for r in self.rows}) > 1:
            raise ValueError("rows of a generator matrix must have equal length")

    @property
    def r(self):
        return len(self.rows)

    @property
    def n(self):
        return len(self.rows[0]) if self.rows else 0

    def column(self, i):
        return tuple(row[i] for row in self.rows)

    def columns(self):
        return [self.column(i) for i in range(self.n)]

    def __eq__(self, other):
        return isinstance(other, GenMatrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(",".join(self.field.format(x) for x in row) for row in self.rows)
        return f"GenMatrix({self.field.name}, [{body}])"


def violated_pairs(M: GenMatrix, n=None):
    """Column pairs ``(i, j)``, ``i < j``, that no row separates."""
    n = M.n if n is None else n
    cols = M.columns() if M.rows else [()] * n
    return [(i, j) for i in range(n) for j in range(i + 1, n) if cols[i] == cols[j]]


def split_generation_criterion(M: GenMatrix, n=None) -> bool:
    """Every pair of columns differs in some row."""
    return not violated_pairs(M, n)


def separating_polynomials(M: GenMatrix):
    """Polynomials ``p_1..p_n`` in ``r`` variables with ``p_i(column j) = delta_ij``.

    Each ``p_i`` is the product over ``j != i`` of the linear forms
    ``(a_ki - a_kj)^-1 (x_k - a_kj)`` with ``k`` the first separating row.
    """
    F = M.field
    r, n = M.r, M.n
    bad = violated_pairs(M)
    if bad:
        raise ValueError(f"columns {bad[0]} are not separated; no separating polynomials exist")
    names = tuple(f"x{k + 1}" for k in range(r))
    one = MultiPoly.from_raw(F, r, {(0,) * r: F.one}, names)
    out = []
    for i in range(n):
        p = one
        for j in range(n):
            if j == i:
                continue
            k = next(k for k in range(r) if M.rows[k][i] != M.rows[k][j])
            inv = F.inv(F.sub(M.rows[k][i], M.rows[k][j]))
            exp = [0] * r
            exp[k] = 1
            lin = MultiPoly.from_raw(
                F, r, {tuple(exp): inv, (0,) * r: F.neg(F.mul(inv, M.rows[k][j]))}, names
            )
            p = p * lin
        out.append(p)
    return out


@dataclass(frozen=True)
class MinGenerators:
    """Outcome of :func:`min_generators`.

    ``exact`` is False when the value came from the randomized fallback and
    is only an upper bound.
    """

    value: int | None
    exact: bool
    witness: tuple | None
    closures: int


def _coset_reps(A, ech: Echelon):
    """Normalised representatives of the nonzero classes of ``A / span``.

    Supported on the non-pivot coordinates, first nonzero entry equal to one.
    """
    F = A.field
    free = [k for k in range(A.dim) if k not in set(ech.pivots())]
    elems = list(F.elements())
    for lead_pos, lead in enumerate(free):
        rest = free[lead_pos + 1:]
        for tail in itertools.product(elems, repeat=len(rest)):
            v = [F.zero] * A.dim
            v[lead] = F.one
            for k, x in zip(rest, tail):
                v[k] = x
            yield tuple(v)


def min_generators(A: FiniteAlgebra, r_max: int, budget: int = 2_000_000, seed: int = 0) -> MinGenerators:
    """Least ``r <= r_max`` such that some ``r``-tuple generates ``A``.

    The exhaustive search walks the subalgebras generated by prefixes of a
    tuple. Replacing a new generator ``a`` by ``u * (a - b)`` with ``u`` a
    unit and ``b`` in the current subalgebra does not change what it
    generates, so only normalised coset representatives are tried. This is
    equivalent to trying every tuple. ``budget`` bounds the number of closure
    computations; when the next depth would exceed it, a seeded random search
    takes over and the answer is reported as an upper bound.
    """
    F = A.field
    if not F.is_finite:
        raise ValueError("min_generators needs a finite field")
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    n = A.dim
    start = Echelon(F, n)
    start.add(A.unit)
    if n == 1:
        return MinGenerators(0, True, (), 0)
    q = F.order
    closures = 0
    states = {tuple(start.basis()): (start, ())}
    for depth in range(1, r_max + 1):
        cost = sum((q ** (n - len(e)) - 1) // (q - 1) for e, _ in states.values())
        if closures + cost > budget:
            return _random_min_generators(A, depth, r_max, budget - closures, seed, closures)
        ordered = sorted(states.items(), key=lambda kv: (-len(kv[1][0]), kv[0]))
        nxt = {}
        for _, (ech, wit) in ordered:
            gens = ech.basis()
            for c in _coset_reps(A, ech):
                new = ech.copy()
                new.add(c)
                _close(A, new, gens + [c], [c])
                closures += 1
                if len(new) == n:
                    return MinGenerators(depth, True, wit + (c,), closures)
                key = tuple(new.basis())
                if key not in nxt:
                    nxt[key] = (new, wit + (c,))
        states = nxt
    return MinGenerators(None, True, None, closures)


def _random_min_generators(A, r_from, r_max, budget, seed, closures):
    rng = random.Random(seed)
    F = A.field
    per_r = max(budget // max(r_max - r_from + 1, 1), 1)
    for r in range(r_from, r_max + 1):
        for _ in range(per_r):
            tup = tuple(tuple(F.random_element(rng) for _ in range(A.dim)) for _ in range(r))
            closures += 1
            if len(closure_echelon(A, tup)) == A.dim:
                return MinGenerators(r, False, tup, closures)
    return MinGenerators(None, False, None, closures)


def exhaustive_generating_tuples(A: FiniteAlgebra, r: int, budget: int = 10**6):
    """All ``r``-tuples of elements, in lexicographic order (small cases only)."""
    F = A.field
    q = F.order
    if q ** (A.dim * r) > budget:
        raise BudgetExceededError(f"{q ** (A.dim * r)} tuples exceed budget {budget}")
    elems = list(itertools.product(list(F.elements()), repeat=A.dim))
    return itertools.product(elems, repeat=r)


# --- minimal / characteristic polynomials ---

def minimal_polynomial(A: FiniteAlgebra, x) -> UniPoly:
    """Monic minimal polynomial of ``x`` over the base field (Krylov sequence)."""
    F = A.field
    powers = [A.unit]
    ech = Echelon(F, A.dim)
    ech.add(A.unit)
    while True:
        nxt = A.mul(powers[-1], x)
        if not ech.add(nxt):
            d = len(powers)
            # columns: x^0 .. x^(d-1), then x^d; kernel vector with last entry 1
            cols = [[p[i] for p in powers] + [nxt[i]] for i in range(A.dim)]
            v = next(b for b in nullspace(F, cols, d + 1) if not F.is_zero(b[d]))
            inv = F.inv(v[d])
            return _raw_unipoly(F, [F.mul(inv, a) for a in v])
        powers.append(nxt)


def _raw_unipoly(F, coeffs, var="z"):
    p = UniPoly.__new__(UniPoly)
    p.field, p.coeffs, p.var = F, up.trim(F, coeffs), var
    return p


def charpoly_matrix(F: Field, M):
    """Raw coefficients (low to high) of ``det(z I - M)`` by Berkowitz's method."""
    n = len(M)
    C = [F.one]
    for k in range(n):
        R = [M[k][j] for j in range(k)]
        S = [M[i][k] for i in range(k)]
        T = [F.one, F.neg(M[k][k])]
        v = S
        for _ in range(k):
            T.append(F.neg(_sum(F, (F.mul(a, b) for a, b in zip(R, v)))))
            v = [_sum(F, (F.mul(M[i][j], v[j]) for j in range(k))) for i in range(k)]
        C = [
            _sum(F, (F.mul(T[i - j], C[j]) for j in range(min(i, k) + 1)))
            for i in range(k + 2)
        ]
    return tuple(reversed(C))


def characteristic_polynomial(A: FiniteAlgebra, x) -> UniPoly:
    return _raw_unipoly(A.field, charpoly_matrix(A.field, A.left_mult_matrix(x)))


# --- idempotents ---

def _field_roots(F: Field, coeffs):
    """Roots in ``F`` of a raw univariate polynomial (finite fields and Q)."""
    if F.is_finite:
        return [a for a in F.elements() if F.is_zero(up.evaluate(F, coeffs, a))]
    if isinstance(F, RationalField):
        return _rational_roots(coeffs)
    raise NotImplementedError(f"root finding over {F.name}")


def _divisors(m: int):
    m = abs(m)
    out = set()
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.add(d)
            out.add(m // d)
        d += 1
    return sorted(out)


def _rational_roots(coeffs):
    coeffs = list(coeffs)
    roots = []
    if coeffs and coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
    if len(coeffs) <= 1:
        return roots
    den = 1
    for c in coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    cands = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            cands.update((Fraction(p, q), Fraction(-p, q)))
    Q = RationalField()
    roots.extend(c for c in sorted(cands) if up.evaluate(Q, tuple(coeffs), c) == 0)
    return roots


def _lagrange_idempotents(A, b, roots):
    F = A.field
    out = []
    for lam in roots:
        e = A.unit
        for mu in roots:
            if mu == lam:
                continue
            inv = F.inv(F.sub(lam, mu))
            e = A.scale(inv, A.mul(e, A.sub(b, A.scalar(mu))))
        out.append(e)
    return out


def _refine(A, idems, b):
    """Split each idempotent by the eigenvalues of ``b``; ``None`` if ``b`` does not split."""
    F = A.field
    m = minimal_polynomial(A, b)
    roots = _field_roots(F, m.coeffs)
    if len(roots) != m.degree:
        return None
    pieces = _lagrange_idempotents(A, b, roots)
    out = []
    for e in idems:
        for f in pieces:
            g = A.mul(e, f)
            if not A.is_zero(g):
                out.append(g)
    return out


def frobenius_fixed_basis(A: FiniteAlgebra):
    """Basis of ``{x : x^q = x}`` for ``A`` over a finite field of order ``q``."""
    F = A.field
    q = F.order
    images = [A.pow(A.basis_vector(j), q) for j in range(A.dim)]
    # (Frob - id) as a matrix acting on coordinate columns
    mat = [
        [F.sub(images[j][i], F.one if i == j else F.zero) for j in range(A.dim)]
        for i in range(A.dim)
    ]
    return nullspace(F, mat, A.dim)


def primitive_idempotents(A: FiniteAlgebra):
    """Complete set of orthogonal primitive idempotents of a split étale algebra.

    Over a finite field the idempotents are read off the Frobenius-fixed
    subalgebra, which is a product of copies of the base field, one per
    factor of ``A``; if some factor has degree > 1 the algebra does not split
    and :class:`DoesNotSplitError` carries the factor degrees. Over Q the
    basis elements must all have split minimal polynomials.
    """
    if not is_etale(A):
        raise NotEtaleError("algebra is not étale (degenerate trace form)")
    F = A.field
    if A.kind == "split":
        return [A.basis_vector(i) for i in range(A.dim)]
    idems = [A.unit]
    if F.is_finite:
        for b in frobenius_fixed_basis(A):
            idems = _refine(A, idems, b)
            assert idems is not None, "Frobenius-fixed elements always split"
        degrees = sorted(rank(F, [A.mul(e, A.basis_vector(j)) for j in range(A.dim)]) for e in idems)
        if any(d > 1 for d in degrees):
            raise DoesNotSplitError(
                f"algebra does not split over {F.name}; factor degrees {degrees}", degrees
            )
    else:
        for j in range(A.dim):
            refined = _refine(A, idems, A.basis_vector(j))
            if refined is None:
                raise DoesNotSplitError(f"algebra does not split over {F.name}")
            idems = refined
        if len(idems) != A.dim:
            raise DoesNotSplitError(f"algebra does not split over {F.name}")
    return sorted(idems, key=lambda e: tuple(F.sort_key(x) for x in e), reverse=True)


def automorphisms(A: FiniteAlgebra):
    """Every unital algebra automorphism, as images of the basis (tiny cases only)."""
    F = A.field
    n = A.dim
    elems = list(itertools.product(list(F.elements()), repeat=n))
    out = []
    for images in itertools.product(elems, repeat=n):
        if F.is_zero(det(F, [list(v) for v in images])):
            continue

        def phi(x):
            acc = A.zero()
            for xi, img in zip(x, images):
                if not F.is_zero(xi):
                    acc = A.add(acc, A.scale(xi, img))
            return acc

        if phi(A.unit) != A.unit:
            continue
        if all(
            A.mul(images[i], images[j]) == phi(A.c[i][j])
            for i in range(n)
            for j in range(i, n)
        ):
            out.append(images)
    return out
