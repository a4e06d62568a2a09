"""Field points of U(r; A^n) and B(r; A^n) and classifying maps.

A point of ``U(r; A^n)`` is an ``r x n`` matrix whose columns are pairwise
distinct: the rows are ``r`` generators of the split algebra ``F^n``. The
symmetric group permutes columns, and a point of the quotient ``B(r; A^n)``
is stored as the representative with columns sorted by the field's total
order (the "orbit form"). For ``r = 1`` the quotient also has the explicit
chart by the coefficients of ``prod (z - a_i)`` (the "coeff form").
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import (
    FiniteAlgebra,
    GenMatrix,
    closure_echelon,
    generates,
    is_etale,
    make_split_algebra,
    minimal_polynomial,
    primitive_idempotents,
    violated_pairs,
)
from .errors import DoesNotSplitError, NotEtaleError, NotGeneratingError
from .fields import Field, FunctionField
from .polys import UniPoly, discriminant


@dataclass(frozen=True)
class BPoint:
    """A field point of ``B(r; A^n)``.

    ``form == "orbit"``: ``rows`` is the column-sorted representative matrix.
    ``form == "coeff"``: ``coeffs = (c_{n-1}, ..., c_0)`` where ``c_{n-k}`` is the
    k-th elementary symmetric function of the roots, i.e. the polynomial is
    ``z^n - c_{n-1} z^{n-1} + c_{n-2} z^{n-2} - ...``.
    """

    field: Field
    form: str
    rows: tuple = ()
    coeffs: tuple = ()

    @property
    def r(self):
        return len(self.rows) if self.form == "orbit" else 1

    @property
    def n(self):
        if self.form == "coeff":
            return len(self.coeffs)
        return len(self.rows[0]) if self.rows else 0

    def matrix(self) -> GenMatrix:
        if self.form != "orbit":
            raise ValueError("coefficient-form points have no representative matrix")
        return GenMatrix(self.field, self.rows, raw=True)

    def polynomial(self) -> UniPoly:
        F = self.field
        if self.form != "coeff":
            raise ValueError("only coefficient-form points carry a polynomial")
        n = len(self.coeffs)
        high = [F.one]
        for k, c in enumerate(self.coeffs, start=1):
            high.append(c if k % 2 == 0 else F.neg(c))
        return UniPoly(F, [], "z")._wrap(tuple(reversed(high)))

    def to_json(self):
        F = self.field
        out = {"field": F.name, "form": self.form}
        if self.form == "orbit":
            out["rows"] = [[F.format(x) for x in row] for row in self.rows]
        else:
            out["coeffs"] = [F.format(x) for x in self.coeffs]
        return out


def u_membership(M: GenMatrix):
    """``(True, [])`` when every column pair is separated, else ``(False, violated pairs)``."""
    bad = violated_pairs(M)
    return (not bad), bad


def _canonical_rows(F, rows):
    if not rows:
        return ()
    cols = list(zip(*rows))
    cols.sort(key=lambda col: tuple(F.sort_key(x) for x in col))
    return tuple(tuple(col[l] for col in cols) for l in range(len(rows)))


def b_point(M: GenMatrix) -> BPoint:
    """Image of a point of ``U(r; A^n)`` in the quotient (orbit form)."""
    ok, bad = u_membership(M)
    if not ok:
        raise NotGeneratingError(f"matrix is not in U(r; A^n): columns {bad} coincide")
    return BPoint(M.field, "orbit", rows=_canonical_rows(M.field, M.rows))


def _component(A, g, e):
    """The scalar by which ``g`` acts on the factor cut out by idempotent ``e``."""
    F = A.field
    ge = A.mul(g, e)
    k = next(i for i, x in enumerate(e) if not F.is_zero(x))
    return F.div(ge[k], e[k])


def classify(A: FiniteAlgebra, gens) -> BPoint:
    """Classifying point of ``(A, gens)``.

    If ``A`` splits over its field, the generators are written in the basis of
    primitive idempotents and the orbit form of that matrix is returned; the
    ordering of the idempotents is irrelevant after canonicalisation. For a
    non-split algebra with a single generator the coefficient chart is used.
    """
    F = A.field
    gens = [A.coerce(g) for g in gens]
    if not is_etale(A):
        raise NotEtaleError("algebra is not étale")
    if not generates(A, gens):
        raise NotGeneratingError("the given elements do not generate the algebra")
    try:
        idems = primitive_idempotents(A)
    except DoesNotSplitError:
        if len(gens) == 1:
            return classify_monogenic(A, gens[0])
        raise
    rows = [[_component(A, g, e) for e in idems] for g in gens]
    return b_point(GenMatrix(F, rows, raw=True))


def classify_monogenic(A: FiniteAlgebra, a) -> BPoint:
    """Coefficient-form point of ``(A, a)`` from the minimal polynomial of ``a``."""
    F = A.field
    a = A.coerce(a)
    if not is_etale(A):
        raise NotEtaleError("algebra is not étale")
    m = minimal_polynomial(A, a)
    if m.degree < A.dim:
        raise NotGeneratingError(
            f"element has minimal polynomial of degree {m.degree} < {A.dim}; it does not generate"
        )
    if discriminant(m).is_zero():
        raise AssertionError("generator of an étale algebra has a repeated root")
    n = A.dim
    coeffs = []
    for k in range(1, n + 1):
        c = m.coeffs[n - k]
        coeffs.append(c if k % 2 == 0 else F.neg(c))
    return BPoint(F, "coeff", coeffs=tuple(coeffs))


@dataclass(frozen=True)
class TautologicalData:
    point: BPoint
    algebra: FiniteAlgebra
    sections: tuple


def tautological(b: BPoint) -> TautologicalData:
    """The split algebra with the representative rows as sections."""
    if b.form != "orbit":
        raise ValueError("use make_monogenic for coefficient-form points")
    return TautologicalData(b, make_split_algebra(b.field, b.n), b.rows)


def stabilize(b: BPoint, r_new: int) -> BPoint:
    """Append zero sections up to ``r_new`` and re-canonicalise."""
    if b.form != "orbit":
        raise ValueError("stabilization acts on orbit-form points")
    if r_new < b.r:
        raise ValueError(f"cannot stabilize from r={b.r} down to r={r_new}")
    F = b.field
    rows = b.rows + tuple((F.zero,) * b.n for _ in range(r_new - b.r))
    return BPoint(F, "orbit", rows=_canonical_rows(F, rows))


def default_checkpoints(F: Field):
    if F.is_finite:
        return list(F.elements())
    return [F.convert(x) for x in (0, 1, 2, -1, Fraction(1, 2))]


@dataclass
class PathCheck:
    """Generation checks along one elementary homotopy."""

    label: str
    generic: bool
    checkpoints: dict
    start: tuple
    end: tuple

    @property
    def ok(self):
        return self.generic and all(self.checkpoints.values())


@dataclass
class HomotopyReport:
    r: int
    main: PathCheck
    swap: PathCheck
    start_is_stabilized: bool
    end_is_stabilized: bool
    start_point: BPoint | None = None
    end_point: BPoint | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return self.main.ok and self.swap.ok and self.start_is_stabilized and self.end_is_stabilized


def _path_check(A, At, T, left, right, checkpoints, label):
    """Sections ``((1-t) left, t right)`` over ``F(t)`` and at each checkpoint."""
    F = A.field
    t = T.gen()
    one_minus_t = T.sub(T.one, t)
    lift = lambda x: tuple(T.from_base(c) for c in x)
    generic = [At.scale(one_minus_t, lift(x)) for x in left]
    generic += [At.scale(t, lift(x)) for x in right]
    generic_ok = len(closure_echelon(At, generic)) == A.dim
    results = {}
    start = end = None
    for t0 in checkpoints:
        special = [tuple(T.specialize(c, t0) for c in g) for g in generic]
        results[F.format(t0)] = len(closure_echelon(A, special)) == A.dim
        if F.is_zero(t0):
            start = tuple(special)
        if t0 == F.one:
            end = tuple(special)
    if start is None:
        start = tuple(tuple(T.specialize(c, F.zero) for c in g) for g in generic)
    if end is None:
        end = tuple(tuple(T.specialize(c, F.one) for c in g) for g in generic)
    return PathCheck(label, generic_ok, results, start, end)


def homotopy_path(A: FiniteAlgebra, gens, gens2, checkpoints=None) -> HomotopyReport:
    """Check the elementary homotopy between two generating tuples of ``A``.

    The tuples are zero-padded to a common length ``r``. The main path uses the
    ``2r`` sections ``((1-t) a_1, ..., (1-t) a_r, t a'_1, ..., t a'_r)``, which
    specialise to ``(a, 0)`` at ``t = 0`` and ``(0, a')`` at ``t = 1``. A second
    path ``(t a', (1-t) a')`` carries ``(0, a')`` to ``(a', 0)``, the stabilized
    form of the second tuple. Generation is checked over ``F(t)`` and at each
    checkpoint.
    """
    F = A.field
    gens = [A.coerce(g) for g in gens]
    gens2 = [A.coerce(g) for g in gens2]
    for name, tup in (("first", gens), ("second", gens2)):
        if not generates(A, tup):
            raise NotGeneratingError(f"the {name} tuple does not generate the algebra")
    r = max(len(gens), len(gens2))
    zero = A.zero()
    gens = gens + [zero] * (r - len(gens))
    gens2 = gens2 + [zero] * (r - len(gens2))
    if checkpoints is None:
        checkpoints = default_checkpoints(F)
    else:
        checkpoints = [F.convert(x) for x in checkpoints]
    T = FunctionField(F, "t")
    At = A.base_change(T)
    main = _path_check(A, At, T, gens, gens2, checkpoints, "(1-t)a, t a'")
    swap = _path_check(A, At, T, gens2, gens2, checkpoints, "(1-t)a', t a'")
    # swap path runs from (a', 0) at t=0 to (0, a') at t=1
    start_ok = main.start == tuple(gens) + (zero,) * r
    end_ok = main.end == (zero,) * r + tuple(gens2) and swap.end == main.end
    report = HomotopyReport(r, main, swap, start_ok, end_ok)
    try:
        report.start_point = classify(A, main.start)
        report.end_point = classify(A, swap.start)
        if report.start_point.form == "orbit":
            report.start_is_stabilized = start_ok and report.start_point == stabilize(
                classify(A, gens), 2 * r
            )
            report.end_is_stabilized = end_ok and report.end_point == stabilize(
                classify(A, gens2), 2 * r
            )
    except DoesNotSplitError:
        report.notes.append("algebra does not split; endpoint B-points not computed")
    return report
