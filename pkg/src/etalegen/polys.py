"""Univariate and sparse multivariate polynomials over the exact fields.

Multivariate division uses the graded-lexicographic order: monomials are
compared by total degree, ties broken lexicographically on the exponent vector.

The resultant is the determinant of the Sylvester matrix with the rows of ``f``
first, coefficients written from the highest degree down. With this convention
``resultant(z - a, z - b) == a - b``.
"""

from __future__ import annotations

from itertools import product

from . import _upoly as up
from .errors import FieldMismatchError
from .fields import Field, FieldElem
from .linalg import det


class UniPoly:
    """Dense univariate polynomial; ``coeffs`` are raw values, lowest degree first."""

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field: Field, coeffs=(), var: str = "z"):
        self.field = field
        self.coeffs = up.trim(field, (field.convert(c) for c in coeffs))
        self.var = var

    @classmethod
    def from_high(cls, field, coeffs, var="z"):
        """Build from coefficients listed highest degree first."""
        return cls(field, list(coeffs)[::-1], var)

    @classmethod
    def from_roots(cls, field, roots, var="z"):
        return cls(field, up.from_roots(field, [field.convert(a) for a in roots]), var)

    def _wrap(self, coeffs):
        p = UniPoly.__new__(UniPoly)
        p.field, p.coeffs, p.var = self.field, coeffs, self.var
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> FieldElem:
        return FieldElem(self.field, self.coeffs[-1])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coefficient(self, k: int) -> FieldElem:
        F = self.field
        return FieldElem(F, self.coeffs[k] if k < len(self.coeffs) else F.zero)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other.coeffs
        return up.trim(self.field, (self.field.convert(other),))

    def __add__(self, other):
        return self._wrap(up.add(self.field, self.coeffs, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(up.sub(self.field, self.coeffs, self._coerce(other)))

    def __rsub__(self, other):
        return self._wrap(up.sub(self.field, self._coerce(other), self.coeffs))

    def __neg__(self):
        return self._wrap(up.neg(self.field, self.coeffs))

    def __mul__(self, other):
        return self._wrap(up.mul(self.field, self.coeffs, self._coerce(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self._wrap((self.field.one,))
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        q, r = up.divmod_(self.field, self.coeffs, self._coerce(other))
        return self._wrap(q), self._wrap(r)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def derivative(self):
        return self._wrap(up.deriv(self.field, self.coeffs))

    def gcd(self, other):
        return self._wrap(up.gcd(self.field, self.coeffs, self._coerce(other)))

    def monic(self):
        return self._wrap(up.monic(self.field, self.coeffs))

    def __call__(self, x):
        F = self.field
        return FieldElem(F, up.evaluate(F, self.coeffs, F.convert(x)))

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            return self.coeffs == self._coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        F = self.field
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if F.is_zero(c):
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = F.format(c)
            if not mono:
                parts.append(cs)
            elif c == F.one:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


def sylvester_matrix(f: UniPoly, g: UniPoly):
    F = f.field
    m, n = f.degree, g.degree
    size = m + n
    fh, gh = f.coeffs[::-1], g.coeffs[::-1]
    rows = []
    for i in range(n):
        rows.append([F.zero] * i + list(fh) + [F.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([F.zero] * i + list(gh) + [F.zero] * (size - n - 1 - i))
    return rows


def resultant(f: UniPoly, g: UniPoly) -> FieldElem:
    """Sylvester-matrix determinant, ``f`` rows first."""
    if f.field != g.field:
        raise FieldMismatchError(f"{f.field} vs {g.field}")
    F = f.field
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return FieldElem(F, F.zero)
    if f.degree == 0 and g.degree == 0:
        return FieldElem(F, F.one)
    return FieldElem(F, det(F, sylvester_matrix(f, g)))


def discriminant(f: UniPoly) -> FieldElem:
    """``(-1)^(n(n-1)/2) * res(f, f') / lc(f)``."""
    if f.degree < 1:
        raise ValueError("discriminant needs degree >= 1")
    n = f.degree
    res = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return res * sign / f.lc()


def elementary_symmetric(values, field: Field | None = None):
    """``(e_1, ..., e_n)`` of the given field elements."""
    values = list(values)
    if field is None:
        if not values:
            return []
        field = values[0].field
    F = field
    coeffs = up.from_roots(F, [F.convert(v) for v in values])
    n = len(values)
    out = []
    for k in range(1, n + 1):
        c = coeffs[n - k] if n - k < len(coeffs) else F.zero
        out.append(FieldElem(F, c if k % 2 == 0 else F.neg(c)))
    return out


def grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero raw coefficients. Instances are
    treated as immutable.
    """

    __slots__ = ("field", "nvars", "terms", "names")

    def __init__(self, field: Field, nvars: int, terms=None, names=None):
        self.field = field
        self.nvars = nvars
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(nvars))
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length != {nvars}")
            c = field.convert(c)
            if not field.is_zero(c):
                clean[exp] = c
        self.terms = clean

    def _new(self, terms):
        p = MultiPoly.__new__(MultiPoly)
        p.field, p.nvars, p.names, p.terms = self.field, self.nvars, self.names, terms
        return p

    @classmethod
    def from_raw(cls, field, nvars, terms, names=None):
        """Build from raw coefficients without conversion."""
        p = cls.__new__(cls)
        p.field, p.nvars = field, nvars
        p.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(nvars))
        p.terms = {tuple(e): c for e, c in terms.items() if not field.is_zero(c)}
        return p

    @classmethod
    def constant(cls, field, nvars, c, names=None):
        return cls(field, nvars, {(0,) * nvars: c}, names)

    @classmethod
    def variable(cls, field, nvars, i, names=None):
        exp = [0] * nvars
        exp[i] = 1
        return cls(field, nvars, {tuple(exp): field.one}, names)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self):
        """``(exponent, raw coefficient)`` of the grlex-leading term."""
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field or other.nvars != self.nvars:
                raise FieldMismatchError("polynomials over different rings")
            return other
        return MultiPoly.constant(self.field, self.nvars, other, self.names)

    def __add__(self, other):
        F = self.field
        out = dict(self.terms)
        for e, c in self._coerce(other).terms.items():
            s = F.add(out.get(e, F.zero), c)
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._new({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        F = self.field
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = F.add(out.get(e, F.zero), F.mul(c1, c2))
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.field, self.nvars, 1, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        try:
            return self.terms == self._coerce(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def eval_raw(self, point):
        F = self.field
        acc = F.zero
        for exp, c in self.terms.items():
            term = c
            for x, k in zip(point, exp):
                if k:
                    term = F.mul(term, F.pow(x, k))
            acc = F.add(acc, term)
        return acc

    def __call__(self, *point):
        return poly_eval(self, point)

    def compose(self, images):
        """Substitute the polynomials ``images[i]`` for variable ``i``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0] if images else None
        out = None
        for exp, c in self.terms.items():
            term = MultiPoly.from_raw(target.field, target.nvars, {(0,) * target.nvars: c}, target.names)
            for img, k in zip(images, exp):
                if k:
                    term = term * img**k
            out = term if out is None else out + term
        if out is None:
            return MultiPoly.from_raw(target.field, target.nvars, {}, target.names)
        return out

    def sign_action(self, signs):
        """Apply ``x_i -> signs[i] * x_i`` with ``signs`` in {+1, -1}."""
        F = self.field
        out = {}
        for exp, c in self.terms.items():
            odd = sum(k for k, s in zip(exp, signs) if s < 0) % 2
            out[exp] = F.neg(c) if odd else c
        return self._new(out)

    def rename(self, names):
        return MultiPoly.from_raw(self.field, self.nvars, self.terms, names)

    def __repr__(self):
        F = self.field
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.names, exp) if k
            )
            cs = F.format(c)
            if not mono:
                parts.append(cs)
            elif c == F.one:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


def poly_ring(field: Field, names):
    """Generators of a polynomial ring, e.g. ``x, y = poly_ring(GF(5), "x y")``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    names = tuple(names)
    return [MultiPoly.variable(field, len(names), i, names) for i in range(len(names))]


def poly_eval(f: MultiPoly, point) -> FieldElem:
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    F = f.field
    return FieldElem(F, f.eval_raw([F.convert(x) for x in point]))


def exact_divide(p: MultiPoly, f: MultiPoly):
    """Return ``q`` with ``p == q * f``, or ``None`` if ``f`` does not divide ``p``.

    Single-divisor grlex division: a term of the running dividend that the
    leading term of ``f`` does not divide can never cancel later, so the
    first such term proves non-divisibility.
    """
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    F = p.field
    lead_e, lead_c = f.leading()
    inv_lc = F.inv(lead_c)
    rem = dict(p.terms)
    quot = {}
    while rem:
        e = max(rem, key=grlex_key)
        if any(a < b for a, b in zip(e, lead_e)):
            return None
        shift = tuple(a - b for a, b in zip(e, lead_e))
        c = F.mul(rem[e], inv_lc)
        quot[shift] = c
        for fe, fc in f.terms.items():
            te = tuple(a + b for a, b in zip(shift, fe))
            s = F.sub(rem.get(te, F.zero), F.mul(c, fc))
            if F.is_zero(s):
                rem.pop(te, None)
            else:
                rem[te] = s
    return p._new(quot)


def all_monic(field: Field, degree: int, var: str = "z"):
    """Every monic polynomial of the given degree over a finite field."""
    for tail in product(list(field.elements()), repeat=degree):
        yield UniPoly(field, list(tail) + [field.one], var)
