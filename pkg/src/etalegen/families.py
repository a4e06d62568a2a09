"""Presented rings with a sign action of C2, and checks of generation over them.

Two families are built in: the sphere ring ``k[z_1..z_r]/(sum z_i^2 - 1)``
and the deleted-quadric ring ``k[x_1..x_r, y_1..y_r]/(1 - sum x_i y_i)``, both
with every variable negated by the involution. Generation of a ring over its
invariant subring is approached from two directions:

* symbolically, by certificates that express each remaining variable through
  the proposed generators modulo a single relation;
* pointwise, by scanning the degree-2 fiber algebras over closed points of
  small degree. A scan is only ever a necessary check.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from itertools import product

from .algebra import GenMatrix
from .errors import BudgetExceededError, CertificateError
from .fields import GF, ExtensionField, Field, FieldElem, PrimeField
from .polys import MultiPoly, exact_divide, poly_ring

log = logging.getLogger(__name__)


class PresentedRing:
    """``field[names] / (relations)`` with an optional sign action on variables."""

    def __init__(self, field: Field, names, relations, signs=None, label=""):
        self.field = field
        self.names = tuple(names.split() if isinstance(names, str) else names)
        self.relations = list(relations)
        self.signs = tuple(signs) if signs is not None else None
        self.label = label
        for f in self.relations:
            if f.is_zero():
                raise ValueError("relations must be nonzero")
            if f.nvars != len(self.names):
                raise ValueError("relation has the wrong number of variables")
        if self.signs is not None:
            if len(self.signs) != len(self.names) or any(s not in (1, -1) for s in self.signs):
                raise ValueError("signs must be +1/-1, one per variable")
            for f in self.relations:
                g = self.act(f)
                if g != f and g != -f:
                    raise ValueError(f"action does not preserve the relation {f!r}")

    @property
    def nvars(self):
        return len(self.names)

    def variables(self):
        return poly_ring(self.field, self.names)

    def var(self, name):
        return self.variables()[self.names.index(name)]

    def act(self, f: MultiPoly) -> MultiPoly:
        if self.signs is None:
            return f
        return f.sign_action(self.signs)

    def is_invariant(self, f: MultiPoly) -> bool:
        return self.act(f) == f

    def __repr__(self):
        rels = ", ".join(repr(f) for f in self.relations)
        return f"PresentedRing({self.field.name}[{','.join(self.names)}]/({rels}))"


def chase_rings(r: int, field: Field):
    """Sphere ring ``S`` with ``z_i -> -z_i`` and the even monomials ``z_i z_j``.

    The invariant subring is generated by the returned monomials; it is never
    presented on its own.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    names = [f"z{i + 1}" for i in range(r)]
    zs = poly_ring(field, names)
    rel = sum((z * z for z in zs[1:]), zs[0] * zs[0]) - 1
    S = PresentedRing(field, names, [rel], [-1] * r, label=f"sphere(r={r})")
    even = [zs[i] * zs[j] for i in range(r) for j in range(i, r)]
    return S, even


def dq_ring(r: int, field: Field) -> PresentedRing:
    """``k[x_1..x_r, y_1..y_r]/(1 - sum x_i y_i)`` with every variable negated."""
    if r < 1:
        raise ValueError("r must be at least 1")
    names = [f"x{i + 1}" for i in range(r)] + [f"y{i + 1}" for i in range(r)]
    vs = poly_ring(field, names)
    rel = 1 - sum((vs[i] * vs[r + i] for i in range(1, r)), vs[0] * vs[r])
    return PresentedRing(field, names, [rel], [-1] * (2 * r), label=f"dq(r={r})")


def sqrt_minus_one(F: Field):
    """Some ``i`` with ``i*i == -1`` in a finite field, else ``None``."""
    target = F.neg(F.one)
    for a in F.elements():
        if F.mul(a, a) == target:
            return a
    return None


@dataclass
class SplitSubstitution:
    """Linear change of variables between the sphere ring and the DQ ring.

    ``x_j = z_{2j-1} + i z_{2j}``, ``y_j = z_{2j-1} - i z_{2j}`` and the inverse
    ``z_{2j-1} = (x_j + y_j)/2``, ``z_{2j} = (x_j - y_j)/(2i)``.
    """

    field: Field
    i: object
    sphere: PresentedRing
    dq: PresentedRing
    xy_in_z: list   # images of x_1..x_m, y_1..y_m in the z-variables
    z_in_xy: list   # images of z_1..z_r in the x, y variables

    def to_dq(self, f: MultiPoly) -> MultiPoly:
        """Rewrite a polynomial in the z-variables in terms of x, y."""
        return f.compose(self.z_in_xy)

    def to_sphere(self, g: MultiPoly) -> MultiPoly:
        return g.compose(self.xy_in_z)

    def relation_maps_exactly(self) -> bool:
        """Sphere relation goes to minus the DQ relation, and back."""
        s, d = self.sphere.relations[0], self.dq.relations[0]
        return self.to_dq(s) == -d and self.to_sphere(d) == -s

    def roundtrip_ok(self) -> bool:
        zs = self.sphere.variables()
        vs = self.dq.variables()
        return all(self.to_sphere(self.to_dq(z)) == z for z in zs) and all(
            self.to_dq(self.to_sphere(v)) == v for v in vs
        )


def split_quadric_substitution(r: int, field: Field) -> SplitSubstitution:
    """Change of variables turning ``sum z_i^2 - 1`` into ``sum x_j y_j - 1``.

    Needs ``r`` even and a square root of ``-1`` in the (finite) field.
    """
    if r % 2:
        raise ValueError("r must be even")
    if field.characteristic == 2:
        raise ValueError("characteristic 2 is excluded")
    if not field.is_finite:
        raise ValueError("only finite fields are supported")
    i = sqrt_minus_one(field)
    if i is None:
        raise ValueError(f"-1 is not a square in {field.name}")
    F = field
    m = r // 2
    S, _ = chase_rings(r, F)
    T = dq_ring(m, F)
    zs = S.variables()
    vs = T.variables()
    xs, ys = vs[:m], vs[m:]
    half = F.inv(F.from_int(2))
    inv_2i = F.inv(F.mul(F.from_int(2), i))
    fwd_x = [zs[2 * j] + zs[2 * j + 1] * _elem(F, i) for j in range(m)]
    fwd_y = [zs[2 * j] - zs[2 * j + 1] * _elem(F, i) for j in range(m)]
    back = []
    for j in range(m):
        back.append((xs[j] + ys[j]) * _elem(F, half))
        back.append((xs[j] - ys[j]) * _elem(F, inv_2i))
    return SplitSubstitution(F, i, S, T, fwd_x + fwd_y, back)


def _elem(F, raw):
    return FieldElem(F, raw)


def coordinate_change_n2(M):
    """``(z, w)`` with ``z`` the column difference and ``w`` the column sum."""
    F = M.field
    if F.characteristic == 2:
        raise ValueError("characteristic 2 is excluded")
    if M.n != 2:
        raise ValueError("coordinate change needs n = 2")
    z = tuple(F.sub(row[0], row[1]) for row in M.rows)
    w = tuple(F.add(row[0], row[1]) for row in M.rows)
    return z, w


def coordinate_change_n2_inverse(F: Field, z, w):
    """Rows ``((w+z)/2, (w-z)/2)`` recovering the matrix."""
    half = F.inv(F.from_int(2))
    rows = [(F.mul(half, F.add(b, a)), F.mul(half, F.sub(b, a))) for a, b in zip(z, w)]
    return GenMatrix(F, rows, raw=True)


# --- symbolic certificates -------------------------------------------------

@dataclass
class Claim:
    """``target = sum coef * prod(blocks)`` with ``terms = [(coef, blocks), ...]``."""

    target: MultiPoly
    terms: list

    def expression(self, ring: PresentedRing) -> MultiPoly:
        F = ring.field
        out = MultiPoly(F, ring.nvars, {}, ring.names)
        for coef, blocks in self.terms:
            term = MultiPoly.constant(F, ring.nvars, coef, ring.names)
            for b in blocks:
                term = term * b
            out = out + term
        return out


@dataclass
class CertificateResult:
    passed: bool
    claims: list  # (target repr, divisible)

    def __bool__(self):
        return self.passed


def subalgebra_certificate_check(ring: PresentedRing, gens, claims, scalars=()) -> CertificateResult:
    """Check that each claim holds modulo the single relation of ``ring``.

    Blocks must be proposed generators, declared invariant scalars, or targets
    certified by earlier claims; anything else raises ``CertificateError``.
    """
    if len(ring.relations) != 1:
        raise ValueError("certificates need exactly one relation (principal ideal)")
    f = ring.relations[0]
    gens = list(gens)
    scalars = list(scalars)
    for s in scalars:
        if not ring.is_invariant(s):
            raise CertificateError(f"declared scalar {s!r} is not invariant")
    certified = []
    results = []
    passed = True
    for claim in claims:
        for _, blocks in claim.terms:
            for b in blocks:
                if b not in gens and b not in scalars and b not in certified:
                    raise CertificateError(f"block {b!r} is not admissible")
        diff = claim.target - claim.expression(ring)
        ok = diff.is_zero() or exact_divide(diff, f) is not None
        results.append((repr(claim.target), ok))
        if ok:
            certified.append(claim.target)
        passed = passed and ok
    return CertificateResult(passed, results)


def dq_generation_certificate(m: int, field: Field):
    """``(ring, gens, claims, scalars)`` for ``y_j = sum_l x_l (y_l y_j)`` on ``dq_ring(m)``."""
    T = dq_ring(m, field)
    vs = T.variables()
    xs, ys = vs[:m], vs[m:]
    scalars = [ys[l] * ys[j] for l in range(m) for j in range(l, m)]
    claims = []
    for j in range(m):
        terms = [(1, (xs[l], ys[l] * ys[j])) for l in range(m)]
        claims.append(Claim(ys[j], terms))
    return T, xs, claims, scalars


# --- point enumeration -----------------------------------------------------

@dataclass(frozen=True)
class PointSample:
    field: Field
    coords: tuple
    orbit: int
    free: bool


def _extension(F: Field, d: int) -> Field:
    if not isinstance(F, PrimeField):
        raise ValueError("point enumeration needs a prime base field")
    return GF(F.p, d)


def _lift(f: MultiPoly, K: Field) -> MultiPoly:
    return MultiPoly.from_raw(K, f.nvars, {e: K.from_int(c) for e, c in f.terms.items()}, f.names)


def _split_last(f: MultiPoly):
    """Coefficients of ``f`` as a polynomial in its last variable."""
    parts = defaultdict(dict)
    for e, c in f.terms.items():
        parts[e[-1]][e[:-1] + (0,)] = c
    return {k: MultiPoly.from_raw(f.field, f.nvars, t, f.names) for k, t in parts.items()}


def _sqrt_table(K):
    table = defaultdict(list)
    for x in K.elements():
        table[K.mul(x, x)].append(x)
    return table


def _evaluator(f: MultiPoly, K: Field):
    """A closure evaluating ``f`` at a tuple of raw ``K`` values."""
    terms = [(c, [(i, k) for i, k in enumerate(e) if k]) for e, c in f.terms.items()]
    add, mul, pw, zero = K.add, K.mul, K.pow, K.zero

    def ev(pt):
        acc = zero
        for c, factors in terms:
            t = c
            for i, k in factors:
                t = mul(t, pt[i] if k == 1 else pw(pt[i], k))
            acc = add(acc, t)
        return acc

    return ev


def iter_points(K: Field, relations, nvars: int, budget: int = 2_000_000):
    """Yield every point of ``K^nvars`` where all relations vanish, in lexicographic order.

    The last variable is solved for when the first relation has degree at most
    2 in it; otherwise it is found by trial.
    """
    elems = list(K.elements())
    q = len(elems)
    if not relations:
        if q ** nvars > budget:
            raise BudgetExceededError(f"{q}^{nvars} points exceed the budget {budget}")
        yield from product(elems, repeat=nvars)
        return
    f, rest = relations[0], relations[1:]
    parts = _split_last(f)
    deg = max(parts)
    solvable = deg <= 1 or (deg == 2 and K.characteristic != 2)
    cost = q ** (nvars - 1) * (1 if solvable else q)
    if cost > budget:
        raise BudgetExceededError(f"enumeration needs {cost} evaluations, budget is {budget}")
    roots = _sqrt_table(K) if deg == 2 else None
    zero = K.zero
    two_inv = K.inv(K.from_int(2)) if K.characteristic != 2 else None
    part_ev = [_evaluator(parts[k], K) if k in parts else None for k in range(3)]
    full_ev = _evaluator(f, K)
    rest_ev = [_evaluator(g, K) for g in rest]
    for prefix in product(elems, repeat=nvars - 1):
        if solvable:
            pt = prefix + (zero,)
            a = [ev(pt) if ev else zero for ev in part_ev]
            cands = _solve_quadratic(K, a, roots, two_inv, elems)
        else:
            cands = [x for x in elems if full_ev(prefix + (x,)) == zero]
        for x in cands:
            p = prefix + (x,)
            if all(ev(p) == zero for ev in rest_ev):
                yield p


def solve_points(K: Field, relations, nvars: int, budget: int = 2_000_000):
    """All points of ``K^nvars`` where every relation vanishes, as a list."""
    return list(iter_points(K, relations, nvars, budget))


def _solve_quadratic(K, a, roots, two_inv, elems):
    a0, a1, a2 = a
    if K.is_zero(a2):
        if K.is_zero(a1):
            return elems if K.is_zero(a0) else []
        return [K.neg(K.div(a0, a1))]
    disc = K.sub(K.mul(a1, a1), K.mul(K.from_int(4), K.mul(a2, a0)))
    inv = K.mul(two_inv, K.inv(a2))
    return sorted({K.mul(K.sub(s, a1), inv) for s in roots.get(disc, ())}, key=K.sort_key)


def _negate(K, signs, p):
    return tuple(K.neg(x) if s < 0 else x for x, s in zip(p, signs))


def _orbits(K, signs, points):
    """Group points into ``{P, sigma P}`` pairs keyed by the smaller representative."""
    seen = {}
    for p in points:
        q = _negate(K, signs, p)
        key = min(p, q, key=lambda v: tuple(K.sort_key(x) for x in v))
        seen.setdefault(key, (p, q))
    return [seen[k] for k in sorted(seen, key=lambda v: tuple(K.sort_key(x) for x in v))]


def enumerate_points(ring: PresentedRing, d: int = 1, budget: int = 2_000_000):
    """Points of the ring over ``F_{q^d}`` grouped into orbits of the action."""
    K = _extension(ring.field, d)
    rels = [_lift(f, K) for f in ring.relations]
    pts = solve_points(K, rels, ring.nvars, budget)
    signs = ring.signs or (1,) * ring.nvars
    out = []
    for idx, (p, q) in enumerate(_orbits(K, signs, pts)):
        free = p != q
        out.append(PointSample(K, p, idx, free))
        if free:
            out.append(PointSample(K, q, idx, free))
    return out


# --- fiberwise scan ---------------------------------------------------------

def nonsquare(K: Field):
    if isinstance(K, ExtensionField):
        return K.generator()
    return next(x for x in K.elements() if not K.is_zero(x) and K.pow(x, (K.order - 1) // 2) != K.one)


def _twisted(f: MultiPoly, signs, c, K):
    """``f(omega * Q)`` written over ``K`` with ``omega^2 = c``: the pair (even part, odd part)."""
    even, odd = {}, {}
    for e, coef in f.terms.items():
        k = sum(a for a, s in zip(e, signs) if s < 0)
        v = K.mul(coef, K.pow(c, k // 2))
        (odd if k % 2 else even)[e] = v
    mk = lambda t: MultiPoly.from_raw(K, f.nvars, t, f.names)
    return mk(even), mk(odd)


@dataclass
class OrbitCheck:
    degree: int
    kind: str      # "split" or "conjugate"
    point: tuple
    generates: bool


@dataclass
class ScanReport:
    """Outcome of a scan; only failing orbits are kept individually."""

    degree_bound: int
    counts: dict = dc_field(default_factory=dict)   # (degree, kind) -> orbits checked
    failures: list = dc_field(default_factory=list)
    skipped: list = dc_field(default_factory=list)
    warnings: list = dc_field(default_factory=list)

    @property
    def orbits_checked(self):
        return sum(self.counts.values())

    @property
    def passed(self):
        return not self.failures

    @property
    def verdict(self):
        if self.passed:
            return f"verified up to degree {self.degree_bound}"
        c = self.failures[0]
        return f"counterexample: {c.kind} orbit of degree {c.degree} at {c.point}"


def fiber_generates(K: Field, kind: str, values) -> bool:
    """Do the evaluated generators generate the 2-dimensional fiber algebra?

    ``values`` holds one pair per generator: the values at ``P`` and ``-P``
    for a split fiber, or the (even, odd) coordinates in ``K[w]/(w^2 - c)``
    for a conjugate one. A subalgebra containing 1 of a 2-dimensional algebra
    is everything exactly when it contains a non-scalar.
    """
    if kind == "split":
        return any(u != v for u, v in values)
    return any(not K.is_zero(odd) for _, odd in values)


def _free_orbit_reps(K, signs, points, skipped, d, kind):
    """Yield the smaller point of each free orbit; record fixed points in ``skipped``."""
    key = K.sort_key
    neg = K.neg
    for p in points:
        q = tuple(neg(x) if s < 0 else x for x, s in zip(p, signs))
        if p == q:
            skipped.append((d, kind, p))
            continue
        if tuple(map(key, p)) < tuple(map(key, q)):
            yield p, q


def fiberwise_generation_scan(ring: PresentedRing, gens, degree_bound: int, budget: int = 2_000_000) -> ScanReport:
    """Check that ``gens`` generate every degree-2 fiber over closed points of degree <= D.

    Split fibers come from pairs ``{P, -P}`` of ``F_{q^d}``-points. Conjugate
    fibers come from points ``omega * Q`` over ``F_{q^{2d}}`` with ``Q`` over
    ``F_{q^d}`` and ``omega^2 = c`` a nonsquare; there the fiber is
    ``F_{q^d}[w]/(w^2 - c)``. Points are streamed, so memory stays flat.
    """
    if ring.signs is None:
        raise ValueError("scan needs a ring with a sign action")
    if ring.field.characteristic == 2:
        raise ValueError("characteristic 2 is excluded")
    signs = ring.signs
    report = ScanReport(degree_bound)
    for d in range(1, degree_bound + 1):
        K = _extension(ring.field, d)
        G = [_evaluator(_lift(g, K), K) for g in gens]
        rels = [_lift(f, K) for f in ring.relations]
        n = 0
        pts = iter_points(K, rels, ring.nvars, budget)
        for p, q in _free_orbit_reps(K, signs, pts, report.skipped, d, "split"):
            n += 1
            if not fiber_generates(K, "split", [(g(p), g(q)) for g in G]):
                report.failures.append(OrbitCheck(d, "split", p, False))
        report.counts[(d, "split")] = n
        c = nonsquare(K)
        twisted = []
        for f in rels:
            even, odd = _twisted(f, signs, c, K)
            twisted.extend(h for h in (even, odd) if not h.is_zero())
        parts = [tuple(_evaluator(h, K) for h in _twisted(_lift(g, K), signs, c, K)) for g in gens]
        n = 0
        pts = iter_points(K, twisted, ring.nvars, budget)
        for p, _ in _free_orbit_reps(K, signs, pts, report.skipped, d, "conjugate"):
            n += 1
            if not fiber_generates(K, "conjugate", [(ev(p), od(p)) for ev, od in parts]):
                report.failures.append(OrbitCheck(d, "conjugate", p, False))
        report.counts[(d, "conjugate")] = n
    if report.skipped:
        msg = f"skipped {len(report.skipped)} non-free orbits (fiber not étale)"
        report.warnings.append(msg)
        log.warning(msg)
    return report
