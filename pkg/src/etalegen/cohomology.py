"""Small graded rings in characteristic 2 and the lower-bound certificates built on them.

* ``TruncatedThetaRing(m)``: ``F2[theta]/(theta^(m+1))``, elements as bitmasks
  indexed by degree.
* ``MotivicDQRing(r, mode)``: ``M2[a, b]/(a^2 - rho a - tau b, b^r)`` with
  ``M2 = F2[tau]`` ("alg-closed", ``rho = 0``) or ``F2[rho, tau]`` ("real").
* ``ChowDQRing(r)``: ``Z[b]/(2b, b^r)``.

Stabilization maps all send generators to generators and truncate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field


class TruncatedThetaRing:
    """``F2[theta]/(theta^(m+1))``; an element is an int whose bit ``j`` is the coefficient of ``theta^j``."""

    def __init__(self, m: int):
        if m < 0:
            raise ValueError("truncation must be >= 0")
        self.m = m
        self.mask = (1 << (m + 1)) - 1

    def theta_power(self, j: int) -> int:
        return (1 << j) & self.mask

    def one(self) -> int:
        return 1

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        out = 0
        while y:
            if y & 1:
                out ^= x
            x = (x << 1) & self.mask
            y >>= 1
        return out & self.mask

    def pow(self, x: int, e: int) -> int:
        acc = 1
        for _ in range(e):
            acc = self.mul(acc, x)
        return acc

    def dim(self, degree: int) -> int:
        return 1 if 0 <= degree <= self.m else 0

    def format(self, x: int) -> str:
        terms = [("1" if j == 0 else "θ" if j == 1 else f"θ^{j}") for j in range(self.m + 1) if x >> j & 1]
        return " + ".join(terms) or "0"

    def __repr__(self):
        return f"F2[θ]/(θ^{self.m + 1})"


def rp_cohomology(m: int) -> TruncatedThetaRing:
    """Mod-2 cohomology of real projective m-space."""
    return TruncatedThetaRing(m)


@dataclass(frozen=True)
class TwoComponentRing:
    """Product of two copies of ``F2[theta]/(theta^r)``."""

    r: int
    component: TruncatedThetaRing

    def dim(self, degree: int) -> int:
        return 2 * self.component.dim(degree)


def b_real_cohomology(r: int) -> TwoComponentRing:
    """Cohomology of the real points of ``B(r; A^2)``: two copies of ``RP^(r-1)``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return TwoComponentRing(r, TruncatedThetaRing(r - 1))


def _restriction_rank(source: TruncatedThetaRing, target: TruncatedThetaRing, j: int) -> int:
    """Rank of ``theta -> theta`` in degree ``j`` (a 1x1 or empty matrix)."""
    if not source.dim(j):
        return 0
    return 1 if target.theta_power(j) else 0


def rp_stabilization(m: int):
    """Per-degree ``(j, source dim, target dim, rank)`` of ``H(RP^(m+1)) -> H(RP^m)``."""
    src, tgt = rp_cohomology(m + 1), rp_cohomology(m)
    return [(j, src.dim(j), tgt.dim(j), _restriction_rank(src, tgt, j)) for j in range(m + 2)]


@dataclass(frozen=True)
class StabilizationRow:
    degree: int
    source_dim: int
    target_dim: int
    rank: int
    computed: str   # "iso" or "zero"
    claimed: str    # "iso" for j <= r, else "zero"

    @property
    def discrepancy(self) -> bool:
        return self.computed != self.claimed


def b_stabilization_table(r: int):
    """Degree-by-degree behaviour of ``H(B(r+1; A^2)(R)) -> H(B(r; A^2)(R))``.

    Each row compares the computed verdict with the reading "isomorphism for
    ``j <= r``, zero otherwise"; the rows where they disagree are flagged.
    """
    src, tgt = b_real_cohomology(r + 1), b_real_cohomology(r)
    rows = []
    for j in range(r + 2):
        sd, td = src.dim(j), tgt.dim(j)
        rank = 2 * _restriction_rank(src.component, tgt.component, j)
        computed = "iso" if sd == td == rank and rank > 0 else "zero" if rank == 0 else "partial"
        claimed = "iso" if j <= r else "zero"
        rows.append(StabilizationRow(j, sd, td, rank, computed, claimed))
    return rows


# --- motivic ring -----------------------------------------------------------

MODES = ("alg-closed", "real")


class MotivicDQRing:
    """``M2[a, b]/(a^2 - rho a - tau b, b^r)``.

    A monomial ``tau^i rho^j a^e b^m`` is the tuple ``(i, j, e, m)`` with
    ``e in {0, 1}`` and ``m < r``; an element is a frozenset of monomials
    (coefficients in F2).
    """

    def __init__(self, r: int, mode: str = "real"):
        if r < 1:
            raise ValueError("r must be at least 1")
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        self.r = r
        self.mode = mode

    # named elements
    def monomial(self, i=0, j=0, e=0, m=0):
        if self.mode == "alg-closed" and j:
            return frozenset()
        if m >= self.r:
            return frozenset()
        return frozenset({(i, j, e, m)})

    def one(self):
        return self.monomial()

    def zero(self):
        return frozenset()

    def a(self):
        return self.monomial(e=1)

    def b(self):
        return self.monomial(m=1)

    def tau(self):
        return self.monomial(i=1)

    def rho(self):
        return self.monomial(j=1)

    @staticmethod
    def bidegree(mono):
        i, j, e, m = mono
        return (j + e + 2 * m, i + j + e + m)

    def add(self, x, y):
        return x ^ y

    def _mono_mul(self, u, v):
        i, j, e, m = (p + q for p, q in zip(u, v))
        if e < 2:
            return self.monomial(i, j, e, m)
        # a^2 = rho a + tau b
        return self.monomial(i, j + 1, 1, m) ^ self.monomial(i + 1, j, 0, m + 1)

    def mul(self, x, y):
        out = set()
        for u in x:
            for v in y:
                target = tuple(a + b for a, b in zip(self.bidegree(u), self.bidegree(v)))
                for w in self._mono_mul(u, v):
                    if self.bidegree(w) != target:
                        raise AssertionError("bidegree is not additive")
                    out ^= {w}
        return frozenset(out)

    def pow(self, x, e: int):
        acc = self.one()
        for _ in range(e):
            acc = self.mul(acc, x)
        return acc

    def is_homogeneous(self, x) -> bool:
        return len({self.bidegree(u) for u in x}) <= 1

    def random_element(self, rng: random.Random, max_exp=3, terms=4):
        out = set()
        for _ in range(rng.randint(0, terms)):
            j = 0 if self.mode == "alg-closed" else rng.randint(0, max_exp)
            out ^= {(rng.randint(0, max_exp), j, rng.randint(0, 1), rng.randrange(self.r))}
        return frozenset(out)

    def specialize_tau(self, x) -> int:
        """Alg-closed mode with ``tau -> 1``: an element of ``F2[a]/(a^(2r))`` as a bitmask."""
        if self.mode != "alg-closed":
            raise ValueError("tau specialization is defined for the alg-closed mode")
        out = 0
        for (_, _, e, m) in x:
            out ^= 1 << (e + 2 * m)
        return out

    def topological_dim(self, degree: int) -> int:
        """Number of basis monomials ``a^e b^m`` with ``e + 2m == degree``."""
        return sum(1 for e in (0, 1) for m in range(self.r) if e + 2 * m == degree)

    def format(self, x) -> str:
        if not x:
            return "0"
        parts = []
        for (i, j, e, m) in sorted(x):
            f = [s if k == 1 else f"{s}^{k}" for s, k in (("τ", i), ("ρ", j), ("a", e), ("b", m)) if k]
            parts.append("*".join(f) or "1")
        return " + ".join(parts)

    def __repr__(self):
        return f"MotivicDQRing(r={self.r}, mode={self.mode})"


def motivic_dq_ring(r: int, mode: str = "real") -> MotivicDQRing:
    return MotivicDQRing(r, mode)


@dataclass
class MotivicStabilization:
    source: MotivicDQRing
    target: MotivicDQRing

    def __call__(self, x):
        return frozenset(u for u in x if u[3] < self.target.r)

    def ring_map_ok(self, pairs) -> bool:
        S, T = self.source, self.target
        return all(self(S.mul(x, y)) == T.mul(self(x), self(y)) for x, y in pairs)


def motivic_stabilization(r: int, mode: str = "real", source: MotivicDQRing | None = None,
                          target: MotivicDQRing | None = None) -> MotivicStabilization:
    """``a -> a``, ``b -> b`` from truncation ``r + 1`` to truncation ``r``."""
    source = source or MotivicDQRing(r + 1, mode)
    target = target or MotivicDQRing(r, mode)
    if source.mode != target.mode:
        raise ValueError("stabilization needs matching coefficient modes")
    if source.r != target.r + 1:
        raise ValueError("source truncation must exceed target truncation by one")
    return MotivicStabilization(source, target)


# --- Chow ring --------------------------------------------------------------

class ChowDQRing:
    """``Z[b]/(2b, b^r)``: an element is ``(n, bits)`` with ``n`` the degree-0 integer and bit ``k-1`` the coefficient of ``b^k``."""

    def __init__(self, r: int):
        if r < 1:
            raise ValueError("r must be at least 1")
        self.r = r
        self.mask = (1 << (r - 1)) - 1 if r > 1 else 0

    def element(self, n=0, powers=()):
        bits = 0
        for k in powers:
            if k == 0:
                n += 1
            elif k < self.r:
                bits ^= 1 << (k - 1)
        return (n, bits)

    def one(self):
        return (1, 0)

    def b(self):
        return self.element(0, (1,))

    def add(self, x, y):
        return (x[0] + y[0], x[1] ^ y[1])

    def scale(self, k: int, x):
        return (k * x[0], x[1] if k % 2 else 0)

    def mul(self, x, y):
        n = x[0] * y[0]
        bits = (x[1] if y[0] % 2 else 0) ^ (y[1] if x[0] % 2 else 0)
        # b^i * b^j = b^(i+j), bit positions shifted by one
        u = y[1]
        k = 1
        while u:
            if u & 1:
                bits ^= (x[1] << k) & self.mask
            u >>= 1
            k += 1
        return (n, bits & self.mask)

    def b_power(self, k: int):
        acc = self.one()
        for _ in range(k):
            acc = self.mul(acc, self.b())
        return acc

    def is_zero(self, x) -> bool:
        return x[0] == 0 and x[1] == 0

    def to_motivic(self, x, ring: MotivicDQRing):
        """Reduce mod 2 and send ``b^k`` to ``b^k``."""
        out = ring.one() if x[0] % 2 else ring.zero()
        for k in range(1, self.r):
            if x[1] >> (k - 1) & 1:
                out ^= ring.monomial(m=k)
        return out

    def __repr__(self):
        return f"Z[b̃]/(2b̃, b̃^{self.r})"


def chow_dq_ring(r: int) -> ChowDQRing:
    return ChowDQRing(r)


def chow_stabilization(source: ChowDQRing, target: ChowDQRing, x):
    """``b -> b`` with truncation."""
    if source.r < target.r:
        raise ValueError("stabilization goes from larger to smaller truncation")
    return (x[0], x[1] & target.mask)


# --- certificates -----------------------------------------------------------

@dataclass
class Certificate:
    r: int
    nonzero_witness: str
    vanishing_witness: str
    witness_degrees: tuple
    holds: bool
    verdict: str
    details: dict = dc_field(default_factory=dict)


def chase_certificate(r: int) -> Certificate:
    """``theta^(r-1)`` survives in ``B(r)`` but dies in ``B(r-1)``: ``r - 1`` generators are impossible."""
    if r < 2:
        raise ValueError("certificate needs r >= 2")
    big, small = b_real_cohomology(r), b_real_cohomology(r - 1)
    top = r - 1
    x = big.component.theta_power(top)
    y = small.component.theta_power(top)
    nonzero = x != 0 and big.dim(top) == 2
    vanishing = y == 0
    holds = nonzero and vanishing
    verdict = (f"{r - 1} generators impossible for the sphere algebra" if holds
               else "certificate failed")
    return Certificate(
        r,
        f"θ^{top} ≠ 0 in {big.component!r} (each component)",
        f"θ^{top} = 0 in {small.component!r}",
        (top, top),
        holds,
        verdict,
        {"source_dim": big.dim(top), "target_dim": small.dim(top)},
    )


def ojanguren_certificate(r: int) -> Certificate:
    """``b^(r-1)`` is nonzero in ``CH(DQ_(2r-1))`` and zero one truncation lower."""
    if r < 2:
        raise ValueError("certificate needs r >= 2")
    top = r - 1
    big, small = chow_dq_ring(r), chow_dq_ring(r - 1)
    via = chow_dq_ring(2 * r - 1)
    # composite through the larger truncation: b^(r-1) -> b^(r-1)
    image = chow_stabilization(via, big, via.b_power(top))
    x = big.b_power(top)
    y = small.b_power(top)
    holds = not big.is_zero(x) and image == x and small.is_zero(y)
    verdict = (f"the quadratic DQ algebra needs {r} generators" if holds
               else "certificate failed")
    return Certificate(
        r,
        f"b̃^{top} ≠ 0 in {big!r}",
        f"b̃^{top} = 0 in {small!r}",
        (top, top),
        holds,
        verdict,
        {"composite_image_matches": image == x},
    )
